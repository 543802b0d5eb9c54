use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::clifford::build_clifford;
use crate::exact::{int, rat};
use crate::spin::rho;

/// `μ(v, w)` assembled term by term from the gamma matrices.
fn mu_oracle(ca: &CliffordAlgebra, v: &[Rational], w: &[Rational]) -> SparseMatrix<Rational> {
    let n = ca.n();
    let dim = ca.module_dim();
    let sigma = int(EMBEDDING_SIGN.into());
    let mut m = SparseMatrix::scalar(dim, -(&v[n] * &w[n]));
    for i in 0..n {
        let gi = ca.gamma_matrix::<Rational>(i);
        for j in 0..n {
            let gj = ca.gamma_matrix::<Rational>(j);
            let c = &v[i] * &w[j];
            if !c.is_zero() {
                m = m.add(&gi.mul(&gj).unwrap().scale(&c)).unwrap();
            }
        }
        let c = &sigma * (&v[i] * &w[n] - &v[n] * &w[i]);
        m = m.add(&gi.scale(&c)).unwrap();
    }
    m
}

fn rand_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
        .collect()
}

fn e(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

#[test]
fn sample_points_are_on_sphere_and_deterministic() {
    for n in [7, 8, 15] {
        let pts = sample_sphere_points(n, 30, 11);
        assert!(pts.iter().all(|p| dot(p.coords(), p.coords()) == int(1)));
        assert!(pts.iter().all(|p| p.n() == n));
        assert_eq!(pts, sample_sphere_points(n, 30, 11));
        assert_ne!(pts, sample_sphere_points(n, 30, 12));
    }
}

#[test]
fn stereographic_special_values() {
    assert_eq!(SpherePoint::stereographic(&vec![int(0); 7]), SpherePoint::pole(7));
    let p = SpherePoint::stereographic(&e(7, 0));
    assert_eq!(p.coords(), e(8, 0).as_slice());
    assert!(SpherePoint::new(vec![int(1), int(1)]).is_err());
}

#[test]
fn tangency_is_enforced() {
    let pole = SpherePoint::pole(7);
    assert!(matches!(pole.tangent(e(8, 7)), Err(Error::NotTangent)));
    assert!(pole.tangent(e(8, 3)).is_ok());
    let t = pole.project(&vec![int(1); 8]).unwrap();
    assert!(dot(t.vector(), pole.coords()).is_zero());
}

#[test]
fn mu_matches_term_by_term_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [7, 8] {
        let ca = build_clifford(n).unwrap();
        for _ in 0..5 {
            let v = rand_vec(&mut rng, n + 1);
            let w = rand_vec(&mut rng, n + 1);
            assert_eq!(mu(&ca, &v, &w).unwrap(), mu_oracle(&ca, &v, &w));
        }
    }
}

#[test]
fn mu_basis_values() {
    let ca = build_clifford(8).unwrap();
    let sigma = int(EMBEDDING_SIGN.into());
    for i in 0..8 {
        for j in 0..8 {
            if i != j {
                let want = ca.gamma_matrix::<Rational>(i).mul(&ca.gamma_matrix(j)).unwrap();
                assert_eq!(mu(&ca, &e(9, i), &e(9, j)).unwrap(), want);
            }
        }
        let want = ca.gamma_matrix::<Rational>(i).scale(&sigma);
        assert_eq!(mu(&ca, &e(9, i), &e(9, 8)).unwrap(), want);
    }
}

#[test]
fn mu_of_a_vector_with_itself() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [7, 8, 15] {
        let ca = build_clifford(n).unwrap();
        for _ in 0..50 {
            let v = rand_vec(&mut rng, n + 1);
            let psi = rand_vec(&mut rng, ca.module_dim());
            let norm = dot(&v, &v);
            let out = mu_apply(&ca, &v, &v, &psi);
            assert!(out.iter().zip(&psi).all(|(o, p)| *o == -(&norm * p)));
        }
    }
}

#[test]
fn mu_rejects_wrong_length() {
    let ca = build_clifford(7).unwrap();
    assert!(mu(&ca, &e(7, 0), &e(8, 0)).is_err());
}

#[test]
fn clifford_action_at_pole() {
    let ca = build_clifford(7).unwrap();
    let pole = SpherePoint::pole(7);
    let x = pole.tangent(e(8, 0)).unwrap();
    let psi: Vec<Rational> = (0..8).map(|i| int(i + 1)).collect();
    let want = ca.gamma(0).apply(&psi);
    let want: Vec<Rational> = want.into_iter().map(|c| c * int(EMBEDDING_SIGN.into())).collect();
    assert_eq!(clifford_action_at(&ca, &x, &psi).unwrap(), want);
}

#[test]
fn covariant_derivative_at_pole() {
    let ca = build_clifford(8).unwrap();
    let pole = SpherePoint::pole(8);
    let x = pole.tangent(e(9, 0)).unwrap();
    let psi: Vec<Rational> = (0..16).map(|i| int(i - 3)).collect();
    let field = PolySpinorField::constant(9, psi.clone());
    let got = covariant_derivative(&ca, &field, &x).unwrap();
    let want: Vec<Rational> = ca
        .gamma(0)
        .apply(&psi)
        .into_iter()
        .map(|c| c * rat(EMBEDDING_SIGN.into(), 2))
        .collect();
    assert_eq!(got, want);
}

#[test]
fn covariant_derivative_of_linear_field() {
    // ∂_X of x ↦ x_0 ψ is X_0 ψ.
    let ca = build_clifford(7).unwrap();
    let dim = ca.module_dim();
    let mut linear = vec![vec![int(0); dim]; 8];
    linear[0] = e(dim, 2);
    let field = PolySpinorField::affine(vec![int(0); dim], linear).unwrap();
    let p = sample_sphere_points(7, 1, 4).remove(0);
    let x = p.project(&e(8, 0)).unwrap();
    let value = field.eval(p.coords());
    let mut want = mu_apply(&ca, x.vector(), p.coords(), &value);
    for w in want.iter_mut() {
        *w = &*w * rat(1, 2);
    }
    want[2] += x.vector()[0].clone();
    assert_eq!(covariant_derivative(&ca, &field, &x).unwrap(), want);
}

#[test]
fn jet_covariant_derivative_matches_polynomial_one() {
    let ca = build_clifford(7).unwrap();
    let dim = ca.module_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let linear: Vec<Vec<Rational>> = (0..8).map(|_| rand_vec(&mut rng, dim)).collect();
    let poly = PolySpinorField::affine(rand_vec(&mut rng, dim), linear).unwrap();
    let c = rand_vec(&mut rng, 8);
    for p in sample_sphere_points(7, 3, 1) {
        let t = p.project(&c).unwrap();
        let direct = covariant_derivative(&ca, &poly, &t).unwrap();
        let composite = SpinorField::Poly(poly.clone()).covariant(VectorField::Projected(c.clone()));
        assert_eq!(composite.value_at(&ca, p.coords()), direct);
    }
}

#[test]
fn killing_equation_for_basis_spinors() {
    for n in [7, 8] {
        let ca = build_clifford(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for p in sample_sphere_points(n, 10, 0) {
            let x = p.project(&rand_vec(&mut rng, n + 1)).unwrap();
            for c in 0..ca.module_dim() {
                let eps = KillingSpinorField::new(e(ca.module_dim(), c));
                assert!(killing_equation_holds(&ca, &eps, &x).unwrap());
            }
        }
    }
}

#[test]
fn wrong_killing_constant_is_detected() {
    // ∇_X ε = -½ c(X) ε fails for a nonzero spinor.
    let ca = build_clifford(7).unwrap();
    let p = sample_sphere_points(7, 1, 2).remove(0);
    let x = p.project(&e(8, 1)).unwrap();
    let psi = e(8, 0);
    let field = PolySpinorField::constant(8, psi.clone());
    let lhs = covariant_derivative(&ca, &field, &x).unwrap();
    let c = clifford_action_at(&ca, &x, &psi).unwrap();
    assert!(lhs.iter().any(|v| !v.is_zero()));
    assert!(lhs.iter().zip(&c).any(|(l, r)| *l != -(rat(1, 2) * r)));
}

#[test]
fn squaring_field_of_a_spinor_with_itself_vanishes() {
    let ca = build_clifford(8).unwrap();
    let pts = sample_sphere_points(8, 12, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let eps = KillingSpinorField::new(rand_vec(&mut rng, 16));
    let v = spinor_squaring_field(&ca, &eps, &eps, &pts).unwrap();
    assert!(v.element().matrix().is_zero());
}

#[test]
fn squaring_field_needs_enough_points() {
    let ca = build_clifford(7).unwrap();
    let pts = sample_sphere_points(7, 3, 0);
    let eps = KillingSpinorField::new(e(8, 0));
    assert!(matches!(
        spinor_squaring_field(&ca, &eps, &eps, &pts),
        Err(Error::Certificate(_))
    ));
}

#[test]
fn squaring_field_matches_bilinear_formula() {
    // a_ij = (ψ₁, μ(e_i, e_j) ψ₂) for i ≠ j, read off the Clifford model.
    let ca = build_clifford(7).unwrap();
    let pts = sample_sphere_points(7, 12, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let p1 = rand_vec(&mut rng, 8);
    let p2 = rand_vec(&mut rng, 8);
    let field = spinor_squaring_field(
        &ca,
        &KillingSpinorField::new(p1.clone()),
        &KillingSpinorField::new(p2.clone()),
        &pts,
    )
    .unwrap();
    for i in 0..8 {
        for j in 0..8 {
            let want = if i == j {
                int(0)
            } else {
                dot(&p1, &mu_oracle(&ca, &e(8, i), &e(8, j)).mul_vec(&p2).unwrap())
            };
            assert_eq!(field.element().matrix().get(i, j), want);
        }
    }
}

#[test]
fn lie_derivative_is_minus_rho() {
    let ca = build_clifford(7).unwrap();
    let pts = sample_sphere_points(7, 6, 8);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let coeffs = rand_vec(&mut rng, 28);
    let a = SoElement::from_coefficients(8, &coeffs).unwrap();
    let psi = rand_vec(&mut rng, 8);
    let out = lie_derivative(
        &ca,
        &LinearKillingField::new(a.clone()),
        &KillingSpinorField::new(psi.clone()),
        &pts,
    )
    .unwrap();
    let want: Vec<Rational> = rho(&a, &ca).unwrap().mul_vec(&psi).unwrap().into_iter().map(|c| -c).collect();
    assert_eq!(out.psi(), want.as_slice());
}

#[test]
fn lie_derivative_along_a_non_killing_field_is_not_constant() {
    // For the conformal field P_x c the same formula varies from point to point.
    let ca = build_clifford(7).unwrap();
    let psi = e(8, 0);
    let field = SpinorField::constant(8, psi).lie(VectorField::Projected(e(8, 7)));
    let values: Vec<Vec<Rational>> = sample_sphere_points(7, 3, 0)
        .iter()
        .map(|p| field.value_at(&ca, p.coords()))
        .collect();
    assert!(values[0] != values[1] || values[1] != values[2]);
}

#[test]
fn matrix_commutator_field_has_the_wrong_sign() {
    // L_X L_Y - L_Y L_X follows the vector-field bracket (ba - ab) x, not (ab - ba) x.
    let ca = build_clifford(7).unwrap();
    let a = SoElement::<Rational>::basis(8, 0, 1).unwrap().matrix().clone();
    let b = SoElement::<Rational>::basis(8, 1, 2).unwrap().matrix().clone();
    let (x, y) = (VectorField::Linear(a.clone()), VectorField::Linear(b.clone()));
    let eps = SpinorField::constant(8, e(8, 0));
    let lhs = eps.clone().lie(y.clone()).lie(x.clone()).minus(eps.clone().lie(x).lie(y));
    let p = sample_sphere_points(7, 1, 0).remove(0);
    let commutator = VectorField::Linear(a.mul(&b).unwrap().sub(&b.mul(&a).unwrap()).unwrap());
    let lhs_value = lhs.value_at(&ca, p.coords());
    let wrong = eps.lie(commutator).value_at(&ca, p.coords());
    assert!(lhs_value.iter().any(|v| !v.is_zero()));
    assert!(lhs_value.iter().zip(&wrong).all(|(l, w)| *l == -w.clone()));
}

#[test]
fn even_subalgebra_of_cl9_realizes_mu() {
    // γ'_i = Γ_i Γ_9 generate Cl_8 on the Cl_9 module, and μ built from them is
    // the Clifford product v w computed in Cl_9.
    let c9 = build_clifford(9).unwrap();
    let dim = c9.module_dim();
    let g = |i: usize| c9.gamma_matrix::<Rational>(i);
    let gp: Vec<SparseMatrix<Rational>> = (0..8).map(|i| g(i).mul(&g(8)).unwrap()).collect();
    for i in 0..8 {
        for j in 0..8 {
            let anti = gp[i].mul(&gp[j]).unwrap().add(&gp[j].mul(&gp[i]).unwrap()).unwrap();
            let want = if i == j { SparseMatrix::scalar(dim, int(-2)) } else { SparseMatrix::zeros(dim, dim) };
            assert_eq!(anti, want);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let v = rand_vec(&mut rng, 9);
    let w = rand_vec(&mut rng, 9);
    let vec9 = |u: &[Rational]| {
        (0..9).fold(SparseMatrix::zeros(dim, dim), |acc, i| acc.add(&g(i).scale(&u[i])).unwrap())
    };
    let product = vec9(&v).mul(&vec9(&w)).unwrap();
    let mut via_mu = SparseMatrix::scalar(dim, -(&v[8] * &w[8]));
    for i in 0..8 {
        for j in 0..8 {
            via_mu = via_mu.add(&gp[i].mul(&gp[j]).unwrap().scale(&(&v[i] * &w[j]))).unwrap();
        }
        via_mu = via_mu.add(&gp[i].scale(&(&v[i] * &w[8] - &v[8] * &w[i]))).unwrap();
    }
    assert_eq!(product, via_mu);
}

#[test]
fn geometry_report_s7() {
    let r = check_geometry(7, 12, 0).unwrap();
    assert!(r.passed, "{r:?}");
    assert_eq!(r.killing_spinors, 8);
    assert_eq!(r.constants.s, int(2));
    assert_eq!(r.constants.sign, -1);
    let json = serde_json::to_value(&r).unwrap();
    for key in ["sphere", "points_checked", "eq_KS_failures", "squaring_matches", "lie_derivative_matches", "constants"] {
        assert!(json.get(key).is_some(), "{key}");
    }
}

#[test]
fn unsupported_sphere() {
    assert!(matches!(check_geometry(9, 1, 0), Err(Error::Unsupported { .. })));
}
