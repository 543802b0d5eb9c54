//! The seeded geometry verification run behind `geometry check`.

use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::fields::{directional, lift, project};
use super::{
    clifford_action_at, killing_equation_holds, lie_derivative, mu_apply, sample_sphere_points,
    spinor_squaring_field, squaring_vector_at, Jet, KillingSpinorField, LinearKillingField,
    PolySpinorField, ScalarPoly, SpherePoint, SpinorField, VectorField,
};
use crate::algebra::{build_killing_algebra, KillingAlgebra};
use crate::clifford::{build_clifford, CliffordAlgebra};
use crate::error::{Error, Result};
use crate::exact::{dot, SparseMatrix};
use crate::spin::{rho, so_pairs, SoElement};
use crate::Rational;

/// The two global constants relating the geometric constructions to the
/// algebraic ones: `V = s · [ε₁, ε₂]` and `L_X ε_ψ = ε_{sign · ρ(a) ψ}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometryConstants {
    #[serde(serialize_with = "crate::report::ser_display")]
    pub s: Rational,
    pub sign: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometryProperties {
    pub mu_symmetrization: bool,
    pub clifford_square: bool,
    pub clifford_skew: bool,
    pub killing_vector_equation: bool,
    pub derivation: bool,
    pub morphism: bool,
    pub clifford_compatible: bool,
    pub affine: bool,
}

impl GeometryProperties {
    pub fn all(&self) -> bool {
        self.mu_symmetrization
            && self.clifford_square
            && self.clifford_skew
            && self.killing_vector_equation
            && self.derivation
            && self.morphism
            && self.clifford_compatible
            && self.affine
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometryReport {
    pub sphere: usize,
    pub module_dim: usize,
    pub seed: u64,
    pub points_checked: usize,
    #[serde(rename = "eq_KS_failures")]
    pub eq_ks_failures: usize,
    pub killing_spinors: usize,
    pub squaring_pairs: usize,
    pub squaring_matches: bool,
    pub lie_pairs: usize,
    pub lie_derivative_matches: bool,
    pub constants: GeometryConstants,
    pub properties: GeometryProperties,
    pub passed: bool,
    pub wall_ms: u128,
}

fn basis(dim: usize, i: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); dim];
    e[i] = Rational::one();
    e
}

fn small_int(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    Rational::from_integer(rng.gen_range(-bound..=bound).into())
}

fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len).map(|_| small_int(rng, 3)).collect()
}

/// A spinor with a few nonzero entries, which keeps the nested derivative
/// checks cheap on the 128-dimensional module.
fn sparse_spinor(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rational> {
    let mut psi = vec![Rational::zero(); dim];
    for _ in 0..3 {
        let i = rng.gen_range(0..dim);
        psi[i] += Rational::from_integer(rng.gen_range(1i64..=3).into());
    }
    if psi.iter().all(Zero::is_zero) {
        psi[0] = Rational::one();
    }
    psi
}

/// A random element of `so_{n+1}` with a few nonzero coordinates.
fn sparse_so(rng: &mut ChaCha8Rng, dim: usize) -> SparseMatrix<Rational> {
    let pairs = so_pairs(dim);
    let mut coeffs = vec![Rational::zero(); pairs.len()];
    for _ in 0..4 {
        let p = rng.gen_range(0..pairs.len());
        coeffs[p] += small_int(rng, 2);
    }
    SoElement::from_coefficients(dim, &coeffs)
        .expect("coefficient count matches")
        .matrix()
        .clone()
}

fn fixed_point_value(ca: &CliffordAlgebra, field: &SpinorField, x: &SpherePoint) -> Vec<Rational> {
    field.value_at(ca, x.coords())
}

fn vanishes_at(ca: &CliffordAlgebra, field: &SpinorField, points: &[SpherePoint]) -> bool {
    points
        .iter()
        .all(|p| fixed_point_value(ca, field, p).iter().all(Zero::is_zero))
}

fn ks_check(ca: &CliffordAlgebra, points: &[SpherePoint], seed: u64) -> Result<(usize, usize)> {
    let n = ca.n();
    let dim = ca.module_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4b53);
    let tangents = points
        .iter()
        .map(|p| p.project(&random_vector(&mut rng, n + 1)))
        .collect::<Result<Vec<_>>>()?;
    let per_point: Vec<Vec<bool>> = tangents
        .par_iter()
        .map(|x| {
            (0..dim)
                .map(|c| killing_equation_holds(ca, &KillingSpinorField::new(basis(dim, c)), x))
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<_>>()?;
    let failures = per_point.iter().flatten().filter(|ok| !**ok).count();
    let spinors = (0..dim)
        .filter(|&c| per_point.iter().all(|row| row[c]))
        .count();
    Ok((failures, spinors))
}

fn clifford_identities(ca: &CliffordAlgebra, points: &[SpherePoint], rng: &mut ChaCha8Rng) -> Result<(bool, bool, bool)> {
    let n = ca.n();
    let dim = ca.module_dim();
    let mut sym = true;
    let mut square = true;
    let mut skew = true;
    for p in points.iter().take(20) {
        let v = random_vector(rng, n + 1);
        let w = random_vector(rng, n + 1);
        let s1 = random_vector(rng, dim);
        let s2 = random_vector(rng, dim);
        let vw = dot(&v, &w);
        let lhs: Vec<Rational> = mu_apply(ca, &v, &w, &s1)
            .into_iter()
            .zip(mu_apply(ca, &w, &v, &s1))
            .map(|(a, b)| a + b)
            .collect();
        sym &= lhs
            .iter()
            .zip(&s1)
            .all(|(l, s)| *l == -Rational::from_integer(2.into()) * &vw * s);

        let x = p.project(&v)?;
        let norm = dot(x.vector(), x.vector());
        let once = clifford_action_at(ca, &x, &s1)?;
        let twice = clifford_action_at(ca, &x, &once)?;
        square &= twice.iter().zip(&s1).all(|(t, s)| *t == -(&norm * s));
        skew &= dot(&once, &s2) == -dot(&s1, &clifford_action_at(ca, &x, &s2)?);
    }
    Ok((sym, square, skew))
}

/// `s` from `V(e_{n+1})_i = a_{i,n}` and the `B_{i,n}` coefficient of the
/// algebraic square, over basis spinor pairs.
fn squaring_constant(ca: &CliffordAlgebra, ka: &KillingAlgebra<Rational>) -> Result<Rational> {
    let n = ca.n();
    let dim = ca.module_dim();
    let pole = SpherePoint::pole(n);
    for a in 0..dim {
        for b in a + 1..dim {
            let (ea, eb) = (basis(dim, a), basis(dim, b));
            let sq = ka.spinor_square(&ea, &eb)?;
            let v = squaring_vector_at(ca, pole.coords(), &ea, &eb);
            for (i, vi) in v.iter().enumerate().take(n) {
                let c = sq.matrix().get(i, n);
                if !c.is_zero() {
                    return Ok(vi / c);
                }
            }
        }
    }
    Err(Error::Certificate("spinor square vanishes on all basis pairs".into()))
}

fn squaring_pairs(dim: usize, rng: &mut ChaCha8Rng) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    let mut pairs = Vec::new();
    if dim <= 16 {
        for a in 0..dim {
            for b in a..dim {
                pairs.push((basis(dim, a), basis(dim, b)));
            }
        }
    } else {
        for _ in 0..48 {
            let (a, b) = (rng.gen_range(0..dim), rng.gen_range(0..dim));
            pairs.push((basis(dim, a), basis(dim, b)));
        }
    }
    for _ in 0..4 {
        pairs.push((random_vector(rng, dim), random_vector(rng, dim)));
    }
    pairs
}

fn killing_vector_equation(
    ca: &CliffordAlgebra,
    points: &[SpherePoint],
    rng: &mut ChaCha8Rng,
) -> Result<bool> {
    let n = ca.n();
    let dim = ca.module_dim();
    let mut ok = true;
    for p in points.iter().take(5) {
        let psi1 = lift(&sparse_spinor(rng, dim));
        let psi2 = lift(&sparse_spinor(rng, dim));
        let x = lift(p.coords());
        let y = lift(p.project(&random_vector(rng, n + 1))?.vector());
        let z = lift(p.project(&random_vector(rng, n + 1))?.vector());
        let field = |q: &[Jet]| squaring_vector_at(ca, q, &psi1, &psi2);
        let ny = project(&x, &directional(&x, &y, field));
        let nz = project(&x, &directional(&x, &z, field));
        ok &= (dot(&ny, &z) + dot(&nz, &y)).is_zero();
    }
    Ok(ok)
}

fn lie_sign(ca: &CliffordAlgebra) -> Result<i64> {
    let n = ca.n();
    let dim = ca.module_dim();
    let b = SoElement::basis(n + 1, 0, 1)?;
    let psi = basis(dim, 0);
    let l = super::lie_derivative_at(ca, b.matrix(), SpherePoint::pole(n).coords(), &psi);
    let r = rho(&b, ca)?.mul_vec(&psi)?;
    if l == r {
        Ok(1)
    } else if l.iter().zip(&r).all(|(a, b)| *a == -b.clone()) {
        Ok(-1)
    } else {
        Ok(0)
    }
}

fn lie_cases(
    n: usize,
    dim: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(SoElement<Rational>, Vec<Rational>)>> {
    let mut cases = Vec::new();
    for (p, (i, j)) in so_pairs(n + 1).into_iter().enumerate() {
        cases.push((SoElement::basis(n + 1, i, j)?, basis(dim, p % dim)));
    }
    for _ in 0..3 {
        cases.push((SoElement::new(sparse_so(rng, n + 1))?, sparse_spinor(rng, dim)));
    }
    Ok(cases)
}

fn derivation_holds(
    ca: &CliffordAlgebra,
    x_field: &VectorField,
    psi: &[Rational],
    points: &[SpherePoint],
    rng: &mut ChaCha8Rng,
) -> Result<bool> {
    let n = ca.n();
    let nv = n + 1;
    let f = ScalarPoly::affine(small_int(rng, 3), &random_vector(rng, nv));
    let eps = SpinorField::constant(nv, psi.to_vec());
    let lhs = eps.clone().scaled(f.clone()).lie(x_field.clone());
    let lie = eps.lie(x_field.clone());
    let mut ok = true;
    for p in points {
        let x = lift(p.coords());
        let xf = f.directional_derivative(&x, &x_field.eval(&x)).value();
        let fx = f.eval(p.coords());
        let l = lhs.value_at(ca, p.coords());
        let r: Vec<Rational> = lie
            .value_at(ca, p.coords())
            .iter()
            .zip(psi)
            .map(|(li, si)| &fx * li + &xf * si)
            .collect();
        ok &= l == r;

        // The same rule for the covariant derivative on polynomial fields.
        let t = p.project(&random_vector(rng, nv))?;
        let g = PolySpinorField::constant(nv, psi.to_vec());
        let lhs = super::covariant_derivative(ca, &g.scaled(&f)?, &t)?;
        let tf = f.directional_derivative(p.coords(), t.vector());
        let rhs: Vec<Rational> = super::covariant_derivative(ca, &g, &t)?
            .iter()
            .zip(psi)
            .map(|(d, si)| &fx * d + &tf * si)
            .collect();
        ok &= lhs == rhs;
    }
    Ok(ok)
}

fn field_properties(
    ca: &CliffordAlgebra,
    points: &[SpherePoint],
    rng: &mut ChaCha8Rng,
) -> Result<(bool, bool, bool, bool)> {
    let n = ca.n();
    let nv = n + 1;
    let dim = ca.module_dim();
    let x = VectorField::Linear(sparse_so(rng, nv));
    let y = VectorField::Linear(sparse_so(rng, nv));
    let z = VectorField::Linear(sparse_so(rng, nv));
    let w = VectorField::Projected(random_vector(rng, nv));
    let psi = sparse_spinor(rng, dim);
    let eps = SpinorField::constant(nv, psi.clone());

    let derivation = derivation_holds(ca, &x, &psi, points, rng)?;

    let h1 = VectorField::Linear(SoElement::basis(nv, 0, 1)?.matrix().clone());
    let h2 = VectorField::Linear(SoElement::basis(nv, 2, 3)?.matrix().clone());
    let mut morphism = true;
    for (a, b) in [(&x, &y), (&h1, &h2)] {
        let lhs = eps
            .clone()
            .lie(b.clone())
            .lie(a.clone())
            .minus(eps.clone().lie(a.clone()).lie(b.clone()));
        let bracket = eps.clone().lie(VectorField::bracket(a.clone(), b.clone()));
        morphism &= vanishes_at(ca, &lhs.minus(bracket), points);
    }

    let clifford = vanishes_at(
        ca,
        &eps.clone()
            .clifford(z.clone())
            .lie(x.clone())
            .minus(eps.clone().clifford(VectorField::bracket(x.clone(), z.clone())))
            .minus(eps.clone().lie(x.clone()).clifford(z)),
        points,
    );

    let mut affine = true;
    for v in [&w, &y] {
        let expr = SpinorField::Sum(vec![
            (Rational::one(), eps.clone().lie(x.clone()).covariant(v.clone())),
            (-Rational::one(), eps.clone().covariant(v.clone()).lie(x.clone())),
            (
                Rational::one(),
                eps.clone().covariant(VectorField::bracket(x.clone(), v.clone())),
            ),
        ]);
        affine &= vanishes_at(ca, &expr, points);
    }
    Ok((derivation, morphism, clifford, affine))
}

/// Runs every geometric check on `S^n` at `points` seeded rational points.
pub fn check_geometry(n: usize, points: usize, seed: u64) -> Result<GeometryReport> {
    let start = Instant::now();
    if !crate::algebra::SPHERES.contains(&n) {
        return Err(Error::Unsupported {
            what: "sphere",
            value: n.to_string(),
        });
    }
    let ca = build_clifford(n)?;
    let ka = build_killing_algebra::<Rational>(n)?;
    let dim = ca.module_dim();
    let pts = sample_sphere_points(n, points, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let (eq_ks_failures, killing_spinors) = ks_check(&ca, &pts, seed)?;
    let (mu_symmetrization, clifford_square, clifford_skew) =
        clifford_identities(&ca, &pts, &mut rng)?;

    let s = squaring_constant(&ca, &ka)?;
    let cert_points = sample_sphere_points(n, n + 5, seed.wrapping_add(1));
    let pairs = squaring_pairs(dim, &mut rng);
    let squaring_matches = pairs
        .par_iter()
        .map(|(p1, p2)| -> Result<bool> {
            let expected = ka.spinor_square(p1, p2)?.matrix().scale(&s);
            Ok(match spinor_squaring_field(
                &ca,
                &KillingSpinorField::new(p1.clone()),
                &KillingSpinorField::new(p2.clone()),
                &cert_points,
            ) {
                Ok(field) => *field.element().matrix() == expected,
                Err(Error::Certificate(_)) => false,
                Err(e) => return Err(e),
            })
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let killing_vector = killing_vector_equation(&ca, &pts, &mut rng)?;

    let sign = lie_sign(&ca)?;
    let cases = lie_cases(n, dim, &mut rng)?;
    let lie_points: Vec<SpherePoint> = std::iter::once(SpherePoint::pole(n))
        .chain(pts.iter().take(4).cloned())
        .collect();
    let lie_matches = sign != 0
        && cases
            .par_iter()
            .map(|(a, psi)| -> Result<bool> {
                let expected: Vec<Rational> = rho(a, &ca)?
                    .mul_vec(psi)?
                    .into_iter()
                    .map(|c| c * Rational::from_integer(sign.into()))
                    .collect();
                Ok(match lie_derivative(
                    &ca,
                    &LinearKillingField::new(a.clone()),
                    &KillingSpinorField::new(psi.clone()),
                    &lie_points,
                ) {
                    Ok(field) => field.psi() == expected.as_slice(),
                    Err(Error::Certificate(_)) => false,
                    Err(e) => return Err(e),
                })
            })
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);

    let prop_points: Vec<SpherePoint> = pts.iter().take(if n > 8 { 1 } else { 3 }).cloned().collect();
    let (derivation, morphism, clifford_compatible, affine) =
        field_properties(&ca, &prop_points, &mut rng)?;

    let properties = GeometryProperties {
        mu_symmetrization,
        clifford_square,
        clifford_skew,
        killing_vector_equation: killing_vector,
        derivation,
        morphism,
        clifford_compatible,
        affine,
    };
    let passed = eq_ks_failures == 0
        && killing_spinors == dim
        && squaring_matches
        && lie_matches
        && properties.all()
        && !pts.is_empty();
    Ok(GeometryReport {
        sphere: n,
        module_dim: dim,
        seed,
        points_checked: pts.len(),
        eq_ks_failures,
        killing_spinors,
        squaring_pairs: pairs.len(),
        squaring_matches,
        lie_pairs: cases.len(),
        lie_derivative_matches: lie_matches,
        constants: GeometryConstants { s, sign },
        properties,
        passed,
        wall_ms: start.elapsed().as_millis(),
    })
}
