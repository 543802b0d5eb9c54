//! Property tests for the invariants of each module.

use killing_core::algebra::build_killing_algebra;
use killing_core::clifford::build_clifford;
use killing_core::exact::{
    dot, int, kernel_basis, ldlt_signature, rank, simultaneous_eigenspaces, SparseMatrix,
};
use killing_core::geometry::{clifford_action_at, mu_apply, Jet, SpherePoint};
use killing_core::rep::{
    decompose, irreducible_character, tensor_character, trivial_multiplicity, weyl_dim,
    AlgebraType, HighestWeight,
};
use killing_core::spin::{rho, SoElement};
use killing_core::{Error, Rational};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn rat_strategy() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn int_vec(len: usize, bound: i64) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-bound..=bound).prop_map(int), len)
}

fn rat_vec(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rat_strategy(), len)
}

/// Characteristic polynomial coefficients `c_0 … c_n` (monic, `c_n = 1`) by
/// the Faddeev–LeVerrier recursion.
fn char_poly(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let am = SparseMatrix::from_dense(a);
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut m = SparseMatrix::<Rational>::zeros(n, n);
    for k in 1..=n {
        m = am.mul(&m).unwrap().add(&SparseMatrix::scalar(n, c[n - k + 1].clone())).unwrap();
        let t = am.mul(&m).unwrap().trace();
        c[n - k] = -t / Rational::from_integer((k as i64).into());
    }
    c
}

fn sign_changes(coeffs: &[Rational]) -> usize {
    let signs: Vec<bool> = coeffs.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Inertia of a symmetric matrix from its (real-rooted) characteristic
/// polynomial: Descartes' rule is exact when all roots are real.
fn inertia_oracle(a: &[Vec<Rational>]) -> [usize; 3] {
    let c = char_poly(a);
    let zero = c.iter().take_while(|x| x.is_zero()).count();
    let positive = sign_changes(&c);
    let reflected: Vec<Rational> = c
        .iter()
        .enumerate()
        .map(|(i, x)| if i % 2 == 1 { -x.clone() } else { x.clone() })
        .collect();
    [positive, sign_changes(&reflected), zero]
}

fn symmetric(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(-2i64..=2, n * (n + 1) / 2).prop_map(move |entries| {
        let mut m = vec![vec![Rational::zero(); n]; n];
        let mut it = entries.into_iter();
        for i in 0..n {
            for j in i..n {
                let v = int(it.next().unwrap());
                m[i][j] = v.clone();
                m[j][i] = v;
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_vectors_are_annihilated(
        rows in 1usize..6,
        cols in 1usize..7,
        seed in prop::collection::vec(-3i64..=3, 42),
    ) {
        let dense: Vec<Vec<Rational>> = (0..rows)
            .map(|r| (0..cols).map(|c| int(seed[r * cols + c])).collect())
            .collect();
        let m = SparseMatrix::from_dense(&dense);
        let kernel = kernel_basis(&m);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        prop_assert_eq!(kernel.len() + rank(&m), cols);
    }

    #[test]
    fn signature_matches_characteristic_polynomial(n in 1usize..=4, m in symmetric(4)) {
        let a: Vec<Vec<Rational>> = m[..n].iter().map(|r| r[..n].to_vec()).collect();
        let sig = ldlt_signature(&SparseMatrix::from_dense(&a)).unwrap();
        prop_assert_eq!(sig.as_array(), inertia_oracle(&a));
    }

    #[test]
    fn joint_eigenspaces_span(
        diag1 in prop::collection::vec(-2i64..=2, 5),
        diag2 in prop::collection::vec(-2i64..=2, 5),
        upper in prop::collection::vec(-2i64..=2, 10),
        drop in prop::bool::ANY,
    ) {
        // Conjugate two diagonal matrices by a unipotent upper-triangular P.
        let n = 5;
        let mut p = vec![vec![Rational::zero(); n]; n];
        let mut it = upper.into_iter();
        for i in 0..n {
            p[i][i] = Rational::one();
            for j in i + 1..n {
                p[i][j] = int(it.next().unwrap());
            }
        }
        let pm = SparseMatrix::from_dense(&p);
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|c| {
                let mut e = vec![Rational::zero(); n];
                e[c] = Rational::one();
                killing_core::exact::solve(&pm, &e).unwrap().unwrap()
            })
            .collect();
        let pinv = SparseMatrix::from_columns(n, &cols);
        let conj = |d: &[i64]| {
            let dm = SparseMatrix::from_dense(
                &(0..n).map(|i| (0..n).map(|j| if i == j { int(d[i]) } else { int(0) }).collect()).collect::<Vec<_>>(),
            );
            pm.mul(&dm).unwrap().mul(&pinv).unwrap()
        };
        let ops = vec![conj(&diag1), conj(&diag2)];
        let mut cand1: Vec<Rational> = diag1.iter().map(|&v| int(v)).collect();
        cand1.sort();
        cand1.dedup();
        let mut cand2: Vec<Rational> = diag2.iter().map(|&v| int(v)).collect();
        cand2.sort();
        cand2.dedup();
        if drop && cand1.len() > 1 {
            cand1.pop();
        }
        match simultaneous_eigenspaces(&ops, &[cand1, cand2]) {
            Ok(spaces) => {
                prop_assert_eq!(spaces.iter().map(|s| s.basis.len()).sum::<usize>(), n);
                for s in &spaces {
                    for v in &s.basis {
                        for (op, ev) in ops.iter().zip(&s.eigenvalues) {
                            let av = op.mul_vec(v).unwrap();
                            prop_assert!(av.iter().zip(v).all(|(a, b)| *a == ev * b));
                        }
                    }
                }
            }
            Err(Error::FailureToSpan { found, ambient }) => {
                prop_assert!(drop);
                prop_assert!(found < ambient);
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spin_representation_is_a_homomorphism(
        n in prop::sample::select(vec![7usize, 8]),
        ca in int_vec(36, 2),
        cb in int_vec(36, 2),
    ) {
        let c = build_clifford(n).unwrap();
        let len = (n + 1) * n / 2;
        let a = SoElement::from_coefficients(n + 1, &ca[..len]).unwrap();
        let b = SoElement::from_coefficients(n + 1, &cb[..len]).unwrap();
        let ra = rho(&a, &c).unwrap();
        let rb = rho(&b, &c).unwrap();
        prop_assert!(ra.is_antisymmetric());
        prop_assert_eq!(rho(&a.commutator(&b).unwrap(), &c).unwrap(), ra.commutator(&rb).unwrap());
    }

    #[test]
    fn bracket_is_invariant_and_satisfies_jacobi(
        n in prop::sample::select(vec![7usize, 8]),
        x in int_vec(52, 2),
        y in int_vec(52, 2),
        z in int_vec(52, 2),
    ) {
        let ka = build_killing_algebra::<Rational>(n).unwrap();
        let d = ka.dim();
        let (x, y, z) = (&x[..d], &y[..d], &z[..d]);
        let xy = ka.bracket(x, y).unwrap();
        let xz = ka.bracket(x, z).unwrap();
        // The basis is orthonormal for -½ tr(AB) ⊕ dot.
        prop_assert!((dot(&xy, z) + dot(y, &xz)).is_zero());
        prop_assert!(ka.jacobiator(x, y, z).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn mu_symmetrizes_to_the_inner_product(
        n in prop::sample::select(vec![7usize, 8, 15]),
        v in rat_vec(16),
        w in rat_vec(16),
        psi in int_vec(128, 3),
    ) {
        let ca = build_clifford(n).unwrap();
        let (v, w, psi) = (&v[..n + 1], &w[..n + 1], &psi[..ca.module_dim()]);
        let vw = dot(v, w);
        let sum: Vec<Rational> = mu_apply(&ca, v, w, psi)
            .into_iter()
            .zip(mu_apply(&ca, w, v, psi))
            .map(|(a, b)| a + b)
            .collect();
        prop_assert!(sum.iter().zip(psi).all(|(s, p)| *s == int(-2) * &vw * p));
    }

    #[test]
    fn clifford_action_squares_to_minus_norm(
        n in prop::sample::select(vec![7usize, 8, 15]),
        a in rat_vec(15),
        u in int_vec(16, 3),
        psi in int_vec(128, 3),
    ) {
        let ca = build_clifford(n).unwrap();
        let x = SpherePoint::stereographic(&a[..n]);
        prop_assert_eq!(dot(x.coords(), x.coords()), int(1));
        let t = x.project(&u[..n + 1]).unwrap();
        let psi = &psi[..ca.module_dim()];
        let once = clifford_action_at(&ca, &t, psi).unwrap();
        let twice = clifford_action_at(&ca, &t, &once).unwrap();
        let norm = dot(t.vector(), t.vector());
        prop_assert!(twice.iter().zip(psi).all(|(s, p)| *s == -(&norm * p)));
        prop_assert_eq!(dot(&once, psi), int(0));
    }

    #[test]
    fn jets_differentiate_products(
        a in rat_strategy(), b in rat_strategy(), x in rat_strategy(),
    ) {
        // d/dx [(x + a)(x² + b)] = x² + b + 2x(x + a).
        let j = Jet::variable(x.clone(), 0, Rational::one());
        let f = (j.clone() + Jet::from(a.clone())) * (j.clone() * j + Jet::from(b.clone()));
        let want = &x * &x + &b + int(2) * &x * (&x + &a);
        prop_assert_eq!(f.derivative(0).value(), want);
    }
}

fn small_labels(rank: usize) -> impl Strategy<Value = HighestWeight> {
    prop::collection::vec(0u32..=1, rank).prop_map(HighestWeight::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn labels_round_trip(
        t in prop::sample::select(vec![AlgebraType::b(4), AlgebraType::d(4), AlgebraType::d(8)]),
        labels in prop::collection::vec(0u32..=12, 8),
    ) {
        let hw = HighestWeight::new(labels[..t.rank()].to_vec());
        let w = t.weight_of(&hw).unwrap();
        prop_assert!(t.is_dominant(&w));
        prop_assert_eq!(t.labels_of(&w).unwrap(), hw.clone());
        prop_assert_eq!(hw.to_string().parse::<HighestWeight>().unwrap(), hw);
    }

    #[test]
    fn decompose_inverts_irreducible_character(
        t in prop::sample::select(vec![AlgebraType::b(4), AlgebraType::d(4)]),
        hw in small_labels(4),
    ) {
        let c = irreducible_character(t, &hw).unwrap();
        prop_assert_eq!(c.dim() as u64, weyl_dim(t, &hw).unwrap());
        prop_assert_eq!(decompose(&c).unwrap(), vec![(hw, 1)]);
    }

    #[test]
    fn tensor_products_account_for_dimension(
        t in prop::sample::select(vec![AlgebraType::b(3), AlgebraType::d(4)]),
        i in 1usize..=3,
        j in 1usize..=3,
    ) {
        let r = t.rank();
        let a = irreducible_character(t, &HighestWeight::fundamental(r, i)).unwrap();
        let b = irreducible_character(t, &HighestWeight::fundamental(r, j.min(r))).unwrap();
        let c = tensor_character(&a, &b).unwrap();
        let parts = decompose(&c).unwrap();
        let total: u64 = parts.iter().map(|(hw, k)| k * weyl_dim(t, hw).unwrap()).sum();
        prop_assert_eq!(total, c.dim() as u64);
        let trivial = parts
            .iter()
            .find(|(hw, _)| hw.is_zero())
            .map_or(0, |(_, k)| *k as i64);
        prop_assert_eq!(trivial_multiplicity(&c), trivial);
    }
}
