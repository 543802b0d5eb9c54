//! Identification of a Killing algebra: Killing form, maximal torus, roots,
//! Cartan matrix and Dynkin type.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::KillingAlgebra;
use crate::error::{Error, Result};
use crate::exact::{
    dot, gauss, int, kernel_basis, ldlt_signature, simultaneous_eigenspaces, solve, Signature,
    SparseMatrix,
};
use crate::{GaussianRational, Rational};

/// Weight of the linear functional used to pick positive roots.
pub const POSITIVITY_BASE: i64 = 1000;

/// `κ(b_x, b_y) = tr(ad b_x ∘ ad b_y)`.
pub fn killing_form(ka: &KillingAlgebra) -> SparseMatrix<Rational> {
    let dim = ka.dim();
    let rows: Vec<Vec<(usize, usize, Rational)>> = (0..dim)
        .into_par_iter()
        .map(|x| {
            (x..dim)
                .filter_map(|y| {
                    // Σ_v Σ_u c_{xv}^u c_{yu}^v
                    let mut acc = Rational::zero();
                    for v in 0..dim {
                        for (u, c) in ka.structure_constants(x, v) {
                            if let Some((_, d)) =
                                ka.structure_constants(y, *u).iter().find(|(w, _)| *w == v)
                            {
                                acc += c * d;
                            }
                        }
                    }
                    (!acc.is_zero()).then_some((x, y, acc))
                })
                .collect()
        })
        .collect();
    let triplets = rows.into_iter().flatten().flat_map(|(x, y, v)| {
        if x == y {
            vec![(x, y, v)]
        } else {
            vec![(x, y, v.clone()), (y, x, v)]
        }
    });
    SparseMatrix::from_triplets(dim, dim, triplets)
}

/// A maximal abelian subalgebra spanned by basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanSubalgebra {
    /// Basis indices of `h_1, …, h_r`.
    pub elements: Vec<usize>,
    /// Dimension of the joint centralizer of the `h_i`.
    pub centralizer_dim: usize,
}

impl CartanSubalgebra {
    pub fn rank(&self) -> usize {
        self.elements.len()
    }
}

/// The standard torus `h_i = B_{2i-1,2i}` (one-based), certified maximal.
pub fn cartan_subalgebra(ka: &KillingAlgebra) -> Result<CartanSubalgebra> {
    let r = (ka.sphere() + 1) / 2;
    let elements = (0..r).map(|i| ka.so_index(2 * i, 2 * i + 1)).collect();
    cartan_subalgebra_from(ka, elements)
}

/// Certifies that the given basis elements commute and that their joint
/// centralizer is exactly their span.
pub fn cartan_subalgebra_from(ka: &KillingAlgebra, elements: Vec<usize>) -> Result<CartanSubalgebra> {
    if let Some(&bad) = elements.iter().find(|&&e| e >= ka.dim()) {
        return Err(Error::IndexOutOfRange(format!("basis index {bad}")));
    }
    for (k, &a) in elements.iter().enumerate() {
        for &b in &elements[k + 1..] {
            if !ka.structure_constants(a, b).is_empty() {
                return Err(Error::Certificate(format!(
                    "torus elements {a} and {b} do not commute"
                )));
            }
        }
    }
    let stacked = SparseMatrix::vstack(
        &elements.iter().map(|&h| ka.ad_matrix(h)).collect::<Vec<_>>(),
    )?;
    let centralizer_dim = kernel_basis(&stacked).len();
    if centralizer_dim != elements.len() {
        return Err(Error::Certificate(format!(
            "centralizer has dimension {centralizer_dim}, torus has rank {}",
            elements.len()
        )));
    }
    Ok(CartanSubalgebra {
        elements,
        centralizer_dim,
    })
}

pub type Root = Vec<Rational>;

#[derive(Clone, Debug, PartialEq)]
pub struct RootSystem {
    pub rank: usize,
    /// `α(h_k) / i` for each root `α`.
    pub roots: Vec<Root>,
    /// Complexified root vectors, one per root.
    pub root_vectors: Vec<Vec<GaussianRational>>,
}

/// Joint eigenvalues of `ad(h_1), …, ad(h_r)` over the Gaussian rationals.
pub fn root_system(ka: &KillingAlgebra, cartan: &CartanSubalgebra) -> Result<RootSystem> {
    let to_g = |q: Rational| gauss(Rational::zero(), q);
    let candidates: Vec<GaussianRational> = [
        Rational::zero(),
        Rational::new(1.into(), 2.into()),
        Rational::new((-1).into(), 2.into()),
        Rational::one(),
        -Rational::one(),
    ]
    .into_iter()
    .map(to_g)
    .collect();
    let ops: Vec<SparseMatrix<GaussianRational>> = cartan
        .elements
        .iter()
        .map(|&h| ka.ad_matrix(h).map(|v| gauss(v.clone(), Rational::zero())))
        .collect();
    let spaces = simultaneous_eigenspaces(&ops, &vec![candidates; ops.len()])?;
    let mut roots = Vec::new();
    let mut root_vectors = Vec::new();
    let mut zero_dim = 0;
    for space in spaces {
        if space.eigenvalues.iter().all(|e| e.is_zero()) {
            zero_dim += space.basis.len();
            continue;
        }
        if space.basis.len() != 1 {
            return Err(Error::Certificate(format!(
                "root space of dimension {}",
                space.basis.len()
            )));
        }
        roots.push(space.eigenvalues.iter().map(|e| e.im.clone()).collect());
        root_vectors.extend(space.basis);
    }
    if zero_dim != cartan.rank() {
        return Err(Error::Certificate(format!(
            "zero weight space has dimension {zero_dim}, expected {}",
            cartan.rank()
        )));
    }
    Ok(RootSystem {
        rank: cartan.rank(),
        roots,
        root_vectors,
    })
}

fn positivity(root: &[Rational]) -> Rational {
    let base = Rational::from_integer(POSITIVITY_BASE.into());
    root.iter()
        .fold(Rational::zero(), |acc, a| acc * base.clone() + a.clone())
}

fn sub(a: &[Rational], b: &[Rational]) -> Root {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl RootSystem {
    /// Roots with positive value under `Σ_k N^{r-k} α_k`, in input order.
    pub fn positive_roots(&self) -> Result<Vec<Root>> {
        let mut out = Vec::new();
        for root in &self.roots {
            let f = positivity(root);
            if f.is_zero() {
                return Err(Error::Certificate(format!(
                    "positivity functional vanishes on {}",
                    fmt_vec(root)
                )));
            }
            if f.is_positive() {
                out.push(root.clone());
            }
        }
        Ok(out)
    }

    /// Distinct values of `(α, α)`, ascending, with counts.
    pub fn length_census(&self) -> Vec<(Rational, usize)> {
        let mut census: Vec<(Rational, usize)> = Vec::new();
        for root in &self.roots {
            let l = dot(root, root);
            match census.iter_mut().find(|(v, _)| *v == l) {
                Some(slot) => slot.1 += 1,
                None => census.push((l, 1)),
            }
        }
        census.sort();
        census
    }

    /// Checks `±` pairing, absence of zero and the dimension count.
    pub fn is_consistent(&self, algebra_dim: usize) -> bool {
        let set: HashSet<&Root> = self.roots.iter().collect();
        set.len() == self.roots.len()
            && self.roots.len() + self.rank == algebra_dim
            && self.roots.iter().all(|r| {
                r.iter().any(|c| !c.is_zero())
                    && set.contains(&r.iter().map(|c| -c).collect::<Root>())
            })
    }
}

/// Positive roots that are not a sum of two positive roots, sorted by
/// decreasing value of the positivity functional.
pub fn simple_roots(rs: &RootSystem) -> Result<Vec<Root>> {
    let positive = rs.positive_roots()?;
    let set: HashSet<&Root> = positive.iter().collect();
    let mut simple: Vec<Root> = positive
        .iter()
        .filter(|a| !positive.iter().any(|b| set.contains(&sub(a, b))))
        .cloned()
        .collect();
    if simple.len() != rs.rank {
        return Err(Error::Certificate(format!(
            "{} simple roots for rank {}",
            simple.len(),
            rs.rank
        )));
    }
    simple.sort_by_key(|r| std::cmp::Reverse(positivity(r)));
    Ok(simple)
}

/// Coefficients of `root` in the simple roots, if they exist.
pub fn simple_coordinates(simple: &[Root], root: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let r = root.len();
    let columns: Vec<Vec<Rational>> = simple.to_vec();
    solve(&SparseMatrix::from_columns(r, &columns), root)
}

/// Certificate: every positive root is a nonnegative integer combination of
/// the simple roots.
pub fn check_simple_root_certificate(rs: &RootSystem, simple: &[Root]) -> Result<()> {
    for root in rs.positive_roots()? {
        let coeffs = simple_coordinates(simple, &root)?.ok_or_else(|| {
            Error::Certificate(format!("{} is not in the simple-root span", fmt_vec(&root)))
        })?;
        if coeffs.iter().any(|c| !c.is_integer() || c.is_negative()) {
            return Err(Error::Certificate(format!(
                "{} has coordinates {} in the simple roots",
                fmt_vec(&root),
                fmt_vec(&coeffs)
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CartanMatrix {
    pub a: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self> {
        let cm = Self { a };
        if !cm.is_valid() {
            return Err(Error::Certificate(format!("invalid Cartan matrix {:?}", cm.a)));
        }
        Ok(cm)
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn is_valid(&self) -> bool {
        let r = self.a.len();
        self.a.iter().all(|row| row.len() == r)
            && (0..r).all(|i| {
                (0..r).all(|j| {
                    let v = self.a[i][j];
                    if i == j {
                        v == 2
                    } else {
                        (-3..=0).contains(&v) && ((v == 0) == (self.a[j][i] == 0))
                    }
                })
            })
    }
}

/// `a_ij = 2(α_i, α_j) / (α_j, α_j)` with the Euclidean form.
pub fn cartan_matrix(simple: &[Root]) -> Result<CartanMatrix> {
    let two = int(2);
    let a = simple
        .iter()
        .map(|ai| {
            simple
                .iter()
                .map(|aj| {
                    let v = two.clone() * dot(ai, aj) / dot(aj, aj);
                    if !v.is_integer() {
                        return Err(Error::Certificate(format!("non-integral Cartan entry {v}")));
                    }
                    i64::try_from(v.to_integer())
                        .map_err(|_| Error::Certificate("Cartan entry out of range".into()))
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    CartanMatrix::new(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DynkinType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(r) => write!(f, "A{r}"),
            DynkinType::B(r) => write!(f, "B{r}"),
            DynkinType::C(r) => write!(f, "C{r}"),
            DynkinType::D(r) => write!(f, "D{r}"),
            DynkinType::E(r) => write!(f, "E{r}"),
            DynkinType::F4 => write!(f, "F4"),
            DynkinType::G2 => write!(f, "G2"),
        }
    }
}

impl Serialize for DynkinType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn simply_laced(r: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; r]; r];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in edges {
        a[i][j] = -1;
        a[j][i] = -1;
    }
    a
}

fn chain(r: usize) -> Vec<(usize, usize)> {
    (1..r).map(|i| (i - 1, i)).collect()
}

impl DynkinType {
    /// Catalog Cartan matrix in Bourbaki numbering (zero-based). Low-rank
    /// coincidences (`C2 = B2`, `D3 = A3`) are listed once.
    pub fn cartan_matrix(self) -> Option<Vec<Vec<i64>>> {
        let m = match self {
            DynkinType::A(r) if r >= 1 => simply_laced(r, &chain(r)),
            DynkinType::B(r) if r >= 2 => {
                let mut a = simply_laced(r, &chain(r));
                a[r - 2][r - 1] = -2;
                a
            }
            DynkinType::C(r) if r >= 3 => {
                let mut a = simply_laced(r, &chain(r));
                a[r - 1][r - 2] = -2;
                a
            }
            DynkinType::D(r) if r >= 4 => {
                let mut edges = chain(r - 1);
                edges.push((r - 3, r - 1));
                simply_laced(r, &edges)
            }
            DynkinType::E(r) if (6..=8).contains(&r) => {
                let mut edges = vec![(0, 2), (1, 3)];
                edges.extend((2..r - 1).map(|i| (i, i + 1)));
                simply_laced(r, &edges)
            }
            DynkinType::F4 => {
                let mut a = simply_laced(4, &chain(4));
                a[1][2] = -2;
                a
            }
            DynkinType::G2 => vec![vec![2, -1], vec![-3, 2]],
            _ => return None,
        };
        Some(m)
    }

    /// Connected types of the given rank, in catalog order.
    pub fn catalog(rank: usize) -> Vec<DynkinType> {
        let mut out = vec![
            DynkinType::A(rank),
            DynkinType::B(rank),
            DynkinType::C(rank),
            DynkinType::D(rank),
            DynkinType::E(rank),
            DynkinType::F4,
            DynkinType::G2,
        ];
        out.retain(|t| t.cartan_matrix().is_some_and(|m| m.len() == rank));
        out
    }
}

/// Searches for a permutation `π` with `a[π(i)][π(j)] = target[i][j]`.
fn find_relabeling(a: &[Vec<i64>], target: &[Vec<i64>]) -> Option<Vec<usize>> {
    fn extend(a: &[Vec<i64>], t: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let k = perm.len();
        if k == t.len() {
            return true;
        }
        for cand in 0..t.len() {
            if used[cand] {
                continue;
            }
            let fits = (0..k).all(|i| a[perm[i]][cand] == t[i][k] && a[cand][perm[i]] == t[k][i]);
            if fits {
                used[cand] = true;
                perm.push(cand);
                if extend(a, t, perm, used) {
                    return true;
                }
                perm.pop();
                used[cand] = false;
            }
        }
        false
    }
    let mut perm = Vec::with_capacity(target.len());
    let mut used = vec![false; target.len()];
    extend(a, target, &mut perm, &mut used).then_some(perm)
}

/// Matches a connected Cartan matrix against the catalog up to relabeling.
pub fn classify_dynkin(cm: &CartanMatrix) -> Result<DynkinType> {
    if !cm.is_valid() {
        return Err(Error::Unrecognized);
    }
    DynkinType::catalog(cm.rank())
        .into_iter()
        .find(|t| {
            let target = t.cartan_matrix().expect("catalog entries exist");
            find_relabeling(&cm.a, &target).is_some()
        })
        .ok_or(Error::Unrecognized)
}

fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootLength {
    #[serde(serialize_with = "crate::report::ser_display")]
    pub squared: Rational,
    pub count: usize,
}

/// Output of the full identification pipeline.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentifyReport {
    pub sphere: usize,
    pub dim: usize,
    pub signature: Signature,
    pub rank: usize,
    pub centralizer_dim: usize,
    /// Common value of `κ(h_i, h_i)`, present when the torus is κ-orthogonal
    /// with equal norms.
    #[serde(serialize_with = "crate::report::ser_opt_display")]
    pub torus_norm: Option<Rational>,
    pub root_count: usize,
    pub root_lengths: Vec<RootLength>,
    pub positivity_base: i64,
    pub cartan_matrix: CartanMatrix,
    pub dynkin_type: DynkinType,
}

impl IdentifyReport {
    /// Compact with the expected type.
    pub fn passed(&self) -> bool {
        self.signature.positive == 0
            && self.signature.zero == 0
            && self.torus_norm.is_some()
            && self.root_count + self.rank == self.dim
            && Some(self.dynkin_type) == expected_type(self.sphere)
    }
}

/// Type the algebra of `S^n` is expected to have.
pub fn expected_type(n: usize) -> Option<DynkinType> {
    match n {
        7 => Some(DynkinType::B(4)),
        8 => Some(DynkinType::F4),
        15 => Some(DynkinType::E(8)),
        _ => None,
    }
}

/// `κ(h_i, h_j) = c δ_ij`: returns `c`, or `None` if the torus is not
/// orthogonal with equal norms.
pub fn torus_norm(kappa: &SparseMatrix<Rational>, cartan: &CartanSubalgebra) -> Option<Rational> {
    let h = &cartan.elements;
    let c = kappa.get(h[0], h[0]);
    let ok = h.iter().enumerate().all(|(i, &a)| {
        h.iter().enumerate().all(|(j, &b)| {
            let v = kappa.get(a, b);
            if i == j {
                v == c
            } else {
                v.is_zero()
            }
        })
    });
    (ok && !c.is_zero()).then_some(c)
}

/// Killing form, torus, roots, simple roots, Cartan matrix and type.
pub fn identify(ka: &KillingAlgebra) -> Result<IdentifyReport> {
    let kappa = killing_form(ka);
    let signature = ldlt_signature(&kappa)?;
    let cartan = cartan_subalgebra(ka)?;
    let norm = torus_norm(&kappa, &cartan);
    if norm.is_none() {
        return Err(Error::Certificate(
            "torus is not Killing-orthogonal with equal norms".into(),
        ));
    }
    let rs = root_system(ka, &cartan)?;
    if !rs.is_consistent(ka.dim()) {
        return Err(Error::Certificate("root system is not closed under negation".into()));
    }
    let simple = simple_roots(&rs)?;
    check_simple_root_certificate(&rs, &simple)?;
    let cm = cartan_matrix(&simple)?;
    let dynkin_type = classify_dynkin(&cm)?;
    Ok(IdentifyReport {
        sphere: ka.sphere(),
        dim: ka.dim(),
        signature,
        rank: cartan.rank(),
        centralizer_dim: cartan.centralizer_dim,
        torus_norm: norm,
        root_count: rs.roots.len(),
        root_lengths: rs
            .length_census()
            .into_iter()
            .map(|(squared, count)| RootLength { squared, count })
            .collect(),
        positivity_base: POSITIVITY_BASE,
        cartan_matrix: cm,
        dynkin_type,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_killing_algebra;
    use crate::exact::rat;

    fn cm(a: Vec<Vec<i64>>) -> CartanMatrix {
        CartanMatrix::new(a).unwrap()
    }

    #[test]
    fn textbook_rank_two() {
        assert_eq!(classify_dynkin(&cm(vec![vec![2, -1], vec![-1, 2]])).unwrap(), DynkinType::A(2));
        assert_eq!(classify_dynkin(&cm(vec![vec![2, -1], vec![-3, 2]])).unwrap(), DynkinType::G2);
        assert_eq!(classify_dynkin(&cm(vec![vec![2, -3], vec![-1, 2]])).unwrap(), DynkinType::G2);
        assert_eq!(classify_dynkin(&cm(vec![vec![2, -2], vec![-1, 2]])).unwrap(), DynkinType::B(2));
    }

    #[test]
    fn catalog_matrices_are_valid_and_distinct() {
        for r in 1..=8 {
            let cat = DynkinType::catalog(r);
            for t in &cat {
                let m = cm(t.cartan_matrix().unwrap());
                assert_eq!(classify_dynkin(&m).unwrap(), *t, "{t}");
            }
        }
        assert_eq!(DynkinType::catalog(4).len(), 5);
        assert_eq!(DynkinType::catalog(8).len(), 5);
    }

    #[test]
    fn relabeled_e8_is_recognized() {
        let a = DynkinType::E(8).cartan_matrix().unwrap();
        let perm = [5, 2, 7, 0, 3, 6, 1, 4];
        let b: Vec<Vec<i64>> = (0..8).map(|i| (0..8).map(|j| a[perm[i]][perm[j]]).collect()).collect();
        assert_eq!(classify_dynkin(&cm(b)).unwrap(), DynkinType::E(8));
    }

    #[test]
    fn disconnected_matrix_is_unrecognized() {
        let m = cm(vec![vec![2, 0], vec![0, 2]]);
        assert!(matches!(classify_dynkin(&m), Err(Error::Unrecognized)));
    }

    #[test]
    fn invalid_cartan_matrix_rejected() {
        assert!(CartanMatrix::new(vec![vec![2, -1], vec![0, 2]]).is_err());
        assert!(CartanMatrix::new(vec![vec![1, 0], vec![0, 2]]).is_err());
    }

    #[test]
    fn killing_form_is_block_diagonal_and_torus_symmetric() {
        let ka: KillingAlgebra = build_killing_algebra(8).unwrap();
        let kappa = killing_form(&ka);
        assert!(kappa.is_symmetric());
        for (x, y, _) in kappa.triplets() {
            assert_eq!(ka.parity(x), ka.parity(y));
        }
        let cartan = cartan_subalgebra(&ka).unwrap();
        let h = &cartan.elements;
        assert_eq!(kappa.get(h[0], h[0]), kappa.get(h[1], h[1]));
        assert!(torus_norm(&kappa, &cartan).is_some());
    }

    #[test]
    fn torus_ranks_and_certificates() {
        for (n, r) in [(7, 4), (8, 4)] {
            let ka: KillingAlgebra = build_killing_algebra(n).unwrap();
            let c = cartan_subalgebra(&ka).unwrap();
            assert_eq!((c.rank(), c.centralizer_dim), (r, r));
        }
        let ka: KillingAlgebra = build_killing_algebra(7).unwrap();
        // A smaller torus has a larger centralizer.
        let small = vec![ka.so_index(0, 1), ka.so_index(2, 3)];
        assert!(matches!(cartan_subalgebra_from(&ka, small), Err(Error::Certificate(_))));
        let clash = vec![ka.so_index(0, 1), ka.so_index(1, 2)];
        assert!(cartan_subalgebra_from(&ka, clash).is_err());
    }

    #[test]
    fn s7_roots_and_simple_roots() {
        let ka: KillingAlgebra = build_killing_algebra(7).unwrap();
        let rs = root_system(&ka, &cartan_subalgebra(&ka).unwrap()).unwrap();
        assert_eq!(rs.roots.len(), 32);
        assert!(rs.is_consistent(36));
        let simple = simple_roots(&rs).unwrap();
        assert_eq!(simple.len(), 4);
        check_simple_root_certificate(&rs, &simple).unwrap();
        assert_eq!(
            rs.length_census(),
            vec![(int(1), 8), (int(2), 24)]
        );
    }

    #[test]
    fn simple_coordinates_of_a_sum() {
        let s = vec![vec![int(1), int(-1)], vec![int(0), int(1)]];
        let c = simple_coordinates(&s, &[int(1), int(1)]).unwrap().unwrap();
        assert_eq!(c, vec![int(1), int(2)]);
        assert_eq!(simple_coordinates(&s, &[rat(1, 2), int(0)]).unwrap().unwrap()[0], rat(1, 2));
    }
}
