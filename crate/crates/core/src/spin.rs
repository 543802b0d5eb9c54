//! The spin representation of `so_{n+1}` on the irreducible `Cl_n` module.
//!
//! `so_n` acts through `e_i ∧ e_j ↦ -½ γ_i γ_j`; the extra generators
//! `e_i ∧ e_{n+1}` act through the even-subalgebra embedding
//! `e_i e_{n+1} ↦ σ γ_i`, giving `-σ ½ γ_i`.
//!
//! Basis orientation: `B_ij = E_ij - E_ji` for `i < j`, i.e.
//! `(e_i ∧ e_j) v = ⟨e_j, v⟩ e_i - ⟨e_i, v⟩ e_j`. With this orientation the map
//! above is a Lie algebra homomorphism and `[ρ(A), γ(v)] = γ(A v)`.

use crate::clifford::{CliffordAlgebra, SignedPerm};
use crate::error::{ensure_dim, Error, Result};
use crate::exact::{Field, SparseMatrix};

/// Sign σ of the embedding `Cl_n ≅ Cl⁰_{n+1}`, `e_i ↦ σ e_i e_{n+1}`.
pub const EMBEDDING_SIGN: i8 = 1;

/// Index pairs `(i, j)`, `i < j < dim`, in lexicographic order.
pub fn so_pairs(dim: usize) -> Vec<(usize, usize)> {
    (0..dim)
        .flat_map(|i| (i + 1..dim).map(move |j| (i, j)))
        .collect()
}

/// Position of `(i, j)` in [`so_pairs`].
pub fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * dim - i * (i + 1) / 2 + (j - i - 1)
}

/// An element of `so_N`, stored as an antisymmetric `N x N` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SoElement<T> {
    m: SparseMatrix<T>,
}

impl<T: Field> SoElement<T> {
    pub fn new(m: SparseMatrix<T>) -> Result<Self> {
        if !m.is_antisymmetric() {
            return Err(Error::Certificate("so element must be antisymmetric".into()));
        }
        Ok(Self { m })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            m: SparseMatrix::zeros(dim, dim),
        }
    }

    /// The basis element `B_ij`; a reversed pair gives `-B_ji`.
    pub fn basis(dim: usize, i: usize, j: usize) -> Result<Self> {
        if i >= dim || j >= dim || i == j {
            return Err(Error::IndexOutOfRange(format!("({i}, {j}) in so_{dim}")));
        }
        Ok(Self {
            m: SparseMatrix::from_triplets(dim, dim, [(i, j, T::one()), (j, i, -T::one())]),
        })
    }

    /// `Σ c_ij B_ij` with coefficients in [`so_pairs`] order.
    pub fn from_coefficients(dim: usize, coeffs: &[T]) -> Result<Self> {
        let pairs = so_pairs(dim);
        ensure_dim(pairs.len(), coeffs.len())?;
        let entries = pairs
            .iter()
            .zip(coeffs)
            .flat_map(|(&(i, j), c)| [(i, j, c.clone()), (j, i, -c.clone())]);
        Ok(Self {
            m: SparseMatrix::from_triplets(dim, dim, entries),
        })
    }

    pub fn coefficients(&self) -> Vec<T> {
        so_pairs(self.dim())
            .into_iter()
            .map(|(i, j)| self.m.get(i, j))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &SparseMatrix<T> {
        &self.m
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            m: self.m.commutator(&other.m)?,
        })
    }

    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        self.m.mul_vec(v)
    }
}

fn check_pair(ca: &CliffordAlgebra, i: usize, j: usize) -> Result<()> {
    if i < j && j <= ca.n() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange(format!(
            "rho_basis({i}, {j}) for so_{}",
            ca.n() + 1
        )))
    }
}

/// Signed permutation `P` with `ρ(B_ij) = ½ P` (zero-based `i < j <= n`).
pub fn rho_basis_perm(ca: &CliffordAlgebra, i: usize, j: usize) -> Result<SignedPerm> {
    check_pair(ca, i, j)?;
    Ok(if j < ca.n() {
        ca.gamma(i).compose(ca.gamma(j)).neg()
    } else if EMBEDDING_SIGN > 0 {
        ca.gamma(i).neg()
    } else {
        ca.gamma(i).clone()
    })
}

/// `ρ(B_ij)` as a module endomorphism.
pub fn rho_basis<T: Field>(ca: &CliffordAlgebra, i: usize, j: usize) -> Result<SparseMatrix<T>> {
    Ok(rho_basis_perm(ca, i, j)?.to_matrix::<T>().scale(&T::half()))
}

/// Linear extension of [`rho_basis`].
pub fn rho<T: Field>(a: &SoElement<T>, ca: &CliffordAlgebra) -> Result<SparseMatrix<T>> {
    ensure_dim(ca.n() + 1, a.dim())?;
    let dim = ca.module_dim();
    let half = T::half();
    let mut entries = Vec::new();
    for (i, j, c) in a.matrix().triplets() {
        if i >= j {
            continue;
        }
        let p = rho_basis_perm(ca, i, j)?;
        let w = c.clone() * half.clone();
        for col in 0..dim {
            let (r, s) = p.column(col);
            entries.push((r, col, if s > 0 { w.clone() } else { -w.clone() }));
        }
    }
    Ok(SparseMatrix::from_triplets(dim, dim, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_clifford;
    use crate::exact::{gauss, int, rat, simultaneous_eigenspaces};
    use crate::{GaussianRational, Rational};

    fn b(dim: usize, i: usize, j: usize) -> SoElement<Rational> {
        SoElement::basis(dim, i, j).unwrap()
    }

    #[test]
    fn pair_index_matches_enumeration() {
        for dim in [3, 9, 16] {
            for (k, (i, j)) in so_pairs(dim).into_iter().enumerate() {
                assert_eq!(pair_index(dim, i, j), k);
            }
        }
    }

    #[test]
    fn orientation_of_basis_elements() {
        // B_12 e_2 = e_1, B_12 e_1 = -e_2, and [B_12, B_23] = B_13.
        let v = b(3, 0, 1).apply(&[int(0), int(1), int(0)]).unwrap();
        assert_eq!(v, vec![int(1), int(0), int(0)]);
        let c = b(3, 0, 1).commutator(&b(3, 1, 2)).unwrap();
        assert_eq!(c, b(3, 0, 2));
    }

    #[test]
    fn rho_basis_squares_to_minus_a_quarter() {
        let ca = build_clifford(8).unwrap();
        for (i, j) in [(0, 1), (2, 7), (3, 8)] {
            let r: SparseMatrix<Rational> = rho_basis(&ca, i, j).unwrap();
            assert_eq!(r.mul(&r).unwrap(), SparseMatrix::scalar(16, rat(-1, 4)));
            assert!(r.is_antisymmetric());
        }
        assert!(rho_basis::<Rational>(&ca, 1, 1).is_err());
        assert!(rho_basis::<Rational>(&ca, 0, 9).is_err());
    }

    #[test]
    fn rho_is_a_homomorphism_on_all_basis_pairs_for_so9() {
        let ca = build_clifford(8).unwrap();
        let pairs = so_pairs(9);
        let reps: Vec<SparseMatrix<Rational>> = pairs
            .iter()
            .map(|&(i, j)| rho_basis(&ca, i, j).unwrap())
            .collect();
        for (x, &(i, j)) in pairs.iter().enumerate() {
            for (y, &(k, l)) in pairs.iter().enumerate().skip(x + 1) {
                let lhs = reps[x].commutator(&reps[y]).unwrap();
                let bracket = b(9, i, j).commutator(&b(9, k, l)).unwrap();
                let rhs = rho(&bracket, &ca).unwrap();
                assert_eq!(lhs, rhs, "pair {:?} {:?}", (i, j), (k, l));
            }
        }
    }

    #[test]
    fn rho_extends_the_basis_linearly() {
        let ca = build_clifford(7).unwrap();
        assert!(rho(&SoElement::<Rational>::zero(8), &ca).unwrap().is_zero());
        assert_eq!(
            rho(&b(8, 0, 1), &ca).unwrap(),
            rho_basis::<Rational>(&ca, 0, 1).unwrap()
        );
        let mut coeffs = vec![int(0); 28];
        coeffs[pair_index(8, 0, 1)] = int(2);
        coeffs[pair_index(8, 3, 7)] = rat(-1, 3);
        let a = SoElement::from_coefficients(8, &coeffs).unwrap();
        let expected = rho_basis::<Rational>(&ca, 0, 1)
            .unwrap()
            .scale(&int(2))
            .add(&rho_basis::<Rational>(&ca, 3, 7).unwrap().scale(&rat(-1, 3)))
            .unwrap();
        assert_eq!(rho(&a, &ca).unwrap(), expected);
        assert!(rho(&SoElement::<Rational>::zero(5), &ca).is_err());
    }

    #[test]
    fn clifford_commutator_realizes_the_vector_action() {
        let ca = build_clifford(8).unwrap();
        for (i, j) in so_pairs(8) {
            let r: SparseMatrix<Rational> = rho_basis(&ca, i, j).unwrap();
            for k in 0..8 {
                let g: SparseMatrix<Rational> = ca.gamma_matrix(k);
                let lhs = r.commutator(&g).unwrap();
                let mut e = vec![int(0); 8];
                e[k] = int(1);
                let av = b(8, i, j).apply(&e).unwrap();
                let rhs = av
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .fold(SparseMatrix::zeros(16, 16), |acc, (m, c)| {
                        acc.add(&ca.gamma_matrix::<Rational>(m).scale(c)).unwrap()
                    });
                assert_eq!(lhs, rhs, "B_{i}{j} on e_{k}");
            }
        }
    }

    #[test]
    fn rho_e12_has_eigenvalues_plus_minus_i_over_2() {
        let ca = build_clifford(8).unwrap();
        let r = rho_basis::<Rational>(&ca, 0, 1)
            .unwrap()
            .map(|v| gauss(v.clone(), int(0)));
        let half_i = gauss(int(0), rat(1, 2));
        let spaces =
            simultaneous_eigenspaces(&[r], &[vec![half_i.clone(), -half_i.clone()]]).unwrap();
        let dims: Vec<(GaussianRational, usize)> = spaces
            .iter()
            .map(|s| (s.eigenvalues[0].clone(), s.basis.len()))
            .collect();
        assert_eq!(dims, vec![(half_i.clone(), 8), (-half_i, 8)]);
    }
}
