//! The Killing algebras `k = so_{n+1} ⊕ S` of the round spheres `S^7`, `S^8`
//! and `S^15`, stored as exact structure-constant tables.

mod io;
mod jacobi;

use rayon::prelude::*;
use serde::Serialize;

use crate::clifford::build_clifford;
use crate::error::{ensure_dim, Error, Result};
use crate::exact::{rank, Field, SparseMatrix};
use crate::spin::{rho, rho_basis_perm, so_pairs, SoElement};
use crate::Rational;

pub use io::{
    export_structure_constants, format_structure_constants, import_structure_constants,
    parse_structure_constants,
};
pub use jacobi::{ClassCount, Height, JacobiMode, JacobiReport, TripleClass};

/// Sphere dimensions with a Killing algebra.
pub const SPHERES: [usize; 3] = [7, 8, 15];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Label of a basis element: `B_ij` (zero-based `i < j`) or spinor `s_a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisLabel {
    So(usize, usize),
    Spinor(usize),
}

impl BasisLabel {
    pub fn parity(&self) -> Parity {
        match self {
            BasisLabel::So(..) => Parity::Even,
            BasisLabel::Spinor(_) => Parity::Odd,
        }
    }
}

/// `(dim so_{n+1}, dim S)` for a supported sphere.
pub fn block_dims(n: usize) -> Result<(usize, usize)> {
    let spinor = match n {
        7 => 8,
        8 => 16,
        15 => 128,
        _ => {
            return Err(Error::Unsupported {
                what: "sphere",
                value: n.to_string(),
            })
        }
    };
    Ok(((n + 1) * n / 2, spinor))
}

/// A `Z_2`-graded algebra with basis `B_ij` (even) followed by `s_a` (odd),
/// and a sparse table `[b_x, b_y] = Σ_z c_{xy}^z b_z`.
#[derive(Clone, Debug, PartialEq)]
pub struct KillingAlgebra<T = Rational> {
    n: usize,
    dim0: usize,
    dim1: usize,
    labels: Vec<BasisLabel>,
    table: Vec<Vec<(usize, T)>>,
}

fn labels_for(n: usize, dim1: usize) -> Vec<BasisLabel> {
    so_pairs(n + 1)
        .into_iter()
        .map(|(i, j)| BasisLabel::So(i, j))
        .chain((0..dim1).map(BasisLabel::Spinor))
        .collect()
}

/// Builds the Killing algebra of `S^n` for `n` in {7, 8, 15}.
pub fn build_killing_algebra<T: Field>(n: usize) -> Result<KillingAlgebra<T>> {
    let (dim0, dim1) = block_dims(n)?;
    let ca = build_clifford(n)?;
    let pairs = so_pairs(n + 1);
    let dim = dim0 + dim1;
    let half = T::half();
    let mut ka = KillingAlgebra {
        n,
        dim0,
        dim1,
        labels: labels_for(n, dim1),
        table: vec![Vec::new(); dim * dim],
    };

    // [A, B] = AB - BA, read back in the B_ij basis.
    let basis: Vec<SoElement<T>> = pairs
        .iter()
        .map(|&(i, j)| SoElement::basis(n + 1, i, j))
        .collect::<Result<_>>()?;
    let even: Vec<Vec<(usize, usize, T)>> = (0..dim0)
        .into_par_iter()
        .map(|x| {
            (x + 1..dim0)
                .flat_map(|y| {
                    let c = basis[x]
                        .commutator(&basis[y])
                        .expect("same size")
                        .coefficients();
                    c.into_iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(move |(z, v)| (y, z, v))
                        .collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    for (x, entries) in even.into_iter().enumerate() {
        for (y, z, v) in entries {
            ka.put_antisymmetric(x, y, z, v);
        }
    }

    // [B_p, s_a] = ρ(B_p) s_a and [s_a, s_b] = Σ_p (ρ(B_p) s_a, s_b) B_p.
    for p in 0..dim0 {
        let (i, j) = pairs[p];
        let perm = rho_basis_perm(&ca, i, j)?;
        for a in 0..dim1 {
            let (b, sign) = perm.column(a);
            let c = if sign > 0 { half.clone() } else { -half.clone() };
            ka.put_antisymmetric(p, dim0 + a, dim0 + b, c.clone());
            // P is fixed-point free with P² = -1, so (b, a) yields the same entry.
            if a < b {
                ka.put_antisymmetric(dim0 + a, dim0 + b, p, c);
            }
        }
    }
    for row in &mut ka.table {
        row.sort_by_key(|(z, _)| *z);
    }
    Ok(ka)
}

impl<T: Field> KillingAlgebra<T> {
    pub(crate) fn from_parts(n: usize, table: Vec<Vec<(usize, T)>>) -> Result<Self> {
        let (dim0, dim1) = block_dims(n)?;
        ensure_dim((dim0 + dim1) * (dim0 + dim1), table.len())?;
        Ok(Self {
            n,
            dim0,
            dim1,
            labels: labels_for(n, dim1),
            table,
        })
    }

    fn put_antisymmetric(&mut self, x: usize, y: usize, z: usize, c: T) {
        let dim = self.dim();
        self.table[x * dim + y].push((z, c.clone()));
        self.table[y * dim + x].push((z, -c));
    }

    pub fn sphere(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim0 + self.dim1
    }

    pub fn dim0(&self) -> usize {
        self.dim0
    }

    pub fn dim1(&self) -> usize {
        self.dim1
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn parity(&self, x: usize) -> Parity {
        self.labels[x].parity()
    }

    /// Index of the basis element `B_ij` (zero-based, `i < j`).
    pub fn so_index(&self, i: usize, j: usize) -> usize {
        crate::spin::pair_index(self.n + 1, i, j)
    }

    pub fn spinor_index(&self, a: usize) -> usize {
        self.dim0 + a
    }

    /// Nonzero constants of `[b_x, b_y]`, sorted by `z`.
    pub fn structure_constants(&self, x: usize, y: usize) -> &[(usize, T)] {
        &self.table[x * self.dim() + y]
    }

    pub fn structure_constant(&self, x: usize, y: usize, z: usize) -> T {
        self.structure_constants(x, y)
            .iter()
            .find(|(k, _)| *k == z)
            .map_or_else(T::zero, |(_, v)| v.clone())
    }

    /// Overwrites `c_{xy}^z` (and `c_{yx}^z = -c_{xy}^z`).
    pub fn set_structure_constant(&mut self, x: usize, y: usize, z: usize, value: T) {
        let dim = self.dim();
        for (idx, v) in [(x * dim + y, value.clone()), (y * dim + x, -value)] {
            let row = &mut self.table[idx];
            row.retain(|(k, _)| *k != z);
            if !v.is_zero() {
                row.push((z, v));
                row.sort_by_key(|(k, _)| *k);
            }
        }
    }

    /// Number of stored nonzero constants with `x < y`.
    pub fn nnz(&self) -> usize {
        let dim = self.dim();
        (0..dim)
            .flat_map(|x| (x + 1..dim).map(move |y| (x, y)))
            .map(|(x, y)| self.structure_constants(x, y).len())
            .sum()
    }

    /// Bracket of two elements given in basis coordinates.
    pub fn bracket(&self, x: &[T], y: &[T]) -> Result<Vec<T>> {
        ensure_dim(self.dim(), x.len())?;
        ensure_dim(self.dim(), y.len())?;
        let mut out = vec![T::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi.clone() * yj.clone();
                for (z, c) in self.structure_constants(i, j) {
                    out[*z] = out[*z].clone() + w.clone() * c.clone();
                }
            }
        }
        Ok(out)
    }

    /// Bracket of a sparse element with the basis vector `b_y`, accumulated
    /// into `out` with weight `w`.
    pub(crate) fn bracket_sparse_basis(
        &self,
        x: &[(usize, T)],
        y: usize,
        w: &T,
        out: &mut Vec<(usize, T)>,
    ) {
        for (i, xi) in x {
            for (z, c) in self.structure_constants(*i, y) {
                let v = w.clone() * xi.clone() * c.clone();
                match out.iter_mut().find(|(k, _)| k == z) {
                    Some(slot) => slot.1 = slot.1.clone() + v,
                    None => out.push((*z, v)),
                }
            }
        }
    }

    /// `ad(b_x)` as a matrix: column `y` holds the coordinates of `[b_x, b_y]`.
    pub fn ad_matrix(&self, x: usize) -> SparseMatrix<T> {
        let dim = self.dim();
        SparseMatrix::from_triplets(
            dim,
            dim,
            (0..dim).flat_map(|y| {
                self.structure_constants(x, y)
                    .iter()
                    .map(move |(z, c)| (*z, y, c.clone()))
            }),
        )
    }

    /// Antisymmetry of the whole table.
    pub fn is_antisymmetric(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|x| {
            (x..dim).all(|y| {
                let a = self.structure_constants(x, y);
                let b = self.structure_constants(y, x);
                a.len() == b.len()
                    && a.iter()
                        .zip(b)
                        .all(|((z1, c1), (z2, c2))| z1 == z2 && *c1 == -c2.clone())
            })
        })
    }

    /// `[k0,k0] ⊆ k0`, `[k0,k1] ⊆ k1`, `[k1,k1] ⊆ k0`.
    pub fn respects_grading(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|x| {
            (0..dim).all(|y| {
                let odd = (self.parity(x) == Parity::Odd) != (self.parity(y) == Parity::Odd);
                self.structure_constants(x, y)
                    .iter()
                    .all(|(z, _)| (self.parity(*z) == Parity::Odd) == odd)
            })
        })
    }

    /// Invariance of the block inner product (`B_ij` orthonormal for
    /// `-½ tr(AB)`, spinors orthonormal for the dot product):
    /// `⟨[x,y],z⟩ + ⟨y,[x,z]⟩ = 0`, i.e. `c_{xy}^z + c_{xz}^y = 0`.
    pub fn ad_invariant(&self) -> bool {
        let dim = self.dim();
        (0..dim).into_par_iter().all(|x| {
            (0..dim).all(|y| {
                self.structure_constants(x, y)
                    .iter()
                    .all(|(z, c)| self.structure_constant(x, *z, y) == -c.clone())
            })
        })
    }

    /// `[s_1, s_2] = Σ_{i<j} (ρ(B_ij) s_1, s_2) B_ij`, read from the table.
    pub fn spinor_square(&self, s1: &[T], s2: &[T]) -> Result<SoElement<T>> {
        ensure_dim(self.dim1, s1.len())?;
        ensure_dim(self.dim1, s2.len())?;
        let mut x = vec![T::zero(); self.dim()];
        let mut y = vec![T::zero(); self.dim()];
        x[self.dim0..].clone_from_slice(s1);
        y[self.dim0..].clone_from_slice(s2);
        let out = self.bracket(&x, &y)?;
        SoElement::from_coefficients(self.n + 1, &out[..self.dim0])
    }

    /// Rank of the spinor-squaring map `Λ²S → so_{n+1}`.
    pub fn spinor_square_rank(&self) -> usize {
        let rows: Vec<(usize, usize, T)> = (0..self.dim1)
            .flat_map(|a| (a + 1..self.dim1).map(move |b| (a, b)))
            .enumerate()
            .flat_map(|(r, (a, b))| {
                self.structure_constants(self.dim0 + a, self.dim0 + b)
                    .iter()
                    .map(move |(z, c)| (r, *z, c.clone()))
                    .collect::<Vec<_>>()
            })
            .collect();
        let npairs = self.dim1 * (self.dim1 - 1) / 2;
        rank(&SparseMatrix::from_triplets(npairs, self.dim0, rows))
    }
}

/// Direct computation of `[s_1, s_2]` from the spin representation, without
/// the structure table.
pub fn spinor_square_direct<T: Field>(n: usize, s1: &[T], s2: &[T]) -> Result<SoElement<T>> {
    let ca = build_clifford(n)?;
    ensure_dim(ca.module_dim(), s1.len())?;
    ensure_dim(ca.module_dim(), s2.len())?;
    let coeffs = so_pairs(n + 1)
        .into_iter()
        .map(|(i, j)| {
            let r = rho(&SoElement::basis(n + 1, i, j)?, &ca)?;
            Ok(crate::exact::dot(&r.mul_vec(s1)?, s2))
        })
        .collect::<Result<Vec<T>>>()?;
    SoElement::from_coefficients(n + 1, &coeffs)
}
