use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::{Field, OrderedField, SparseMatrix};
use crate::error::{ensure_dim, Error, Result};

type Row<T> = BTreeMap<usize, T>;

/// Subtracts `factor * src` from `dst`, dropping cancelled entries.
fn axpy<T: Field>(dst: &mut Row<T>, factor: &T, src: &Row<T>) {
    for (c, v) in src {
        let delta = factor.clone() * v.clone();
        match dst.get_mut(c) {
            Some(x) => {
                let next = x.clone() - delta;
                if next.is_zero() {
                    dst.remove(c);
                } else {
                    *x = next;
                }
            }
            None => {
                dst.insert(*c, -delta);
            }
        }
    }
}

/// Reduced row echelon form.
///
/// Columns are processed left to right; the pivot for a column is the
/// lowest-indexed unused row with a nonzero entry there. Returns the reduced
/// rows and the `(pivot column, row)` pairs in column order.
fn rref<T: Field>(m: &SparseMatrix<T>) -> (Vec<Row<T>>, Vec<(usize, usize)>) {
    let mut rows: Vec<Row<T>> = (0..m.nrows())
        .map(|r| m.row(r).iter().cloned().collect())
        .collect();
    let mut used = vec![false; rows.len()];
    let mut pivots = Vec::new();
    for col in 0..m.ncols() {
        let Some(p) = (0..rows.len()).find(|&r| !used[r] && rows[r].contains_key(&col)) else {
            continue;
        };
        used[p] = true;
        let inv = T::one() / rows[p][&col].clone();
        for v in rows[p].values_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = rows[p].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == p {
                continue;
            }
            if let Some(f) = row.get(&col).cloned() {
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push((col, p));
    }
    (rows, pivots)
}

/// A basis of the kernel of `m`, one vector per free column in increasing
/// column order. Empty when `m` is injective.
pub fn kernel_basis<T: Field>(m: &SparseMatrix<T>) -> Vec<Vec<T>> {
    let (rows, pivots) = rref(m);
    let mut is_pivot = vec![false; m.ncols()];
    for (c, _) in &pivots {
        is_pivot[*c] = true;
    }
    (0..m.ncols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![T::zero(); m.ncols()];
            v[f] = T::one();
            for (c, r) in &pivots {
                if let Some(x) = rows[*r].get(&f) {
                    v[*c] = -x.clone();
                }
            }
            v
        })
        .collect()
}

pub fn rank<T: Field>(m: &SparseMatrix<T>) -> usize {
    rref(m).1.len()
}

/// One solution of `m x = b` (free variables set to zero), or `None` if the
/// system is inconsistent.
pub fn solve<T: Field>(m: &SparseMatrix<T>, b: &[T]) -> Result<Option<Vec<T>>> {
    ensure_dim(m.nrows(), b.len())?;
    let n = m.ncols();
    let augmented = SparseMatrix::from_triplets(
        m.nrows(),
        n + 1,
        m.triplets()
            .map(|(r, c, v)| (r, c, v.clone()))
            .chain(b.iter().enumerate().map(|(r, v)| (r, n, v.clone()))),
    );
    let (rows, pivots) = rref(&augmented);
    if pivots.iter().any(|(c, _)| *c == n) {
        return Ok(None);
    }
    let mut x = vec![T::zero(); n];
    for (c, r) in pivots {
        if let Some(v) = rows[r].get(&n) {
            x[c] = v.clone();
        }
    }
    Ok(Some(x))
}

/// Inertia of a symmetric form: counts of positive, negative and zero pivots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.positive, self.negative, self.zero]
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_array().serialize(s)
    }
}

/// Sylvester inertia of a symmetric matrix by symmetric (congruence)
/// elimination.
///
/// The pivot is the lowest index with a nonzero diagonal entry. When every
/// remaining diagonal entry vanishes but an off-diagonal entry `a_kj` does
/// not, row/column `j` is added to row/column `k`, producing the diagonal
/// entry `2 a_kj`.
pub fn ldlt_signature<T: OrderedField>(m: &SparseMatrix<T>) -> Result<Signature> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = m.nrows();
    let mut rows: BTreeMap<usize, Row<T>> = (0..n)
        .map(|r| (r, m.row(r).iter().cloned().collect()))
        .collect();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    while !rows.is_empty() {
        let pivot = rows
            .iter()
            .find(|(k, row)| row.contains_key(k))
            .map(|(k, _)| *k);
        let pivot = match pivot {
            Some(p) => p,
            None => {
                // All remaining diagonal entries are zero.
                let Some((k, j)) = rows
                    .iter()
                    .find_map(|(k, row)| row.keys().next().map(|j| (*k, *j)))
                else {
                    sig.zero += rows.len();
                    break;
                };
                add_row_col(&mut rows, k, j);
                k
            }
        };
        let prow = rows.remove(&pivot).expect("pivot row present");
        let d = prow[&pivot].clone();
        if d.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        let others: Vec<(usize, T)> = prow
            .iter()
            .filter(|(c, _)| **c != pivot)
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        for (i, a_ip) in &others {
            let row = rows.get_mut(i).expect("symmetric row present");
            row.remove(&pivot);
            let f = a_ip.clone() / d.clone();
            for (j, a_pj) in &others {
                let delta = f.clone() * a_pj.clone();
                match row.get_mut(j) {
                    Some(x) => {
                        let next = x.clone() - delta;
                        if next.is_zero() {
                            row.remove(j);
                        } else {
                            *x = next;
                        }
                    }
                    None => {
                        row.insert(*j, -delta);
                    }
                }
            }
        }
        // Rows with no entries left are zero directions.
        let empty: Vec<usize> = rows
            .iter()
            .filter(|(_, r)| r.is_empty())
            .map(|(k, _)| *k)
            .collect();
        for k in empty {
            rows.remove(&k);
            sig.zero += 1;
        }
    }
    Ok(sig)
}

/// Congruence `row_k += row_j; col_k += col_j` on a symmetric active block.
fn add_row_col<T: Field>(rows: &mut BTreeMap<usize, Row<T>>, k: usize, j: usize) {
    let row_j = rows[&j].clone();
    let row_k = rows[&k].clone();
    let get = |r: &Row<T>, c: usize| r.get(&c).cloned().unwrap_or_else(T::zero);
    let s_jk = get(&row_j, k);
    let diag = get(&row_k, k) + s_jk.clone() + s_jk + get(&row_j, j);
    let mut new_row: Row<T> = BTreeMap::new();
    for c in row_k.keys().chain(row_j.keys()) {
        if *c == k || new_row.contains_key(c) {
            continue;
        }
        let v = get(&row_k, *c) + get(&row_j, *c);
        if !v.is_zero() {
            new_row.insert(*c, v);
        }
    }
    for (c, row) in rows.iter_mut() {
        if *c == k {
            continue;
        }
        row.remove(&k);
        if let Some(v) = new_row.get(c) {
            row.insert(k, v.clone());
        }
    }
    if !diag.is_zero() {
        new_row.insert(k, diag);
    }
    rows.insert(k, new_row);
}

/// A joint eigenspace of a family of commuting operators.
#[derive(Clone, Debug, PartialEq)]
pub struct JointEigenspace<T> {
    pub eigenvalues: Vec<T>,
    pub basis: Vec<Vec<T>>,
}

/// Splits the ambient space into joint eigenspaces of commuting operators.
///
/// `candidates[k]` lists the eigenvalues tried for `ops[k]`. Spaces are refined
/// one operator at a time; if some stage does not account for the whole space
/// the candidate set was incomplete and [`Error::FailureToSpan`] is returned.
pub fn simultaneous_eigenspaces<T: Field>(
    ops: &[SparseMatrix<T>],
    candidates: &[Vec<T>],
) -> Result<Vec<JointEigenspace<T>>> {
    ensure_dim(ops.len(), candidates.len())?;
    let Some(first) = ops.first() else {
        return Ok(Vec::new());
    };
    let dim = first.nrows();
    for op in ops {
        ensure_dim(dim, op.nrows())?;
        ensure_dim(dim, op.ncols())?;
    }
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            if !ops[i].commutator(&ops[j])?.is_zero() {
                return Err(Error::NonCommuting(i, j));
            }
        }
    }
    let identity: Vec<Vec<T>> = (0..dim)
        .map(|i| {
            let mut v = vec![T::zero(); dim];
            v[i] = T::one();
            v
        })
        .collect();
    let mut spaces = vec![JointEigenspace {
        eigenvalues: Vec::new(),
        basis: identity,
    }];
    for (op, cands) in ops.iter().zip(candidates) {
        let mut refined = Vec::new();
        for space in &spaces {
            let images: Vec<Vec<T>> = space
                .basis
                .iter()
                .map(|b| op.mul_vec(b))
                .collect::<Result<_>>()?;
            let mut found = 0;
            for lambda in cands {
                let shifted: Vec<Vec<T>> = images
                    .iter()
                    .zip(&space.basis)
                    .map(|(img, b)| {
                        img.iter()
                            .zip(b)
                            .map(|(x, y)| x.clone() - lambda.clone() * y.clone())
                            .collect()
                    })
                    .collect();
                let kernel = kernel_basis(&SparseMatrix::from_columns(dim, &shifted));
                if kernel.is_empty() {
                    continue;
                }
                found += kernel.len();
                let basis = kernel
                    .iter()
                    .map(|coeffs| combine(&space.basis, coeffs, dim))
                    .collect();
                let mut eigenvalues = space.eigenvalues.clone();
                eigenvalues.push(lambda.clone());
                refined.push(JointEigenspace { eigenvalues, basis });
            }
            if found != space.basis.len() {
                return Err(Error::FailureToSpan {
                    found: dim - (space.basis.len() - found),
                    ambient: dim,
                });
            }
        }
        spaces = refined;
    }
    Ok(spaces)
}

fn combine<T: Field>(basis: &[Vec<T>], coeffs: &[T], dim: usize) -> Vec<T> {
    let mut out = vec![T::zero(); dim];
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            if !x.is_zero() {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gauss, int, rat};
    use crate::{GaussianRational, Rational};

    fn dense(rows: &[&[i64]]) -> SparseMatrix<Rational> {
        SparseMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|v| int(*v)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let k = kernel_basis(&SparseMatrix::<Rational>::zeros(2, 2));
        assert_eq!(k, vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert!(kernel_basis(&SparseMatrix::<Rational>::identity(2)).is_empty());
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let k = kernel_basis(&dense(&[&[1, 2], &[2, 4]]));
        assert_eq!(k, vec![vec![int(-2), int(1)]]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = dense(&[&[1, 1], &[1, -1]]);
        let x = solve(&m, &[int(3), int(1)]).unwrap().unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        let singular = dense(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&singular, &[int(1), int(3)]).unwrap(), None);
    }

    #[test]
    fn signature_of_identities() {
        let id = SparseMatrix::<Rational>::identity(5);
        assert_eq!(ldlt_signature(&id).unwrap().as_array(), [5, 0, 0]);
        let neg = id.scale(&int(-1));
        assert_eq!(ldlt_signature(&neg).unwrap().as_array(), [0, 5, 0]);
    }

    #[test]
    fn signature_needs_the_congruence_step_for_hyperbolic_planes() {
        let h = dense(&[&[0, 1], &[1, 0]]);
        assert_eq!(ldlt_signature(&h).unwrap().as_array(), [1, 1, 0]);
        let degenerate = dense(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]]);
        assert_eq!(ldlt_signature(&degenerate).unwrap().as_array(), [1, 1, 1]);
    }

    #[test]
    fn signature_rejects_asymmetric_input() {
        assert!(matches!(
            ldlt_signature(&dense(&[&[1, 2], &[0, 1]])),
            Err(Error::NotSymmetric)
        ));
    }

    #[test]
    fn killing_form_of_so3_is_negative_definite() {
        // [x,y]=z, [y,z]=x, [z,x]=y; ad matrices by hand, kappa = tr(ad ad).
        let ad_x = dense(&[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]]);
        let ad_y = dense(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]);
        let ad_z = dense(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]);
        let ads = [ad_x, ad_y, ad_z];
        let kappa: Vec<Vec<Rational>> = ads
            .iter()
            .map(|a| ads.iter().map(|b| a.mul(b).unwrap().trace()).collect())
            .collect();
        assert_eq!(kappa[0][0], int(-2));
        assert_eq!(kappa[0][1], int(0));
        let sig = ldlt_signature(&SparseMatrix::from_dense(&kappa)).unwrap();
        assert_eq!(sig.as_array(), [0, 3, 0]);
    }

    #[test]
    fn eigenspaces_of_diagonal_pair() {
        let a = dense(&[&[1, 0], &[0, 2]]);
        let b = dense(&[&[3, 0], &[0, 3]]);
        let spaces =
            simultaneous_eigenspaces(&[a, b], &[vec![int(1), int(2)], vec![int(3)]]).unwrap();
        assert_eq!(spaces.len(), 2);
        assert_eq!(spaces[0].eigenvalues, vec![int(1), int(3)]);
        assert_eq!(spaces[1].eigenvalues, vec![int(2), int(3)]);
        assert!(spaces.iter().all(|s| s.basis.len() == 1));
    }

    #[test]
    fn eigenspaces_of_rotation_generator() {
        let rot = dense(&[&[0, -1], &[1, 0]]).map(|v| gauss(v.clone(), int(0)));
        let i = gauss(int(0), int(1));
        let spaces = simultaneous_eigenspaces(&[rot.clone()], &[vec![i.clone(), -i.clone()]])
            .unwrap();
        assert_eq!(spaces.len(), 2);
        for s in &spaces {
            let v = &s.basis[0];
            let image = rot.mul_vec(v).unwrap();
            let expected: Vec<GaussianRational> =
                v.iter().map(|x| x.clone() * s.eigenvalues[0].clone()).collect();
            assert_eq!(image, expected);
        }
    }

    #[test]
    fn incomplete_candidates_fail_to_span() {
        let a = dense(&[&[1, 0], &[0, 2]]);
        let err = simultaneous_eigenspaces(&[a], &[vec![int(1)]]).unwrap_err();
        assert!(matches!(err, Error::FailureToSpan { ambient: 2, .. }));
        let _ = rat(1, 2);
    }

    #[test]
    fn non_commuting_operators_are_rejected() {
        let a = dense(&[&[1, 0], &[0, 2]]);
        let b = dense(&[&[0, 1], &[1, 0]]);
        let err = simultaneous_eigenspaces(&[a, b], &[vec![int(1)], vec![int(1)]]).unwrap_err();
        assert!(matches!(err, Error::NonCommuting(0, 1)));
    }
}
