//! Real gamma-matrix models of the euclidean Clifford algebras `Cl_n`.
//!
//! Generators are signed permutation matrices built as tensor words in three
//! real 2x2 blocks (see [`Block`]). Small cases are found by a deterministic
//! search over words; larger ones follow from the periodicity
//! `Cl_{n+8} = Cl_n ⊗ Cl_8` with `γ_i ⊗ ω_8` and `1 ⊗ β_a`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{ensure_dim, Error, Result};
use crate::exact::{Field, SparseMatrix};

/// Square matrix with exactly one ±1 per row and column.
///
/// Column `c` is sent to `sign[c] * e_{image[c]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    image: Vec<u32>,
    sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(dim: usize) -> Self {
        Self {
            image: (0..dim as u32).collect(),
            sign: vec![1; dim],
        }
    }

    pub fn from_parts(image: Vec<u32>, sign: Vec<i8>) -> Self {
        assert_eq!(image.len(), sign.len());
        let mut seen = vec![false; image.len()];
        for &i in &image {
            assert!(!seen[i as usize], "not a permutation");
            seen[i as usize] = true;
        }
        assert!(sign.iter().all(|s| *s == 1 || *s == -1));
        Self { image, sign }
    }

    pub fn dim(&self) -> usize {
        self.image.len()
    }

    /// Image of basis vector `c`: `(row, sign)`.
    pub fn column(&self, c: usize) -> (usize, i8) {
        (self.image[c] as usize, self.sign[c])
    }

    pub fn apply<T: Field>(&self, v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); v.len()];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (r, s) = self.column(c);
            out[r] = if s > 0 { x.clone() } else { -x.clone() };
        }
        out
    }

    /// The product `self * other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        let (image, sign) = (0..other.dim())
            .map(|c| {
                let (mid, s1) = other.column(c);
                let (r, s2) = self.column(mid);
                (r as u32, s1 * s2)
            })
            .unzip();
        Self { image, sign }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let k = other.dim();
        let mut image = vec![0; self.dim() * k];
        let mut sign = vec![0; self.dim() * k];
        for a in 0..self.dim() {
            let (ra, sa) = self.column(a);
            for b in 0..k {
                let (rb, sb) = other.column(b);
                image[a * k + b] = (ra * k + rb) as u32;
                sign[a * k + b] = sa * sb;
            }
        }
        Self { image, sign }
    }

    pub fn transpose(&self) -> Self {
        let mut image = vec![0; self.dim()];
        let mut sign = vec![0; self.dim()];
        for c in 0..self.dim() {
            let (r, s) = self.column(c);
            image[r] = c as u32;
            sign[r] = s;
        }
        Self { image, sign }
    }

    pub fn neg(&self) -> Self {
        Self {
            image: self.image.clone(),
            sign: self.sign.iter().map(|s| -s).collect(),
        }
    }

    /// `Some(±1)` when the matrix is `±I`.
    pub fn as_scalar(&self) -> Option<i8> {
        let s = *self.sign.first()?;
        let scalar = self
            .image
            .iter()
            .enumerate()
            .all(|(c, r)| *r as usize == c && self.sign[c] == s);
        scalar.then_some(s)
    }

    pub fn trace(&self) -> i64 {
        (0..self.dim())
            .filter(|c| self.image[*c] as usize == *c)
            .map(|c| self.sign[c] as i64)
            .sum()
    }

    pub fn to_matrix<T: Field>(&self) -> SparseMatrix<T> {
        SparseMatrix::from_triplets(
            self.dim(),
            self.dim(),
            (0..self.dim()).map(|c| {
                let (r, s) = self.column(c);
                (r, c, T::from_i64(s as i64))
            }),
        )
    }
}

/// Real 2x2 building blocks. `E`, `F` are symmetric involutions, `G` is the
/// rotation generator with `G² = -1`; the three pairwise anticommute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    I,
    E,
    F,
    G,
}

impl Block {
    const ALL: [Block; 4] = [Block::I, Block::E, Block::F, Block::G];

    fn matrix(self) -> SignedPerm {
        match self {
            Block::I => SignedPerm::identity(2),
            Block::E => SignedPerm::from_parts(vec![0, 1], vec![1, -1]),
            Block::F => SignedPerm::from_parts(vec![1, 0], vec![1, 1]),
            Block::G => SignedPerm::from_parts(vec![1, 0], vec![1, -1]),
        }
    }

    fn anticommutes(self, other: Block) -> bool {
        self != Block::I && other != Block::I && self != other
    }
}

fn word_matrix(word: &[Block]) -> SignedPerm {
    word.iter()
        .fold(SignedPerm::identity(1), |acc, b| acc.kron(&b.matrix()))
}

fn words_anticommute(a: &[Block], b: &[Block]) -> bool {
    a.iter()
        .zip(b)
        .filter(|(x, y)| x.anticommutes(**y))
        .count()
        % 2
        == 1
}

/// First (lexicographic) set of `count` pairwise anticommuting words of the
/// given length, each with an odd number of `G` factors (antisymmetric, square
/// `-1`).
fn search_words(len: usize, count: usize) -> Option<Vec<Vec<Block>>> {
    let mut candidates = Vec::new();
    let total = 4usize.pow(len as u32);
    for code in 0..total {
        let word: Vec<Block> = (0..len)
            .map(|p| Block::ALL[(code / 4usize.pow((len - 1 - p) as u32)) % 4])
            .collect();
        if word.iter().filter(|b| **b == Block::G).count() % 2 == 1 {
            candidates.push(word);
        }
    }
    fn extend(
        cands: &[Vec<Block>],
        start: usize,
        chosen: &mut Vec<usize>,
        count: usize,
    ) -> bool {
        if chosen.len() == count {
            return true;
        }
        for i in start..cands.len() {
            if chosen.iter().all(|&j| words_anticommute(&cands[i], &cands[j])) {
                chosen.push(i);
                if extend(cands, i + 1, chosen, count) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    extend(&candidates, 0, &mut chosen, count)
        .then(|| chosen.iter().map(|&i| candidates[i].clone()).collect())
}

/// Which irreducible Clifford module a model realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ModuleTag {
    /// The unique irreducible module (n even), or the complex module on which
    /// the volume element acts as `+i` (n ≡ 1 mod 4).
    M,
    /// The module on which the volume element acts as `+1` (n ≡ 3 mod 4).
    MPlus,
    MMinus,
}

/// An explicit real model of `Cl_n` acting on its irreducible module.
#[derive(Clone, Debug)]
pub struct CliffordAlgebra {
    n: usize,
    gammas: Vec<SignedPerm>,
    omega: SignedPerm,
    module_tag: ModuleTag,
}

pub const SUPPORTED_DIMS: [usize; 6] = [6, 7, 8, 9, 15, 16];

fn volume(gammas: &[SignedPerm], dim: usize) -> SignedPerm {
    gammas
        .iter()
        .fold(SignedPerm::identity(dim), |acc, g| acc.compose(g))
}

fn searched(n: usize) -> Vec<SignedPerm> {
    let len = match n {
        1 => 1,
        6 | 7 => 3,
        8 => 4,
        _ => unreachable!("no searched model for n = {n}"),
    };
    search_words(len, n)
        .expect("anticommuting word family exists")
        .iter()
        .map(|w| word_matrix(w))
        .collect()
}

/// Builds the gamma matrices of `Cl_n` for `n` in [`SUPPORTED_DIMS`].
pub fn build_clifford(n: usize) -> Result<CliffordAlgebra> {
    if !SUPPORTED_DIMS.contains(&n) {
        return Err(Error::Unsupported {
            what: "Clifford dimension",
            value: n.to_string(),
        });
    }
    let mut gammas = if n <= 8 {
        searched(n)
    } else {
        let low = searched(n - 8);
        let beta = searched(8);
        let omega8 = volume(&beta, 16);
        let m = low[0].dim();
        low.iter()
            .map(|g| g.kron(&omega8))
            .chain(beta.iter().map(|b| SignedPerm::identity(m).kron(b)))
            .collect()
    };
    let dim = gammas[0].dim();
    let mut omega = volume(&gammas, dim);
    let module_tag = if n % 4 == 3 {
        if omega.as_scalar() == Some(-1) {
            let last = gammas.len() - 1;
            gammas[last] = gammas[last].neg();
            omega = omega.neg();
        }
        ModuleTag::MPlus
    } else {
        ModuleTag::M
    };
    Ok(CliffordAlgebra {
        n,
        gammas,
        omega,
        module_tag,
    })
}

impl CliffordAlgebra {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn module_dim(&self) -> usize {
        self.gammas[0].dim()
    }

    pub fn module_tag(&self) -> ModuleTag {
        self.module_tag
    }

    /// Generator `γ_{i+1}` (zero-based index).
    pub fn gamma(&self, i: usize) -> &SignedPerm {
        &self.gammas[i]
    }

    pub fn gammas(&self) -> &[SignedPerm] {
        &self.gammas
    }

    pub fn gamma_matrix<T: Field>(&self, i: usize) -> SparseMatrix<T> {
        self.gammas[i].to_matrix()
    }

    pub fn omega(&self) -> &SignedPerm {
        &self.omega
    }

    pub fn volume_element<T: Field>(&self) -> SparseMatrix<T> {
        self.omega.to_matrix()
    }

    /// The complex structure of the `n = 9` model: `J = ω`, `J² = -1`.
    pub fn complex_structure(&self) -> Option<&SignedPerm> {
        (self.n % 4 == 1).then_some(&self.omega)
    }

    /// Clifford action `v · s = Σ v_i γ_i s`.
    pub fn act<T: Field>(&self, v: &[T], s: &[T]) -> Result<Vec<T>> {
        ensure_dim(self.n, v.len())?;
        ensure_dim(self.module_dim(), s.len())?;
        let mut out = vec![T::zero(); s.len()];
        for (g, vi) in self.gammas.iter().zip(v) {
            if vi.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(g.apply(s)) {
                if !x.is_zero() {
                    *o = o.clone() + vi.clone() * x;
                }
            }
        }
        Ok(out)
    }

    /// `γ_i γ_j + γ_j γ_i = -2 δ_ij` for every pair.
    pub fn clifford_relations_hold(&self) -> bool {
        let dim = self.module_dim();
        let minus_two = SparseMatrix::<i64>::scalar(dim, -2);
        for i in 0..self.n {
            for j in i..self.n {
                let a = self.gammas[i].compose(&self.gammas[j]).to_matrix::<i64>();
                let b = self.gammas[j].compose(&self.gammas[i]).to_matrix::<i64>();
                let sum = a.add(&b).expect("square");
                let ok = if i == j {
                    sum == minus_two
                } else {
                    sum.is_zero()
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Every generator is antisymmetric and orthogonal.
    pub fn generators_antisymmetric_orthogonal(&self) -> bool {
        let id = SignedPerm::identity(self.module_dim());
        self.gammas
            .iter()
            .all(|g| g.transpose() == g.neg() && g.transpose().compose(g) == id)
    }

    /// Text dump, one line `i row col value` per nonzero entry (1-based `i`).
    pub fn dump_gammas(&self) -> String {
        let mut out = String::new();
        for (i, g) in self.gammas.iter().enumerate() {
            for c in 0..g.dim() {
                let (r, s) = g.column(c);
                writeln!(out, "{} {} {} {}", i + 1, r, c, s).expect("write to string");
            }
        }
        out
    }
}
