//! Weights, characters and decompositions for `so_{2r+1}` (type B) and
//! `so_{2r}` (type D).
//!
//! Weights are stored in *doubled* orthogonal coordinates: the weight
//! `(3/2, 1/2, 1/2, -1/2)` is the integer vector `(3, 1, 1, -1)`. The Weyl
//! group then acts by signed permutations of integer vectors.

mod fixtures;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub use fixtures::{
    evaluate_fixture, parse_fixtures, Expr, Fixture, FixtureCheck, FixtureOutcome,
    DEFAULT_FIXTURES,
};

/// Doubled orthogonal coordinates.
pub type Weight = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Series {
    B,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraType {
    series: Series,
    rank: usize,
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl Serialize for AlgebraType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for AlgebraType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Unsupported {
            what: "algebra",
            value: s.to_string(),
        };
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('B') => Series::B,
            Some('D') => Series::D,
            _ => return Err(bad()),
        };
        let rank = chars.as_str().parse().map_err(|_| bad())?;
        AlgebraType::new(series, rank)
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

impl AlgebraType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        if rank < 2 {
            return Err(Error::Unsupported {
                what: "rank",
                value: rank.to_string(),
            });
        }
        Ok(Self { series, rank })
    }

    pub fn b(rank: usize) -> Self {
        Self::new(Series::B, rank).expect("rank ≥ 2")
    }

    pub fn d(rank: usize) -> Self {
        Self::new(Series::D, rank).expect("rank ≥ 2")
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `e_i ± e_j` (`i < j`), plus `e_i` for type B.
    pub fn positive_roots(&self) -> Vec<Weight> {
        let r = self.rank;
        let mut out = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                for s in [2, -2] {
                    let mut v = vec![0; r];
                    v[i] = 2;
                    v[j] = s;
                    out.push(v);
                }
            }
            if self.series == Series::B {
                let mut v = vec![0; r];
                v[i] = 2;
                out.push(v);
            }
        }
        out
    }

    /// Half the sum of the positive roots.
    pub fn rho(&self) -> Weight {
        let r = self.rank as i64;
        (1..=r)
            .map(|i| match self.series {
                Series::B => 2 * (r - i) + 1,
                Series::D => 2 * (r - i),
            })
            .collect()
    }

    pub fn weyl_group_order(&self) -> u64 {
        let signs = match self.series {
            Series::B => 1u64 << self.rank,
            Series::D => 1u64 << (self.rank - 1),
        };
        signs * factorial(self.rank)
    }

    /// Integral for the spin group: all coordinates even or all odd.
    pub fn is_weight(&self, w: &[i64]) -> bool {
        w.len() == self.rank && w.iter().all(|c| (c - w[0]) % 2 == 0)
    }

    pub fn is_dominant(&self, w: &[i64]) -> bool {
        let r = self.rank;
        let head = w[..r - 1].windows(2).all(|p| p[0] >= p[1]);
        head && match self.series {
            Series::B => w[r - 2] >= w[r - 1] && w[r - 1] >= 0,
            Series::D => w[r - 2] >= w[r - 1].abs(),
        }
    }

    /// The dominant weight in the Weyl orbit of `w`.
    pub fn dominant_rep(&self, w: &[i64]) -> Weight {
        let mut out: Weight = w.iter().map(|c| c.abs()).collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        if self.series == Series::D {
            let negatives = w.iter().filter(|c| **c < 0).count();
            if negatives % 2 == 1 && out[self.rank - 1] != 0 {
                out[self.rank - 1] = -out[self.rank - 1];
            }
        }
        out
    }

    /// All weights in the Weyl orbit of a dominant weight.
    pub fn orbit(&self, dominant: &[i64]) -> Vec<Weight> {
        let mut perms = distinct_permutations(&dominant.iter().map(|c| c.abs()).collect::<Vec<_>>());
        let has_zero = dominant.iter().any(|c| *c == 0);
        let parity = dominant.iter().filter(|c| **c < 0).count() % 2;
        let mut out = Vec::new();
        for p in perms.drain(..) {
            let nonzero: Vec<usize> = (0..p.len()).filter(|&i| p[i] != 0).collect();
            for mask in 0u32..1 << nonzero.len() {
                if self.series == Series::D && !has_zero && mask.count_ones() as usize % 2 != parity {
                    continue;
                }
                let mut v = p.clone();
                for (bit, &i) in nonzero.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        v[i] = -v[i];
                    }
                }
                out.push(v);
            }
        }
        out
    }

    /// Doubled orthogonal coordinates of the weight with the given labels.
    pub fn weight_of(&self, hw: &HighestWeight) -> Result<Weight> {
        let r = self.rank;
        if hw.labels.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: hw.labels.len(),
            });
        }
        let a: Vec<i64> = hw.labels.iter().map(|&v| v as i64).collect();
        let w = match self.series {
            Series::B => (0..r)
                .map(|k| 2 * a[k..r - 1].iter().sum::<i64>() + a[r - 1])
                .collect(),
            Series::D => {
                let spin = |k: usize| if k + 1 < r { a[r - 2] + a[r - 1] } else { a[r - 1] - a[r - 2] };
                (0..r)
                    .map(|k| 2 * a[k.min(r - 2)..r - 2].iter().sum::<i64>() + spin(k))
                    .collect()
            }
        };
        Ok(w)
    }

    /// Dynkin labels of a dominant weight.
    pub fn labels_of(&self, w: &[i64]) -> Result<HighestWeight> {
        let r = self.rank;
        if !self.is_weight(w) || !self.is_dominant(w) {
            return Err(Error::NotACharacter(format!(
                "{} is not a dominant weight of {self}",
                fmt_weight(w)
            )));
        }
        let mut labels: Vec<u32> = (0..r - 1).map(|i| ((w[i] - w[i + 1]) / 2) as u32).collect();
        labels.push(match self.series {
            Series::B => w[r - 1] as u32,
            Series::D => ((w[r - 2] + w[r - 1]) / 2) as u32,
        });
        Ok(HighestWeight { labels })
    }
}

fn distinct_permutations(v: &[i64]) -> Vec<Weight> {
    let mut sorted = v.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // Lexicographic successor.
    loop {
        let n = sorted.len();
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| sorted[i] < sorted[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| sorted[j] > sorted[i]).expect("successor exists");
        sorted.swap(i, j);
        sorted[i + 1..].reverse();
        out.push(sorted.clone());
    }
    out
}

pub fn fmt_weight(w: &[i64]) -> String {
    let parts: Vec<String> = w
        .iter()
        .map(|c| if c % 2 == 0 { (c / 2).to_string() } else { format!("{c}/2") })
        .collect();
    format!("({})", parts.join(","))
}

fn ip(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn add(a: &[i64], b: &[i64]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Dynkin labels `[d_1 … d_r]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HighestWeight {
    pub labels: Vec<u32>,
}

impl HighestWeight {
    pub fn new(labels: Vec<u32>) -> Self {
        Self { labels }
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![0; rank])
    }

    /// The `i`-th fundamental weight (one-based).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut labels = vec![0; rank];
        labels[i - 1] = 1;
        Self::new(labels)
    }

    pub fn is_zero(&self) -> bool {
        self.labels.iter().all(|v| *v == 0)
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.labels.iter().any(|v| *v > 9) { "," } else { "" };
        let parts: Vec<String> = self.labels.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(sep))
    }
}

impl Serialize for HighestWeight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for HighestWeight {
    type Err = Error;

    /// Accepts `[0101]`, `0101` or `[0,1,0,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let bad = || Error::Unsupported {
            what: "Dynkin labels",
            value: s.to_string(),
        };
        let labels = if inner.contains(',') {
            inner
                .split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        } else {
            inner
                .chars()
                .map(|c| c.to_digit(10).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()?
        };
        if labels.is_empty() {
            return Err(bad());
        }
        Ok(Self { labels })
    }
}

/// `Π_{α>0} (λ+ρ, α) / (ρ, α)`.
pub fn weyl_dim(t: AlgebraType, hw: &HighestWeight) -> Result<u64> {
    let lambda = t.weight_of(hw)?;
    let rho = t.rho();
    let shifted = add(&lambda, &rho);
    let mut q = BigRational::one();
    for alpha in t.positive_roots() {
        q *= BigRational::new(BigInt::from(ip(&shifted, &alpha)), BigInt::from(ip(&rho, &alpha)));
    }
    debug_assert!(q.is_integer());
    q.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Unsupported {
            what: "dimension above u64",
            value: hw.to_string(),
        })
}

/// Multiplicities of the dominant weights of the irreducible module with
/// highest weight `hw` (Freudenthal's formula).
pub fn dominant_multiplicities(t: AlgebraType, hw: &HighestWeight) -> Result<BTreeMap<Weight, i64>> {
    let lambda = t.weight_of(hw)?;
    let rho = t.rho();
    let roots = t.positive_roots();

    // Dominant weights below λ, reached by subtracting positive roots.
    let mut seen: HashSet<Weight> = HashSet::from([lambda.clone()]);
    let mut frontier = vec![lambda.clone()];
    while let Some(mu) = frontier.pop() {
        for alpha in &roots {
            let next: Weight = mu.iter().zip(alpha).map(|(m, a)| m - a).collect();
            if t.is_dominant(&next) && seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let height = |mu: &Weight| ip(&lambda, &rho) - ip(mu, &rho);
    let mut order: Vec<Weight> = seen.iter().cloned().collect();
    order.sort_by_key(|mu| (height(mu), std::cmp::Reverse(mu.clone())));

    let lr = add(&lambda, &rho);
    let top = ip(&lr, &lr);
    let mut mult: HashMap<Weight, i64> = HashMap::from([(lambda.clone(), 1)]);
    for mu in order.iter().skip(1) {
        let mut num = 0i64;
        for alpha in &roots {
            let mut nu = add(mu, alpha);
            loop {
                let dom = t.dominant_rep(&nu);
                let Some(m) = mult.get(&dom) else {
                    break;
                };
                num += m * ip(&nu, alpha);
                nu = add(&nu, alpha);
            }
        }
        let mr = add(mu, &rho);
        let den = top - ip(&mr, &mr);
        if den <= 0 || (2 * num) % den != 0 {
            return Err(Error::Certificate(format!(
                "Freudenthal step at {} is not integral",
                fmt_weight(mu)
            )));
        }
        mult.insert(mu.clone(), 2 * num / den);
    }
    Ok(mult.into_iter().filter(|(_, m)| *m != 0).collect())
}

/// A (possibly virtual) character: weight multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    algebra: AlgebraType,
    weights: BTreeMap<Weight, i64>,
}

impl Character {
    pub fn zero(algebra: AlgebraType) -> Self {
        Self {
            algebra,
            weights: BTreeMap::new(),
        }
    }

    pub fn trivial(algebra: AlgebraType) -> Self {
        Self::from_weights(algebra, [vec![0; algebra.rank]])
    }

    /// Each listed weight with multiplicity one (repeats add up).
    pub fn from_weights(algebra: AlgebraType, weights: impl IntoIterator<Item = Weight>) -> Self {
        let mut c = Self::zero(algebra);
        for w in weights {
            c.add_weight(w, 1);
        }
        c
    }

    pub fn from_map(algebra: AlgebraType, weights: BTreeMap<Weight, i64>) -> Self {
        let mut c = Self::zero(algebra);
        for (w, m) in weights {
            c.add_weight(w, m);
        }
        c
    }

    /// Weights `±e_i` (and `0` for type B) of the vector representation.
    pub fn vector(algebra: AlgebraType) -> Self {
        let r = algebra.rank;
        let mut ws: Vec<Weight> = (0..r)
            .flat_map(|i| {
                [2, -2].map(|s| {
                    let mut v = vec![0; r];
                    v[i] = s;
                    v
                })
            })
            .collect();
        if algebra.series == Series::B {
            ws.push(vec![0; r]);
        }
        Self::from_weights(algebra, ws)
    }

    pub fn add_weight(&mut self, w: Weight, m: i64) {
        if m == 0 {
            return;
        }
        let slot = self.weights.entry(w.clone()).or_insert(0);
        *slot += m;
        if *slot == 0 {
            self.weights.remove(&w);
        }
    }

    pub fn algebra(&self) -> AlgebraType {
        self.algebra
    }

    pub fn weights(&self) -> &BTreeMap<Weight, i64> {
        &self.weights
    }

    pub fn multiplicity(&self, w: &[i64]) -> i64 {
        self.weights.get(w).copied().unwrap_or(0)
    }

    /// Sum of multiplicities.
    pub fn dim(&self) -> i64 {
        self.weights.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_true_character(&self) -> bool {
        self.weights.values().all(|m| *m > 0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::Unsupported {
                what: "algebra mismatch",
                value: format!("{} vs {}", self.algebra, other.algebra),
            });
        }
        Ok(())
    }

    fn combine(&self, other: &Self, k: i64) -> Result<Self> {
        self.check_same(other)?;
        let mut weights = self.weights.clone();
        for (w, m) in &other.weights {
            *weights.entry(w.clone()).or_insert(0) += k * m;
        }
        weights.retain(|_, v| *v != 0);
        Ok(Self {
            algebra: self.algebra,
            weights,
        })
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1)
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut weights = self.weights.clone();
        for v in weights.values_mut() {
            *v *= k;
        }
        weights.retain(|_, v| *v != 0);
        Self {
            algebra: self.algebra,
            weights,
        }
    }

    /// Divides every multiplicity by `k`, failing on a remainder.
    pub fn divided(&self, k: i64) -> Result<Self> {
        let mut weights = self.weights.clone();
        for (w, v) in weights.iter_mut() {
            if *v % k != 0 {
                return Err(Error::NotACharacter(format!(
                    "multiplicity {v} at {} is not divisible by {k}",
                    fmt_weight(w)
                )));
            }
            *v /= k;
        }
        Ok(Self {
            algebra: self.algebra,
            weights,
        })
    }

    /// Weight restriction to the dominant chamber.
    pub fn dominant_part(&self) -> BTreeMap<Weight, i64> {
        self.weights
            .iter()
            .filter(|(w, _)| self.algebra.is_dominant(w))
            .map(|(w, m)| (w.clone(), *m))
            .collect()
    }

    /// Invariance under the Weyl group.
    pub fn is_weyl_symmetric(&self) -> bool {
        let t = self.algebra;
        let consistent = self
            .weights
            .iter()
            .all(|(w, m)| self.multiplicity(&t.dominant_rep(w)) == *m);
        let complete = self
            .dominant_part()
            .keys()
            .all(|d| t.orbit(d).iter().all(|w| self.weights.contains_key(w)));
        consistent && complete
    }
}

/// Full character of the irreducible module with highest weight `hw`.
pub fn irreducible_character(t: AlgebraType, hw: &HighestWeight) -> Result<Character> {
    let dominant = dominant_multiplicities(t, hw)?;
    let mut weights = BTreeMap::new();
    for (d, m) in dominant {
        for w in t.orbit(&d) {
            weights.insert(w, m);
        }
    }
    Ok(Character { algebra: t, weights })
}

/// Convolution of weight multisets.
pub fn tensor_character(c1: &Character, c2: &Character) -> Result<Character> {
    c1.check_same(c2)?;
    let right: Vec<(&Weight, &i64)> = c2.weights.iter().collect();
    let partial: Vec<HashMap<Weight, i64>> = c1
        .weights
        .par_iter()
        .fold(HashMap::new, |mut acc, (a, ma)| {
            for (b, mb) in &right {
                *acc.entry(add(a, b)).or_insert(0) += ma * *mb;
            }
            acc
        })
        .collect();
    let mut total: HashMap<Weight, i64> = HashMap::new();
    for part in partial {
        for (w, m) in part {
            *total.entry(w).or_insert(0) += m;
        }
    }
    Ok(Character {
        algebra: c1.algebra,
        weights: total.into_iter().filter(|(_, m)| *m != 0).collect(),
    })
}

/// `ψ^k`: every weight scaled by `k`.
pub fn adams_character(c: &Character, k: u32) -> Character {
    let k = k as i64;
    Character {
        algebra: c.algebra,
        weights: c
            .weights
            .iter()
            .map(|(w, m)| (w.iter().map(|x| k * x).collect(), *m))
            .collect(),
    }
}

/// `Λ^k` for `k ∈ {2, 3}` via Newton's identities.
pub fn exterior_power_character(c: &Character, k: u32) -> Result<Character> {
    if !c.is_true_character() {
        return Err(Error::NotACharacter("exterior power of a virtual character".into()));
    }
    let out = match k {
        0 => Character::trivial(c.algebra),
        1 => c.clone(),
        2 => {
            let sq = tensor_character(c, c)?;
            sq.minus(&adams_character(c, 2))?.divided(2)?
        }
        3 => {
            let sq = tensor_character(c, c)?;
            let cube = tensor_character(&sq, c)?;
            let mixed = tensor_character(c, &adams_character(c, 2))?;
            cube.minus(&mixed.scaled(3))?
                .plus(&adams_character(c, 3).scaled(2))?
                .divided(6)?
        }
        _ => {
            return Err(Error::Unsupported {
                what: "exterior power degree",
                value: k.to_string(),
            })
        }
    };
    if !out.weights.values().all(|m| *m > 0) {
        return Err(Error::NotACharacter("negative multiplicity in exterior power".into()));
    }
    Ok(out)
}

/// Irreducible constituents with multiplicities, in extraction order
/// (lexicographically decreasing highest weight).
pub fn decompose(c: &Character) -> Result<Vec<(HighestWeight, u64)>> {
    let t = c.algebra;
    if !c.is_weyl_symmetric() {
        return Err(Error::NotACharacter("not Weyl-symmetric".into()));
    }
    let mut rest = c.dominant_part();
    let mut out = Vec::new();
    while let Some((top, &m)) = rest.iter().next_back() {
        let top = top.clone();
        if m < 0 {
            return Err(Error::NotACharacter(format!(
                "negative multiplicity {m} at {}",
                fmt_weight(&top)
            )));
        }
        let hw = t.labels_of(&top)?;
        for (w, k) in dominant_multiplicities(t, &hw)? {
            *rest.entry(w).or_insert(0) -= m * k;
        }
        rest.retain(|_, v| *v != 0);
        out.push((hw, m as u64));
    }
    Ok(out)
}

/// Result of the Weyl alternation `Σ_w det(w) m(wρ − ρ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Alternation {
    pub multiplicity: i64,
    pub group_order: u64,
    /// Elements whose term survived the support bound and was looked up.
    pub terms_looked_up: u64,
}

/// Multiplicity of the trivial module, summing over the whole Weyl group.
pub fn weyl_alternation(c: &Character) -> Alternation {
    let t = c.algebra;
    let r = t.rank;
    let rho = t.rho();
    let bound = c
        .weights
        .keys()
        .flat_map(|w| w.iter().map(|x| x.abs()))
        .max()
        .unwrap_or(0);

    struct Walk<'a> {
        c: &'a Character,
        rho: &'a [i64],
        bound: i64,
        series: Series,
    }

    #[derive(Default, Clone, Copy)]
    struct Acc {
        sum: i64,
        visited: u64,
        looked_up: u64,
    }

    impl Walk<'_> {
        /// Assigns `(wρ)_pos = ±ρ_j`; `inv` counts inversions, `neg` sign flips.
        fn go(&self, pos: usize, used: u32, img: &mut Vec<i64>, inv: u32, neg: u32, in_box: bool, acc: &mut Acc) {
            let r = self.rho.len();
            if pos == r {
                if self.series == Series::D && neg % 2 == 1 {
                    return;
                }
                acc.visited += 1;
                if !in_box {
                    return;
                }
                acc.looked_up += 1;
                let m = self.c.multiplicity(img);
                let det = if (inv + neg) % 2 == 0 { 1 } else { -1 };
                acc.sum += det * m;
                return;
            }
            for j in 0..r {
                if used >> j & 1 == 1 {
                    continue;
                }
                let greater_used = (used >> (j + 1)).count_ones();
                for s in [1i64, -1] {
                    let v = s * self.rho[j] - self.rho[pos];
                    img.push(v);
                    let ok = in_box && v.abs() <= self.bound;
                    self.go(pos + 1, used | 1 << j, img, inv + greater_used, neg + (s < 0) as u32, ok, acc);
                    img.pop();
                }
            }
        }
    }

    let walk = Walk {
        c,
        rho: &rho,
        bound,
        series: t.series,
    };
    let first: Vec<(usize, i64)> = (0..r).flat_map(|j| [(j, 1), (j, -1)]).collect();
    let total = first
        .par_iter()
        .map(|&(j, s)| {
            let mut acc = Acc::default();
            let v = s * rho[j] - rho[0];
            let mut img = vec![v];
            walk.go(1, 1 << j, &mut img, 0, (s < 0) as u32, v.abs() <= bound, &mut acc);
            acc
        })
        .reduce(Acc::default, |a, b| Acc {
            sum: a.sum + b.sum,
            visited: a.visited + b.visited,
            looked_up: a.looked_up + b.looked_up,
        });
    Alternation {
        multiplicity: total.sum,
        group_order: total.visited,
        terms_looked_up: total.looked_up,
    }
}

pub fn trivial_multiplicity(c: &Character) -> i64 {
    weyl_alternation(c).multiplicity
}
