use std::time::Instant;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{KillingAlgebra, Parity};
use crate::error::Result;
use crate::exact::Field;

/// Size of an exact scalar, used to report the largest jacobiator entry.
pub trait Height {
    fn height(&self) -> BigInt;
}

impl Height for Ratio<BigInt> {
    fn height(&self) -> BigInt {
        self.numer().abs()
    }
}

impl Height for Ratio<i64> {
    fn height(&self) -> BigInt {
        BigInt::from(self.numer().abs())
    }
}

/// Graded component of a basis triple, by number of odd elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TripleClass {
    #[serde(rename = "k0k0k0")]
    EvenEvenEven,
    #[serde(rename = "k0k0k1")]
    EvenEvenOdd,
    #[serde(rename = "k0k1k1")]
    EvenOddOdd,
    #[serde(rename = "k1k1k1")]
    OddOddOdd,
}

impl TripleClass {
    pub const ALL: [TripleClass; 4] = [
        TripleClass::EvenEvenEven,
        TripleClass::EvenEvenOdd,
        TripleClass::EvenOddOdd,
        TripleClass::OddOddOdd,
    ];

    fn odd_count(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            TripleClass::EvenEvenEven => "k0k0k0",
            TripleClass::EvenEvenOdd => "k0k0k1",
            TripleClass::EvenOddOdd => "k0k1k1",
            TripleClass::OddOddOdd => "k1k1k1",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiMode {
    /// All unordered basis triples.
    Exhaustive,
    /// All triples of spinors, the component not implied by the construction.
    SpinorTriples,
    /// All triples of one graded component.
    Class(TripleClass),
    /// Deterministic pseudo-random triples of distinct basis elements.
    Sampled { seed: u64, count: u64 },
}

impl JacobiMode {
    pub fn name(&self) -> String {
        match self {
            JacobiMode::Exhaustive => "exhaustive".into(),
            JacobiMode::SpinorTriples => "spinor".into(),
            JacobiMode::Class(c) => c.name().into(),
            JacobiMode::Sampled { .. } => "sample".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCount {
    pub class: TripleClass,
    pub triples: u64,
    pub nonzero: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub sphere: usize,
    pub dim: usize,
    pub mode: String,
    pub triples_checked: u64,
    pub nonzero_jacobiators: u64,
    /// Largest `|numerator|` over all jacobiator coordinates, in decimal.
    pub max_abs_numerator: String,
    pub by_class: Vec<ClassCount>,
    /// First offending triple, if any.
    pub first_failure: Option<[usize; 3]>,
    pub passed: bool,
    pub wall_ms: u128,
}

#[derive(Default)]
struct Tally {
    triples: [u64; 4],
    nonzero: [u64; 4],
    max: BigInt,
    first: Option<[usize; 3]>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for k in 0..4 {
            self.triples[k] += other.triples[k];
            self.nonzero[k] += other.nonzero[k];
        }
        if other.max > self.max {
            self.max = other.max;
        }
        self.first = match (self.first, other.first) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

impl<T: Field + Height> KillingAlgebra<T> {
    /// `[[b_x,b_y],b_z] + [[b_y,b_z],b_x] + [[b_z,b_x],b_y]` as sparse coordinates
    /// (zero entries removed).
    pub fn jacobiator_basis(&self, x: usize, y: usize, z: usize) -> Vec<(usize, T)> {
        let mut out = Vec::new();
        let one = T::one();
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            self.bracket_sparse_basis(self.structure_constants(a, b), c, &one, &mut out);
        }
        out.retain(|(_, v)| !v.is_zero());
        out.sort_by_key(|(k, _)| *k);
        out
    }

    /// Jacobiator of arbitrary elements in basis coordinates.
    pub fn jacobiator(&self, x: &[T], y: &[T], z: &[T]) -> Result<Vec<T>> {
        let a = self.bracket(&self.bracket(x, y)?, z)?;
        let b = self.bracket(&self.bracket(y, z)?, x)?;
        let c = self.bracket(&self.bracket(z, x)?, y)?;
        Ok(a.into_iter()
            .zip(b)
            .zip(c)
            .map(|((p, q), r)| p + q + r)
            .collect())
    }

    fn class_of(&self, x: usize, y: usize, z: usize) -> usize {
        [x, y, z]
            .iter()
            .filter(|&&k| self.parity(k) == Parity::Odd)
            .count()
    }

    fn check(&self, x: usize, y: usize, z: usize, tally: &mut Tally) {
        let k = self.class_of(x, y, z);
        tally.triples[k] += 1;
        let j = self.jacobiator_basis(x, y, z);
        if !j.is_empty() {
            tally.nonzero[k] += 1;
            for (_, v) in &j {
                let h = v.height();
                if h > tally.max {
                    tally.max = h;
                }
            }
            let t = [x, y, z];
            tally.first = Some(tally.first.map_or(t, |f| f.min(t)));
        }
    }

    /// Scans all triples `x < y < z` of one graded class.
    fn scan_class(&self, class: TripleClass) -> Tally {
        let (d0, d) = (self.dim0(), self.dim());
        let (evens, odds) = (0..d0, d0..d);
        match class.odd_count() {
            0 => evens
                .into_par_iter()
                .map(|x| {
                    let mut t = Tally::default();
                    for y in x + 1..d0 {
                        for z in y + 1..d0 {
                            self.check(x, y, z, &mut t);
                        }
                    }
                    t
                })
                .reduce(Tally::default, Tally::merge),
            1 => evens
                .into_par_iter()
                .map(|x| {
                    let mut t = Tally::default();
                    for y in x + 1..d0 {
                        for z in d0..d {
                            self.check(x, y, z, &mut t);
                        }
                    }
                    t
                })
                .reduce(Tally::default, Tally::merge),
            2 => evens
                .into_par_iter()
                .map(|x| {
                    let mut t = Tally::default();
                    for y in d0..d {
                        for z in y + 1..d {
                            self.check(x, y, z, &mut t);
                        }
                    }
                    t
                })
                .reduce(Tally::default, Tally::merge),
            _ => odds
                .into_par_iter()
                .map(|x| {
                    let mut t = Tally::default();
                    for y in x + 1..d {
                        for z in y + 1..d {
                            self.check(x, y, z, &mut t);
                        }
                    }
                    t
                })
                .reduce(Tally::default, Tally::merge),
        }
    }

    fn scan_sampled(&self, seed: u64, count: u64) -> Tally {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = self.dim();
        let triples: Vec<[usize; 3]> = (0..count)
            .map(|_| loop {
                let mut t = [rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d)];
                t.sort_unstable();
                if t[0] != t[1] && t[1] != t[2] {
                    break t;
                }
            })
            .collect();
        triples
            .par_chunks(1024)
            .map(|chunk| {
                let mut t = Tally::default();
                for &[x, y, z] in chunk {
                    self.check(x, y, z, &mut t);
                }
                t
            })
            .reduce(Tally::default, Tally::merge)
    }

    /// Exact Jacobi identity scan. A nonzero jacobiator yields a failed report.
    pub fn verify_jacobi(&self, mode: JacobiMode) -> JacobiReport {
        let start = Instant::now();
        let tally = match mode {
            JacobiMode::Exhaustive => TripleClass::ALL
                .iter()
                .map(|c| self.scan_class(*c))
                .fold(Tally::default(), Tally::merge),
            JacobiMode::SpinorTriples => self.scan_class(TripleClass::OddOddOdd),
            JacobiMode::Class(c) => self.scan_class(c),
            JacobiMode::Sampled { seed, count } => self.scan_sampled(seed, count),
        };
        let nonzero: u64 = tally.nonzero.iter().sum();
        let by_class = TripleClass::ALL
            .iter()
            .enumerate()
            .filter(|(k, _)| tally.triples[*k] > 0)
            .map(|(k, c)| ClassCount {
                class: *c,
                triples: tally.triples[k],
                nonzero: tally.nonzero[k],
            })
            .collect();
        JacobiReport {
            sphere: self.sphere(),
            dim: self.dim(),
            mode: mode.name(),
            triples_checked: tally.triples.iter().sum(),
            nonzero_jacobiators: nonzero,
            max_abs_numerator: tally.max.to_string(),
            by_class,
            first_failure: tally.first,
            passed: nonzero == 0 && tally.max.is_zero(),
            wall_ms: start.elapsed().as_millis(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_killing_algebra;
    use crate::exact::{int, rat};
    use crate::Rational;

    fn unit(dim: usize, k: usize) -> Vec<Rational> {
        let mut v = vec![int(0); dim];
        v[k] = int(1);
        v
    }

    #[test]
    fn commuting_torus_elements_have_zero_jacobiator() {
        let ka: KillingAlgebra = build_killing_algebra(7).unwrap();
        let d = ka.dim();
        let j = ka
            .jacobiator(
                &unit(d, ka.so_index(0, 1)),
                &unit(d, ka.so_index(2, 3)),
                &unit(d, ka.so_index(4, 5)),
            )
            .unwrap();
        assert!(j.iter().all(|v| *v == int(0)));
    }

    #[test]
    fn repeated_argument_gives_zero() {
        let ka: KillingAlgebra = build_killing_algebra(8).unwrap();
        let x: Vec<Rational> = (0..52).map(|k| rat(k % 7 - 3, k % 3 + 1)).collect();
        let y: Vec<Rational> = (0..52).map(|k| rat(k % 5 - 1, 2)).collect();
        assert!(ka.jacobiator(&x, &x, &y).unwrap().iter().all(|v| *v == int(0)));
    }

    #[test]
    fn basis_and_dense_jacobiators_agree() {
        let ka: KillingAlgebra = build_killing_algebra(7).unwrap();
        let d = ka.dim();
        for (x, y, z) in [(0, 5, 30), (29, 31, 35), (2, 3, 4), (10, 28, 33)] {
            let dense = ka.jacobiator(&unit(d, x), &unit(d, y), &unit(d, z)).unwrap();
            let sparse = ka.jacobiator_basis(x, y, z);
            let mut expanded = vec![int(0); d];
            for (k, v) in sparse {
                expanded[k] = v;
            }
            assert_eq!(dense, expanded);
        }
    }

    #[test]
    fn exhaustive_scan_of_s7() {
        let ka: KillingAlgebra = build_killing_algebra(7).unwrap();
        let r = ka.verify_jacobi(JacobiMode::Exhaustive);
        assert_eq!(r.triples_checked, 7140);
        assert!(r.passed, "{r:?}");
        assert_eq!(r.max_abs_numerator, "0");
    }

    #[test]
    fn corrupted_table_fails() {
        let mut ka: KillingAlgebra = build_killing_algebra(7).unwrap();
        let z = ka.structure_constants(28, 29)[0].0;
        let c = ka.structure_constant(28, 29, z);
        ka.set_structure_constant(28, 29, z, -c);
        let r = ka.verify_jacobi(JacobiMode::Exhaustive);
        assert!(!r.passed);
        assert!(r.nonzero_jacobiators >= 1);
        assert!(r.first_failure.is_some());
    }

    #[test]
    fn sampled_mode_is_deterministic() {
        let ka: KillingAlgebra = build_killing_algebra(8).unwrap();
        let mode = JacobiMode::Sampled { seed: 7, count: 500 };
        let a = ka.verify_jacobi(mode);
        let b = ka.verify_jacobi(mode);
        assert_eq!(a.by_class, b.by_class);
        assert_eq!(a.triples_checked, 500);
        assert!(a.passed);
    }

    #[test]
    fn generic_over_small_rationals() {
        let ka: KillingAlgebra<Ratio<i64>> = build_killing_algebra(7).unwrap();
        assert!(ka.verify_jacobi(JacobiMode::SpinorTriples).passed);
    }
}
