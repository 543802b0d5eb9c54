//! Exact truncated Taylor arithmetic: rationals extended by nilpotent
//! infinitesimals `ε_k` with `ε_k² = 0`.
//!
//! A jet is a polynomial in the `ε_k` with square-free monomials, stored as
//! `(mask, coefficient)` pairs. Evaluating a polynomial expression at
//! `x + ε_k v` and reading off the `ε_k` coefficient gives the exact
//! directional derivative; nested derivatives use distinct `k`.

use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_traits::{Num, One, Zero};

use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Jet {
    /// Sorted by mask, no zero coefficients.
    terms: Vec<(u32, Rational)>,
}

impl Jet {
    pub fn constant(q: Rational) -> Self {
        let mut j = Self { terms: vec![(0, q)] };
        j.normalize();
        j
    }

    /// `q + d ε_k`.
    pub fn variable(q: Rational, k: u32, d: Rational) -> Self {
        let mut j = Self {
            terms: vec![(0, q), (1 << k, d)],
        };
        j.normalize();
        j
    }

    fn normalize(&mut self) {
        self.terms.retain(|(_, c)| !c.is_zero());
        self.terms.sort_by_key(|(m, _)| *m);
    }

    fn from_unsorted(mut terms: Vec<(u32, Rational)>) -> Self {
        terms.sort_by_key(|(m, _)| *m);
        let mut out: Vec<(u32, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    /// Coefficient of the empty monomial.
    pub fn value(&self) -> Rational {
        match self.terms.first() {
            Some((0, c)) => c.clone(),
            _ => Rational::zero(),
        }
    }

    /// Coefficient of `ε_k`, as a jet in the remaining infinitesimals.
    pub fn derivative(&self, k: u32) -> Self {
        let bit = 1 << k;
        Self::from_unsorted(
            self.terms
                .iter()
                .filter(|(m, _)| m & bit != 0)
                .map(|(m, c)| (m & !bit, c.clone()))
                .collect(),
        )
    }

    /// Union of the infinitesimals present.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m)
    }
}

/// An index not used by any of the given jets.
pub fn fresh_index<'a>(jets: impl IntoIterator<Item = &'a Jet>) -> u32 {
    let used = jets.into_iter().fold(0, |acc, j| acc | j.support());
    32 - used.leading_zeros()
}

impl From<Rational> for Jet {
    fn from(q: Rational) -> Self {
        Jet::constant(q)
    }
}

impl Zero for Jet {
    fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Jet {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Add for Jet {
    type Output = Jet;

    fn add(self, rhs: Jet) -> Jet {
        let mut terms = self.terms;
        terms.extend(rhs.terms);
        Jet::from_unsorted(terms)
    }
}

impl Neg for Jet {
    type Output = Jet;

    fn neg(self) -> Jet {
        Jet {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for Jet {
    type Output = Jet;

    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Mul for Jet {
    type Output = Jet;

    fn mul(self, rhs: Jet) -> Jet {
        if self.terms.len() == 1 && self.terms[0].0 == 0 {
            let c = &self.terms[0].1;
            return Jet {
                terms: rhs.terms.into_iter().map(|(m, d)| (m, c * d)).collect(),
            };
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                if m1 & m2 == 0 {
                    terms.push((m1 | m2, c1 * c2));
                }
            }
        }
        Jet::from_unsorted(terms)
    }
}

impl Div for Jet {
    type Output = Jet;

    /// `a / (b₀(1 + n)) = a b₀⁻¹ Σ (-n)^k`, a finite sum since `n` is nilpotent.
    fn div(self, rhs: Jet) -> Jet {
        let b0 = rhs.value();
        assert!(!b0.is_zero(), "division by a jet with zero value");
        let inv0 = Jet::constant(Rational::one() / b0.clone());
        let n = rhs * inv0.clone() - Jet::one();
        let mut sum = Jet::one();
        let mut power = Jet::one();
        loop {
            power = power * (-n.clone());
            if power.is_zero() {
                break;
            }
            sum = sum + power.clone();
        }
        self * inv0 * sum
    }
}

impl Rem for Jet {
    type Output = Jet;

    /// Division is exact, so the remainder is zero.
    fn rem(self, _rhs: Jet) -> Jet {
        Jet::zero()
    }
}

impl Num for Jet {
    type FromStrRadixErr = <Rational as Num>::FromStrRadixErr;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        Rational::from_str_radix(s, radix).map(Jet::constant)
    }
}
