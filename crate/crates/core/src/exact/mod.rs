//! Exact scalars and exact (sparse) linear algebra.
//!
//! Everything here is generic over [`Field`], which any exact field type from
//! the `num` ecosystem satisfies. The crate root fixes the two instances used
//! throughout: [`Rational`](crate::Rational) and
//! [`GaussianRational`](crate::GaussianRational). No floating point is used.

mod linalg;
mod sparse;

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{Num, Signed};

use crate::{GaussianRational, Rational};

pub use linalg::{
    kernel_basis, ldlt_signature, rank, simultaneous_eigenspaces, solve, JointEigenspace,
    Signature,
};
pub use sparse::SparseMatrix;

/// An exact field of scalars.
pub trait Field: Num + Clone + Neg<Output = Self> + Debug + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self {
        let mut acc = Self::zero();
        let mut base = Self::one();
        let mut k = v.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc + base.clone();
            }
            base = base.clone() + base;
            k >>= 1;
        }
        if v < 0 {
            -acc
        } else {
            acc
        }
    }

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }
}

impl<T> Field for T where T: Num + Clone + Neg<Output = T> + Debug + Send + Sync + 'static {}

/// A field with a notion of sign, needed for inertia counts.
pub trait OrderedField: Field + Signed {}

impl<T> OrderedField for T where T: Field + Signed {}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    GaussianRational::new(re, im)
}

pub fn to_gauss(v: &Rational) -> GaussianRational {
    GaussianRational::new(v.clone(), Rational::from_integer(BigInt::from(0)))
}

/// Inner product of two exact vectors.
pub fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn is_zero_vec<T: Field>(v: &[T]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_i64_matches_native_conversion() {
        for v in [-17, -1, 0, 1, 2, 5, 1024, 99_999] {
            assert_eq!(<Rational as Field>::from_i64(v), int(v));
        }
        assert_eq!(<Rational as Field>::half(), rat(1, 2));
    }

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let r = rat(6, -8);
        assert_eq!(*r.numer(), BigInt::from(-3));
        assert_eq!(*r.denom(), BigInt::from(4));
        assert_eq!(rat(0, 5), int(0));
        assert_eq!(*rat(0, 5).denom(), BigInt::from(1));
    }

    #[test]
    fn gaussian_conjugation_is_an_involution() {
        let z = gauss(rat(3, 4), rat(-5, 7));
        assert_eq!(z.conj().conj(), z);
        let w = gauss(rat(1, 2), rat(2, 3));
        assert_eq!((z.clone() * w.clone()) / w, z);
    }
}
