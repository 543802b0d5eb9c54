pub mod error;
pub mod algebra;
pub mod clifford;
pub mod exact;
pub mod geometry;
pub mod identify;
pub mod rep;
pub mod report;
pub mod spin;

pub use error::{Error, Result};

pub type Rational = num_rational::BigRational;
pub type GaussianRational = num_complex::Complex<Rational>;
