//! Truncated formal series over rational exponents with exact rational
//! coefficients, and their complexification.
//!
//! The order is the leading-coefficient order: a nonzero series is positive
//! iff the coefficient at the least exponent of its support is positive. A
//! positive constant therefore dominates every positive power of `h`.

mod complex;
mod exponent;
mod scalar;

pub use complex::ComplexSeries;
pub use exponent::{Exponent, ExtExponent};
pub use scalar::{default_order, set_default_order, Coeff, SeriesScalar, SignValue, DEFAULT_ORDER};

#[cfg(test)]
mod tests;
