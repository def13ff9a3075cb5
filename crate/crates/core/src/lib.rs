//! Exact deformation-quantization toolkit: truncated series in `h`, ordered
//! linear algebra over such series, the Moyal star product, Gaussian states,
//! and checks of the resulting uncertainty relations.

pub mod error;
pub mod generators;
pub mod field;
pub mod linalg;
pub mod parse;
pub mod series;
pub mod star;
pub mod suites;
pub mod states;
pub mod uncertainty;

pub use error::{Error, Result};
pub use field::{Complex, OrderedField, Rational, Scalar};
pub use series::{ComplexSeries, Exponent, ExtExponent, SeriesScalar, SignValue};
