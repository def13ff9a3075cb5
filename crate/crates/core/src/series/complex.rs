use crate::error::Result;
use crate::field::{Complex, Scalar};

use super::scalar::{Coeff, SeriesScalar};
use super::Exponent;

/// An element of `C((h^Q)) = R((h^Q)) + i R((h^Q))`.
pub type ComplexSeries = Complex<SeriesScalar>;

impl ComplexSeries {
    pub fn from_coeffs(re: Coeff, im: Coeff) -> Self {
        Complex::new(SeriesScalar::constant(re), SeriesScalar::constant(im))
    }

    /// `h^e` times the complex scalar.
    pub fn shift(&self, e: Exponent) -> Self {
        Complex::new(self.re.shift(e), self.im.shift(e))
    }

    pub fn scale_coeff(&self, c: &Coeff) -> Self {
        Complex::new(self.re.scale(c), self.im.scale(c))
    }

    /// Multiplication by `i^k`.
    pub fn rotate(&self, k: u32) -> Self {
        match k % 4 {
            0 => self.clone(),
            1 => Complex::new(self.im.neg(), self.re.clone()),
            2 => Complex::new(self.re.neg(), self.im.neg()),
            _ => Complex::new(self.im.clone(), self.re.neg()),
        }
    }

    /// True iff both parts are the exact zero.
    pub fn is_exact_zero(&self) -> bool {
        self.re.is_exact_zero() && self.im.is_exact_zero()
    }

    pub fn cadd(&self, other: &Self) -> Self {
        Scalar::add(self, other)
    }

    pub fn cmul(&self, other: &Self) -> Self {
        Scalar::mul(self, other)
    }

    pub fn cinv(&self) -> Result<Self> {
        self.inv()
    }

    /// Truncation order shared by the two parts.
    pub fn trunc_order(&self) -> super::ExtExponent {
        self.re.trunc_order().min(self.im.trunc_order())
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.re.agrees_with(&other.re) && self.im.agrees_with(&other.im)
    }
}
