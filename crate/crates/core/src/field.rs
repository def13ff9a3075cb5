//! Scalar abstractions shared by the linear algebra and the inequality checks.
//!
//! Two ordered fields are supported: exact rationals ([`Rational`]) and the
//! truncated series field ([`SeriesScalar`]). [`Complex`] builds the
//! complexification `K(i)` of either one.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::series::{SeriesScalar, SignValue};

pub type Rational = BigRational;

/// Exact field arithmetic with a zero test that may fail on truncated values.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact division where the quotient is representable.
    fn div(&self, rhs: &Self) -> Result<Self>;
    /// Division known to be exact, such as the Bareiss step. Defaults to `div`.
    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        self.div(rhs)
    }
    /// `Err(IndeterminateAtTruncation)` when zero-ness cannot be decided.
    fn is_zero(&self) -> Result<bool>;
    fn conj(&self) -> Self;
    /// An exactly invertible element of the same magnitude, used to normalise
    /// vectors without leaving the exact representation.
    fn unit_part(&self) -> Self;
}

pub trait OrderedField: Scalar {
    fn sign(&self) -> SignValue;

    /// Compares orders of magnitude: `Greater` when `self` is infinitely
    /// larger than `other`. Archimedean fields report `Equal` for any two
    /// nonzero elements.
    fn magnitude_cmp(&self, other: &Self) -> Ordering;

    fn abs(&self) -> Result<Self> {
        match self.sign() {
            SignValue::Positive | SignValue::Zero => Ok(self.clone()),
            SignValue::Negative => Ok(self.neg()),
            SignValue::IndeterminateAtTruncation => Err(indeterminate_of(self)),
        }
    }

    /// Sign of `self - other`.
    fn compare(&self, other: &Self) -> SignValue {
        self.sub(other).sign()
    }

    /// The error raised when `sign` comes back indeterminate.
    fn indeterminate_error(&self) -> Error {
        Error::Inconsistency(format!("sign of {self} reported indeterminate"))
    }
}

fn indeterminate_of<F: OrderedField>(x: &F) -> Error {
    x.indeterminate_error()
}

/// Turns a sign into a zero test, surfacing indeterminacy as an error.
pub fn zero_from_sign<F: OrderedField>(x: &F) -> Result<bool> {
    match x.sign() {
        SignValue::Zero => Ok(true),
        SignValue::IndeterminateAtTruncation => Err(indeterminate_of(x)),
        _ => Ok(false),
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        if Zero::is_zero(rhs) {
            Err(Error::ZeroDivision)
        } else {
            Ok(self / rhs)
        }
    }
    fn is_zero(&self) -> Result<bool> {
        Ok(Zero::is_zero(self))
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn unit_part(&self) -> Self {
        self.clone()
    }
}

impl OrderedField for Rational {
    fn sign(&self) -> SignValue {
        if Zero::is_zero(self) {
            SignValue::Zero
        } else if self.is_positive() {
            SignValue::Positive
        } else {
            SignValue::Negative
        }
    }

    fn magnitude_cmp(&self, other: &Self) -> Ordering {
        match (Zero::is_zero(self), Zero::is_zero(other)) {
            (true, true) | (false, false) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
        }
    }
}

impl Scalar for SeriesScalar {
    fn zero() -> Self {
        SeriesScalar::zero()
    }
    fn one() -> Self {
        SeriesScalar::one()
    }
    fn from_i64(n: i64) -> Self {
        SeriesScalar::from_int(n)
    }
    fn add(&self, rhs: &Self) -> Self {
        SeriesScalar::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        SeriesScalar::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        SeriesScalar::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        SeriesScalar::neg(self)
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        SeriesScalar::div(self, rhs)
    }
    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        SeriesScalar::div_exact(self, rhs)
    }
    fn is_zero(&self) -> Result<bool> {
        zero_from_sign(self)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn unit_part(&self) -> Self {
        self.leading_monomial()
    }
}

impl OrderedField for SeriesScalar {
    fn sign(&self) -> SignValue {
        SeriesScalar::sign(self)
    }

    fn indeterminate_error(&self) -> Error {
        self.indeterminate()
    }

    fn magnitude_cmp(&self, other: &Self) -> Ordering {
        // Lower valuation means larger magnitude.
        other.valuation_bound().cmp(&self.valuation_bound())
    }

    fn abs(&self) -> Result<Self> {
        SeriesScalar::abs(self)
    }
}

/// `re + i im` over an ordered field.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Complex<F> {
    pub re: F,
    pub im: F,
}

impl<F: OrderedField> Complex<F> {
    pub fn new(re: F, im: F) -> Self {
        Complex { re, im }
    }

    pub fn real(re: F) -> Self {
        Complex { re, im: F::zero() }
    }

    pub fn imag(im: F) -> Self {
        Complex { re: F::zero(), im }
    }

    pub fn i() -> Self {
        Complex::imag(F::one())
    }

    /// `re^2 + im^2`.
    pub fn norm_sqr(&self) -> F {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn is_real(&self) -> Result<bool> {
        self.im.is_zero()
    }

    pub fn scale(&self, by: &F) -> Self {
        Complex::new(self.re.mul(by), self.im.mul(by))
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero()? {
            return Err(Error::ZeroDivision);
        }
        Ok(Complex::new(self.re.div(&n)?, self.im.neg().div(&n)?))
    }
}

impl<F: OrderedField> Scalar for Complex<F> {
    fn zero() -> Self {
        Complex::new(F::zero(), F::zero())
    }
    fn one() -> Self {
        Complex::real(F::one())
    }
    fn from_i64(n: i64) -> Self {
        Complex::real(F::from_i64(n))
    }
    fn add(&self, rhs: &Self) -> Self {
        Complex::new(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }
    fn sub(&self, rhs: &Self) -> Self {
        Complex::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }
    fn mul(&self, rhs: &Self) -> Self {
        Complex::new(
            self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        )
    }
    fn neg(&self) -> Self {
        Complex::new(self.re.neg(), self.im.neg())
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        let n = rhs.norm_sqr();
        if n.is_zero()? {
            return Err(Error::ZeroDivision);
        }
        let num = self.mul(&rhs.conj());
        Ok(Complex::new(num.re.div(&n)?, num.im.div(&n)?))
    }
    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        if rhs.im.is_zero()? {
            return Ok(Complex::new(self.re.div_exact(&rhs.re)?, self.im.div_exact(&rhs.re)?));
        }
        let n = rhs.norm_sqr();
        if n.is_zero()? {
            return Err(Error::ZeroDivision);
        }
        let num = self.mul(&rhs.conj());
        Ok(Complex::new(num.re.div_exact(&n)?, num.im.div_exact(&n)?))
    }
    fn is_zero(&self) -> Result<bool> {
        Ok(self.re.is_zero()? && self.im.is_zero()?)
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), self.im.neg())
    }
    fn unit_part(&self) -> Self {
        match self.re.magnitude_cmp(&self.im) {
            Ordering::Greater => Complex::real(self.re.unit_part()),
            Ordering::Less => Complex::imag(self.im.unit_part()),
            Ordering::Equal => Complex::new(self.re.unit_part(), self.im.unit_part()),
        }
    }
}

impl<F: OrderedField> fmt::Display for Complex<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_zero = self.im.is_zero().unwrap_or(false);
        let re_zero = self.re.is_zero().unwrap_or(false);
        let one = F::one();
        let imag = if self.im == one {
            "i".to_string()
        } else if self.im == one.neg() {
            "-i".to_string()
        } else {
            let im = self.im.to_string();
            if im.contains(' ') {
                format!("({im})*i")
            } else {
                format!("{im}*i")
            }
        };
        match (re_zero, im_zero) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{imag}"),
            (false, false) => write!(f, "{} + {imag}", self.re),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i: Complex<Rational> = Complex::i();
        assert_eq!(Scalar::mul(&i, &i), Complex::real(q(-1, 1)));
    }

    #[test]
    fn complex_division_roundtrip() {
        let z = Complex::new(q(3, 2), q(-1, 3));
        let w = Complex::new(q(2, 1), q(5, 7));
        let p = Scalar::mul(&z, &w);
        assert_eq!(p.div(&w).unwrap(), z);
        assert_eq!(<Complex<Rational> as Scalar>::zero().div(&Complex::<Rational>::zero()), Err(Error::ZeroDivision) as Result<Complex<Rational>>);
    }

    #[test]
    fn unit_part_of_series_picks_leading_monomials() {
        let h = SeriesScalar::h();
        let z = Complex::new(h.mul(&SeriesScalar::from_int(3)).add(&h.pow(2)), h.neg());
        let u = z.unit_part();
        assert_eq!(u, Complex::new(SeriesScalar::h().scale(&q(3, 1)), h.neg()));
        // dividing by the unit part stays exact
        let n = z.div(&u).unwrap();
        assert!(n.re.is_exact() && n.im.is_exact());
    }
}
