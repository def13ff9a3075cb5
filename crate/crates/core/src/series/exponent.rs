use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::{Signed, Zero};

/// An element of the exponent group, the rationals under addition.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Exponent(Rational64);

// Denominators are positive and reduced, so cross-multiplying in i128 is
// exact and much cheaper than the generic rational comparison.
impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.0, other.0);
        if a.denom() == b.denom() {
            return a.numer().cmp(b.numer());
        }
        (*a.numer() as i128 * *b.denom() as i128).cmp(&(*b.numer() as i128 * *a.denom() as i128))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Exponent {
    pub const ZERO: Exponent = Exponent(Rational64::new_raw(0, 1));
    pub const ONE: Exponent = Exponent(Rational64::new_raw(1, 1));

    /// `numer / denom` in lowest terms. Panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        Exponent(Rational64::new(numer, denom))
    }

    pub fn integer(n: i64) -> Self {
        Exponent(Rational64::from_integer(n))
    }

    pub fn from_rational(r: Rational64) -> Self {
        Exponent(r)
    }

    pub fn value(self) -> Rational64 {
        self.0
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(self) -> bool {
        self.0.is_negative()
    }

    pub fn half(self) -> Self {
        Exponent(self.0 / 2)
    }

    pub fn times(self, k: i64) -> Self {
        Exponent(self.0 * k)
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        if self.0.is_integer() && rhs.0.is_integer() {
            return Exponent::integer(self.numer() + rhs.numer());
        }
        Exponent(self.0 + rhs.0)
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 - rhs.0)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::integer(n)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

/// An exponent or `+inf`.
///
/// Used both for truncation orders (`Infinite` means the value is exact) and
/// for valuations (`Infinite` is the valuation of zero).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ExtExponent {
    Finite(Exponent),
    Infinite,
}

impl ExtExponent {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtExponent::Finite(_))
    }

    pub fn finite(self) -> Option<Exponent> {
        match self {
            ExtExponent::Finite(e) => Some(e),
            ExtExponent::Infinite => None,
        }
    }

    /// Shift by a finite exponent; `+inf` absorbs.
    pub fn shift(self, by: Exponent) -> Self {
        match self {
            ExtExponent::Finite(e) => ExtExponent::Finite(e + by),
            ExtExponent::Infinite => ExtExponent::Infinite,
        }
    }

    pub fn plus(self, other: ExtExponent) -> Self {
        match (self, other) {
            (ExtExponent::Finite(a), ExtExponent::Finite(b)) => ExtExponent::Finite(a + b),
            _ => ExtExponent::Infinite,
        }
    }

    /// True when `e` lies strictly below this bound.
    pub fn admits(self, e: Exponent) -> bool {
        match self {
            ExtExponent::Finite(t) => e < t,
            ExtExponent::Infinite => true,
        }
    }
}

impl From<Exponent> for ExtExponent {
    fn from(e: Exponent) -> Self {
        ExtExponent::Finite(e)
    }
}

impl PartialOrd for ExtExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtExponent::Finite(a), ExtExponent::Finite(b)) => a.cmp(b),
            (ExtExponent::Finite(_), ExtExponent::Infinite) => Ordering::Less,
            (ExtExponent::Infinite, ExtExponent::Finite(_)) => Ordering::Greater,
            (ExtExponent::Infinite, ExtExponent::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtExponent::Finite(e) => write!(f, "{e}"),
            ExtExponent::Infinite => f.write_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let e = Exponent::new(4, -6);
        assert_eq!(e.numer(), -2);
        assert_eq!(e.denom(), 3);
        assert_eq!(e.to_string(), "-2/3");
    }

    #[test]
    fn infinity_is_top() {
        let inf = ExtExponent::Infinite;
        assert!(ExtExponent::Finite(Exponent::integer(1_000_000)) < inf);
        assert_eq!(inf.shift(Exponent::integer(-3)), inf);
        assert!(inf.admits(Exponent::integer(7)));
        assert!(!ExtExponent::Finite(Exponent::integer(2)).admits(Exponent::integer(2)));
    }
}
