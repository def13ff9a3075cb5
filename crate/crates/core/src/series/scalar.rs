use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicI64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::exponent::{Exponent, ExtExponent};
use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Coeff = BigRational;

/// Default relative working precision used when an exact quotient or square
/// root does not terminate.
pub const DEFAULT_ORDER: i64 = 8;

static WORKING_ORDER: AtomicI64 = AtomicI64::new(DEFAULT_ORDER);

/// Relative precision used by [`SeriesScalar::div`], [`SeriesScalar::inv`]
/// and [`SeriesScalar::sqrt`].
pub fn default_order() -> Exponent {
    Exponent::integer(WORKING_ORDER.load(AtomicOrdering::Relaxed))
}

/// Process-wide override of [`default_order`]; non-positive values are ignored.
pub fn set_default_order(order: i64) {
    if order > 0 {
        WORKING_ORDER.store(order, AtomicOrdering::Relaxed);
    }
}

/// Outcome of a sign test.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SignValue {
    Positive,
    Negative,
    Zero,
    /// Every stored term cancelled but the value is only known modulo a finite order.
    IndeterminateAtTruncation,
}

impl SignValue {
    pub fn is_nonnegative(self) -> bool {
        matches!(self, SignValue::Positive | SignValue::Zero)
    }
}

/// A truncated formal series `sum a_g h^g` with rational exponents and exact
/// rational coefficients.
///
/// `trunc` is the order below which the stored terms are exact: the value is
/// known modulo `h^trunc`. `ExtExponent::Infinite` marks an exact element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SeriesScalar {
    terms: BTreeMap<Exponent, Coeff>,
    trunc: ExtExponent,
}

impl Default for SeriesScalar {
    fn default() -> Self {
        Self::zero()
    }
}

fn coeff_from(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

fn exact_sqrt(c: &Coeff) -> Option<Coeff> {
    if c.is_negative() {
        return None;
    }
    let num = c.numer().sqrt();
    let den = c.denom().sqrt();
    if &(&num * &num) == c.numer() && &(&den * &den) == c.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

impl SeriesScalar {
    pub fn zero() -> Self {
        SeriesScalar {
            terms: BTreeMap::new(),
            trunc: ExtExponent::Infinite,
        }
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(c, Exponent::ZERO)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(coeff_from(n))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::constant(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// `c * h^e`, exact.
    pub fn monomial(c: Coeff, e: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        SeriesScalar {
            terms,
            trunc: ExtExponent::Infinite,
        }
    }

    /// The formal parameter `h` itself.
    pub fn h() -> Self {
        Self::monomial(Coeff::one(), Exponent::ONE)
    }

    /// Builds a series from (exponent, coefficient) pairs; repeated exponents
    /// are summed, zeros and terms at or above `trunc` are dropped.
    pub fn from_terms<I>(terms: I, trunc: ExtExponent) -> Self
    where
        I: IntoIterator<Item = (Exponent, Coeff)>,
    {
        let mut map: BTreeMap<Exponent, Coeff> = BTreeMap::new();
        for (e, c) in terms {
            if !trunc.admits(e) {
                continue;
            }
            accumulate(&mut map, e, c);
        }
        SeriesScalar { terms: map, trunc }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &Coeff)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, e: Exponent) -> Coeff {
        self.terms.get(&e).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn trunc_order(&self) -> ExtExponent {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        !self.trunc.is_finite()
    }

    /// True for the exact zero element only.
    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.is_exact()
    }

    /// True when no terms are stored, regardless of truncation.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1 && self.is_exact()
    }

    pub fn leading(&self) -> Option<(Exponent, &Coeff)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    /// Leading term `a_{g0} h^{g0}` as an exact monomial (zero if empty).
    pub fn leading_monomial(&self) -> SeriesScalar {
        match self.leading() {
            Some((e, c)) => Self::monomial(c.clone(), e),
            None => Self::zero(),
        }
    }

    /// A lower bound for the valuation: the least stored exponent, else the
    /// truncation order.
    pub fn valuation_bound(&self) -> ExtExponent {
        match self.leading() {
            Some((e, _)) => ExtExponent::Finite(e),
            None => self.trunc,
        }
    }

    /// Restricts to the terms below `order` and lowers the truncation accordingly.
    pub fn truncated(&self, order: ExtExponent) -> Self {
        let trunc = self.trunc.min(order);
        SeriesScalar {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| trunc.admits(**e))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
            trunc,
        }
    }

    pub fn neg(&self) -> Self {
        SeriesScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            trunc: self.trunc,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut terms: BTreeMap<Exponent, Coeff> = self
            .terms
            .iter()
            .filter(|(e, _)| trunc.admits(**e))
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        for (e, c) in &other.terms {
            if trunc.admits(*e) {
                accumulate(&mut terms, *e, c.clone());
            }
        }
        SeriesScalar { terms, trunc }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let trunc = self
            .trunc
            .plus(other.valuation_bound())
            .min(other.trunc.plus(self.valuation_bound()));
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = *ea + *eb;
                if trunc.admits(e) {
                    accumulate(&mut terms, e, coeff_mul(ca, cb));
                }
            }
        }
        SeriesScalar { terms, trunc }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return SeriesScalar {
                terms: BTreeMap::new(),
                trunc: ExtExponent::Infinite,
            };
        }
        SeriesScalar {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
            trunc: self.trunc,
        }
    }

    /// Multiplies by `h^by`.
    pub fn shift(&self, by: Exponent) -> Self {
        SeriesScalar {
            terms: self.terms.iter().map(|(e, c)| (*e + by, c.clone())).collect(),
            trunc: self.trunc.shift(by),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient by long division from the lowest term.
    ///
    /// Exact inputs whose quotient is a finite sum give an exact result. A
    /// non-terminating expansion is cut `precision` orders above the leading
    /// exponent of the quotient. Truncated inputs bound the result by the
    /// usual error propagation `min(Ta - vb, Tb + va - 2 vb)`.
    pub fn div_with(&self, divisor: &Self, precision: Exponent) -> Result<Self> {
        let (eb0, cb0) = match divisor.leading() {
            Some((e, c)) => (e, c.clone()),
            None => {
                return Err(match divisor.trunc {
                    ExtExponent::Infinite => Error::ZeroDivision,
                    ExtExponent::Finite(order) => Error::IndeterminateAtTruncation { order },
                });
            }
        };
        if divisor.is_exact() && divisor.terms.len() == 1 {
            // a monomial divides term by term
            let terms = self.terms.iter().map(|(e, c)| (*e - eb0, coeff_div(c, &cb0))).collect();
            return Ok(SeriesScalar { terms, trunc: self.trunc.shift(-eb0) });
        }
        let va = self.valuation_bound();
        let bound = self
            .trunc
            .shift(-eb0)
            .min(divisor.trunc.plus(va).shift(-eb0 - eb0));
        let stop = match va {
            ExtExponent::Finite(v) => bound.min(ExtExponent::Finite(v - eb0 + precision)),
            ExtExponent::Infinite => bound,
        };

        let mut rem: BTreeMap<Exponent, Coeff> = self.terms.clone();
        let mut quotient = BTreeMap::new();
        let mut dropped = false;
        while let Some((er, cr)) = rem.iter().next().map(|(e, c)| (*e, c.clone())) {
            let qe = er - eb0;
            if !stop.admits(qe) {
                dropped = true;
                break;
            }
            let t = coeff_div(&cr, &cb0);
            for (eb, cb) in &divisor.terms {
                accumulate(&mut rem, qe + *eb, -coeff_mul(&t, cb));
            }
            debug_assert!(!rem.contains_key(&er));
            quotient.insert(qe, t);
        }
        let trunc = if dropped { stop } else { bound };
        Ok(SeriesScalar::from_terms(quotient, trunc))
    }

    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.div_with(divisor, default_order())
    }

    /// Quotient when `divisor` is known to divide `self`, as in fraction-free
    /// elimination. Exact operands give the exact quotient however many
    /// orders it spans; anything else falls back to [`Self::div`].
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let span = |x: &Self| match (x.terms.keys().next(), x.terms.keys().next_back()) {
            (Some(lo), Some(hi)) => Some(*hi - *lo),
            _ => None,
        };
        if self.is_exact() && divisor.is_exact() {
            if let (Some(sa), Some(sb)) = (span(self), span(divisor)) {
                let width = sa - sb;
                if !width.is_negative() {
                    let q = self.div_with(divisor, width + Exponent::integer(1))?;
                    if q.is_exact() {
                        return Ok(q);
                    }
                }
            }
        }
        self.div(divisor)
    }

    pub fn inv_with(&self, precision: Exponent) -> Result<Self> {
        Self::one().div_with(self, precision)
    }

    pub fn inv(&self) -> Result<Self> {
        self.inv_with(default_order())
    }

    /// Square root of a positive element whose leading coefficient is a
    /// rational square. The result has leading exponent `g0 / 2` and the same
    /// relative precision as the input, capped at `precision`.
    pub fn sqrt_with(&self, precision: Exponent) -> Result<Self> {
        if self.sign() != SignValue::Positive {
            return Err(Error::NotPositive);
        }
        let (g0, c0) = self.leading().map(|(e, c)| (e, c.clone())).expect("positive");
        let root = exact_sqrt(&c0).ok_or_else(|| Error::IrrationalLeadingCoefficient(c0.to_string()))?;
        let lead = SeriesScalar::monomial(root, g0.half());

        // self = c0 h^g0 (1 + rest)
        let unit = self.shift(-g0).scale(&c0.recip());
        let rest = unit.sub(&SeriesScalar::one());
        if rest.is_exact_zero() {
            return Ok(lead);
        }
        let rel = rest.trunc.min(ExtExponent::Finite(precision));
        let rest = rest.truncated(rel);

        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut binom = Coeff::one();
        let mut power = SeriesScalar::one();
        let mut acc = SeriesScalar::one().truncated(rel);
        let mut k: i64 = 0;
        loop {
            power = power.mul(&rest).truncated(rel);
            if power.is_empty() {
                break;
            }
            binom = binom * (&half - coeff_from(k)) / coeff_from(k + 1);
            k += 1;
            acc = acc.add(&power.scale(&binom));
        }
        Ok(lead.mul(&acc))
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.sqrt_with(default_order())
    }

    /// Sign read off the leading coefficient.
    pub fn sign(&self) -> SignValue {
        match self.leading() {
            Some((_, c)) if c.is_positive() => SignValue::Positive,
            Some(_) => SignValue::Negative,
            None if self.is_exact() => SignValue::Zero,
            None => SignValue::IndeterminateAtTruncation,
        }
    }

    /// Sign of `self - other`.
    pub fn compare(&self, other: &Self) -> SignValue {
        self.sub(other).sign()
    }

    pub fn abs(&self) -> Result<Self> {
        match self.sign() {
            SignValue::Positive | SignValue::Zero => Ok(self.clone()),
            SignValue::Negative => Ok(self.neg()),
            SignValue::IndeterminateAtTruncation => Err(self.indeterminate()),
        }
    }

    /// Least exponent of the support; `+inf` for zero.
    pub fn valuation(&self) -> Result<ExtExponent> {
        match self.leading() {
            Some((e, _)) => Ok(ExtExponent::Finite(e)),
            None if self.is_exact() => Ok(ExtExponent::Infinite),
            None => Err(self.indeterminate()),
        }
    }

    /// `exp(-v(self - other))` in floating point.
    pub fn metric(&self, other: &Self) -> Result<f64> {
        Ok(match self.sub(other).valuation()? {
            ExtExponent::Finite(e) => (-e.to_f64()).exp(),
            ExtExponent::Infinite => 0.0,
        })
    }

    /// Equality of the stored terms below the common truncation order.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let t = self.trunc.min(other.trunc);
        self.truncated(t).terms == other.truncated(t).terms
    }

    pub(crate) fn indeterminate(&self) -> Error {
        match self.trunc {
            ExtExponent::Finite(order) => Error::IndeterminateAtTruncation { order },
            ExtExponent::Infinite => unreachable!("exact values have a determinate sign"),
        }
    }
}

/// Products and sums of integer coefficients skip the gcd normalisation,
/// which dominates fraction-free elimination.
fn coeff_mul(a: &Coeff, b: &Coeff) -> Coeff {
    if a.is_integer() && b.is_integer() {
        Coeff::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn coeff_div(a: &Coeff, b: &Coeff) -> Coeff {
    if a.is_integer() && b.is_integer() {
        let (q, r) = a.numer().div_rem(b.numer());
        if r.is_zero() {
            return Coeff::from_integer(q);
        }
    }
    a / b
}

fn accumulate(map: &mut BTreeMap<Exponent, Coeff>, e: Exponent, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match map.entry(e) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let cur = o.get_mut();
            if cur.is_integer() && c.is_integer() {
                *cur = Coeff::from_integer(cur.numer() + c.numer());
            } else {
                *cur += c;
            }
            if cur.is_zero() {
                o.remove();
            }
        }
    }
}

fn write_coeff_term(f: &mut fmt::Formatter<'_>, c: &Coeff, e: Exponent) -> fmt::Result {
    let mono = if e.is_zero() {
        None
    } else if e.is_integer() && !e.is_negative() {
        Some(if e == Exponent::ONE {
            "h".to_string()
        } else {
            format!("h^{e}")
        })
    } else if e.is_integer() {
        Some(format!("h^{e}"))
    } else {
        Some(format!("h^({e})"))
    };
    match mono {
        None => write!(f, "{c}"),
        Some(m) if c.is_one() => f.write_str(&m),
        Some(m) => write!(f, "{c}*{m}"),
    }
}

/// Canonical literal: terms by increasing exponent, e.g. `1 - 3/2*h + h^(5/2)`.
/// Truncated values end with `+ O(h^T)`.
impl fmt::Display for SeriesScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            write_coeff_term(f, &c.abs(), *e)?;
            first = false;
        }
        match self.trunc {
            ExtExponent::Infinite => {
                if first {
                    f.write_str("0")?;
                }
            }
            ExtExponent::Finite(t) => {
                if !first {
                    f.write_str(" + ")?;
                }
                let mono = if t.is_integer() {
                    format!("h^{t}")
                } else {
                    format!("h^({t})")
                };
                write!(f, "O({mono})")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&SeriesScalar> for &SeriesScalar {
            type Output = SeriesScalar;
            fn $method(self, rhs: &SeriesScalar) -> SeriesScalar {
                SeriesScalar::$method(self, rhs)
            }
        }
        impl $trait<SeriesScalar> for SeriesScalar {
            type Output = SeriesScalar;
            fn $method(self, rhs: SeriesScalar) -> SeriesScalar {
                SeriesScalar::$method(&self, &rhs)
            }
        }
        impl $trait<&SeriesScalar> for SeriesScalar {
            type Output = SeriesScalar;
            fn $method(self, rhs: &SeriesScalar) -> SeriesScalar {
                SeriesScalar::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for SeriesScalar {
    type Output = SeriesScalar;
    fn neg(self) -> SeriesScalar {
        SeriesScalar::neg(&self)
    }
}

impl Neg for &SeriesScalar {
    type Output = SeriesScalar;
    fn neg(self) -> SeriesScalar {
        SeriesScalar::neg(self)
    }
}
