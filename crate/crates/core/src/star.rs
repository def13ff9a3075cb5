//! Polynomial observables on flat phase space `R^{2d}` and the Moyal star
//! product
//!
//! ```text
//! f * g = sum_{a,b} (i h / 2)^{|a|+|b|} (-1)^{|b|} / (a! b!)
//!         (d_q^a d_p^b f) (d_p^a d_q^b g)
//! ```
//!
//! which is the exponential of the Poisson bidifferential operator expanded
//! for finitely many derivatives. It terminates on polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::field::{Complex, Scalar};
use crate::series::{Coeff, ComplexSeries, Exponent, ExtExponent, SeriesScalar};

/// Exponent vector `(q_1..q_d, p_1..p_d)`.
pub type Monomial = Vec<u32>;

/// A sparse polynomial in `q_1..q_d, p_1..p_d` with coefficients in `C((h^Q))`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyObservable {
    d: usize,
    terms: BTreeMap<Monomial, ComplexSeries>,
}

fn falling(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j))
}

fn factorial(k: u32) -> BigInt {
    falling(k, k)
}

impl PolyObservable {
    pub fn zero(d: usize) -> Self {
        PolyObservable {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(d: usize, c: ComplexSeries) -> Self {
        let mut p = Self::zero(d);
        p.add_term(vec![0; 2 * d], c);
        p
    }

    pub fn one(d: usize) -> Self {
        Self::constant(d, ComplexSeries::one())
    }

    pub fn real_constant(d: usize, c: SeriesScalar) -> Self {
        Self::constant(d, Complex::real(c))
    }

    /// The coordinate with flat index `var` (`0..d` are `q`, `d..2d` are `p`).
    pub fn coordinate(d: usize, var: usize) -> Self {
        assert!(var < 2 * d, "coordinate index out of range");
        let mut m = vec![0; 2 * d];
        m[var] = 1;
        let mut p = Self::zero(d);
        p.add_term(m, ComplexSeries::one());
        p
    }

    /// `q_j`, 1-based.
    pub fn q(d: usize, j: usize) -> Self {
        Self::coordinate(d, j - 1)
    }

    /// `p_j`, 1-based.
    pub fn p(d: usize, j: usize) -> Self {
        Self::coordinate(d, d + j - 1)
    }

    pub fn from_terms<I>(d: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, ComplexSeries)>,
    {
        let mut p = Self::zero(d);
        for (m, c) in terms {
            assert_eq!(m.len(), 2 * d, "monomial length must be 2d");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: ComplexSeries) {
        if c.is_exact_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = Scalar::add(o.get(), &c);
                if sum.is_exact_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ComplexSeries)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &[u32]) -> ComplexSeries {
        self.terms.get(m).cloned().unwrap_or_else(ComplexSeries::zero)
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> ComplexSeries {
        self.coeff(&vec![0; 2 * self.d])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Reality condition: every coefficient has vanishing imaginary part.
    pub fn is_real(&self) -> Result<bool> {
        for c in self.terms.values() {
            if !c.im.is_zero()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(format!(
                "observables with d = {} and d = {}",
                self.d, other.d
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PolyObservable {
            d: self.d,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &ComplexSeries) -> Self {
        let mut out = Self::zero(self.d);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), Scalar::mul(c, s));
        }
        out
    }

    pub fn scale_real(&self, s: &SeriesScalar) -> Self {
        self.scale(&Complex::real(s.clone()))
    }

    /// Pointwise (commutative) product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.d);
        for (mf, cf) in &self.terms {
            for (mg, cg) in &other.terms {
                let m = mf.iter().zip(mg).map(|(a, b)| a + b).collect();
                out.add_term(m, Scalar::mul(cf, cg));
            }
        }
        Ok(out)
    }

    /// Pointwise power.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.d);
        for _ in 0..n {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    /// Complex conjugation of every coefficient.
    pub fn conj_obs(&self) -> Self {
        PolyObservable {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), Scalar::conj(c)))
                .collect(),
        }
    }

    /// Partial derivative with respect to flat coordinate `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.d);
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm[var] -= 1;
            let k = BigRational::from_integer(BigInt::from(m[var]));
            out.add_term(dm, c.scale_coeff(&k));
        }
        out
    }

    /// Least valuation bound over all coefficient parts.
    pub fn min_valuation(&self) -> ExtExponent {
        self.terms
            .values()
            .map(|c| c.re.valuation_bound().min(c.im.valuation_bound()))
            .min()
            .unwrap_or(ExtExponent::Infinite)
    }

    /// Evaluation of the polynomial with the coordinates replaced by scalars.
    pub fn eval(&self, point: &[ComplexSeries]) -> ComplexSeries {
        assert_eq!(point.len(), 2 * self.d);
        let mut acc = ComplexSeries::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(m) {
                for _ in 0..k {
                    t = Scalar::mul(&t, x);
                }
            }
            acc = Scalar::add(&acc, &t);
        }
        acc
    }
}

/// Poisson bracket `sum_j (d_qj f d_pj g - d_pj f d_qj g)`.
pub fn poisson(f: &PolyObservable, g: &PolyObservable) -> Result<PolyObservable> {
    f.check_dim(g)?;
    let d = f.d;
    let mut out = PolyObservable::zero(d);
    for j in 0..d {
        let left = f.derivative(j).mul(&g.derivative(d + j))?;
        let right = f.derivative(d + j).mul(&g.derivative(j))?;
        out = out.add(&left)?.sub(&right)?;
    }
    Ok(out)
}

/// Moyal star product.
pub fn star(f: &PolyObservable, g: &PolyObservable) -> Result<PolyObservable> {
    f.check_dim(g)?;
    let d = f.d;
    let mut out = PolyObservable::zero(d);
    for (mf, cf) in &f.terms {
        for (mg, cg) in &g.terms {
            let base = Scalar::mul(cf, cg);
            // per degree of freedom: a_j pairs d_qj on f with d_pj on g,
            // b_j pairs d_pj on f with d_qj on g.
            let limits: Vec<(u32, u32)> = (0..d)
                .map(|j| (mf[j].min(mg[d + j]), mf[d + j].min(mg[j])))
                .collect();
            let mut a = vec![0u32; d];
            let mut b = vec![0u32; d];
            loop {
                out.add_term(
                    contracted_monomial(mf, mg, &a, &b),
                    star_coefficient(&base, mf, mg, &a, &b),
                );
                if !advance(&mut a, &mut b, &limits) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

fn advance(a: &mut [u32], b: &mut [u32], limits: &[(u32, u32)]) -> bool {
    for j in 0..a.len() {
        if a[j] < limits[j].0 {
            a[j] += 1;
            return true;
        }
        a[j] = 0;
        if b[j] < limits[j].1 {
            b[j] += 1;
            return true;
        }
        b[j] = 0;
    }
    false
}

fn contracted_monomial(mf: &[u32], mg: &[u32], a: &[u32], b: &[u32]) -> Monomial {
    let d = a.len();
    let mut m = vec![0; 2 * d];
    for j in 0..d {
        m[j] = mf[j] - a[j] + mg[j] - b[j];
        m[d + j] = mf[d + j] - b[j] + mg[d + j] - a[j];
    }
    m
}

fn star_coefficient(base: &ComplexSeries, mf: &[u32], mg: &[u32], a: &[u32], b: &[u32]) -> ComplexSeries {
    let d = a.len();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut order = 0u32;
    let mut minus = false;
    for j in 0..d {
        num *= falling(mf[j], a[j]) * falling(mg[d + j], a[j]);
        num *= falling(mf[d + j], b[j]) * falling(mg[j], b[j]);
        den *= factorial(a[j]) * factorial(b[j]);
        order += a[j] + b[j];
        minus ^= b[j] % 2 == 1;
    }
    den *= BigInt::from(2u32).pow(order);
    let mut r = BigRational::new(num, den);
    if minus {
        r = -r;
    }
    base.scale_coeff(&r)
        .rotate(order)
        .shift(Exponent::integer(order as i64))
}

/// Commutator `f * g - g * f`.
pub fn commutator(f: &PolyObservable, g: &PolyObservable) -> Result<PolyObservable> {
    star(f, g)?.sub(&star(g, f)?)
}

/// Symmetrised product `f * g + g * f`.
pub fn anticommutator(f: &PolyObservable, g: &PolyObservable) -> Result<PolyObservable> {
    star(f, g)?.add(&star(g, f)?)
}

/// Moyal bracket `(f * g - g * f) / (i h)`.
pub fn moyal_bracket(f: &PolyObservable, g: &PolyObservable) -> Result<PolyObservable> {
    let comm = commutator(f, g)?;
    let floor = f
        .min_valuation()
        .plus(g.min_valuation())
        .shift(Exponent::ONE);
    let mut out = PolyObservable::zero(f.d);
    for (m, c) in comm.terms {
        let v = c.re.valuation_bound().min(c.im.valuation_bound());
        if v < floor {
            return Err(Error::DivisibilityFailure(format!(
                "coefficient {c} has valuation {v} below {floor}"
            )));
        }
        // z / (i h) = -i z h^{-1}
        out.add_term(m, c.rotate(3).shift(-Exponent::ONE));
    }
    Ok(out)
}

fn graded_key(m: &Monomial) -> (u32, std::cmp::Reverse<Monomial>) {
    (m.iter().sum(), std::cmp::Reverse(m.clone()))
}

fn write_summand(
    out: &mut String,
    first: bool,
    c: &Coeff,
    e: Exponent,
    imaginary: bool,
    m: &[u32],
    d: usize,
) {
    if c.is_negative() {
        out.push_str(if first { "-" } else { " - " });
    } else if !first {
        out.push_str(" + ");
    }
    let mut factors: Vec<String> = Vec::new();
    let c = c.abs();
    if !e.is_zero() {
        factors.push(if e == Exponent::ONE {
            "h".into()
        } else if e.is_integer() {
            format!("h^{e}")
        } else {
            format!("h^({e})")
        });
    }
    if imaginary {
        factors.push("i".into());
    }
    for (var, &k) in m.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let name = if var < d {
            format!("q{}", var + 1)
        } else {
            format!("p{}", var - d + 1)
        };
        factors.push(if k == 1 { name } else { format!("{name}^{k}") });
    }
    if !c.is_one() || factors.is_empty() {
        factors.insert(0, c.to_string());
    }
    out.push_str(&factors.join("*"));
}

/// Canonical expression in the observable grammar, monomials by increasing
/// total degree. Truncation information of coefficients is not printed.
impl fmt::Display for PolyObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by_key(|m| graded_key(m));
        let mut out = String::new();
        let mut first = true;
        for m in keys {
            let c = &self.terms[m];
            for (e, v) in c.re.terms() {
                write_summand(&mut out, first, v, e, false, m, self.d);
                first = false;
            }
            for (e, v) in c.im.terms() {
                write_summand(&mut out, first, v, e, true, m, self.d);
                first = false;
            }
        }
        if first {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_observable;

    fn obs(s: &str, d: usize) -> PolyObservable {
        parse_observable(s, d).unwrap()
    }

    #[test]
    fn canonical_pair_brackets() {
        let (q, p) = (obs("q1", 1), obs("p1", 1));
        assert_eq!(poisson(&q, &p).unwrap(), PolyObservable::one(1));
        assert_eq!(moyal_bracket(&q, &p).unwrap(), PolyObservable::one(1));
        assert_eq!(star(&q, &p).unwrap(), obs("q1*p1 + 1/2*i*h", 1));
        assert_eq!(star(&p, &q).unwrap(), obs("q1*p1 - 1/2*i*h", 1));
    }

    #[test]
    fn poisson_of_squares() {
        let f = obs("q1^2", 1);
        let g = obs("p1^2", 1);
        assert_eq!(poisson(&f, &g).unwrap(), obs("4*q1*p1", 1));
        assert!(poisson(&f, &f).unwrap().is_zero());
        assert_eq!(moyal_bracket(&f, &g).unwrap(), obs("4*q1*p1", 1));
    }

    #[test]
    fn quadratic_star_by_hand() {
        // q^2 * p^2 = q^2 p^2 + 2 i h q p - h^2/2
        let s = star(&obs("q1^2", 1), &obs("p1^2", 1)).unwrap();
        assert_eq!(s, obs("q1^2*p1^2 + 2*i*h*q1*p1 - 1/2*h^2", 1));
    }

    #[test]
    fn unit_law() {
        let f = obs("q1^3*p2 - 2*i*h*p1 + 5", 2);
        let one = PolyObservable::one(2);
        assert_eq!(star(&f, &one).unwrap(), f);
        assert_eq!(star(&one, &f).unwrap(), f);
    }

    #[test]
    fn conjugation_reverses_star() {
        let q = obs("q1", 1);
        let p = obs("p1", 1);
        let lhs = star(&q, &p).unwrap().conj_obs();
        assert_eq!(lhs, star(&p.conj_obs(), &q.conj_obs()).unwrap());
        assert_eq!(obs("q1 + i*p1", 1).conj_obs(), obs("q1 - i*p1", 1));
        assert!(obs("q1*p1 + h", 1).is_real().unwrap());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        assert!(matches!(
            star(&obs("q1", 1), &obs("q1", 2)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn display_is_canonical() {
        let f = obs("p1*q1 + i*h + 3 - h^(1/2)*q2^2", 2);
        assert_eq!(f.to_string(), "3 + h*i + q1*p1 - h^(1/2)*q2^2");
        assert_eq!(PolyObservable::zero(1).to_string(), "0");
    }
}
