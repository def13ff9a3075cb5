//! Recursive-descent parsers for series literals and observable expressions.
//!
//! Series literals:
//!
//! ```text
//! series   := [sign] term { ("+"|"-") term } ;
//! term     := coeff [ "*" mono ] | mono | "O(" mono ")" ;
//! mono     := "h" [ "^" rational ] ;
//! rational := integer [ "/" positive-integer ] | "(" integer "/" positive-integer ")" ;
//! ```
//!
//! `O(h^T)` marks a value known only modulo `h^T`; it is what the printer
//! emits for truncated values.
//!
//! Observables:
//!
//! ```text
//! sum  := [sign] prod { ("+"|"-") prod } ;
//! prod := pow { "*" pow } ;
//! pow  := atom [ "^" positive-integer ] ;          (* "h" also takes a rational *)
//! atom := "q" index | "p" index | "i" | "h" | rational | "(" sum ")" ;
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Complex;
use crate::series::{Coeff, ComplexSeries, Exponent, ExtExponent, SeriesScalar};
use crate::star::PolyObservable;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    /// Next character without skipping whitespace.
    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.pos += want.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        if self.eat(want) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{want}'")))
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn positive(&mut self) -> Result<BigInt> {
        let at = self.pos;
        let n = self.digits()?;
        if n.is_zero() {
            self.pos = at;
            return Err(self.error("expected a positive integer"));
        }
        Ok(n)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let n = self.digits()?;
        Ok(if negative { -n } else { n })
    }

    /// `integer ["/" positive]` or the parenthesised form.
    fn rational(&mut self) -> Result<Coeff> {
        if self.eat('(') {
            let r = self.bare_rational()?;
            self.expect(')')?;
            Ok(r)
        } else {
            self.bare_rational()
        }
    }

    fn bare_rational(&mut self) -> Result<Coeff> {
        let num = self.integer()?;
        let den = if self.eat('/') { self.positive()? } else { BigInt::one() };
        Ok(BigRational::new(num, den))
    }

    fn exponent(&mut self) -> Result<Exponent> {
        let at = self.pos;
        let r = self.rational()?;
        let to_i64 = |b: &BigInt| i64::try_from(b).ok();
        match (to_i64(r.numer()), to_i64(r.denom())) {
            (Some(n), Some(d)) => Ok(Exponent::new(n, d)),
            _ => {
                self.pos = at;
                Err(self.error("exponent out of range"))
            }
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }
}

/// Parses a series literal such as `1 - 3/2*h + h^(5/2)`.
pub fn parse_series(text: &str) -> Result<SeriesScalar> {
    let mut cur = Cursor::new(text);
    let mut terms: Vec<(Exponent, Coeff)> = Vec::new();
    let mut trunc = ExtExponent::Infinite;
    if cur.peek().is_none() {
        return Err(cur.error("empty series"));
    }
    let mut negate = if cur.eat('-') {
        true
    } else {
        cur.eat('+');
        false
    };
    loop {
        match series_term(&mut cur)? {
            SeriesTerm::Value(e, c) => terms.push((e, if negate { -c } else { c })),
            SeriesTerm::Order(t) => trunc = trunc.min(ExtExponent::Finite(t)),
        }
        match cur.peek() {
            None => break,
            Some('+') => negate = false,
            Some('-') => negate = true,
            Some(c) => return Err(cur.error(format!("unexpected '{c}'"))),
        }
        cur.bump();
    }
    cur.finish()?;
    Ok(SeriesScalar::from_terms(terms, trunc))
}

enum SeriesTerm {
    Value(Exponent, Coeff),
    Order(Exponent),
}

fn series_term(cur: &mut Cursor<'_>) -> Result<SeriesTerm> {
    match cur.peek() {
        Some('h') => Ok(SeriesTerm::Value(series_mono(cur)?, Coeff::one())),
        Some('O') => {
            cur.bump();
            cur.expect('(')?;
            let e = series_mono(cur)?;
            cur.expect(')')?;
            Ok(SeriesTerm::Order(e))
        }
        Some(c) if c.is_ascii_digit() || c == '(' || c == '-' || c == '+' => {
            let c = cur.rational()?;
            if cur.eat('*') {
                if cur.peek() != Some('h') {
                    return Err(cur.error("expected 'h' after '*'"));
                }
                Ok(SeriesTerm::Value(series_mono(cur)?, c))
            } else {
                Ok(SeriesTerm::Value(Exponent::ZERO, c))
            }
        }
        Some(c) => Err(cur.error(format!("unexpected '{c}'"))),
        None => Err(cur.error("unexpected end of input")),
    }
}

fn series_mono(cur: &mut Cursor<'_>) -> Result<Exponent> {
    cur.expect('h')?;
    if cur.eat('^') {
        cur.exponent()
    } else {
        Ok(Exponent::ONE)
    }
}

/// Parses an observable expression in `d` degrees of freedom, e.g.
/// `q1*p1 + 1/2*h*i`.
pub fn parse_observable(text: &str, d: usize) -> Result<PolyObservable> {
    let mut cur = Cursor::new(text);
    let mut parser = ObsParser { cur: &mut cur, d };
    let value = parser.sum()?;
    parser.cur.finish()?;
    Ok(value)
}

struct ObsParser<'c, 'a> {
    cur: &'c mut Cursor<'a>,
    d: usize,
}

impl ObsParser<'_, '_> {
    fn sum(&mut self) -> Result<PolyObservable> {
        let negate = if self.cur.eat('-') {
            true
        } else {
            self.cur.eat('+');
            false
        };
        let mut acc = self.prod()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.cur.eat('+') {
                acc = acc.add(&self.prod()?)?;
            } else if self.cur.eat('-') {
                acc = acc.sub(&self.prod()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn prod(&mut self) -> Result<PolyObservable> {
        let mut acc = self.pow()?;
        while self.cur.eat('*') {
            acc = acc.mul(&self.pow()?)?;
        }
        Ok(acc)
    }

    fn pow(&mut self) -> Result<PolyObservable> {
        if self.cur.peek() == Some('h') {
            self.cur.bump();
            let e = if self.cur.eat('^') {
                self.cur.exponent()?
            } else {
                Exponent::ONE
            };
            let h = SeriesScalar::monomial(Coeff::one(), e);
            return Ok(PolyObservable::real_constant(self.d, h));
        }
        let base = self.atom()?;
        if self.cur.eat('^') {
            let at = self.cur.pos;
            let n = self.cur.positive()?;
            let n = u32::try_from(&n).map_err(|_| {
                self.cur.pos = at;
                self.cur.error("power too large")
            })?;
            Ok(base.pow(n))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<PolyObservable> {
        let d = self.d;
        match self.cur.peek() {
            Some(c @ ('q' | 'p')) => {
                self.cur.bump();
                if !matches!(self.cur.peek_raw(), Some(ch) if ch.is_ascii_digit()) {
                    return Err(self.cur.error(format!("expected an index after '{c}'")));
                }
                let at = self.cur.pos;
                let idx = self.cur.digits()?;
                let idx = usize::try_from(&idx).unwrap_or(usize::MAX);
                if idx == 0 || idx > d {
                    self.cur.pos = at;
                    return Err(Error::IndexOutOfRange { index: idx, d });
                }
                Ok(if c == 'q' {
                    PolyObservable::q(d, idx)
                } else {
                    PolyObservable::p(d, idx)
                })
            }
            Some('i') => {
                self.cur.bump();
                Ok(PolyObservable::constant(d, ComplexSeries::i()))
            }
            Some('(') => {
                self.cur.bump();
                let inner = self.sum()?;
                self.cur.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.cur.digits()?;
                let den = if self.cur.eat('/') {
                    self.cur.positive()?
                } else {
                    BigInt::one()
                };
                let c = BigRational::new(num, den);
                Ok(PolyObservable::constant(
                    d,
                    Complex::real(SeriesScalar::constant(c)),
                ))
            }
            Some(c) => Err(self.cur.error(format!("unexpected '{c}'"))),
            None => Err(self.cur.error("unexpected end of input")),
        }
    }
}

/// Evaluates an arithmetic expression over series:
///
/// ```text
/// expr   := [sign] term { ("+"|"-") term } ;
/// term   := power { ("*"|"/") power } ;
/// power  := "h" [ "^" rational ] | atom [ "^" integer ] ;
/// atom   := rational | "sqrt(" expr ")" | "(" expr ")" ;
/// ```
///
/// Non-terminating quotients and roots use the working precision
/// [`crate::series::default_order`].
pub fn parse_expression(text: &str) -> Result<SeriesScalar> {
    let mut cur = Cursor::new(text);
    let value = ExprParser { cur: &mut cur }.expr()?;
    cur.finish()?;
    Ok(value)
}

struct ExprParser<'c, 'a> {
    cur: &'c mut Cursor<'a>,
}

impl ExprParser<'_, '_> {
    fn expr(&mut self) -> Result<SeriesScalar> {
        let negate = if self.cur.eat('-') {
            true
        } else {
            self.cur.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.cur.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.cur.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SeriesScalar> {
        let mut acc = self.power()?;
        loop {
            if self.cur.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.cur.eat('/') {
                let rhs = self.power()?;
                acc = acc.div(&rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<SeriesScalar> {
        if self.cur.peek() == Some('h') {
            self.cur.bump();
            let e = if self.cur.eat('^') { self.cur.exponent()? } else { Exponent::ONE };
            return Ok(SeriesScalar::monomial(Coeff::one(), e));
        }
        let base = self.atom()?;
        if !self.cur.eat('^') {
            return Ok(base);
        }
        let n = self.cur.integer()?;
        let k = u32::try_from(n.magnitude()).map_err(|_| self.cur.error("power too large"))?;
        if n.sign() == num_bigint::Sign::Minus {
            base.pow(k).inv()
        } else {
            Ok(base.pow(k))
        }
    }

    fn atom(&mut self) -> Result<SeriesScalar> {
        self.cur.skip_ws();
        if self.cur.src[self.cur.pos..].starts_with("sqrt") {
            self.cur.pos += 4;
            self.cur.expect('(')?;
            let inner = self.expr()?;
            self.cur.expect(')')?;
            return inner.sqrt();
        }
        match self.cur.peek() {
            Some('(') => {
                self.cur.bump();
                let inner = self.expr()?;
                self.cur.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.cur.digits()?;
                let den = if self.cur.peek() == Some('/') && self.next_is_digit() {
                    self.cur.eat('/');
                    self.cur.positive()?
                } else {
                    BigInt::one()
                };
                Ok(SeriesScalar::constant(BigRational::new(num, den)))
            }
            Some(c) => Err(self.cur.error(format!("unexpected '{c}'"))),
            None => Err(self.cur.error("unexpected end of input")),
        }
    }

    /// Distinguishes the rational literal `3/4` from the quotient `3/(h+1)`.
    fn next_is_digit(&self) -> bool {
        let rest = self.cur.src[self.cur.pos..].trim_start();
        rest.strip_prefix('/').is_some_and(|r| r.trim_start().starts_with(|c: char| c.is_ascii_digit()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_literal_support() {
        let s = parse_series("1 - 3/2*h + h^(5/2)").unwrap();
        assert_eq!(
            s.support(),
            vec![Exponent::ZERO, Exponent::ONE, Exponent::new(5, 2)]
        );
        assert_eq!(s.coeff(Exponent::ONE), BigRational::new((-3).into(), 2.into()));
        assert_eq!(s.to_string(), "1 - 3/2*h + h^(5/2)");
    }

    #[test]
    fn products_of_monomials_are_rejected() {
        let err = parse_series("h^(1/3)*h^(1/2)").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, column: 8, .. }), "{err:?}");
    }

    #[test]
    fn zero_literal() {
        let z = parse_series("0").unwrap();
        assert!(z.is_exact_zero());
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn signs_and_negative_exponents() {
        let s = parse_series("-h^-1 + (2/4) + 3*h^1/2").unwrap();
        assert_eq!(s.to_string(), "-h^-1 + 1/2 + 3*h^(1/2)");
        assert_eq!(parse_series(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn truncation_marker_roundtrips() {
        let s = parse_series("1 + h + O(h^3)").unwrap();
        assert_eq!(s.trunc_order(), ExtExponent::Finite(Exponent::integer(3)));
        assert_eq!(s.to_string(), "1 + h + O(h^3)");
        let t = parse_series("h^4 + O(h^3)").unwrap();
        assert_eq!(t.to_string(), "O(h^3)");
    }

    #[test]
    fn positioned_errors() {
        match parse_series("1 +\n  2*x") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert!(parse_series("").is_err());
        assert!(parse_series("1/0").is_err());
    }

    #[test]
    fn expressions() {
        assert_eq!(parse_expression("h^(1/3)*h^(1/2)").unwrap(), parse_series("h^(5/6)").unwrap());
        assert_eq!(parse_expression("(h^2 - 1)/(h - 1)").unwrap(), parse_series("1 + h").unwrap());
        assert_eq!(parse_expression("sqrt(9/4*h^2)").unwrap(), parse_series("3/2*h").unwrap());
        assert_eq!(parse_expression("3/4 - 1/4").unwrap(), parse_series("1/2").unwrap());
        assert_eq!(parse_expression("(2*h)^-1").unwrap(), parse_series("1/2*h^-1").unwrap());
        assert_eq!(parse_expression("1/(1 - h)").unwrap().coeff(Exponent::integer(7)), Coeff::one());
        assert_eq!(parse_expression("1/(h - h)"), Err(Error::ZeroDivision));
        assert!(matches!(parse_expression("1/0"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expression("sqrt(2)"), Err(Error::IrrationalLeadingCoefficient(_))));
    }

    #[test]
    fn observable_literals() {
        let f = parse_observable("q1*p1 + 1/2*h*i", 1).unwrap();
        assert_eq!(f.num_terms(), 2);
        let c = f.constant_term();
        assert!(c.re.is_exact_zero());
        assert_eq!(c.im, parse_series("1/2*h").unwrap());
        assert!(parse_observable("q1^2 - p2", 2).is_ok());
        assert_eq!(
            parse_observable("q3", 2),
            Err(Error::IndexOutOfRange { index: 3, d: 2 })
        );
        assert!(matches!(parse_observable("q1 +", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse_observable("q", 1), Err(Error::Syntax { .. })));
    }

    #[test]
    fn observable_grouping_and_powers() {
        let f = parse_observable("(q1 + p1)^2 - 2*q1*p1", 1).unwrap();
        assert_eq!(f, parse_observable("q1^2 + p1^2", 1).unwrap());
        let g = parse_observable("-(1/2)*h^(1/2)*i", 1).unwrap();
        assert_eq!(g.to_string(), "-1/2*h^(1/2)*i");
    }
}
