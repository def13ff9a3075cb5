//! Gaussian phase-space states as exact positive functionals on polynomial
//! observables. A state is fixed by its mean and covariance; expectations of
//! monomials follow from a binomial mean shift and Isserlis pairing of the
//! central moments.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Complex, Rational, Scalar};
use crate::linalg::{classify_symmetric, Definiteness, HermitianForm, Matrix};
use crate::parse::parse_series;
use crate::series::{Coeff, ComplexSeries, SeriesScalar, SignValue};
use crate::star::{star, Monomial, PolyObservable};

pub const DEFAULT_DEGREE_CAP: u32 = 12;

/// Whether the covariance satisfies the quantum bound
/// `cov + (i h / 2) J >= 0`, which for one degree of freedom reads
/// `det cov >= h^2 / 4`.
#[derive(Clone, Debug, PartialEq)]
pub enum Admissibility {
    Admissible,
    /// `value` is `det cov - h^2/4` for one degree of freedom, otherwise the
    /// negative value of the form on `witness`.
    BelowBound { value: SeriesScalar, witness: Vec<ComplexSeries> },
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaussianState {
    d: usize,
    mean: Vec<SeriesScalar>,
    cov: Matrix<SeriesScalar>,
    degree_cap: u32,
    admissibility: Admissibility,
}

impl GaussianState {
    pub fn new(mean: Vec<SeriesScalar>, cov: Matrix<SeriesScalar>) -> Result<Self> {
        if mean.len() % 2 != 0 || mean.is_empty() {
            return Err(Error::InvalidState(format!("mean has odd or zero length {}", mean.len())));
        }
        let d = mean.len() / 2;
        if cov.rows() != 2 * d || cov.cols() != 2 * d {
            return Err(Error::DimensionMismatch(format!(
                "covariance must be {0}x{0}, got {1}x{2}",
                2 * d,
                cov.rows(),
                cov.cols()
            )));
        }
        cov.check_symmetric()?;
        if !classify_symmetric(&cov)?.is_nonneg() {
            return Err(Error::InvalidState("covariance is not nonnegative definite".into()));
        }
        let admissibility = admissibility(d, &cov)?;
        Ok(GaussianState { d, mean, cov, degree_cap: DEFAULT_DEGREE_CAP, admissibility })
    }

    /// Centred state with the given covariance.
    pub fn centered(cov: Matrix<SeriesScalar>) -> Result<Self> {
        let n = cov.rows();
        Self::new(vec![SeriesScalar::zero(); n], cov)
    }

    /// Mean zero, covariance `(h/2) I`.
    pub fn ground(d: usize) -> Self {
        let half_h = SeriesScalar::h().scale(&half());
        Self::centered(Matrix::diagonal(&vec![half_h; 2 * d])).expect("ground state is valid")
    }

    /// Covariance `diag(s h/2, h/(2s))` with `s > 0`.
    pub fn squeezed(s: &Rational) -> Result<Self> {
        if s <= &Rational::from_i64(0) {
            return Err(Error::InvalidState(format!("squeeze parameter {s} must be positive")));
        }
        let h = SeriesScalar::h();
        Self::centered(Matrix::diagonal(&[h.scale(&(s * half())), h.scale(&(half() / s))]))
    }

    /// Covariance `[[h/2, c], [c, h/2]]`.
    pub fn correlated(c: &SeriesScalar) -> Result<Self> {
        let half_h = SeriesScalar::h().scale(&half());
        Self::centered(Matrix::from_rows(vec![vec![half_h.clone(), c.clone()], vec![c.clone(), half_h]])?)
    }

    /// Products of independent states.
    pub fn product(&self, other: &Self) -> Self {
        let (d1, d2) = (self.d, other.d);
        let d = d1 + d2;
        // phase-space layout (q_1..q_d, p_1..p_d)
        let place = |k: usize, first: bool| -> usize {
            match (first, k < if first { d1 } else { d2 }) {
                (true, true) => k,
                (true, false) => d + (k - d1),
                (false, true) => d1 + k,
                (false, false) => d + d1 + (k - d2),
            }
        };
        let mut mean = vec![SeriesScalar::zero(); 2 * d];
        let mut cov = Matrix::zeros(2 * d, 2 * d);
        for (state, first) in [(self, true), (other, false)] {
            let n = 2 * state.d;
            for i in 0..n {
                mean[place(i, first)] = state.mean[i].clone();
                for j in 0..n {
                    cov[(place(i, first), place(j, first))] = state.cov[(i, j)].clone();
                }
            }
        }
        Self::new(mean, cov).expect("product of valid states is valid")
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn mean(&self) -> &[SeriesScalar] {
        &self.mean
    }

    pub fn cov(&self) -> &Matrix<SeriesScalar> {
        &self.cov
    }

    pub fn admissibility(&self) -> &Admissibility {
        &self.admissibility
    }

    /// Warnings a caller should surface before trusting positivity.
    pub fn warnings(&self) -> Vec<String> {
        match &self.admissibility {
            Admissibility::Admissible => Vec::new(),
            Admissibility::BelowBound { value, .. } => vec![format!(
                "covariance violates the h/2 uncertainty bound (defect {value}); positivity is not guaranteed"
            )],
        }
    }

    /// `rho(x^m)` for a single monomial.
    pub fn moment(&self, m: &[u32]) -> Result<SeriesScalar> {
        let mut memo = HashMap::new();
        self.raw_moment(m, &mut memo)
    }

    pub fn expectation(&self, f: &PolyObservable) -> Result<ComplexSeries> {
        self.check_dim(f)?;
        let mut memo = HashMap::new();
        let mut acc = ComplexSeries::zero();
        for (m, c) in f.terms() {
            let mu = self.raw_moment(m, &mut memo)?;
            acc = acc.add(&c.scale(&mu));
        }
        Ok(acc)
    }

    /// `rho(f)` for an observable expected to be real.
    pub fn real_expectation(&self, f: &PolyObservable) -> Result<SeriesScalar> {
        let z = self.expectation(f)?;
        if !z.is_real()? {
            return Err(Error::NotReal);
        }
        Ok(z.re)
    }

    /// `X - rho(X)`.
    pub fn deviation(&self, x: &PolyObservable) -> Result<PolyObservable> {
        if !x.is_real()? {
            return Err(Error::NotReal);
        }
        let mean = self.real_expectation(x)?;
        x.sub(&PolyObservable::real_constant(self.d, mean))
    }

    /// `rho(conj(f) * f)`, which is real and nonnegative for admissible states.
    pub fn gelfand_norm(&self, f: &PolyObservable) -> Result<SeriesScalar> {
        let v = self.expectation(&star(&f.conj_obs(), f)?)?;
        if !v.is_real()? {
            return Err(Error::Inconsistency(format!("rho(conj(f)*f) = {v} is not real")));
        }
        v.re.is_zero()?;
        Ok(v.re)
    }

    pub fn in_gelfand_ideal(&self, f: &PolyObservable) -> Result<bool> {
        self.gelfand_norm(f)?.is_zero()
    }

    pub fn cauchy_schwarz(&self, f: &PolyObservable, g: &PolyObservable) -> Result<CauchySchwarzReport> {
        let overlap = self.expectation(&star(&f.conj_obs(), g)?)?;
        let overlap_sq = overlap.norm_sqr();
        let norms_product = self.gelfand_norm(f)?.mul(&self.gelfand_norm(g)?);
        let sign = norms_product.compare(&overlap_sq);
        Ok(CauchySchwarzReport { overlap_sq, norms_product, sign })
    }

    fn check_dim(&self, f: &PolyObservable) -> Result<()> {
        if f.d() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "observable has d = {}, state has d = {}",
                f.d(),
                self.d
            )));
        }
        Ok(())
    }

    fn raw_moment(&self, m: &[u32], memo: &mut HashMap<Monomial, SeriesScalar>) -> Result<SeriesScalar> {
        let degree: u32 = m.iter().sum();
        if degree > self.degree_cap {
            return Err(Error::DegreeCapExceeded { degree, cap: self.degree_cap });
        }
        if self.mean.iter().all(SeriesScalar::is_exact_zero) {
            return Ok(self.central_moment(&m.to_vec(), memo));
        }
        // E[(mu + y)^m] = sum_{k <= m} C(m, k) mu^{m - k} E[y^k]
        let mut acc = SeriesScalar::zero();
        let mut k = vec![0u32; m.len()];
        loop {
            let mut coeff = <Coeff as One>::one();
            let mut shift = SeriesScalar::one();
            for (i, (&mi, &ki)) in m.iter().zip(&k).enumerate() {
                coeff *= Coeff::from_integer(binomial(mi, ki));
                if mi > ki {
                    shift = shift.mul(&self.mean[i].pow(mi - ki));
                }
            }
            if !shift.is_exact_zero() {
                let central = self.central_moment(&k, memo);
                acc = acc.add(&shift.mul(&central).scale(&coeff));
            }
            if !next_multi_index(&mut k, m) {
                break;
            }
        }
        Ok(acc)
    }

    /// `E[y^k]` for centred Gaussian `y` via
    /// `E[y_i y^k'] = sum_j cov_ij k'_j E[y^(k' - e_j)]`.
    fn central_moment(&self, k: &Monomial, memo: &mut HashMap<Monomial, SeriesScalar>) -> SeriesScalar {
        let degree: u32 = k.iter().sum();
        if degree == 0 {
            return SeriesScalar::one();
        }
        if degree % 2 == 1 {
            return SeriesScalar::zero();
        }
        if let Some(v) = memo.get(k) {
            return v.clone();
        }
        let i = k.iter().position(|&x| x > 0).expect("nonzero degree");
        let mut rest = k.clone();
        rest[i] -= 1;
        let mut acc = SeriesScalar::zero();
        for j in 0..k.len() {
            if rest[j] == 0 || self.cov[(i, j)].is_exact_zero() {
                continue;
            }
            let mut sub = rest.clone();
            sub[j] -= 1;
            let inner = self.central_moment(&sub, memo);
            acc = acc.add(&inner.mul(&self.cov[(i, j)]).scale(&Coeff::from_integer(rest[j].into())));
        }
        memo.insert(k.clone(), acc.clone());
        acc
    }
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

fn next_multi_index(k: &mut [u32], limit: &[u32]) -> bool {
    for (x, &l) in k.iter_mut().zip(limit) {
        if *x < l {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

fn admissibility(d: usize, cov: &Matrix<SeriesScalar>) -> Result<Admissibility> {
    let half_h = SeriesScalar::h().scale(&half());
    let n = 2 * d;
    let form = Matrix::from_fn(n, n, |i, j| {
        // J = [[0, I], [-I, 0]]
        let im = if j == i + d && i < d {
            half_h.clone()
        } else if i == j + d && j < d {
            half_h.neg()
        } else {
            SeriesScalar::zero()
        };
        Complex::new(cov[(i, j)].clone(), im)
    });
    let form = HermitianForm::new(form)?;
    if d == 1 {
        let defect = form.det()?;
        if defect.sign() == SignValue::Negative {
            return Ok(Admissibility::BelowBound { value: defect, witness: Vec::new() });
        }
        defect.is_zero()?;
    }
    match form.classify()? {
        Definiteness::Indefinite { witness } => {
            let value = form.evaluate(&witness)?;
            Ok(Admissibility::BelowBound { value, witness })
        }
        _ => Ok(Admissibility::Admissible),
    }
}

/// `|rho(conj(f) * g)|^2 <= rho(conj(f) * f) rho(conj(g) * g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CauchySchwarzReport {
    pub overlap_sq: SeriesScalar,
    pub norms_product: SeriesScalar,
    /// Sign of `norms_product - overlap_sq`.
    pub sign: SignValue,
}

impl CauchySchwarzReport {
    pub fn holds(&self) -> bool {
        matches!(self.sign, SignValue::Positive | SignValue::Zero)
    }

    pub fn is_equal(&self) -> bool {
        self.sign == SignValue::Zero
    }
}

/// `{"d": 1, "mean": ["0", "0"], "cov": [["1/2*h", "0"], ["0", "1/2*h"]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateDoc {
    pub d: usize,
    pub mean: Vec<String>,
    pub cov: Vec<Vec<String>>,
}

impl StateDoc {
    pub fn from_state(s: &GaussianState) -> Self {
        StateDoc {
            d: s.d,
            mean: s.mean.iter().map(|x| x.to_string()).collect(),
            cov: s.cov.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        }
    }

    pub fn to_state(&self) -> Result<GaussianState> {
        if self.mean.len() != 2 * self.d {
            return Err(Error::DimensionMismatch(format!(
                "mean has {} entries, expected {}",
                self.mean.len(),
                2 * self.d
            )));
        }
        let mean = self.mean.iter().map(|s| parse_series(s)).collect::<Result<Vec<_>>>()?;
        let rows = self
            .cov
            .iter()
            .map(|r| r.iter().map(|s| parse_series(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        GaussianState::new(mean, Matrix::from_rows(rows)?)
    }
}

impl GaussianState {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<StateDoc>(text)?.to_state()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&StateDoc::from_state(self)).expect("state document serializes")
    }

    /// `ground`, `ground(d)`, `squeezed(s)` or `correlated(c)`.
    pub fn named(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (name, arg) = match spec.find('(') {
            Some(open) => {
                if !spec.ends_with(')') {
                    return Err(syntax(spec.len(), "expected ')' at end of state name"));
                }
                (&spec[..open], Some(spec[open + 1..spec.len() - 1].trim()))
            }
            None => (spec, None),
        };
        match (name.trim(), arg) {
            ("ground", None) => Ok(Self::ground(1)),
            ("ground", Some(d)) => {
                let d: usize = d.parse().map_err(|_| syntax(name.len() + 2, "expected a positive integer"))?;
                if d == 0 {
                    return Err(Error::InvalidState("ground state needs d >= 1".into()));
                }
                Ok(Self::ground(d))
            }
            ("squeezed", Some(s)) => {
                let x = parse_series(s)?;
                if !x.is_exact() || x.support().iter().any(|e| !e.is_zero()) {
                    return Err(Error::InvalidState(format!("squeeze parameter {s} must be a rational number")));
                }
                Self::squeezed(&x.coeff(crate::series::Exponent::ZERO))
            }
            ("correlated", Some(c)) => Self::correlated(&parse_series(c)?),
            _ => Err(Error::InvalidState(format!("unknown state '{spec}'"))),
        }
    }
}

fn syntax(column: usize, message: &str) -> Error {
    Error::Syntax { line: 1, column, message: message.into() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_observable;

    fn h() -> SeriesScalar {
        SeriesScalar::h()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn obs(s: &str, d: usize) -> PolyObservable {
        parse_observable(s, d).unwrap()
    }

    #[test]
    fn ground_state_moments() {
        let g = GaussianState::ground(1);
        assert_eq!(g.real_expectation(&obs("q1^2", 1)).unwrap(), h().scale(&r(1, 2)));
        assert_eq!(g.expectation(&PolyObservable::one(1)).unwrap(), ComplexSeries::one());
        assert_eq!(g.real_expectation(&obs("q1^4", 1)).unwrap(), h().pow(2).scale(&r(3, 4)));
        assert_eq!(g.real_expectation(&obs("q1^3*p1", 1)).unwrap(), SeriesScalar::zero());
        assert!(g.admissibility().is_admissible());
    }

    #[test]
    fn isserlis_count_on_diagonal_covariance() {
        let sq = SeriesScalar::from_int(3);
        let sp = SeriesScalar::from_int(5);
        let s = GaussianState::centered(Matrix::diagonal(&[sq.clone(), sp])).unwrap();
        assert_eq!(s.moment(&[4, 0]).unwrap(), sq.pow(2).scale(&r(3, 1)));
        assert_eq!(s.moment(&[6, 0]).unwrap(), sq.pow(3).scale(&r(15, 1)));
        assert_eq!(s.moment(&[2, 2]).unwrap(), SeriesScalar::from_int(15));
    }

    #[test]
    fn mean_shift() {
        let cov = Matrix::diagonal(&[h().scale(&r(1, 2)), h().scale(&r(1, 2))]);
        let s = GaussianState::new(vec![SeriesScalar::one(), SeriesScalar::zero()], cov).unwrap();
        assert_eq!(s.deviation(&obs("q1", 1)).unwrap(), obs("q1 - 1", 1));
        // E[(1 + y)^2] = 1 + h/2
        assert_eq!(s.real_expectation(&obs("q1^2", 1)).unwrap(), SeriesScalar::one().add(&h().scale(&r(1, 2))));
        let dq2 = s.deviation(&obs("q1^2", 1)).unwrap();
        assert!(s.expectation(&dq2).unwrap().is_exact_zero());
        assert_eq!(s.deviation(&obs("i*q1", 1)), Err(Error::NotReal));
    }

    #[test]
    fn gelfand_ideal_membership() {
        let g = GaussianState::ground(1);
        assert!(g.in_gelfand_ideal(&obs("q1 + i*p1", 1)).unwrap());
        assert!(g.in_gelfand_ideal(&PolyObservable::zero(1)).unwrap());
        assert_eq!(g.gelfand_norm(&obs("q1", 1)).unwrap(), h().scale(&r(1, 2)));
        assert!(!g.in_gelfand_ideal(&obs("q1 - i*p1", 1)).unwrap());
    }

    #[test]
    fn cauchy_schwarz_examples() {
        let g = GaussianState::ground(1);
        let q = obs("q1", 1);
        let p = obs("p1", 1);
        assert!(g.cauchy_schwarz(&q, &q).unwrap().is_equal());
        let qp = g.cauchy_schwarz(&q, &p).unwrap();
        assert_eq!(qp.overlap_sq, h().pow(2).scale(&r(1, 4)));
        assert!(qp.is_equal());
        assert!(g.cauchy_schwarz(&q, &obs("q1 + p1", 1)).unwrap().holds());
    }

    #[test]
    fn admissibility_gate() {
        let c = GaussianState::correlated(&h().scale(&r(1, 4))).unwrap();
        assert!(!c.admissibility().is_admissible());
        assert_eq!(c.warnings().len(), 1);
        assert!(GaussianState::squeezed(&r(4, 1)).unwrap().admissibility().is_admissible());
        let g2 = GaussianState::ground(2);
        assert!(g2.admissibility().is_admissible());
        let thin = GaussianState::centered(Matrix::diagonal(&vec![h().scale(&r(1, 4)); 4])).unwrap();
        match thin.admissibility() {
            Admissibility::BelowBound { value, .. } => assert_eq!(value.sign(), SignValue::Negative),
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn named_states_and_json() {
        assert_eq!(GaussianState::named("ground").unwrap(), GaussianState::ground(1));
        assert_eq!(GaussianState::named("ground(2)").unwrap(), GaussianState::ground(2));
        let s = GaussianState::named("squeezed(4)").unwrap();
        assert_eq!(s.cov()[(0, 0)], h().scale(&r(2, 1)));
        assert_eq!(s.cov()[(1, 1)], h().scale(&r(1, 8)));
        assert!(GaussianState::named("correlated(1/4*h)").is_ok());
        assert!(GaussianState::named("thermal").is_err());
        let back = GaussianState::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn product_states_factorize() {
        let s = GaussianState::squeezed(&r(4, 1)).unwrap();
        let g = GaussianState::ground(1);
        let sg = s.product(&g);
        let left = sg.real_expectation(&obs("q1^2*p2^2", 2)).unwrap();
        let right = s.real_expectation(&obs("q1^2", 1)).unwrap().mul(&g.real_expectation(&obs("p1^2", 1)).unwrap());
        assert_eq!(left, right);
    }
}
