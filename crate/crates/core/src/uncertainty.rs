//! Uncertainty relations for a state and a list of real observables, built
//! from the moment matrices
//!
//! ```text
//! phi_jk = rho(dX_j * dX_k),  a = (phi + phi^T) / 2,  b_jk = (h/2) rho({X_j, X_k})
//! ```
//!
//! and the linear-algebra checks on them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Complex, Scalar};
use crate::linalg::{determinant, kernel, HermitianForm, Matrix};
use crate::series::{ComplexSeries, Exponent, ExtExponent, SeriesScalar, SignValue};
use crate::star::{moyal_bracket, star, PolyObservable};
use crate::states::GaussianState;

#[derive(Clone, Debug, PartialEq)]
pub struct MomentMatrices {
    pub phi: HermitianForm<SeriesScalar>,
    pub a: Matrix<SeriesScalar>,
    pub b: Matrix<SeriesScalar>,
    pub variances: Vec<SeriesScalar>,
    pub deviations: Vec<PolyObservable>,
}

impl MomentMatrices {
    pub fn n(&self) -> usize {
        self.variances.len()
    }
}

pub fn moment_matrices(rho: &GaussianState, xs: &[PolyObservable]) -> Result<MomentMatrices> {
    if xs.is_empty() {
        return Err(Error::DimensionTooSmall { n: 0, min: 1 });
    }
    let n = xs.len();
    let deviations = xs.iter().map(|x| rho.deviation(x)).collect::<Result<Vec<_>>>()?;
    let mut phi = Matrix::<ComplexSeries>::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            phi[(j, k)] = rho.expectation(&star(&deviations[j], &deviations[k])?)?;
        }
    }
    let half = crate::field::Rational::new(1.into(), 2.into());
    let mut a = Matrix::<SeriesScalar>::zeros(n, n);
    let mut b = Matrix::<SeriesScalar>::zeros(n, n);
    let half_h = SeriesScalar::h().scale(&half);
    for j in 0..n {
        for k in 0..n {
            let sym = phi[(j, k)].add(&phi[(k, j)]).scale(&SeriesScalar::constant(half.clone()));
            if !sym.is_real()? {
                return Err(Error::Inconsistency(format!("symmetrised moment ({j}, {k}) is not real")));
            }
            a[(j, k)] = sym.re;
            if j != k {
                let bracket = rho.expectation(&moyal_bracket(&xs[j], &xs[k])?)?;
                if !bracket.is_real()? {
                    return Err(Error::Inconsistency(format!("bracket expectation ({j}, {k}) is not real")));
                }
                b[(j, k)] = bracket.re.mul(&half_h);
            }
        }
    }
    for j in 0..n {
        for k in 0..n {
            let rebuilt = Complex::new(a[(j, k)].clone(), b[(j, k)].clone());
            if !rebuilt.re.agrees_with(&phi[(j, k)].re) || !rebuilt.im.agrees_with(&phi[(j, k)].im) {
                return Err(Error::Inconsistency(format!(
                    "phi_{j}{k} = {} differs from a + i b = {}",
                    phi[(j, k)],
                    rebuilt
                )));
            }
        }
    }
    let variances = (0..n).map(|k| a[(k, k)].clone()).collect();
    Ok(MomentMatrices { phi: HermitianForm::new(phi)?, a, b, variances, deviations })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RelationName {
    #[serde(rename = "RS")]
    RobertsonSchrodinger,
    #[serde(rename = "HR")]
    HeisenbergRobertson,
    Trace,
    TracePaired,
    TwoObs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Saturated,
    StrictlyAbove,
    Violated,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Intelligent {
    pub hr: bool,
    pub rs: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UncertaintyVerdict {
    pub relation: RelationName,
    pub lhs: SeriesScalar,
    pub rhs: SeriesScalar,
    pub status: Status,
    pub intelligent: Intelligent,
    pub witness: Option<Vec<ComplexSeries>>,
    /// For `Indeterminate`: the order below which `lhs` and `rhs` agree.
    pub agrees_below: Option<Exponent>,
}

fn status_of(lhs: &SeriesScalar, rhs: &SeriesScalar) -> (Status, Option<Exponent>) {
    let diff = lhs.sub(rhs);
    match diff.sign() {
        SignValue::Positive => (Status::StrictlyAbove, None),
        SignValue::Zero => (Status::Saturated, None),
        SignValue::Negative => (Status::Violated, None),
        SignValue::IndeterminateAtTruncation => (Status::Indeterminate, diff.trunc_order().finite()),
    }
}

/// Determinants and saturation flags shared by every relation.
#[derive(Clone, Debug, PartialEq)]
pub struct Analysis {
    pub moments: MomentMatrices,
    pub det_a: SeriesScalar,
    pub det_b: SeriesScalar,
    pub det_phi: SeriesScalar,
    pub variance_product: SeriesScalar,
    pub intelligent: Intelligent,
}

impl Analysis {
    pub fn new(rho: &GaussianState, xs: &[PolyObservable]) -> Result<Self> {
        Self::from_moments(moment_matrices(rho, xs)?)
    }

    pub fn from_moments(moments: MomentMatrices) -> Result<Self> {
        let det_a = determinant(&moments.a)?;
        let det_b = determinant(&moments.b)?;
        let det_phi = moments.phi.det()?;
        let variance_product = moments.variances.iter().fold(SeriesScalar::one(), |acc, v| acc.mul(v));
        let intelligent = Intelligent {
            rs: status_of(&det_a, &det_b).0 == Status::Saturated,
            hr: status_of(&variance_product, &det_b).0 == Status::Saturated,
        };
        Ok(Analysis { moments, det_a, det_b, det_phi, variance_product, intelligent })
    }

    fn verdict(&self, relation: RelationName, lhs: SeriesScalar, rhs: SeriesScalar) -> UncertaintyVerdict {
        let (status, agrees_below) = status_of(&lhs, &rhs);
        UncertaintyVerdict { relation, lhs, rhs, status, intelligent: self.intelligent, witness: None, agrees_below }
    }

    /// `det a >= det b`; the witness is a null vector of `phi` when one exists.
    pub fn rs(&self) -> Result<UncertaintyVerdict> {
        let mut v = self.verdict(RelationName::RobertsonSchrodinger, self.det_a.clone(), self.det_b.clone());
        if v.status == Status::Saturated {
            v.witness = kernel(self.moments.phi.entries())?.into_iter().next();
        }
        Ok(v)
    }

    /// `prod (Delta X_k)^2 >= det b`.
    pub fn hr(&self) -> UncertaintyVerdict {
        self.verdict(RelationName::HeisenbergRobertson, self.variance_product.clone(), self.det_b.clone())
    }

    /// General bound `sum (Delta X_k)^2 >= h/(n-1) sum_{j<k} |rho({X_j, X_k})|`
    /// and, for `n = 2m`, `sum (Delta X_k)^2 >= h sum_j |rho({X_j, X_{j+m}})|`.
    pub fn trace(&self) -> Result<TraceVerdicts> {
        let n = self.moments.n();
        if n < 2 {
            return Err(Error::DimensionTooSmall { n, min: 2 });
        }
        let b = &self.moments.b;
        let lhs = self.moments.variances.iter().fold(SeriesScalar::zero(), |acc, v| acc.add(v));
        let two = SeriesScalar::from_int(2);
        // h |rho({X_j, X_k})| = 2 |b_jk|
        let mut sum = SeriesScalar::zero();
        for j in 0..n {
            for k in j + 1..n {
                sum = sum.add(&b[(j, k)].abs()?);
            }
        }
        let general_rhs = sum.mul(&two).div(&SeriesScalar::from_int(n as i64 - 1))?;
        let paired = if n % 2 == 0 {
            let m = n / 2;
            let mut s = SeriesScalar::zero();
            for j in 0..m {
                s = s.add(&b[(j, j + m)].abs()?);
            }
            Some(self.verdict(RelationName::TracePaired, lhs.clone(), s.mul(&two)))
        } else {
            None
        };
        Ok(TraceVerdicts { general: self.verdict(RelationName::Trace, lhs, general_rhs), paired })
    }

    /// Squared two-observable form; its gap equals `det phi`.
    pub fn two_obs(&self) -> Result<UncertaintyVerdict> {
        if self.moments.n() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "two-observable relation needs exactly 2 observables, got {}",
                self.moments.n()
            )));
        }
        let a12 = &self.moments.a[(0, 1)];
        let b12 = &self.moments.b[(0, 1)];
        // (1/4)[(h rho{})^2 + (rho(X1*X2 + X2*X1) - 2 rho X1 rho X2)^2] = b12^2 + a12^2
        let rhs = b12.mul(b12).add(&a12.mul(a12));
        let v = self.verdict(RelationName::TwoObs, self.variance_product.clone(), rhs);
        let consistent = match (v.status, self.det_phi.sign()) {
            (Status::Saturated, SignValue::Zero) | (Status::StrictlyAbove, SignValue::Positive) => true,
            (Status::Violated, SignValue::Negative) => true,
            (Status::Indeterminate, SignValue::IndeterminateAtTruncation) => true,
            _ => false,
        };
        if !consistent {
            return Err(Error::Inconsistency(format!(
                "two-observable gap {:?} disagrees with det phi = {}",
                v.status, self.det_phi
            )));
        }
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceVerdicts {
    pub general: UncertaintyVerdict,
    pub paired: Option<UncertaintyVerdict>,
}

pub fn check_rs(rho: &GaussianState, xs: &[PolyObservable]) -> Result<UncertaintyVerdict> {
    Analysis::new(rho, xs)?.rs()
}

pub fn check_hr(rho: &GaussianState, xs: &[PolyObservable]) -> Result<UncertaintyVerdict> {
    Ok(Analysis::new(rho, xs)?.hr())
}

pub fn check_trace(rho: &GaussianState, xs: &[PolyObservable]) -> Result<TraceVerdicts> {
    Analysis::new(rho, xs)?.trace()
}

pub fn check_two_obs(rho: &GaussianState, x1: &PolyObservable, x2: &PolyObservable) -> Result<UncertaintyVerdict> {
    Analysis::new(rho, &[x1.clone(), x2.clone()])?.two_obs()
}

/// A real combination `sum x_j dX_j` lying in the Gel'fand ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealDirection {
    pub coefficients: Vec<SeriesScalar>,
    pub combination: PolyObservable,
    pub gelfand_norm: SeriesScalar,
}

/// Null vector of the covariance matrix, re-verified through the state.
pub fn find_ideal_direction(rho: &GaussianState, xs: &[PolyObservable]) -> Result<Option<IdealDirection>> {
    ideal_direction_from(rho, &moment_matrices(rho, xs)?)
}

pub fn ideal_direction_from(rho: &GaussianState, mm: &MomentMatrices) -> Result<Option<IdealDirection>> {
    let Some(x) = kernel(&mm.a)?.into_iter().next() else {
        return Ok(None);
    };
    let combination = combine(rho.d(), &mm.deviations, x.iter().map(|c| Complex::real(c.clone())))?;
    let norm = rho.gelfand_norm(&combination)?;
    if !norm.is_zero()? {
        return Err(Error::Inconsistency(format!("covariance null vector has Gel'fand norm {norm}")));
    }
    Ok(Some(IdealDirection { coefficients: x, combination, gelfand_norm: norm }))
}

fn combine(
    d: usize,
    terms: &[PolyObservable],
    coeffs: impl IntoIterator<Item = ComplexSeries>,
) -> Result<PolyObservable> {
    let mut acc = PolyObservable::zero(d);
    for (t, c) in terms.iter().zip(coeffs) {
        acc = acc.add(&t.scale(&c))?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SqueezeReport {
    /// `rho(conj(dA'_a) * dA'_a)` for each `a`.
    pub norms: Vec<SeriesScalar>,
    pub annihilated: bool,
    /// Present when every `dA'_a` lies in the ideal.
    pub rs: Option<UncertaintyVerdict>,
}

impl SqueezeReport {
    /// An annihilating transformation forces RS saturation.
    pub fn holds(&self) -> bool {
        !self.annihilated || self.rs.as_ref().is_some_and(|v| v.status == Status::Saturated)
    }
}

/// Tests whether `dA'_a = sum_b (u_ab dA_b + v_ab conj(dA_b))` annihilates the
/// state, where `dA_a = (dX_a + i dX_{a+m}) / 2`.
pub fn check_squeeze(
    rho: &GaussianState,
    xs: &[PolyObservable],
    u: &Matrix<ComplexSeries>,
    v: &Matrix<ComplexSeries>,
) -> Result<SqueezeReport> {
    let n = xs.len();
    if n == 0 || n % 2 != 0 {
        return Err(Error::DimensionMismatch(format!("need an even number of observables, got {n}")));
    }
    let m = n / 2;
    for (name, mat) in [("u", u), ("v", v)] {
        if mat.rows() != m || mat.cols() != m {
            return Err(Error::DimensionMismatch(format!("{name} must be {m}x{m}")));
        }
    }
    let block = Matrix::from_fn(n, n, |r, c| match (r < m, c < m) {
        (true, true) => u[(r, c)].clone(),
        (true, false) => v[(r, c - m)].clone(),
        (false, true) => v[(r - m, c)].conj(),
        (false, false) => u[(r - m, c - m)].conj(),
    });
    if determinant(&block)?.is_zero()? {
        return Err(Error::SingularTransform);
    }
    let analysis = Analysis::new(rho, xs)?;
    let dev = &analysis.moments.deviations;
    let half = ComplexSeries::real(SeriesScalar::from_ratio(1, 2));
    let i = ComplexSeries::i();
    let da: Vec<PolyObservable> = (0..m)
        .map(|k| dev[k].add(&dev[k + m].scale(&i)).map(|s| s.scale(&half)))
        .collect::<Result<_>>()?;
    let da_conj: Vec<PolyObservable> = da.iter().map(PolyObservable::conj_obs).collect();
    let mut norms = Vec::with_capacity(m);
    for alpha in 0..m {
        let left = combine(rho.d(), &da, (0..m).map(|b| u[(alpha, b)].clone()))?;
        let right = combine(rho.d(), &da_conj, (0..m).map(|b| v[(alpha, b)].clone()))?;
        norms.push(rho.gelfand_norm(&left.add(&right)?)?);
    }
    let mut annihilated = true;
    for x in &norms {
        annihilated &= x.is_zero()?;
    }
    let rs = if annihilated { Some(analysis.rs()?) } else { None };
    Ok(SqueezeReport { norms, annihilated, rs })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexWitnessReport {
    pub det_phi: SeriesScalar,
    pub intelligent: bool,
    /// `(u1, u2)` with `u1 dX1 + u2 dX2` in the Gel'fand ideal.
    pub witness: Option<[ComplexSeries; 2]>,
}

/// For two observables: RS saturation, `det phi = 0`, and a complex ideal
/// direction all coincide.
pub fn check_complex_witness(rho: &GaussianState, x1: &PolyObservable, x2: &PolyObservable) -> Result<ComplexWitnessReport> {
    let analysis = Analysis::new(rho, &[x1.clone(), x2.clone()])?;
    complex_witness_from(rho, &analysis)
}

pub fn complex_witness_from(rho: &GaussianState, analysis: &Analysis) -> Result<ComplexWitnessReport> {
    let mm = &analysis.moments;
    if mm.n() != 2 {
        return Err(Error::DimensionMismatch(format!("expected 2 observables, got {}", mm.n())));
    }
    let singular = analysis.det_phi.is_zero()?;
    let witness = match kernel(mm.phi.entries())?.into_iter().next() {
        Some(u) => {
            let w = combine(rho.d(), &mm.deviations, u.iter().cloned())?;
            let norm = rho.gelfand_norm(&w)?;
            if !norm.is_zero()? {
                return Err(Error::Inconsistency(format!("null vector of phi has Gel'fand norm {norm}")));
            }
            Some([u[0].clone(), u[1].clone()])
        }
        None => None,
    };
    let rs = analysis.two_obs()?.status == Status::Saturated;
    if singular != witness.is_some() || singular != rs || rs != analysis.intelligent.rs {
        return Err(Error::Inconsistency(format!(
            "det phi = 0: {singular}, witness: {}, saturated: {rs}",
            witness.is_some()
        )));
    }
    Ok(ComplexWitnessReport { det_phi: analysis.det_phi.clone(), intelligent: singular, witness })
}

/// JSON view of a verdict with series as canonical literals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictDoc {
    pub relation: RelationName,
    pub lhs: String,
    pub rhs: String,
    pub status: Status,
    pub intelligent: Intelligent,
    pub witness: Option<Vec<crate::linalg::json::ComplexEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees_below: Option<String>,
}

pub fn entry_doc(z: &ComplexSeries) -> crate::linalg::json::ComplexEntry {
    crate::linalg::json::ComplexEntry { re: z.re.to_string(), im: z.im.to_string() }
}

impl From<&UncertaintyVerdict> for VerdictDoc {
    fn from(v: &UncertaintyVerdict) -> Self {
        VerdictDoc {
            relation: v.relation,
            lhs: v.lhs.to_string(),
            rhs: v.rhs.to_string(),
            status: v.status,
            intelligent: v.intelligent,
            witness: v.witness.as_ref().map(|w| w.iter().map(entry_doc).collect()),
            agrees_below: v.agrees_below.map(|e| ExtExponent::Finite(e).to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::parse::parse_observable;

    fn h() -> SeriesScalar {
        SeriesScalar::h()
    }

    fn hr(n: i64, d: i64) -> SeriesScalar {
        h().scale(&Rational::new(n.into(), d.into()))
    }

    fn h2(n: i64, d: i64) -> SeriesScalar {
        h().pow(2).scale(&Rational::new(n.into(), d.into()))
    }

    fn obs(list: &[&str], d: usize) -> Vec<PolyObservable> {
        list.iter().map(|s| parse_observable(s, d).unwrap()).collect()
    }

    #[test]
    fn ground_state_matrices() {
        let g = GaussianState::ground(1);
        let mm = moment_matrices(&g, &obs(&["q1", "p1"], 1)).unwrap();
        assert_eq!(mm.a, Matrix::diagonal(&[hr(1, 2), hr(1, 2)]));
        assert_eq!(mm.b[(0, 1)], hr(1, 2));
        assert_eq!(mm.b[(1, 0)], hr(-1, 2));
        assert_eq!(mm.phi.entry(0, 1), &Complex::imag(hr(1, 2)));
        let single = moment_matrices(&g, &obs(&["q1^2"], 1)).unwrap();
        assert!(single.b.is_zero().unwrap());
    }

    #[test]
    fn squeezed_matrices() {
        let s = GaussianState::squeezed(&Rational::from_i64(2)).unwrap();
        let mm = moment_matrices(&s, &obs(&["q1", "p1"], 1)).unwrap();
        assert_eq!(mm.a, Matrix::diagonal(&[h(), hr(1, 4)]));
    }

    #[test]
    fn ground_state_relations_saturate() {
        let g = GaussianState::ground(1);
        let xs = obs(&["q1", "p1"], 1);
        let an = Analysis::new(&g, &xs).unwrap();
        let rs = an.rs().unwrap();
        assert_eq!((rs.lhs.clone(), rs.rhs.clone(), rs.status), (h2(1, 4), h2(1, 4), Status::Saturated));
        assert_eq!(an.hr().status, Status::Saturated);
        assert_eq!(an.trace().unwrap().general.status, Status::Saturated);
        assert_eq!(an.two_obs().unwrap().status, Status::Saturated);
        assert_eq!(an.intelligent, Intelligent { hr: true, rs: true });
    }

    #[test]
    fn two_ground_states() {
        let g = GaussianState::ground(2);
        let rs = check_rs(&g, &obs(&["q1", "p1", "q2", "p2"], 2)).unwrap();
        assert_eq!(rs.lhs, h().pow(4).scale(&Rational::new(1.into(), 16.into())));
        assert_eq!(rs.status, Status::Saturated);
        let tr = check_trace(&g, &obs(&["q1", "p1", "q2", "p2"], 2)).unwrap();
        assert_eq!(tr.general.status, Status::StrictlyAbove);
        assert_eq!(tr.general.rhs, hr(2, 3));
        let tr = check_trace(&g, &obs(&["q1", "q2", "p1", "p2"], 2)).unwrap();
        assert_eq!(tr.paired.unwrap().status, Status::Saturated);
    }

    #[test]
    fn position_and_its_square() {
        let g = GaussianState::ground(1);
        let v = check_two_obs(&g, &obs(&["q1"], 1)[0], &obs(&["q1^2"], 1)[0]).unwrap();
        assert_eq!(v.rhs, SeriesScalar::zero());
        assert_eq!(v.lhs, h().pow(3).scale(&Rational::new(1.into(), 4.into())));
        assert_eq!(v.status, Status::StrictlyAbove);
        let p = check_complex_witness(&g, &obs(&["q1"], 1)[0], &obs(&["q1^2"], 1)[0]).unwrap();
        assert!(!p.intelligent && p.witness.is_none());
    }

    #[test]
    fn correlated_states() {
        let c = GaussianState::correlated(&hr(1, 4)).unwrap();
        let rs = check_rs(&c, &obs(&["q1", "p1"], 1)).unwrap();
        assert_eq!(rs.status, Status::Violated);
        assert_eq!(rs.lhs, h2(3, 16));
        let cov = Matrix::from_rows(vec![vec![h(), hr(1, 2)], vec![hr(1, 2), h()]]).unwrap();
        let s = GaussianState::centered(cov).unwrap();
        let an = Analysis::new(&s, &obs(&["q1", "p1"], 1)).unwrap();
        assert_eq!(an.hr().status, Status::StrictlyAbove);
        assert_eq!(an.hr().lhs, h().pow(2));
        assert_eq!(an.rs().unwrap().lhs, h2(3, 4));
    }

    #[test]
    fn ideal_direction_fixture() {
        let g = GaussianState::ground(1);
        let dir = find_ideal_direction(&g, &obs(&["q1", "p1", "q1 + p1"], 1)).unwrap().unwrap();
        let one = SeriesScalar::one();
        assert_eq!(dir.coefficients, vec![one.clone(), one.clone(), one.neg()]);
        assert!(dir.gelfand_norm.is_exact_zero());
        assert!(find_ideal_direction(&g, &obs(&["q1", "p1"], 1)).unwrap().is_none());
        let rs = check_rs(&g, &obs(&["q1", "p1", "q1 + p1"], 1)).unwrap();
        assert!(rs.rhs.is_exact_zero());
    }

    #[test]
    fn squeeze_examples() {
        let g = GaussianState::ground(1);
        let xs = obs(&["q1", "p1"], 1);
        let one = Matrix::from_rows(vec![vec![ComplexSeries::one()]]).unwrap();
        let zero = Matrix::from_rows(vec![vec![ComplexSeries::zero()]]).unwrap();
        let r = check_squeeze(&g, &xs, &one, &zero).unwrap();
        assert!(r.annihilated && r.holds());
        assert_eq!(check_squeeze(&g, &xs, &one, &one), Err(Error::SingularTransform));

        let s = GaussianState::squeezed(&Rational::from_i64(4)).unwrap();
        let u = Matrix::from_rows(vec![vec![ComplexSeries::real(SeriesScalar::from_ratio(5, 4))]]).unwrap();
        let v = Matrix::from_rows(vec![vec![ComplexSeries::real(SeriesScalar::from_ratio(-3, 4))]]).unwrap();
        let r = check_squeeze(&s, &xs, &u, &v).unwrap();
        assert!(r.annihilated && r.holds());
        let r = check_squeeze(&s, &xs, &one, &zero).unwrap();
        assert!(!r.annihilated);
    }

    #[test]
    fn complex_witness_examples() {
        let g = GaussianState::ground(1);
        let xs = obs(&["q1", "p1"], 1);
        let r = check_complex_witness(&g, &xs[0], &xs[1]).unwrap();
        assert!(r.intelligent);
        assert_eq!(r.witness, Some([ComplexSeries::one(), ComplexSeries::i()]));
        let wide = GaussianState::centered(Matrix::diagonal(&[h(), h()])).unwrap();
        let r = check_complex_witness(&wide, &xs[0], &xs[1]).unwrap();
        assert!(!r.intelligent && r.witness.is_none());
        assert_eq!(r.det_phi, h2(3, 4));
    }
}
