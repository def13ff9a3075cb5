//! Checkable determinant and trace inequalities for nonnegative definite
//! Hermitian forms over an ordered field.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::OrderedField;
use crate::series::SignValue;

use super::congruence::Definiteness;
use super::elimination::determinant;
use super::hermitian::{HermitianForm, RealSplit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    StrictlyGreater,
    Equal,
    Violated,
    Indeterminate,
}

impl Relation {
    pub fn from_sign(s: SignValue) -> Self {
        match s {
            SignValue::Positive => Relation::StrictlyGreater,
            SignValue::Zero => Relation::Equal,
            SignValue::Negative => Relation::Violated,
            SignValue::IndeterminateAtTruncation => Relation::Indeterminate,
        }
    }

    /// Inequality `lhs >= rhs` is confirmed.
    pub fn holds(self) -> bool {
        matches!(self, Relation::StrictlyGreater | Relation::Equal)
    }
}

/// Outcome of comparing `lhs >= rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct InequalityReport<F> {
    pub lhs: F,
    pub rhs: F,
    pub relation: Relation,
}

impl<F: OrderedField> InequalityReport<F> {
    pub fn at_least(lhs: F, rhs: F) -> Self {
        let relation = Relation::from_sign(lhs.compare(&rhs));
        InequalityReport { lhs, rhs, relation }
    }

    pub fn holds(&self) -> bool {
        self.relation.holds()
    }

    pub fn is_equal(&self) -> bool {
        self.relation == Relation::Equal
    }
}

/// Quantities shared by every check, computed once per form.
#[derive(Clone, Debug, PartialEq)]
pub struct FormFacts<F> {
    pub split: RealSplit<F>,
    pub definiteness: Definiteness<crate::field::Complex<F>>,
    pub det_a: F,
    pub det_b: F,
    pub det_phi: F,
}

impl<F: OrderedField> FormFacts<F> {
    pub fn of(phi: &HermitianForm<F>) -> Result<Self> {
        let definiteness = phi.classify()?;
        if !definiteness.is_nonneg() {
            return Err(Error::PreconditionViolated(
                "form is not nonnegative definite".into(),
            ));
        }
        let split = phi.split();
        Ok(FormFacts {
            det_a: determinant(&split.a)?,
            det_b: determinant(&split.b)?,
            det_phi: phi.det()?,
            split,
            definiteness,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RobertsonReport<F> {
    /// `det a >= det b`.
    pub inequality: InequalityReport<F>,
    pub positive_definite: bool,
    /// Positive definite forms give a strict inequality.
    pub strict_when_definite: bool,
    /// `det a = 0` forces `det b = 0`.
    pub singular_implication: bool,
    /// Odd dimension forces `det b = 0`.
    pub odd_dimension_implication: bool,
}

impl<F: OrderedField> RobertsonReport<F> {
    pub fn holds(&self) -> bool {
        self.inequality.holds()
            && self.strict_when_definite
            && self.singular_implication
            && self.odd_dimension_implication
    }
}

pub fn check_robertson<F: OrderedField>(phi: &HermitianForm<F>) -> Result<RobertsonReport<F>> {
    robertson_from(phi.n(), &FormFacts::of(phi)?)
}

pub fn robertson_from<F: OrderedField>(n: usize, facts: &FormFacts<F>) -> Result<RobertsonReport<F>> {
    let inequality = InequalityReport::at_least(facts.det_a.clone(), facts.det_b.clone());
    let positive_definite = facts.definiteness.is_positive_definite();
    let det_b_zero = facts.det_b.is_zero()?;
    Ok(RobertsonReport {
        strict_when_definite: !positive_definite || inequality.relation == Relation::StrictlyGreater,
        singular_implication: !facts.det_a.is_zero()? || det_b_zero,
        odd_dimension_implication: n % 2 == 0 || det_b_zero,
        positive_definite,
        inequality,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealPartReport<F> {
    /// `det a >= det phi`.
    pub inequality: InequalityReport<F>,
    /// `det a = 0` or `b = 0`.
    pub equality_condition: bool,
}

impl<F: OrderedField> RealPartReport<F> {
    pub fn holds(&self) -> bool {
        self.inequality.holds() && self.inequality.is_equal() == self.equality_condition
    }
}

pub fn check_real_part_bound<F: OrderedField>(phi: &HermitianForm<F>) -> Result<RealPartReport<F>> {
    real_part_bound_from(&FormFacts::of(phi)?)
}

pub fn real_part_bound_from<F: OrderedField>(facts: &FormFacts<F>) -> Result<RealPartReport<F>> {
    Ok(RealPartReport {
        inequality: InequalityReport::at_least(facts.det_a.clone(), facts.det_phi.clone()),
        equality_condition: facts.det_a.is_zero()? || facts.split.b.is_zero()?,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HadamardReport<F> {
    pub diagonal_product: F,
    /// `prod phi_kk >= det a`.
    pub product_vs_a: InequalityReport<F>,
    /// `det a >= det phi`.
    pub a_vs_phi: InequalityReport<F>,
    /// `det a >= det b`.
    pub a_vs_b: InequalityReport<F>,
    /// `prod phi_kk = det a = det phi` holds.
    pub full_equality: bool,
    /// Some `phi_kk = 0`, or `phi` is real and diagonal.
    pub full_equality_condition: bool,
    /// `prod phi_kk = det b` holds.
    pub skew_equality: bool,
    /// Some `phi_kk = 0`, or `a` is diagonal with `det b = det a`.
    pub skew_equality_condition: bool,
}

impl<F: OrderedField> HadamardReport<F> {
    pub fn holds(&self) -> bool {
        self.product_vs_a.holds()
            && self.a_vs_phi.holds()
            && self.a_vs_b.holds()
            && self.full_equality == self.full_equality_condition
            && self.skew_equality == self.skew_equality_condition
    }
}

pub fn check_hadamard_robertson<F: OrderedField>(phi: &HermitianForm<F>) -> Result<HadamardReport<F>> {
    hadamard_from(phi, &FormFacts::of(phi)?)
}

pub fn hadamard_from<F: OrderedField>(phi: &HermitianForm<F>, facts: &FormFacts<F>) -> Result<HadamardReport<F>> {
    let n = phi.n();
    let product = (0..n).fold(F::one(), |acc, k| acc.mul(phi.diag(k)));
    let mut zero_diag = false;
    for k in 0..n {
        zero_diag |= phi.diag(k).is_zero()?;
    }
    let a_diagonal = facts.split.a.is_diagonal()?;
    let product_vs_a = InequalityReport::at_least(product.clone(), facts.det_a.clone());
    let a_vs_phi = InequalityReport::at_least(facts.det_a.clone(), facts.det_phi.clone());
    let a_vs_b = InequalityReport::at_least(facts.det_a.clone(), facts.det_b.clone());
    Ok(HadamardReport {
        full_equality: product_vs_a.is_equal() && a_vs_phi.is_equal(),
        full_equality_condition: zero_diag || (a_diagonal && facts.split.b.is_zero()?),
        skew_equality: product.sub(&facts.det_b).is_zero()?,
        skew_equality_condition: zero_diag || (a_diagonal && facts.det_b.sub(&facts.det_a).is_zero()?),
        diagonal_product: product,
        product_vs_a,
        a_vs_phi,
        a_vs_b,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EqualityCaseReport {
    pub real_equals_skew: bool,
    pub singular: bool,
}

impl EqualityCaseReport {
    pub fn holds(&self) -> bool {
        self.real_equals_skew == self.singular
    }
}

/// For `n = 2`: `det a = det b` exactly when `det phi = 0`.
pub fn check_equality_case<F: OrderedField>(phi: &HermitianForm<F>) -> Result<EqualityCaseReport> {
    if phi.n() != 2 {
        return Err(Error::DimensionMismatch(format!("expected a 2x2 form, got n = {}", phi.n())));
    }
    equality_case_from(&FormFacts::of(phi)?)
}

pub fn equality_case_from<F: OrderedField>(facts: &FormFacts<F>) -> Result<EqualityCaseReport> {
    Ok(EqualityCaseReport {
        real_equals_skew: facts.det_a.sub(&facts.det_b).is_zero()?,
        singular: facts.det_phi.is_zero()?,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceBoundsReport<F> {
    /// `Tr phi >= 2/(n-1) sum_{j<k} |b_jk|`.
    pub general: InequalityReport<F>,
    /// `Tr phi >= 2 sum_{j<=m} |b_{j,m+j}|` for `n = 2m`.
    pub paired: Option<InequalityReport<F>>,
}

impl<F: OrderedField> TraceBoundsReport<F> {
    pub fn holds(&self) -> bool {
        self.general.holds() && self.paired.as_ref().map_or(true, |p| p.holds())
    }
}

pub fn check_trace_bounds<F: OrderedField>(phi: &HermitianForm<F>) -> Result<TraceBoundsReport<F>> {
    if phi.n() < 2 {
        return Err(Error::DimensionTooSmall { n: phi.n(), min: 2 });
    }
    let facts = FormFacts::of(phi)?;
    trace_from(phi, &facts.split)
}

pub fn trace_from<F: OrderedField>(phi: &HermitianForm<F>, split: &RealSplit<F>) -> Result<TraceBoundsReport<F>> {
    let n = phi.n();
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    let trace = phi.trace();
    let mut sum = F::zero();
    for j in 0..n {
        for k in j + 1..n {
            sum = sum.add(&split.b[(j, k)].abs()?);
        }
    }
    let general_rhs = sum.mul(&F::from_i64(2)).div(&F::from_i64(n as i64 - 1))?;
    let paired = if n % 2 == 0 {
        let m = n / 2;
        let mut s = F::zero();
        for j in 0..m {
            s = s.add(&split.b[(j, m + j)].abs()?);
        }
        Some(InequalityReport::at_least(trace.clone(), s.mul(&F::from_i64(2))))
    } else {
        None
    };
    Ok(TraceBoundsReport {
        general: InequalityReport::at_least(trace, general_rhs),
        paired,
    })
}

/// Every check from one classification pass.
#[derive(Clone, Debug, PartialEq)]
pub struct FullReport<F> {
    pub facts: FormFacts<F>,
    pub robertson: RobertsonReport<F>,
    pub real_part: RealPartReport<F>,
    pub hadamard: HadamardReport<F>,
    pub equality_case: Option<EqualityCaseReport>,
    pub trace: Option<TraceBoundsReport<F>>,
}

impl<F: OrderedField> FullReport<F> {
    pub fn holds(&self) -> bool {
        self.robertson.holds()
            && self.real_part.holds()
            && self.hadamard.holds()
            && self.equality_case.as_ref().map_or(true, |c| c.holds())
            && self.trace.as_ref().map_or(true, |t| t.holds())
    }
}

pub fn check_all<F: OrderedField>(phi: &HermitianForm<F>) -> Result<FullReport<F>> {
    let facts = FormFacts::of(phi)?;
    let n = phi.n();
    Ok(FullReport {
        robertson: robertson_from(n, &facts)?,
        real_part: real_part_bound_from(&facts)?,
        hadamard: hadamard_from(phi, &facts)?,
        equality_case: if n == 2 { Some(equality_case_from(&facts)?) } else { None },
        trace: if n >= 2 { Some(trace_from(phi, &facts.split)?) } else { None },
        facts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Complex, Rational, Scalar};
    use crate::series::SeriesScalar;

    fn c(re: i64, im: i64) -> Complex<Rational> {
        Complex::new(Rational::from_i64(re), Rational::from_i64(im))
    }

    fn form(rows: Vec<Vec<Complex<Rational>>>) -> HermitianForm<Rational> {
        HermitianForm::from_rows(rows).unwrap()
    }

    fn half_h_form() -> HermitianForm<SeriesScalar> {
        let h = SeriesScalar::h();
        let half = h.scale(&Rational::new(1.into(), 2.into()));
        HermitianForm::from_rows(vec![
            vec![Complex::real(h.clone()), Complex::imag(half.clone())],
            vec![Complex::imag(half.neg()), Complex::real(h)],
        ])
        .unwrap()
    }

    #[test]
    fn robertson_examples() {
        let r = check_robertson(&form(vec![vec![c(1, 0), c(0, 1)], vec![c(0, -1), c(2, 0)]])).unwrap();
        assert_eq!((r.inequality.lhs.clone(), r.inequality.rhs.clone()), (Rational::from_i64(2), Rational::from_i64(1)));
        assert_eq!(r.inequality.relation, Relation::StrictlyGreater);
        assert!(r.holds());
        let r = check_robertson(&form(vec![vec![c(1, 0), c(0, 1)], vec![c(0, -1), c(1, 0)]])).unwrap();
        assert_eq!(r.inequality.relation, Relation::Equal);
        let r = check_robertson(&half_h_form()).unwrap();
        assert_eq!(r.inequality.relation, Relation::StrictlyGreater);
        assert_eq!(r.inequality.lhs, SeriesScalar::h().pow(2));
    }

    #[test]
    fn indefinite_forms_are_rejected() {
        let bad = form(vec![vec![c(1, 0), c(0, 2)], vec![c(0, -2), c(1, 0)]]);
        assert!(matches!(check_robertson(&bad), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn real_part_equality_condition() {
        let r = check_real_part_bound(&form(vec![vec![c(1, 0), c(0, 1)], vec![c(0, -1), c(2, 0)]])).unwrap();
        assert_eq!(r.inequality.relation, Relation::StrictlyGreater);
        assert!(r.holds());
        let r = check_real_part_bound(&form(vec![vec![c(2, 0), c(1, 0)], vec![c(1, 0), c(3, 0)]])).unwrap();
        assert!(r.inequality.is_equal() && r.holds());
    }

    #[test]
    fn hadamard_examples() {
        let r = check_hadamard_robertson(&form(vec![vec![c(1, 0), c(0, 0)], vec![c(0, 0), c(2, 0)]])).unwrap();
        assert!(r.full_equality && r.full_equality_condition && r.holds());
        let r = check_hadamard_robertson(&form(vec![vec![c(1, 0), c(0, 1)], vec![c(0, -1), c(1, 0)]])).unwrap();
        assert!(r.skew_equality && r.skew_equality_condition && r.holds());
        assert!(!r.full_equality);
    }

    #[test]
    fn trace_examples() {
        let r = check_trace_bounds(&form(vec![vec![c(1, 0), c(0, 1)], vec![c(0, -1), c(1, 0)]])).unwrap();
        assert!(r.general.is_equal());
        assert!(r.paired.as_ref().unwrap().is_equal());
        let r = check_trace_bounds(&half_h_form()).unwrap();
        assert_eq!(r.general.relation, Relation::StrictlyGreater);
        assert_eq!(r.general.rhs, SeriesScalar::h());
        let one = form(vec![vec![c(1, 0)]]);
        assert_eq!(check_trace_bounds(&one), Err(Error::DimensionTooSmall { n: 1, min: 2 }));
    }

    #[test]
    fn equality_case_both_directions() {
        let sing = check_equality_case(&form(vec![vec![c(1, 0), c(0, 1)], vec![c(0, -1), c(1, 0)]])).unwrap();
        assert!(sing.singular && sing.real_equals_skew);
        let pd = check_equality_case(&form(vec![vec![c(1, 0), c(0, 1)], vec![c(0, -1), c(2, 0)]])).unwrap();
        assert!(!pd.singular && !pd.real_equals_skew);
    }
}
