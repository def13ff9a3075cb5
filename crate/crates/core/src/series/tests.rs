use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;

fn q(n: i64, d: i64) -> Coeff {
    Coeff::new(BigInt::from(n), BigInt::from(d))
}

fn e(n: i64, d: i64) -> Exponent {
    Exponent::new(n, d)
}

fn series(terms: &[(i64, i64, i64)]) -> SeriesScalar {
    SeriesScalar::from_terms(terms.iter().map(|&(c, n, d)| (e(n, d), q(c, 1))), ExtExponent::Infinite)
}

#[test]
fn constants_dominate_positive_powers() {
    let h = SeriesScalar::h();
    assert_eq!(SeriesScalar::one().compare(&h.scale(&q(1000, 1))), SignValue::Positive);
    assert_eq!(h.sub(&SeriesScalar::one()).sign(), SignValue::Negative);
    assert_eq!(h.shift(e(-1, 1)).compare(&SeriesScalar::one()), SignValue::Zero);
    assert_eq!(SeriesScalar::monomial(q(1, 1), e(-1, 1)).compare(&SeriesScalar::from_int(1_000_000)), SignValue::Positive);
}

#[test]
fn cancelled_truncated_values_are_indeterminate() {
    let t = ExtExponent::Finite(e(3, 1));
    let x = SeriesScalar::from_terms([(e(1, 1), q(2, 1))], t);
    let z = x.sub(&x);
    assert_eq!(z.sign(), SignValue::IndeterminateAtTruncation);
    assert_eq!(z.valuation(), Err(crate::error::Error::IndeterminateAtTruncation { order: e(3, 1) }));
    assert_eq!(SeriesScalar::zero().sign(), SignValue::Zero);
}

#[test]
fn geometric_inverse() {
    let x = SeriesScalar::one().sub(&SeriesScalar::h());
    let inv = x.inv_with(e(6, 1)).unwrap();
    assert_eq!(inv.trunc_order(), ExtExponent::Finite(e(6, 1)));
    for k in 0..6 {
        assert_eq!(inv.coeff(e(k, 1)), q(1, 1));
    }
    let back = inv.mul(&x);
    assert!(back.agrees_with(&SeriesScalar::one()));
}

#[test]
fn exact_quotients_terminate() {
    let h = SeriesScalar::h();
    let num = h.pow(2).sub(&SeriesScalar::one());
    let den = h.sub(&SeriesScalar::one());
    assert_eq!(num.div(&den).unwrap(), h.add(&SeriesScalar::one()));
    assert!(num.div(&den).unwrap().is_exact());
    assert_eq!(SeriesScalar::one().div(&SeriesScalar::zero()), Err(crate::error::Error::ZeroDivision));
}

#[test]
fn binomial_square_root() {
    let x = SeriesScalar::one().add(&SeriesScalar::h());
    let r = x.sqrt_with(e(4, 1)).unwrap();
    // 1 + h/2 - h^2/8 + h^3/16
    assert_eq!(r.coeff(e(0, 1)), q(1, 1));
    assert_eq!(r.coeff(e(1, 1)), q(1, 2));
    assert_eq!(r.coeff(e(2, 1)), q(-1, 8));
    assert_eq!(r.coeff(e(3, 1)), q(1, 16));
    assert!(r.mul(&r).agrees_with(&x));

    let sq = SeriesScalar::monomial(q(9, 4), e(1, 1));
    assert_eq!(sq.sqrt().unwrap(), SeriesScalar::monomial(q(3, 2), e(1, 2)));
    assert_eq!(SeriesScalar::from_int(2).sqrt(), Err(crate::error::Error::IrrationalLeadingCoefficient("2".into())));
    assert_eq!(SeriesScalar::h().neg().sqrt(), Err(crate::error::Error::NotPositive));
}

#[test]
fn valuation_and_metric() {
    let x = series(&[(3, 5, 2), (1, 1, 1)]);
    assert_eq!(x.valuation().unwrap(), ExtExponent::Finite(e(1, 1)));
    let d = x.metric(&SeriesScalar::zero()).unwrap();
    assert!((d - (-1.0f64).exp()).abs() < 1e-15);
    assert_eq!(x.metric(&x).unwrap(), 0.0);
    assert_eq!(x.abs().unwrap(), x);
    assert_eq!(x.neg().abs().unwrap(), x);
}

#[test]
fn truncation_propagates_through_products() {
    let a = SeriesScalar::from_terms([(e(0, 1), q(1, 1))], ExtExponent::Finite(e(2, 1)));
    let b = SeriesScalar::from_terms([(e(1, 1), q(1, 1))], ExtExponent::Finite(e(4, 1)));
    // min(2 + 1, 4 + 0)
    assert_eq!(a.mul(&b).trunc_order(), ExtExponent::Finite(e(3, 1)));
}

#[test]
fn display_round_trips_through_parser() {
    for text in ["0", "1", "-h", "3/2 + h^(1/2) - 5*h^2", "h^-1 + 2", "1 + h + O(h^3)"] {
        let x = crate::parse::parse_series(text).unwrap();
        assert_eq!(crate::parse::parse_series(&x.to_string()).unwrap(), x, "{text}");
    }
}

fn arb_exact() -> impl Strategy<Value = SeriesScalar> {
    prop::collection::vec((-5i64..=5, -2i64..6, 1i64..=3), 0..4).prop_map(|ts| {
        SeriesScalar::from_terms(ts.into_iter().map(|(c, n, d)| (e(n, d), q(c, 1))), ExtExponent::Infinite)
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_exact(), b in arb_exact(), c in arb_exact()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), SeriesScalar::zero());
    }

    #[test]
    fn order_is_total_and_compatible(a in arb_exact(), b in arb_exact(), c in arb_exact()) {
        let s = a.compare(&b);
        prop_assert_ne!(s, SignValue::IndeterminateAtTruncation);
        prop_assert_eq!(b.compare(&a) == SignValue::Negative, s == SignValue::Positive);
        // translation invariance
        prop_assert_eq!(a.add(&c).compare(&b.add(&c)), s);
        // products of positives are positive
        if a.sign() == SignValue::Positive && b.sign() == SignValue::Positive {
            prop_assert_eq!(a.mul(&b).sign(), SignValue::Positive);
        }
    }

    #[test]
    fn valuation_is_ultrametric(a in arb_exact(), b in arb_exact()) {
        let va = a.valuation().unwrap();
        let vb = b.valuation().unwrap();
        prop_assert!(a.add(&b).valuation().unwrap() >= va.min(vb));
        prop_assert_eq!(a.mul(&b).valuation().unwrap(), va.plus(vb));
    }

    #[test]
    fn division_inverts_multiplication(a in arb_exact(), b in arb_exact()) {
        prop_assume!(!b.is_exact_zero());
        let p = a.mul(&b);
        prop_assert_eq!(p.div(&b).unwrap(), a);
    }
}
