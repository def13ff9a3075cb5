use dq_core::linalg::{classify_symmetric, congruence_fraction_free, determinant, Matrix};
use dq_core::parse::parse_series;
use dq_core::series::Coeff;
use dq_core::star::{moyal_bracket, poisson, star, PolyObservable};
use dq_core::states::GaussianState;
use dq_core::{Complex, ComplexSeries, Exponent, ExtExponent, Rational, Scalar, SeriesScalar, SignValue};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn exact_series() -> impl Strategy<Value = SeriesScalar> {
    prop::collection::vec((-6i64..=6, -2i64..=4, 1i64..=3), 0..5).prop_map(|terms| {
        SeriesScalar::from_terms(
            terms.into_iter().map(|(c, n, d)| (Exponent::new(n, d), Coeff::from_integer(c.into()))),
            ExtExponent::Infinite,
        )
    })
}

/// Polynomials in one degree of freedom with Gaussian-integer coefficients
/// times small powers of `h`.
fn poly(max_deg: u32) -> impl Strategy<Value = PolyObservable> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, -3i64..=3, -3i64..=3, 0i64..=1), 0..4).prop_map(|terms| {
        PolyObservable::from_terms(
            1,
            terms.into_iter().map(|(a, b, re, im, k)| {
                let hk = SeriesScalar::h().pow(k as u32);
                (vec![a, b], Complex::new(hk.scale(&rat(re)), hk.scale(&rat(im))))
            }),
        )
    })
}

fn symmetric(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
        Matrix::from_fn(n, n, |i, j| if i <= j { rat(v[i * n + j]) } else { rat(v[j * n + i]) })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn printed_series_parse_back(x in exact_series()) {
        prop_assert_eq!(parse_series(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn sign_is_antisymmetric(x in exact_series(), y in exact_series()) {
        let d = x.sub(&y);
        let flipped = match d.sign() {
            SignValue::Positive => SignValue::Negative,
            SignValue::Negative => SignValue::Positive,
            s => s,
        };
        prop_assert_eq!(y.sub(&x).sign(), flipped);
    }

    #[test]
    fn star_is_associative(f in poly(2), g in poly(2), k in poly(1)) {
        let left = star(&star(&f, &g).unwrap(), &k).unwrap();
        let right = star(&f, &star(&g, &k).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn star_reverses_under_conjugation(f in poly(2), g in poly(2)) {
        let lhs = star(&f, &g).unwrap().conj_obs();
        let rhs = star(&g.conj_obs(), &f.conj_obs()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_with_quadratic_is_poisson(f in poly(1), g in poly(3)) {
        prop_assert_eq!(moyal_bracket(&f, &g).unwrap(), poisson(&f, &g).unwrap());
    }

    #[test]
    fn ground_expectation_is_linear_and_positive(f in poly(2), g in poly(2), c in -3i64..=3) {
        let rho = GaussianState::ground(1);
        let c = ComplexSeries::real(SeriesScalar::from_int(c));
        let combined = rho.expectation(&f.add(&g.scale(&c)).unwrap()).unwrap();
        let split = rho.expectation(&f).unwrap().add(&c.mul(&rho.expectation(&g).unwrap()));
        prop_assert_eq!(combined, split);
        let norm = rho.real_expectation(&star(&f.conj_obs(), &f).unwrap()).unwrap();
        prop_assert!(matches!(norm.sign(), SignValue::Positive | SignValue::Zero), "norm {}", norm);
    }

    #[test]
    fn congruence_diagonalizes(s in symmetric(3)) {
        let c = congruence_fraction_free(&s).unwrap();
        let lhs = c.transform.transpose().mul(&s).unwrap().mul(&c.transform).unwrap();
        prop_assert_eq!(&lhs, &Matrix::diagonal(&c.diagonal));
        let dt = determinant(&c.transform).unwrap();
        let prod = c.diagonal.iter().fold(rat(1), |acc, x| acc * x);
        prop_assert_eq!(determinant(&s).unwrap() * &dt * &dt, prod);
    }

    #[test]
    fn gram_matrices_are_nonneg(m in prop::collection::vec(-3i64..=3, 6)) {
        let g = Matrix::from_fn(2, 3, |i, j| rat(m[i * 3 + j]));
        let s = g.transpose().mul(&g).unwrap();
        prop_assert!(classify_symmetric(&s).unwrap().is_nonneg());
    }

    #[test]
    fn witnesses_are_negative(s in symmetric(3)) {
        if let dq_core::linalg::Definiteness::Indefinite { witness } = classify_symmetric(&s).unwrap() {
            let sw = s.mul_vec(&witness).unwrap();
            let value = witness.iter().zip(&sw).fold(rat(0), |acc, (a, b)| acc + a * b);
            prop_assert!(value < rat(0));
        }
    }
}
