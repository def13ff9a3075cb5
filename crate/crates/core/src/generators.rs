//! Random inputs for the property suites. Every generator takes a `size`
//! knob so failing cases can be regenerated smaller.

use rand::Rng;

use crate::field::{Complex, Rational, Scalar};
use crate::linalg::{HermitianForm, Matrix};
use crate::series::{Coeff, ComplexSeries, Exponent, ExtExponent, SeriesScalar};
use crate::star::PolyObservable;
use crate::states::GaussianState;

pub fn small_int<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

pub fn small_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::new(small_int(rng, bound).into(), rng.gen_range(1..=bound.max(1)).into())
}

pub fn nonzero_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let r = small_rational(rng, bound);
        if r != Rational::from_i64(0) {
            return r;
        }
    }
}

/// Exponent in `[lo, hi)` with denominator at most `max_denom`.
pub fn exponent<R: Rng>(rng: &mut R, lo: i64, hi: i64, max_denom: i64) -> Exponent {
    let d = rng.gen_range(1..=max_denom);
    let n = rng.gen_range(lo * d..hi * d);
    Exponent::new(n, d)
}

/// Up to `terms` monomials with exponents in `[lo, hi)`.
pub fn series<R: Rng>(rng: &mut R, terms: usize, lo: i64, hi: i64, max_denom: i64, trunc: ExtExponent) -> SeriesScalar {
    let count = rng.gen_range(0..=terms);
    SeriesScalar::from_terms(
        (0..count).map(|_| (exponent(rng, lo, hi, max_denom), Coeff::from(nonzero_rational(rng, 5)))),
        trunc,
    )
}

pub fn nonzero_series<R: Rng>(rng: &mut R, terms: usize, lo: i64, hi: i64, max_denom: i64, trunc: ExtExponent) -> SeriesScalar {
    loop {
        let s = series(rng, terms.max(1), lo, hi, max_denom, trunc);
        if !s.is_empty() {
            return s;
        }
    }
}

/// Low-order complex series: `c0 + c1 h^e` with a few small exponents.
pub fn low_order_complex<R: Rng>(rng: &mut R, bound: i64) -> ComplexSeries {
    let part = |rng: &mut R| {
        let mut s = SeriesScalar::from_int(small_int(rng, bound));
        if rng.gen_bool(0.5) {
            let e = [Exponent::new(1, 2), Exponent::ONE, Exponent::integer(2)][rng.gen_range(0..3)];
            s = s.add(&SeriesScalar::monomial(Rational::from_i64(small_int(rng, bound)), e));
        }
        s
    };
    Complex::new(part(rng), part(rng))
}

pub fn complex_rational<R: Rng>(rng: &mut R, bound: i64) -> Complex<Rational> {
    Complex::new(Rational::from_i64(small_int(rng, bound)), Rational::from_i64(small_int(rng, bound)))
}

/// Coefficient field for Gram generation.
pub trait GramEntry: Scalar {
    type Real: crate::field::OrderedField;
    fn random<R: Rng>(rng: &mut R, bound: i64) -> Complex<Self::Real>;
    fn real<R: Rng>(rng: &mut R, bound: i64) -> Self::Real;
}

impl GramEntry for Rational {
    type Real = Rational;
    fn random<R: Rng>(rng: &mut R, bound: i64) -> Complex<Rational> {
        complex_rational(rng, bound)
    }
    fn real<R: Rng>(rng: &mut R, bound: i64) -> Rational {
        Rational::from_i64(small_int(rng, bound))
    }
}

impl GramEntry for SeriesScalar {
    type Real = SeriesScalar;
    fn random<R: Rng>(rng: &mut R, bound: i64) -> ComplexSeries {
        low_order_complex(rng, bound)
    }
    fn real<R: Rng>(rng: &mut R, bound: i64) -> SeriesScalar {
        SeriesScalar::from_int(small_int(rng, bound))
    }
}

/// `G^H G` for random `rows x n` matrix `G`.
pub fn gram<T: GramEntry, R: Rng>(rng: &mut R, n: usize, rows: usize, bound: i64) -> HermitianForm<T::Real> {
    let g = Matrix::from_fn(rows, n, |_, _| T::random(rng, bound));
    HermitianForm::gram(&g).expect("gram matrices are hermitian")
}

/// Gram form whose real part is singular: the last column of `G` is a real
/// combination of the others.
pub fn singular_real_gram<T: GramEntry, R: Rng>(rng: &mut R, n: usize, bound: i64) -> HermitianForm<T::Real> {
    assert!(n >= 2);
    let mut g = Matrix::from_fn(n, n, |_, _| T::random(rng, bound));
    let x: Vec<T::Real> = (0..n - 1).map(|_| T::real(rng, bound)).collect();
    for r in 0..n {
        let mut acc = Complex::<T::Real>::zero();
        for (j, xj) in x.iter().enumerate() {
            acc = acc.add(&g[(r, j)].scale(xj));
        }
        g[(r, n - 1)] = acc;
    }
    HermitianForm::gram(&g).expect("gram matrices are hermitian")
}

/// Rank-one `2 x 2` form `w w^H`, for which `det phi = 0`.
pub fn rank_one_pair<T: GramEntry, R: Rng>(rng: &mut R, bound: i64) -> HermitianForm<T::Real> {
    gram::<T, R>(rng, 2, 1, bound)
}

/// Real diagonal nonnegative form.
pub fn diagonal_form<T: GramEntry, R: Rng>(rng: &mut R, n: usize, bound: i64) -> HermitianForm<T::Real> {
    let entries: Vec<Complex<T::Real>> = (0..n)
        .map(|_| {
            let x = T::real(rng, bound);
            Complex::real(x.mul(&x))
        })
        .collect();
    HermitianForm::new(Matrix::diagonal(&entries)).expect("diagonal real forms are hermitian")
}

/// Polynomial observable with up to `terms` monomials of degree at most
/// `degree` and low-order complex coefficients.
pub fn observable<R: Rng>(rng: &mut R, d: usize, degree: u32, terms: usize, exact_constants: bool) -> PolyObservable {
    let count = rng.gen_range(1..=terms.max(1));
    PolyObservable::from_terms(
        d,
        (0..count).map(|_| {
            let mut m = vec![0u32; 2 * d];
            let deg = rng.gen_range(0..=degree);
            for _ in 0..deg {
                m[rng.gen_range(0..2 * d)] += 1;
            }
            let c = if exact_constants {
                Complex::new(
                    SeriesScalar::constant(small_rational(rng, 3)),
                    SeriesScalar::constant(small_rational(rng, 3)),
                )
            } else {
                low_order_complex(rng, 3)
            };
            (m, c)
        }),
    )
}

/// Real observable: `f + conj(f)`.
pub fn real_observable<R: Rng>(rng: &mut R, d: usize, degree: u32, terms: usize) -> PolyObservable {
    let f = observable(rng, d, degree, terms, false);
    f.add(&f.conj_obs()).expect("same dimension")
}

/// Random linear real observable `c + sum l_k x_k` with nonzero linear part.
pub fn linear_observable<R: Rng>(rng: &mut R, d: usize) -> PolyObservable {
    loop {
        let mut terms = vec![(vec![0u32; 2 * d], Complex::real(SeriesScalar::constant(small_rational(rng, 3))))];
        for k in 0..2 * d {
            let mut m = vec![0u32; 2 * d];
            m[k] = 1;
            terms.push((m, Complex::real(SeriesScalar::from_int(small_int(rng, 2)))));
        }
        let f = PolyObservable::from_terms(d, terms);
        if f.degree() == 1 {
            return f;
        }
    }
}

/// Symplectic matrix built from shears and scalings in `(q, p)` layout.
pub fn symplectic<R: Rng>(rng: &mut R, d: usize, steps: usize) -> Matrix<Rational> {
    let n = 2 * d;
    let mut s = Matrix::<Rational>::identity(n);
    for _ in 0..steps {
        let step = match rng.gen_range(0..3) {
            0 | 1 => {
                // [[I, 0], [A, I]] or [[I, A], [0, I]] with A symmetric
                let mut a = Matrix::<Rational>::zeros(d, d);
                for i in 0..d {
                    for j in i..d {
                        let x = small_rational(rng, 2);
                        a[(i, j)] = x.clone();
                        a[(j, i)] = x;
                    }
                }
                let lower = rng.gen_bool(0.5);
                Matrix::from_fn(n, n, |r, c| {
                    if r == c {
                        Rational::from_i64(1)
                    } else if lower && r >= d && c < d {
                        a[(r - d, c)].clone()
                    } else if !lower && r < d && c >= d {
                        a[(r, c - d)].clone()
                    } else {
                        Rational::from_i64(0)
                    }
                })
            }
            _ => {
                let scales: Vec<Rational> = (0..d)
                    .map(|_| Rational::new(rng.gen_range(1..=3).into(), rng.gen_range(1..=3).into()))
                    .collect();
                Matrix::from_fn(n, n, |r, c| match (r == c, r < d) {
                    (true, true) => scales[r].clone(),
                    (true, false) => scales[r - d].recip(),
                    _ => Rational::from_i64(0),
                })
            }
        };
        s = s.mul(&step).expect("square");
    }
    s
}

/// Admissible Gaussian state `cov = (h/2)(1 + theta) S S^T`. With
/// `pure = true`, `theta = 0` and the state saturates the uncertainty bound.
pub fn admissible_state<R: Rng>(rng: &mut R, d: usize, pure: bool) -> GaussianState {
    let steps = rng.gen_range(1..=3);
    let s = symplectic(rng, d, steps);
    let sst = s.mul(&s.transpose()).expect("square");
    let widen = if pure {
        SeriesScalar::one()
    } else {
        match rng.gen_range(0..3) {
            0 => SeriesScalar::from_ratio(3, 2),
            1 => SeriesScalar::one().add(&SeriesScalar::h()),
            _ => SeriesScalar::from_int(2),
        }
    };
    let half_h = SeriesScalar::h().scale(&Rational::new(1.into(), 2.into())).mul(&widen);
    let cov = sst.map(|x| half_h.scale(x));
    let mean = (0..2 * d)
        .map(|_| if rng.gen_bool(0.5) { SeriesScalar::zero() } else { SeriesScalar::constant(small_rational(rng, 2)) })
        .collect();
    GaussianState::new(mean, cov).expect("generated covariance is valid")
}
