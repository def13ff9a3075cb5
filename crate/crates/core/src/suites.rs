//! Randomised property suites, shared by the `dq proptest` command and the
//! test targets. Trials are independent ChaCha8 streams keyed by
//! `(seed, trial)`, so a report is reproducible from its seed alone.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::field::{Rational, Scalar};
use crate::generators as gen;
use crate::linalg::{
    check_trace_bounds, equality_case_from, hadamard_from, kernel, real_part_bound_from, robertson_from, FormFacts,
    HermitianForm,
};
use crate::parse::{parse_observable, parse_series};
use crate::series::{ExtExponent, SeriesScalar, SignValue};
use crate::star::{moyal_bracket, poisson, star, PolyObservable};
use crate::uncertainty::{ideal_direction_from, complex_witness_from, Analysis, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    FieldAxioms,
    Valuation,
    Robertson,
    Hadamard,
    Trace,
    Moyal,
    States,
    Uncertainty,
    Parser,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::FieldAxioms,
        Suite::Valuation,
        Suite::Robertson,
        Suite::Hadamard,
        Suite::Trace,
        Suite::Moyal,
        Suite::States,
        Suite::Uncertainty,
        Suite::Parser,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FieldAxioms => "field_axioms",
            Suite::Valuation => "valuation",
            Suite::Robertson => "robertson",
            Suite::Hadamard => "hadamard",
            Suite::Trace => "trace",
            Suite::Moyal => "moyal",
            Suite::States => "states",
            Suite::Uncertainty => "uncertainty",
            Suite::Parser => "parser",
        }
    }

    pub fn default_dims(self) -> Vec<usize> {
        match self {
            Suite::Robertson | Suite::Hadamard | Suite::Trace => vec![2, 3, 4, 5],
            _ => vec![1, 2],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite '{s}' (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub dims: Vec<usize>,
}

impl SuiteConfig {
    pub fn new(suite: Suite, trials: usize, seed: u64) -> Self {
        SuiteConfig { suite, trials, seed, dims: suite.default_dims() }
    }

    pub fn with_dims(mut self, dims: Vec<usize>) -> Self {
        self.dims = dims;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: usize,
    /// Generator size at which the smallest failing input was found.
    pub size: usize,
    pub input: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub checks: u64,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        writeln!(
            f,
            "suite {} seed {} dims [{}]: {} trials, {} checks, {} failures",
            self.suite,
            self.seed,
            dims.join(","),
            self.trials,
            self.checks,
            self.failures.len()
        )?;
        for x in &self.failures {
            writeln!(f, "  trial {} (size {}): {}", x.trial, x.size, x.message)?;
            writeln!(f, "    input: {}", x.input)?;
        }
        Ok(())
    }
}

const DEFAULT_SIZE: usize = 4;

/// Inputs recorded for reproduction, plus the number of checks performed.
struct Trial<'a> {
    rng: ChaCha8Rng,
    size: usize,
    dims: &'a [usize],
    input: Vec<String>,
    checks: u64,
}

type Outcome = Result<(), String>;

impl Trial<'_> {
    fn note(&mut self, label: &str, value: impl fmt::Display) {
        self.input.push(format!("{label} = {value}"));
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) -> Outcome {
        self.checks += 1;
        if ok {
            Ok(())
        } else {
            Err(what())
        }
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let body = body_of(cfg.suite);
    let results: Vec<(u64, Option<Failure>)> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(body, cfg, t))
        .collect();
    SuiteReport {
        suite: cfg.suite,
        trials: cfg.trials,
        seed: cfg.seed,
        dims: cfg.dims.clone(),
        checks: results.iter().map(|r| r.0).sum(),
        failures: results.into_iter().filter_map(|r| r.1).collect(),
    }
}

type Body = fn(&mut Trial) -> Outcome;

fn body_of(suite: Suite) -> Body {
    match suite {
        Suite::FieldAxioms => field_axioms,
        Suite::Valuation => valuation,
        Suite::Robertson => robertson,
        Suite::Hadamard => hadamard,
        Suite::Trace => trace,
        Suite::Moyal => moyal,
        Suite::States => states,
        Suite::Uncertainty => uncertainty,
        Suite::Parser => parser,
    }
}

fn attempt(body: Body, cfg: &SuiteConfig, trial: usize, size: usize) -> (u64, Option<Failure>) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial as u64);
    let mut t = Trial { rng, size, dims: &cfg.dims, input: Vec::new(), checks: 0 };
    let outcome = match catch_unwind(AssertUnwindSafe(|| body(&mut t))) {
        Ok(r) => r,
        Err(p) => Err(format!(
            "panic: {}",
            p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()
        )),
    };
    let failure = outcome.err().map(|message| Failure { trial, size, input: t.input.join("; "), message });
    (t.checks, failure)
}

fn run_trial(body: Body, cfg: &SuiteConfig, trial: usize) -> (u64, Option<Failure>) {
    let (checks, failure) = attempt(body, cfg, trial, DEFAULT_SIZE);
    let Some(mut smallest) = failure else {
        return (checks, None);
    };
    for size in (1..DEFAULT_SIZE).rev() {
        match attempt(body, cfg, trial, size).1 {
            Some(f) => smallest = f,
            None => break,
        }
    }
    (checks, Some(smallest))
}

fn field_axioms(t: &mut Trial) -> Outcome {
    let trunc = ExtExponent::Finite(8.into());
    let n = t.size;
    let [a, b, c] = [(); 3].map(|_| gen::series(&mut t.rng, n, -2, 8, 6, trunc));
    t.note("a", &a);
    t.note("b", &b);
    t.note("c", &c);
    let agree = |x: &SeriesScalar, y: &SeriesScalar| x.agrees_with(y);
    t.check(agree(&a.add(&b).add(&c), &a.add(&b.add(&c))), || "addition is not associative".into())?;
    t.check(agree(&a.add(&b), &b.add(&a)), || "addition is not commutative".into())?;
    t.check(agree(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))), || "multiplication is not associative".into())?;
    t.check(agree(&a.mul(&b), &b.mul(&a)), || "multiplication is not commutative".into())?;
    t.check(agree(&a.mul(&b.add(&c)), &a.mul(&b).add(&a.mul(&c))), || "distributivity fails".into())?;
    t.check(agree(&a.add(&SeriesScalar::zero()), &a), || "zero is not neutral".into())?;
    t.check(agree(&a.mul(&SeriesScalar::one()), &a), || "one is not neutral".into())?;
    t.check(agree(&a.add(&a.neg()), &SeriesScalar::zero()), || "additive inverse fails".into())?;
    if !a.is_empty() {
        let inv = a.inv().map_err(err)?;
        t.check(agree(&a.mul(&inv), &SeriesScalar::one()), || format!("a * a^-1 = {} is not 1", a.mul(&inv)))?;
    }

    // order axioms
    let s = a.compare(&b);
    let r = b.compare(&a);
    let consistent = match s {
        SignValue::Positive => r == SignValue::Negative,
        SignValue::Negative => r == SignValue::Positive,
        SignValue::Zero => r == SignValue::Zero,
        SignValue::IndeterminateAtTruncation => r == s && a.agrees_with(&b),
    };
    t.check(consistent, || format!("trichotomy fails: {s:?} vs {r:?}"))?;
    if a.sign() == SignValue::Positive && b.sign() == SignValue::Positive {
        t.check(a.add(&b).sign() == SignValue::Positive, || "sum of positives is not positive".into())?;
        t.check(a.mul(&b).sign() == SignValue::Positive, || "product of positives is not positive".into())?;
    }
    if s == SignValue::Negative {
        t.check(a.add(&c).compare(&b.add(&c)) == SignValue::Negative, || "order is not translation invariant".into())?;
    }
    if !a.is_empty() {
        t.check(a.mul(&a).sign() == SignValue::Positive, || "nonzero square is not positive".into())?;
    }

    // the same laws hold with equality on exact values
    let [x, y, z] = [(); 3].map(|_| gen::series(&mut t.rng, n, -2, 8, 6, ExtExponent::Infinite));
    t.note("x", &x);
    t.note("y", &y);
    t.note("z", &z);
    t.check(x.mul(&y.add(&z)) == x.mul(&y).add(&x.mul(&z)), || "exact distributivity fails".into())?;
    t.check(x.mul(&y).mul(&z) == x.mul(&y.mul(&z)), || "exact associativity fails".into())?;
    if !y.is_empty() {
        let q = x.mul(&y).div(&y).map_err(err)?;
        t.check(q.agrees_with(&x), || format!("(x y) / y = {q}"))?;
    }
    Ok(())
}

fn valuation(t: &mut Trial) -> Outcome {
    let n = t.size;
    let [a, b, c] = [(); 3].map(|_| gen::nonzero_series(&mut t.rng, n, -3, 6, 6, ExtExponent::Infinite));
    t.note("a", &a);
    t.note("b", &b);
    t.note("c", &c);
    let v = |x: &SeriesScalar| x.valuation().map_err(err);
    let (va, vb) = (v(&a)?, v(&b)?);
    t.check(v(&a.mul(&b))? == va.plus(vb), || "valuation of a product is not additive".into())?;
    t.check(v(&a.add(&b))? >= va.min(vb), || "valuation of a sum is below the minimum".into())?;
    let d = |x: &SeriesScalar, y: &SeriesScalar| x.metric(y).map_err(err);
    t.check(d(&a, &a)? == 0.0, || "d(a, a) != 0".into())?;
    t.check(d(&a, &b)? == d(&b, &a)?, || "metric is not symmetric".into())?;
    t.check(d(&a, &c)? <= d(&a, &b)?.max(d(&b, &c)?), || "ultrametric inequality fails".into())?;
    let abs = |x: &SeriesScalar| x.abs().map_err(err);
    t.check(abs(&a.mul(&b))? == abs(&a)?.mul(&abs(&b)?), || "|ab| != |a||b|".into())?;
    t.check(
        abs(&a)?.add(&abs(&b)?).compare(&abs(&a.add(&b))?).is_nonnegative(),
        || "|a + b| > |a| + |b|".into(),
    )?;
    t.check(abs(&a.neg())? == abs(&a)?, || "|-a| != |a|".into())?;
    t.check(abs(&a)?.sign() == SignValue::Positive, || "|a| is not positive".into())?;
    Ok(())
}

fn gram_bound(size: usize) -> i64 {
    (size as i64).clamp(1, 3)
}

fn robertson_case<F: crate::field::OrderedField>(
    t: &mut Trial,
    phi: &HermitianForm<F>,
    label: &str,
    singular_real: bool,
) -> Outcome {
    t.note(label, phi.entries());
    let facts = FormFacts::of(phi).map_err(err)?;
    let r = robertson_from(phi.n(), &facts).map_err(err)?;
    t.check(r.inequality.holds(), || format!("{label}: det a < det b ({:?})", r.inequality.relation))?;
    t.check(r.strict_when_definite, || format!("{label}: definite form with det a = det b"))?;
    t.check(r.singular_implication, || format!("{label}: det a = 0 but det b != 0"))?;
    t.check(r.odd_dimension_implication, || format!("{label}: odd dimension with det b != 0"))?;
    if singular_real {
        t.check(facts.det_a.is_zero().map_err(err)?, || format!("{label}: crafted form has det a != 0"))?;
    }
    Ok(())
}

fn robertson(t: &mut Trial) -> Outcome {
    let bound = gram_bound(t.size);
    let dims = t.dims;
    for &n in dims {
        let p = gen::gram::<Rational, _>(&mut t.rng, n, n, bound);
        robertson_case(t, &p, &format!("rational n={n}"), false)?;
        let s = gen::gram::<SeriesScalar, _>(&mut t.rng, n, n, bound);
        robertson_case(t, &s, &format!("series n={n}"), false)?;
        if n >= 2 {
            let p = gen::singular_real_gram::<Rational, _>(&mut t.rng, n, bound);
            robertson_case(t, &p, &format!("singular rational n={n}"), true)?;
            let s = gen::singular_real_gram::<SeriesScalar, _>(&mut t.rng, n, bound);
            robertson_case(t, &s, &format!("singular series n={n}"), true)?;
        }
    }
    Ok(())
}

fn chain_case<F: crate::field::OrderedField>(t: &mut Trial, phi: &HermitianForm<F>, label: &str) -> Outcome {
    t.note(label, phi.entries());
    let facts = FormFacts::of(phi).map_err(err)?;
    let l = real_part_bound_from(&facts).map_err(err)?;
    t.check(l.inequality.holds(), || format!("{label}: det a < det phi"))?;
    t.check(l.inequality.is_equal() == l.equality_condition, || format!("{label}: equality condition mismatch"))?;
    let h = hadamard_from(phi, &facts).map_err(err)?;
    t.check(h.product_vs_a.holds() && h.a_vs_phi.holds() && h.a_vs_b.holds(), || format!("{label}: chain broken"))?;
    t.check(h.full_equality == h.full_equality_condition, || format!("{label}: full equality diagnosis mismatch"))?;
    t.check(h.skew_equality == h.skew_equality_condition, || format!("{label}: skew equality diagnosis mismatch"))?;
    if phi.n() == 2 {
        let c = equality_case_from(&facts).map_err(err)?;
        t.check(c.holds(), || format!("{label}: det a = det b and det phi = 0 disagree"))?;
    }
    Ok(())
}

fn hadamard(t: &mut Trial) -> Outcome {
    let bound = gram_bound(t.size);
    let dims = t.dims;
    for &n in dims {
        let p = gen::gram::<Rational, _>(&mut t.rng, n, n, bound);
        chain_case(t, &p, &format!("rational n={n}"))?;
        let s = gen::gram::<SeriesScalar, _>(&mut t.rng, n, n, bound);
        chain_case(t, &s, &format!("series n={n}"))?;
        let dg = gen::diagonal_form::<Rational, _>(&mut t.rng, n, bound);
        chain_case(t, &dg, &format!("diagonal n={n}"))?;
    }
    // n = 2 equality cases in both fields, and random definite pairs
    let pair = gen::rank_one_pair::<Rational, _>(&mut t.rng, bound);
    chain_case(t, &pair, "rank-one rational pair")?;
    let facts = FormFacts::of(&pair).map_err(err)?;
    t.check(equality_case_from(&facts).map_err(err)?.singular, || "rank-one pair is not singular".into())?;
    let pair = gen::rank_one_pair::<SeriesScalar, _>(&mut t.rng, bound);
    chain_case(t, &pair, "rank-one series pair")?;
    let wide = gen::gram::<Rational, _>(&mut t.rng, 2, 3, bound);
    chain_case(t, &wide, "random rational pair")?;
    Ok(())
}

fn trace(t: &mut Trial) -> Outcome {
    let bound = gram_bound(t.size);
    let mut forms: Vec<(String, HermitianForm<SeriesScalar>)> = Vec::new();
    let dims = t.dims;
    for &n in dims.iter().filter(|&&n| n >= 2) {
        forms.push((format!("series n={n}"), gen::gram::<SeriesScalar, _>(&mut t.rng, n, n, bound)));
        forms.push((format!("singular series n={n}"), gen::singular_real_gram::<SeriesScalar, _>(&mut t.rng, n, bound)));
        let p = gen::gram::<Rational, _>(&mut t.rng, n, n, bound);
        t.note(&format!("rational n={n}"), p.entries());
        let r = check_trace_bounds(&p).map_err(err)?;
        t.check(r.holds(), || format!("rational n={n}: trace bound violated"))?;
    }
    forms.push(("rank-one pair".into(), gen::rank_one_pair::<SeriesScalar, _>(&mut t.rng, bound)));
    for (label, phi) in forms {
        t.note(&label, phi.entries());
        let r = check_trace_bounds(&phi).map_err(err)?;
        t.check(r.general.holds(), || format!("{label}: general trace bound violated"))?;
        t.check(r.paired.as_ref().map_or(true, |p| p.holds()), || format!("{label}: paired trace bound violated"))?;
    }
    Ok(())
}

fn moyal(t: &mut Trial) -> Outcome {
    let d = if t.rng.gen_bool(0.5) { 1 } else { 2 };
    let terms = t.size;
    let [f, g, h] = [(); 3].map(|_| gen::observable(&mut t.rng, d, 4, terms, false));
    t.note("f", &f);
    t.note("g", &g);
    t.note("h", &h);
    let s = |x: &PolyObservable, y: &PolyObservable| star(x, y).map_err(err);
    let br = |x: &PolyObservable, y: &PolyObservable| moyal_bracket(x, y).map_err(err);
    let add = |x: PolyObservable, y: PolyObservable| x.add(&y).map_err(err);
    t.check(s(&s(&f, &g)?, &h)? == s(&f, &s(&g, &h)?)?, || "star product is not associative".into())?;
    let one = PolyObservable::one(d);
    t.check(s(&one, &f)? == f && s(&f, &one)? == f, || "unit law fails".into())?;
    let rest = s(&f, &g)?.sub(&f.mul(&g).map_err(err)?).map_err(err)?;
    let floor = f.min_valuation().plus(g.min_valuation()).shift(1.into());
    t.check(rest.min_valuation() >= floor, || "leading term of f * g is not the pointwise product".into())?;
    t.check(
        s(&f, &g)?.conj_obs() == s(&g.conj_obs(), &f.conj_obs())?,
        || "conjugation is not an anti-homomorphism".into(),
    )?;
    let fg = br(&f, &g)?;
    t.check(fg == br(&g, &f)?.neg(), || "bracket is not antisymmetric".into())?;
    let jacobi = add(add(br(&f, &br(&g, &h)?)?, br(&g, &br(&h, &f)?)?)?, br(&h, &fg)?)?;
    t.check(jacobi.is_zero(), || format!("Jacobi identity fails: {jacobi}"))?;
    let [f2, g2] = [(); 2].map(|_| gen::observable(&mut t.rng, d, 2, terms, false));
    t.note("f2", &f2);
    t.note("g2", &g2);
    t.check(br(&f2, &g2)? == poisson(&f2, &g2).map_err(err)?, || "bracket differs from Poisson on quadratics".into())?;
    Ok(())
}

fn states(t: &mut Trial) -> Outcome {
    let d = if t.rng.gen_bool(0.5) { 1 } else { 2 };
    let pure = t.rng.gen_bool(0.5);
    let rho = gen::admissible_state(&mut t.rng, d, pure);
    let terms = t.size;
    let f = gen::observable(&mut t.rng, d, 2, terms, false);
    let g = gen::observable(&mut t.rng, d, 2, terms, false);
    t.note("state", rho.to_json());
    t.note("f", &f);
    t.note("g", &g);
    let ex = |x: &PolyObservable| rho.expectation(x).map_err(err);
    let s = |x: &PolyObservable, y: &PolyObservable| star(x, y).map_err(err);

    let norm = rho.gelfand_norm(&f).map_err(err)?;
    t.check(norm.sign().is_nonnegative(), || format!("rho(conj(f) * f) = {norm} is negative"))?;
    t.check(
        ex(&s(&f, &g)?)?.conj() == ex(&s(&g.conj_obs(), &f.conj_obs())?)?,
        || "hermitian symmetry of the state fails".into(),
    )?;
    t.check(ex(&f)?.conj() == ex(&f.conj_obs())?, || "reality condition fails".into())?;
    let cs = rho.cauchy_schwarz(&f, &g).map_err(err)?;
    t.check(cs.holds(), || format!("Cauchy-Schwarz fails: {} > {}", cs.overlap_sq, cs.norms_product))?;

    // a null direction of the full coordinate form lies in the ideal
    let coords: Vec<PolyObservable> = (0..2 * d).map(|k| PolyObservable::coordinate(d, k)).collect();
    let analysis = Analysis::new(&rho, &coords).map_err(err)?;
    let null = kernel(analysis.moments.phi.entries()).map_err(err)?;
    t.check(!pure || null.len() == d, || format!("pure state has {} null directions", null.len()))?;
    if let Some(u) = null.first() {
        let mut w = PolyObservable::zero(d);
        for (x, c) in analysis.moments.deviations.iter().zip(u) {
            w = w.add(&x.scale(c)).map_err(err)?;
        }
        t.note("ideal element", &w);
        t.check(rho.in_gelfand_ideal(&w).map_err(err)?, || "null direction is not in the ideal".into())?;
        t.check(rho.in_gelfand_ideal(&s(&g, &w)?).map_err(err)?, || "ideal is not a left ideal".into())?;
        t.check(ex(&s(&w.conj_obs(), &g)?)?.is_exact_zero(), || "rho(conj(w) * g) != 0".into())?;
        t.check(ex(&s(&g, &w)?)?.is_exact_zero(), || "rho(g * w) != 0".into())?;
    }
    Ok(())
}

fn uncertainty(t: &mut Trial) -> Outcome {
    let d = if t.rng.gen_bool(0.5) { 1 } else { 2 };
    let pure = t.rng.gen_bool(0.5);
    let rho = gen::admissible_state(&mut t.rng, d, pure);
    let count = t.rng.gen_range(1..=t.size.min(3).max(1));
    let mut xs: Vec<PolyObservable> = (0..count)
        .map(|_| {
            if t.rng.gen_bool(0.7) {
                gen::linear_observable(&mut t.rng, d)
            } else {
                gen::real_observable(&mut t.rng, d, 2, 2)
            }
        })
        .collect();
    if xs.len() >= 2 && t.rng.gen_bool(0.3) {
        xs.push(xs[0].add(&xs[1]).map_err(err)?);
    }
    t.note("state", rho.to_json());
    for (k, x) in xs.iter().enumerate() {
        t.note(&format!("X{}", k + 1), x);
    }
    let an = Analysis::new(&rho, &xs).map_err(err)?;
    let ok = |s: Status| matches!(s, Status::Saturated | Status::StrictlyAbove);
    let rs = an.rs().map_err(err)?;
    t.check(ok(rs.status), || format!("RS relation {:?}", rs.status))?;
    let hr = an.hr();
    t.check(ok(hr.status), || format!("HR relation {:?}", hr.status))?;
    t.check(!an.intelligent.hr || an.intelligent.rs, || "HR-intelligent state is not RS-intelligent".into())?;
    if xs.len() % 2 == 1 {
        t.check(an.det_b.is_exact_zero(), || "odd dimension with det b != 0".into())?;
    }
    if xs.len() >= 2 {
        let tr = an.trace().map_err(err)?;
        t.check(ok(tr.general.status), || format!("trace relation {:?}", tr.general.status))?;
        if let Some(p) = &tr.paired {
            t.check(ok(p.status), || format!("paired trace relation {:?}", p.status))?;
        }
    }
    let dir = ideal_direction_from(&rho, &an.moments).map_err(err)?;
    let singular = an.det_a.is_zero().map_err(err)?;
    t.check(dir.is_some() == singular, || format!("ideal direction {} but det a = 0 is {singular}", dir.is_some()))?;
    if xs.len() == 2 {
        let p = complex_witness_from(&rho, &an).map_err(err)?;
        t.check(p.intelligent == an.intelligent.rs, || "RS saturation and singular phi disagree".into())?;
    }
    Ok(())
}

fn parser(t: &mut Trial) -> Outcome {
    let trunc = if t.rng.gen_bool(0.3) {
        ExtExponent::Finite(gen::exponent(&mut t.rng, 1, 9, 3))
    } else {
        ExtExponent::Infinite
    };
    let x = gen::series(&mut t.rng, t.size + 1, -3, 8, 6, trunc);
    t.note("series", &x);
    let back = parse_series(&x.to_string()).map_err(err)?;
    t.check(back == x, || format!("series round trip gave {back}"))?;
    let d = t.rng.gen_range(1..=2);
    let f = gen::observable(&mut t.rng, d, 4, t.size + 1, false);
    t.note("observable", &f);
    let back = parse_observable(&f.to_string(), d).map_err(err)?;
    t.check(back == f, || format!("observable round trip gave {back}"))?;
    Ok(())
}

