//! Command implementations. Each returns the text for stdout and the exit
//! code; `main` owns printing.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use dq_core::error::{Error, Result};
use dq_core::linalg::json::MatrixDoc;
use dq_core::linalg::Matrix;
use dq_core::parse::{parse_expression, parse_observable};
use dq_core::series::{ComplexSeries, SeriesScalar, SignValue};
use dq_core::star::{moyal_bracket, poisson, star as star_product, PolyObservable};
use dq_core::states::{GaussianState, StateDoc};
use dq_core::suites::{run_suite, Suite, SuiteConfig};
use dq_core::uncertainty::{
    check_squeeze, entry_doc, ideal_direction_from, complex_witness_from, Analysis, Status, UncertaintyVerdict, VerdictDoc,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_VIOLATED: u8 = 2;
pub const EXIT_INDETERMINATE: u8 = 3;

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: EXIT_OK, warnings: Vec::new() }
    }
}

pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::IndeterminateAtTruncation { .. } => EXIT_INDETERMINATE,
        _ => EXIT_INPUT,
    }
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn sign_name(s: SignValue) -> &'static str {
    match s {
        SignValue::Positive => "positive",
        SignValue::Negative => "negative",
        SignValue::Zero => "zero",
        SignValue::IndeterminateAtTruncation => "indeterminate",
    }
}

pub fn field_eval(expr: &str, as_json: bool) -> Result<Outcome> {
    let x = parse_expression(expr)?;
    let sign = x.sign();
    let valuation = match x.valuation() {
        Ok(v) => v.to_string(),
        Err(_) => "indeterminate".into(),
    };
    let report = json!({
        "value": x.to_string(),
        "sign": sign_name(sign),
        "valuation": valuation,
        "trunc_order": x.trunc_order().to_string(),
    });
    let stdout = if as_json {
        pretty(&report)
    } else {
        format!(
            "{x}\nsign: {}\nvaluation: {valuation}\ntrunc_order: {}\n",
            sign_name(sign),
            x.trunc_order()
        )
    };
    let code = if sign == SignValue::IndeterminateAtTruncation { EXIT_INDETERMINATE } else { EXIT_OK };
    Ok(Outcome { stdout, code, warnings: Vec::new() })
}

/// Largest `q`/`p` index mentioned in an expression.
fn infer_d(texts: &[&str]) -> usize {
    let mut d = 1;
    for t in texts {
        let bytes = t.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            if b == b'q' || b == b'p' {
                let digits: String = t[i + 1..].chars().take_while(|c| c.is_ascii_digit()).collect();
                if let Ok(n) = digits.parse::<usize>() {
                    d = d.max(n);
                }
            }
        }
    }
    d
}

pub fn star(f: &str, g: &str, d: Option<usize>, as_json: bool) -> Result<Outcome> {
    let d = d.unwrap_or_else(|| infer_d(&[f, g]));
    let f = parse_observable(f, d)?;
    let g = parse_observable(g, d)?;
    let fg = star_product(&f, &g)?;
    let gf = star_product(&g, &f)?;
    let bracket = moyal_bracket(&f, &g)?;
    let pb = poisson(&f, &g)?;
    let stdout = if as_json {
        pretty(&json!({
            "d": d,
            "f": f.to_string(),
            "g": g.to_string(),
            "f_star_g": fg.to_string(),
            "g_star_f": gf.to_string(),
            "moyal_bracket": bracket.to_string(),
            "poisson_bracket": pb.to_string(),
        }))
    } else {
        format!("f * g = {fg}\ng * f = {gf}\n{{f, g}}_* = {bracket}\n{{f, g}} = {pb}\n")
    };
    Ok(Outcome::ok(stdout))
}

fn load_state(spec: &str) -> Result<GaussianState> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidState(format!("cannot read {spec}: {e}")))?;
        GaussianState::from_json(&text)
    } else {
        GaussianState::named(spec)
    }
}

fn parse_all(obs: &[String], d: usize) -> Result<Vec<PolyObservable>> {
    obs.iter().map(|o| parse_observable(o, d)).collect()
}

fn exit_for(statuses: &[Status]) -> u8 {
    if statuses.contains(&Status::Violated) {
        EXIT_VIOLATED
    } else if statuses.contains(&Status::Indeterminate) {
        EXIT_INDETERMINATE
    } else {
        EXIT_OK
    }
}

fn series_rows(m: &Matrix<SeriesScalar>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn complex_list(v: &[ComplexSeries]) -> Value {
    serde_json::to_value(v.iter().map(entry_doc).collect::<Vec<_>>()).expect("entries serialize")
}

fn complex_text(v: &[ComplexSeries]) -> String {
    let parts: Vec<String> = v.iter().map(|z| format!("({z})")).collect();
    parts.join(", ")
}

fn verdict_line(v: &UncertaintyVerdict) -> String {
    let mut s = format!("{:<12} {}  >=  {}   {:?}", relation_label(v), v.lhs, v.rhs, v.status);
    if let Some(e) = v.agrees_below {
        let _ = write!(s, " (sides agree below h^{e}; raise --order)");
    }
    s
}

fn relation_label(v: &UncertaintyVerdict) -> &'static str {
    use dq_core::uncertainty::RelationName::*;
    match v.relation {
        RobertsonSchrodinger => "RS",
        HeisenbergRobertson => "HR",
        Trace => "Trace",
        TracePaired => "TracePaired",
        TwoObs => "TwoObs",
    }
}

/// Every relation, the ideal direction and (for two observables) the complex witness.
pub fn check(state: &str, obs: &[String], as_json: bool) -> Result<Outcome> {
    let rho = load_state(state)?;
    let xs = parse_all(obs, rho.d())?;
    let an = Analysis::new(&rho, &xs)?;
    let mut verdicts = vec![an.rs()?, an.hr()];
    if xs.len() >= 2 {
        let tr = an.trace()?;
        verdicts.push(tr.general);
        verdicts.extend(tr.paired);
    }
    if xs.len() == 2 {
        verdicts.push(an.two_obs()?);
    }
    let direction = ideal_direction_from(&rho, &an.moments)?;
    let witness = if xs.len() == 2 { Some(complex_witness_from(&rho, &an)?) } else { None };
    let code = exit_for(&verdicts.iter().map(|v| v.status).collect::<Vec<_>>());

    let stdout = if as_json {
        let docs: Vec<VerdictDoc> = verdicts.iter().map(VerdictDoc::from).collect();
        pretty(&json!({
            "state": StateDoc::from_state(&rho),
            "observables": xs.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "moments": {
                "a": series_rows(&an.moments.a),
                "b": series_rows(&an.moments.b),
                "phi": MatrixDoc::from_matrix(an.moments.phi.entries()),
            },
            "det_a": an.det_a.to_string(),
            "det_b": an.det_b.to_string(),
            "det_phi": an.det_phi.to_string(),
            "relations": docs,
            "intelligent": an.intelligent,
            "ideal_direction": direction.as_ref().map(|d| json!({
                "coefficients": d.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "combination": d.combination.to_string(),
                "gelfand_norm": d.gelfand_norm.to_string(),
            })),
            "complex_witness": witness.as_ref().and_then(|w| w.witness.as_ref()).map(|w| complex_list(w)),
        }))
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "state d = {}, {} observables", rho.d(), xs.len());
        let _ = writeln!(s, "det a = {}, det b = {}, det phi = {}", an.det_a, an.det_b, an.det_phi);
        for v in &verdicts {
            let _ = writeln!(s, "{}", verdict_line(v));
        }
        let _ = writeln!(s, "intelligent: hr = {}, rs = {}", an.intelligent.hr, an.intelligent.rs);
        match &direction {
            Some(d) => {
                let coeffs: Vec<String> = d.coefficients.iter().map(|c| format!("({c})")).collect();
                let _ = writeln!(s, "ideal direction: [{}] with Gel'fand norm {}", coeffs.join(", "), d.gelfand_norm);
            }
            None => {
                let _ = writeln!(s, "ideal direction: none (a is nonsingular)");
            }
        }
        if let Some(w) = witness.as_ref().and_then(|w| w.witness.as_ref()) {
            let _ = writeln!(s, "complex witness: [{}]", complex_text(w));
        }
        s
    };
    Ok(Outcome { stdout, code, warnings: rho.warnings() })
}

fn parse_block(text: &str, d: usize) -> Result<Matrix<ComplexSeries>> {
    let rows = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|e| {
                    let f = parse_observable(e, d)?;
                    if f.degree() > 0 {
                        return Err(Error::PreconditionViolated(format!("block entry '{e}' is not a constant")));
                    }
                    Ok(f.constant_term())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

pub fn intelligent(state: &str, obs: &[String], uv: Option<(&str, &str)>, as_json: bool) -> Result<Outcome> {
    let rho = load_state(state)?;
    let xs = parse_all(obs, rho.d())?;
    let an = Analysis::new(&rho, &xs)?;
    let direction = ideal_direction_from(&rho, &an.moments)?;
    let witness = if xs.len() == 2 { Some(complex_witness_from(&rho, &an)?) } else { None };
    let squeeze = match uv {
        Some((u, v)) => Some(check_squeeze(&rho, &xs, &parse_block(u, rho.d())?, &parse_block(v, rho.d())?)?),
        None => None,
    };
    let mut code = EXIT_OK;
    if let Some(r) = &squeeze {
        if !r.holds() {
            code = EXIT_VIOLATED;
        }
    }
    let stdout = if as_json {
        pretty(&json!({
            "intelligent": an.intelligent,
            "det_a": an.det_a.to_string(),
            "det_b": an.det_b.to_string(),
            "det_phi": an.det_phi.to_string(),
            "ideal_direction": direction.as_ref().map(|d| d.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            "complex_witness": witness.as_ref().and_then(|w| w.witness.as_ref()).map(|w| complex_list(w)),
            "squeeze": squeeze.as_ref().map(|r| json!({
                "norms": r.norms.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "annihilated": r.annihilated,
                "rs": r.rs.as_ref().map(VerdictDoc::from),
            })),
        }))
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "HR-intelligent: {}", an.intelligent.hr);
        let _ = writeln!(s, "RS-intelligent: {}", an.intelligent.rs);
        if let Some(d) = &direction {
            let coeffs: Vec<String> = d.coefficients.iter().map(|c| format!("({c})")).collect();
            let _ = writeln!(s, "ideal direction: [{}]", coeffs.join(", "));
        }
        if let Some(w) = witness.as_ref().and_then(|w| w.witness.as_ref()) {
            let _ = writeln!(s, "complex witness: [{}]", complex_text(w));
        }
        if let Some(r) = &squeeze {
            let norms: Vec<String> = r.norms.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "transformed norms: [{}], annihilated: {}", norms.join(", "), r.annihilated);
            if let Some(v) = &r.rs {
                let _ = writeln!(s, "{}", verdict_line(v));
            }
        }
        s
    };
    Ok(Outcome { stdout, code, warnings: rho.warnings() })
}

pub fn proptest(suite: Suite, trials: usize, seed: u64, dims: Option<Vec<usize>>, as_json: bool) -> Result<Outcome> {
    let mut cfg = SuiteConfig::new(suite, trials, seed);
    if let Some(d) = dims {
        cfg = cfg.with_dims(d);
    }
    let report = run_suite(&cfg);
    let stdout = if as_json { format!("{}\n", report.to_json()) } else { report.to_string() };
    let code = if report.passed() { EXIT_OK } else { EXIT_VIOLATED };
    Ok(Outcome { stdout, code, warnings: Vec::new() })
}

