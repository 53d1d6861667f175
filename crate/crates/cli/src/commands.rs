//! The pipelines behind each subcommand. Each returns a [`Report`]; printing and exit codes are
//! left to the binary.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use pseudoauto::exact::{quad_field_for_ell, EllParams, QuadExt, RatPoly, Rational};
use pseudoauto::lattice;
use pseudoauto::mpoly::Reducer;
use pseudoauto::numclass::{self, classify};
use pseudoauto::par::{map_slice, Execution};
use pseudoauto::report::Check;
use pseudoauto::threefold::{self, forms, surface, Maps};
use pseudoauto::torus3::{self, TorusRecord};
use serde_json::{json, Value};

use crate::report::Report;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Depth of the symbolic `g` iterates; `g⁵` alone takes tens of seconds.
pub const MAX_G_DEPTH: usize = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] pseudoauto::Error),
    #[error("{0}")]
    Usage(String),
}

/// Accepts `p/q`, decimals and scientific notation such as `1e-9`, all exactly.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Usage(format!("cannot read '{s}' as an exact rational"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 { Rational::from_integer(digits * ten.pow(shift as u32)) } else { Rational::new(digits, ten.pow((-shift) as u32)) })
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub struct CertifyOptions {
    pub ell: i64,
    /// Depth of the symbolic `f` iterates; `g` uses `min(n, 4)`.
    pub n: usize,
    pub seed: u64,
    /// Replace `a` by `a + 1` in the ℓ-condition checks.
    pub perturb: bool,
    pub exec: Execution,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { ell: 2, n: 5, seed: DEFAULT_SEED, perturb: false, exec: Execution::default() }
    }
}

type Job<'a> = Box<dyn Fn() -> Vec<Check> + Sync + Send + 'a>;

pub fn certify(opts: &CertifyOptions) -> Result<Report, CliError> {
    let start = Instant::now();
    let p = quad_field_for_ell(opts.ell)?;
    let ell = opts.ell as usize;
    let maps = Maps::from_params(&p);
    let reducer = Reducer::new(opts.seed);
    let orbit_params = if opts.perturb { EllParams { a: &p.a + &QuadExt::from_int(1), ..p.clone() } } else { p.clone() };
    let (kf, kg) = (opts.n, opts.n.min(MAX_G_DEPTH));

    let jobs: Vec<Job> = vec![
        Box::new(|| {
            let r = orbit_params.residual();
            vec![Check::new(
                "ell-relation",
                "ℓa² + (ℓ+1)ac + ℓc² = 0 exactly",
                num_traits::Zero::is_zero(&r),
                format!("a = {}, c = {}, residual {r}", orbit_params.a, orbit_params.c),
            )]
        }),
        Box::new(|| threefold::cycle_report(ell, &orbit_params.a, &orbit_params.c)),
        Box::new(|| lattice::verify_fx(ell)),
        Box::new(|| {
            let mut v = lattice::verify_gw(ell);
            if ell == 2 {
                v.extend(lattice::verify_u());
            }
            v
        }),
        Box::new(|| numclass::classification_report(ell)),
        Box::new(|| surface::surface_regression(&maps, &reducer)),
        Box::new(|| surface::g_exceptional_report(&maps, opts.seed, 8)),
        Box::new(|| surface::e1_chart_dynamics(&maps, 1000)),
        Box::new(|| match lattice::verify_degrees(ell, kf, kg, &reducer) {
            Ok(v) => v,
            Err(e) => vec![Check::new("degrees", "symbolic degrees computed", false, e.to_string())],
        }),
        Box::new(|| forms::fibration_obstruction(&p.a, &p.c, 100)),
        Box::new(|| {
            let mut v = forms::omega_invariance(&maps);
            v.extend(forms::jacobian_report(&maps));
            v
        }),
    ];
    let checks: Vec<Check> = map_slice(opts.exec, &jobs, |job| job()).into_iter().flatten().collect();
    let parameters = params(&[("ell", json!(opts.ell)), ("n", json!(kf)), ("n_g", json!(kg)), ("seed", json!(opts.seed)), ("perturb", json!(opts.perturb))]);
    let result = json!({ "a": p.a.to_string(), "c": p.c.to_string(), "field_disc": p.disc });
    let mut report = Report::new("certify", parameters, checks, result, start.elapsed());
    report.summary.push(format!("a = {}, c = {} in ℚ(√{})", p.a, p.c, p.disc));
    if let Some(s) = report.check("salem-factor") {
        report.summary.push(format!("χ_{ell} = {}", s.details));
    }
    Ok(report)
}

pub struct TorusOptions {
    pub bound: i64,
    pub eps: Rational,
    pub tol: f64,
    pub verify_j: bool,
    pub exec: Execution,
}

/// The search report together with one record per admissible sextic.
pub fn torus(opts: &TorusOptions) -> Result<(Report, Vec<TorusRecord>), CliError> {
    if opts.bound < 0 {
        return Err(CliError::Usage("--bound must be nonnegative".into()));
    }
    let start = Instant::now();
    let hits = torus3::search(opts.bound, opts.exec);
    let tol = opts.verify_j.then_some(opts.tol);
    let analyzed = map_slice(opts.exec, &hits, |s| torus3::analyze(s, &opts.eps, tol));
    let errors: Vec<String> = analyzed.iter().filter_map(|r| r.as_ref().err().map(ToString::to_string)).collect();
    let records: Vec<TorusRecord> = analyzed.into_iter().filter_map(Result::ok).collect();

    let mut checks = vec![
        Check::new("torus-analysis", "every admissible sextic is analysed without numerical failure", errors.is_empty(), errors.join("; ")),
        Check::new(
            "torus-readmissible",
            "every hit is admissible when re-checked",
            hits.iter().all(|s| torus3::admissible(s).admissible),
            format!("{} hits", hits.len()),
        ),
        Check::new("torus-symmetry", "(a, b, c) is a hit iff (−a, b, −c) is", hits.iter().all(|s| hits.binary_search(&s.negated()).is_ok()), String::new()),
        Check::new(
            "torus-spectrum",
            "certified boxes satisfy reciprocity and λ₂ = 1/|γ|², with λ₁ = λ₂",
            records.iter().all(|r| r.spectrum_consistent && r.lambda1_equals_lambda2),
            String::new(),
        ),
        Check::new(
            "torus-verdicts",
            "the fibration dichotomy decides every hit",
            records.iter().all(|r| r.verdict != torus3::Fibration::Undetermined),
            String::new(),
        ),
    ];
    if opts.verify_j {
        let worst = records.iter().filter_map(|r| r.residuals).fold(0.0f64, |m, (a, b)| m.max(a).max(b));
        checks.push(Check::new(
            "torus-complex-structure",
            "‖J² + I‖ and ‖JM − MJ‖ are below tol for every hit",
            records.iter().all(|r| r.residuals.is_some_and(|(a, b)| a < opts.tol && b < opts.tol)),
            format!("largest residual {worst:.3e}"),
        ));
    }
    let parameters =
        params(&[("bound", json!(opts.bound)), ("eps", json!(opts.eps.to_string())), ("tol", json!(opts.tol)), ("verify_j", json!(opts.verify_j))]);
    let result = json!({ "hits": records.len() });
    let mut report = Report::new("torus", parameters, checks, result, start.elapsed());
    report.summary.push(format!("{} admissible sextics among {} candidates", records.len(), (2 * opts.bound + 1).pow(3)));
    Ok((report, records))
}

pub fn classify_literal(literal: &str, lowest_first: bool, eps: &Rational) -> Result<Report, CliError> {
    let start = Instant::now();
    let p = RatPoly::parse_coeff_list(literal, lowest_first)?;
    let c = classify(&p)?;
    let cert = &c.certificate;
    let mut checks = vec![Check::new(
        "classify-counts",
        "inside + on circle + outside = degree",
        cert.inside + cert.on_circle + cert.outside == p.deg(),
        format!("{} + {} + {} vs degree {}", cert.inside, cert.on_circle, cert.outside, p.deg()),
    )];
    if !num_traits::Zero::is_zero(&p.coeff(0)) {
        let r = classify(&p.reverse(p.deg()))?;
        let rc = &r.certificate;
        checks.push(Check::new(
            "classify-reverse",
            "reversing the polynomial swaps the inside and outside counts",
            rc.inside == cert.outside && rc.outside == cert.inside && rc.on_circle == cert.on_circle,
            format!("reversed: {} inside, {} on circle, {} outside", rc.inside, rc.on_circle, rc.outside),
        ));
    }
    let root = match c.dominant_root {
        Some(_) => {
            let (lo, hi) = numclass::dominant_root(&p, eps)?;
            json!([lo.to_string(), hi.to_string()])
        }
        None => Value::Null,
    };
    let mut result = serde_json::to_value(&c).expect("serializes");
    result["dominant_root"] = root;
    let parameters = params(&[("poly", json!(literal)), ("lowest_first", json!(lowest_first)), ("eps", json!(eps.to_string()))]);
    let mut report = Report::new("classify", parameters, checks, result, start.elapsed());
    report.summary.push(format!("{p}: {:?}", c.verdict));
    report.summary.push(format!("{} inside, {} on the circle, {} outside", cert.inside, cert.on_circle, cert.outside));
    if let Some(d) = &cert.diagnostic {
        report.summary.push(d.clone());
    }
    if let Value::Array(iv) = &report.result["dominant_root"] {
        let show = |v: &Value| parse_rational(v.as_str().unwrap_or("0")).map(|q| pseudoauto::exact::rational::to_f64(&q)).unwrap_or(f64::NAN);
        report.summary.push(format!("dominant root in [{:.15}, {:.15}]", show(&iv[0]), show(&iv[1])));
    }
    Ok(report)
}

pub fn degrees(ell: i64, n: usize, seed: u64) -> Result<(Report, Vec<lattice::DegreeTable>), CliError> {
    let start = Instant::now();
    quad_field_for_ell(ell)?;
    let ell = ell as usize;
    let reducer = Reducer::new(seed);
    let kg = n.min(MAX_G_DEPTH);
    let (tf, tg) = lattice::symbolic_degrees(ell, n, kg, &reducer)?;
    let checks = lattice::verify_degrees(ell, n, kg, &reducer)?;
    let parameters = params(&[("ell", json!(ell)), ("n", json!(n)), ("n_g", json!(kg)), ("seed", json!(seed))]);
    let result = json!({ "f": &tf, "g": &tg });
    let mut report = Report::new("degrees", parameters, checks, result, start.elapsed());
    for t in [&tf, &tg] {
        report.summary.push(format!("{}: predicted {}, symbolic {:?}", t.map, t.predicted.join(", "), t.symbolic));
    }
    Ok((report, vec![tf, tg]))
}

pub fn orbit(ell: i64, perturb: bool) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut p = quad_field_for_ell(ell)?;
    if perturb {
        p.a = &p.a + &QuadExt::from_int(1);
    }
    let checks = threefold::cycle_report(ell as usize, &p.a, &p.c);
    let trace = threefold::verify_ell_condition(ell as usize, &p.a, &p.c);
    let parameters = params(&[("ell", json!(ell)), ("perturb", json!(perturb))]);
    let result = serde_json::to_value(&trace).expect("serializes");
    let mut report = Report::new("orbit", parameters, checks, result, start.elapsed());
    report.summary.push(format!("a = {}, c = {}, w = √{}", p.a, p.c, p.disc));
    for s in &trace.steps {
        report.summary.push(format!("{:>3}  {}  t = {}  {}  {:?}", s.k, s.param.curve.name(), s.param.t, s.location, s.status));
    }
    Ok(report)
}

/// CSV rows `map,k,predicted,symbolic`.
pub fn degree_csv(tables: &[lattice::DegreeTable]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["map", "k", "predicted", "symbolic"]).expect("in-memory write");
    for t in tables {
        for (k, (p, s)) in t.predicted.iter().zip(&t.symbolic).enumerate() {
            w.write_record([t.map, &(k + 1).to_string(), p, &s.to_string()]).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
