use serde::Serialize;
use serde_json::{json, Value};

use umbral_core::besselpoly::{bessel_egf_check, bessel_poly, BesselPolyError};
use umbral_core::deltaops::{
    basic_sequence_closed, basic_sequence_generic, f_series, AbTriple, DeltaError, DeltaOperator, SequenceRecord,
};
use umbral_core::distributions::{
    convolution_factorization_check, kolmogorov_check, moment, semigroup_check, DistError, DistSpec,
    QuadratureConfig,
};
use umbral_core::exact::rational::{double_factorial, parse_rational, pow, to_f64};
use umbral_core::exact::Rational;
use umbral_core::fusscat::{fuss_series, residual_is_zero, FussError};
use umbral_core::report::{CheckReport, ReportEntry};
use umbral_core::sequences::{crosscheck, generate, SequenceError, SequenceOutput};
use umbral_core::verify::{run_all, CriterionResult};

use crate::args::{Command, DistKind, Method, Triple};
use crate::output::OutputEnvelope;

pub const SEMIGROUP_TOL: f64 = 1e-7;
pub const KOLMOGOROV_TOL: f64 = 1e-8;
pub const FACTORIZATION_CF_TOL: f64 = 1e-12;
pub const FACTORIZATION_DENSITY_TOL: f64 = 1e-7;
pub const CROSSCHECK_TOL: f64 = 1e-8;

#[derive(Debug)]
pub enum Failure {
    /// Bad input; exit code 2.
    Usage(String),
    /// Computation ran but could not complete; exit code 1.
    Runtime(String),
}

impl From<DistError> for Failure {
    fn from(e: DistError) -> Self {
        match e {
            DistError::InvalidParameter(_) | DistError::NonPositiveArgument(_) | DistError::InvalidTolerance(_) => {
                Failure::Usage(e.to_string())
            }
            DistError::NotConverged { .. } | DistError::NonFinite(_) => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<DeltaError> for Failure {
    fn from(e: DeltaError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<FussError> for Failure {
    fn from(e: FussError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<BesselPolyError> for Failure {
    fn from(e: BesselPolyError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<SequenceError> for Failure {
    fn from(e: SequenceError) -> Self {
        match e {
            SequenceError::Dist(d) => d.into(),
            SequenceError::NonIntegral { .. } => Failure::Runtime(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

pub struct Outcome {
    pub envelope: OutputEnvelope,
    pub passed: bool,
    /// Human-readable table for stderr.
    pub table: Option<String>,
}

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn rational_arg(name: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::Usage(format!("--{name}: {e}")))
}

/// Exact rational or decimal; decimals are taken at their binary value.
fn real_arg(name: &str, text: &str) -> Result<(f64, Rational), Failure> {
    if let Ok(r) = parse_rational(text) {
        return Ok((to_f64(&r), r));
    }
    let x: f64 = text
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("--{name}: expected a number, got {text:?}")))?;
    let r = Rational::from_float(x).ok_or_else(|| Failure::Usage(format!("--{name}: {text} is not finite")))?;
    Ok((x, r))
}

fn triple(t: &Triple) -> Result<AbTriple, Failure> {
    Ok(AbTriple::new(rational_arg("a", &t.a)?, rational_arg("b", &t.b)?, t.p)?)
}

fn triple_params(t: &Triple) -> Result<Value, Failure> {
    let abp = triple(t)?;
    Ok(json!({ "a": abp.a().to_string(), "b": abp.b().to_string(), "p": abp.p() }))
}

fn quad(tol: f64) -> QuadratureConfig {
    QuadratureConfig::with_tolerance(tol)
}

fn envelope(command: &str, parameters: Value, result: Value, diagnostics: Option<Value>) -> OutputEnvelope {
    OutputEnvelope {
        command: command.to_string(),
        parameters,
        result,
        diagnostics,
    }
}

fn done(envelope: OutputEnvelope, passed: bool) -> Outcome {
    Outcome {
        envelope,
        passed,
        table: None,
    }
}

fn with_param(mut params: Value, key: &str, v: Value) -> Value {
    params.as_object_mut().expect("object").insert(key.to_string(), v);
    params
}

fn render_table(results: &[CriterionResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&format!(
            "[{}] {:>2}. {:<62} worst={:.3e} threshold={:.1e}  {}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.worst,
            r.threshold,
            r.detail
        ));
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    out.push_str(&format!("{} of {} criteria passed\n", results.len() - failed, results.len()));
    out
}

pub fn execute(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::BasicPoly { triple: t, n, method } => {
            let abp = triple(t)?;
            let seq = match method {
                Method::Closed => basic_sequence_closed(&abp, *n),
                Method::Generic => basic_sequence_generic(&DeltaOperator::from_triple(&abp), *n),
            };
            let params = with_param(triple_params(t)?, "n", json!(n));
            let params = with_param(
                params,
                "method",
                json!(match method {
                    Method::Closed => "closed",
                    Method::Generic => "generic",
                }),
            );
            Ok(done(envelope("basic-poly", params, value(&seq.records()), None), true))
        }
        Command::FSeries { triple: t, order } => {
            let abp = triple(t)?;
            let f = f_series(&abp, *order)?;
            let reverse = abp
                .g_series(*order)
                .reverse()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let matches = reverse == f;
            let params = with_param(triple_params(t)?, "order", json!(order));
            let diag = json!({ "matches_reverse": matches });
            Ok(done(envelope("f-series", params, value(&f), Some(diag)), matches))
        }
        Command::Fuss { p, order } => {
            let fs = fuss_series(*p, *order)?;
            let ok = residual_is_zero(&fs);
            let diag = json!({ "functional_equation_holds": ok });
            Ok(done(
                envelope("fuss", json!({ "p": p, "order": order }), value(&fs), Some(diag)),
                ok,
            ))
        }
        Command::BesselPoly { n } => {
            let y = bessel_poly(*n);
            let records: Vec<SequenceRecord> = y
                .polys()
                .iter()
                .enumerate()
                .map(|(n, p)| SequenceRecord { n, coeffs: p.clone() })
                .collect();
            Ok(done(envelope("bessel-poly", json!({ "n": n }), value(&records), None), true))
        }
        Command::EgfCheck { t, order } => {
            let t0 = rational_arg("t", t)?;
            let holds = bessel_egf_check(&t0, *order)?;
            Ok(done(
                envelope(
                    "egf-check",
                    json!({ "t": t0.to_string(), "order": order }),
                    json!({ "holds": holds }),
                    None,
                ),
                holds,
            ))
        }
        Command::Moments { dist, t, n, tol } => {
            let (t_f, t_r) = real_arg("t", t)?;
            let cfg = quad(tol.tol);
            let (spec, name, exact): (DistSpec, &str, Vec<Rational>) = match dist {
                DistKind::Ig => (
                    DistSpec::inverse_gaussian(t_f),
                    "ig",
                    umbral_core::besselpoly::carlitz_w(*n as usize)
                        .polys()
                        .iter()
                        .map(|w| w.eval(&t_r))
                        .collect(),
                ),
                DistKind::Bessel => (
                    DistSpec::bessel_measure(t_f),
                    "bessel",
                    bessel_poly(*n as usize).polys().iter().map(|y| y.eval(&t_r)).collect(),
                ),
                DistKind::Gamma => (
                    DistSpec::gamma_half(t_f),
                    "gamma",
                    // E[U^k] = t^k (2k-1)!!
                    (0..=*n)
                        .map(|k| pow(&t_r, k) * Rational::from_integer(double_factorial(2 * k as i64 - 1)))
                        .collect(),
                ),
            };
            spec.validate()?;
            let mut rows = Vec::new();
            let mut entries = Vec::new();
            for (k, ex) in exact.iter().enumerate() {
                let m = moment(&spec, k as u32, &cfg)?;
                rows.push(json!({ "n": k, "value": value_real(m.value) }));
                entries.push(ReportEntry::new("moment", k as f64, m.value, to_f64(ex), m.error_estimate));
            }
            let report = CheckReport::new(format!("moments {name} t={t_f}"), entries);
            Ok(done(
                envelope(
                    "moments",
                    json!({ "dist": name, "t": t, "n": n, "tol": value_real(tol.tol) }),
                    Value::Array(rows),
                    Some(value(&report)),
                ),
                true,
            ))
        }
        Command::SemigroupCheck { s, t, points, tol } => {
            let (s_f, _) = real_arg("s", s)?;
            let (t_f, _) = real_arg("t", t)?;
            let report = semigroup_check(s_f, t_f, points, &quad(tol.tol))?;
            let ok = report.max_abs_dev < SEMIGROUP_TOL;
            Ok(done(
                envelope(
                    "semigroup-check",
                    json!({ "s": s, "t": t, "points": points.iter().map(|&x| value_real(x)).collect::<Vec<_>>(), "tol": value_real(tol.tol), "threshold": value_real(SEMIGROUP_TOL) }),
                    value(&report),
                    None,
                ),
                ok,
            ))
        }
        Command::KolmogorovCheck { x, tol } => {
            let cfg = quad(tol.tol);
            let mut entries = Vec::new();
            for &xi in x {
                entries.extend(kolmogorov_check(xi, &cfg)?.entries);
            }
            let report = CheckReport::new("kolmogorov", entries);
            let ok = report.max_abs_dev_of("re").max(report.max_abs_dev_of("im")) < KOLMOGOROV_TOL
                && report.max_abs_dev_of("normalization") < tol.tol.max(1e-10);
            Ok(done(
                envelope(
                    "kolmogorov-check",
                    json!({ "x": x.iter().map(|&v| value_real(v)).collect::<Vec<_>>(), "tol": value_real(tol.tol), "threshold": value_real(KOLMOGOROV_TOL) }),
                    value(&report),
                    None,
                ),
                ok,
            ))
        }
        Command::FactorizationCheck { t, x, tol } => {
            let (t_f, _) = real_arg("t", t)?;
            let report = convolution_factorization_check(t_f, x, &quad(tol.tol))?;
            let ok = report.max_abs_dev_of("cf") < FACTORIZATION_CF_TOL
                && report.max_abs_dev_of("density") < FACTORIZATION_DENSITY_TOL;
            Ok(done(
                envelope(
                    "factorization-check",
                    json!({ "t": t, "x": x.iter().map(|&v| value_real(v)).collect::<Vec<_>>(), "tol": value_real(tol.tol) }),
                    value(&report),
                    None,
                ),
                ok,
            ))
        }
        Command::Oeis { id, count, crosscheck: check, tol } => {
            let terms = generate(id, *count)?;
            let (diag, ok) = if *check {
                let report = crosscheck(id, *count, &quad(tol.tol))?;
                let ok = report.max_rel_dev < CROSSCHECK_TOL;
                (Some(value(&report)), ok)
            } else {
                (None, true)
            };
            let canonical = umbral_core::sequences::lookup(id)?.oeis_id;
            Ok(done(
                envelope(
                    "oeis",
                    json!({ "id": canonical, "count": count, "crosscheck": check }),
                    value(&SequenceOutput::new(canonical, &terms)),
                    diag,
                ),
                ok,
            ))
        }
        Command::VerifyAll { seed } => {
            let results = run_all(*seed);
            let passed = results.iter().all(|r| r.passed);
            let table = render_table(&results);
            Ok(Outcome {
                envelope: envelope(
                    "verify-all",
                    json!({ "seed": seed }),
                    json!({ "passed": passed, "criteria": value(&results) }),
                    None,
                ),
                passed,
                table: Some(table),
            })
        }
    }
}

/// A real as a 17-significant-digit JSON number.
fn value_real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(
        umbral_core::report::real17::format(x)
            .parse()
            .expect("formatted float is a JSON number"),
    )
}
