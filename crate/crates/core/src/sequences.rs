//! The eight integer sequences that arise as moment sequences of `mu_t`,
//! `nu_t` and two auxiliary densities. Each is built two independent ways
//! (closed form and triangular solve) and can be cross-checked against
//! quadrature moments.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::besselpoly::{bessel_poly, carlitz_w};
use crate::deltaops::{basic_sequence_generic, AbTriple, BinomialSequence, DeltaOperator};
use crate::distributions::{moment, DistError, DistSpec, QuadratureConfig};
use crate::exact::rational::{int, is_integral, pow, to_f64};
use crate::exact::{Poly, Rational};
use crate::report::{CheckReport, ReportEntry};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SequenceError {
    #[error("unknown sequence id {0:?}")]
    UnknownId(String),
    #[error("count must be at least 1")]
    EmptyCount,
    #[error("term {n} of {id} is not an integer: {value}")]
    NonIntegral { id: String, n: usize, value: String },
    #[error(transparent)]
    Dist(#[from] DistError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Term {
    /// `scale^n * w_{n + offset}(t) / divisor`
    Carlitz { t: (i64, i64), offset: usize, scale: i64, divisor: i64 },
    /// `y_n(t)`
    Bessel { t: i64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceSpec {
    pub oeis_id: &'static str,
    pub description: &'static str,
    term: Term,
}

pub const SEQUENCES: [SequenceSpec; 8] = [
    SequenceSpec {
        oeis_id: "A144301",
        description: "w_n(1), moments of mu_1",
        term: Term::Carlitz { t: (1, 1), offset: 0, scale: 1, divisor: 1 },
    },
    SequenceSpec {
        oeis_id: "A107104",
        description: "w_n(2), moments of mu_2",
        term: Term::Carlitz { t: (2, 1), offset: 0, scale: 1, divisor: 1 },
    },
    SequenceSpec {
        oeis_id: "A043301",
        description: "w_{n+1}(2)/2, moments of u rho_2(u) / 2",
        term: Term::Carlitz { t: (2, 1), offset: 1, scale: 1, divisor: 2 },
    },
    SequenceSpec {
        oeis_id: "A080893",
        description: "2^n w_n(1/2), moments of rho_{1/2}(u/2) / 2",
        term: Term::Carlitz { t: (1, 2), offset: 0, scale: 2, divisor: 1 },
    },
    SequenceSpec {
        oeis_id: "A001515",
        description: "y_n(1), moments of nu_1",
        term: Term::Bessel { t: 1 },
    },
    SequenceSpec {
        oeis_id: "A001517",
        description: "y_n(2), moments of nu_2",
        term: Term::Bessel { t: 2 },
    },
    SequenceSpec {
        oeis_id: "A001518",
        description: "y_n(3), moments of nu_3",
        term: Term::Bessel { t: 3 },
    },
    SequenceSpec {
        oeis_id: "A065919",
        description: "y_n(4), moments of nu_4",
        term: Term::Bessel { t: 4 },
    },
];

pub fn lookup(id: &str) -> Result<&'static SequenceSpec, SequenceError> {
    SEQUENCES
        .iter()
        .find(|s| s.oeis_id.eq_ignore_ascii_case(id))
        .ok_or_else(|| SequenceError::UnknownId(id.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Construction {
    /// Explicit sums for `w_n` and `y_n`.
    #[default]
    ClosedForm,
    /// `w_n` from the triangular solve for `D - D^2/2`; `y_n(t)` through
    /// `t^{n+1} w_{n+1}(1/t)`.
    Generic,
}

impl SequenceSpec {
    /// The law whose moments this sequence lists.
    pub fn distribution(&self) -> DistSpec {
        match self.term {
            Term::Carlitz { t: (num, den), offset: 0, scale: 1, .. } => {
                DistSpec::inverse_gaussian(num as f64 / den as f64)
            }
            Term::Carlitz { t: (num, den), offset: 1, divisor, .. } => {
                let t = num as f64 / den as f64;
                debug_assert_eq!(t, divisor as f64);
                DistSpec::size_biased(DistSpec::inverse_gaussian(t), t)
            }
            Term::Carlitz { t: (num, den), scale, .. } => {
                DistSpec::dilated(DistSpec::inverse_gaussian(num as f64 / den as f64), scale as f64)
            }
            Term::Bessel { t } => DistSpec::bessel_measure(t as f64),
        }
    }

    /// Exact terms `0..count` as rationals.
    pub fn terms(&self, count: usize, construction: Construction) -> Vec<Rational> {
        match self.term {
            Term::Carlitz { t, offset, scale, divisor } => {
                let t = Rational::new(t.0.into(), t.1.into());
                let w = carlitz_sequence(count + offset, construction);
                (0..count)
                    .map(|n| {
                        w.get(n + offset).expect("sequence long enough").eval(&t)
                            * pow(&int(scale), n as u32)
                            / int(divisor)
                    })
                    .collect()
            }
            Term::Bessel { t } => {
                let t = int(t);
                bessel_sequence(count, construction)
                    .iter()
                    .map(|y| y.eval(&t))
                    .collect()
            }
        }
    }
}

fn carlitz_sequence(nmax: usize, construction: Construction) -> BinomialSequence {
    match construction {
        Construction::ClosedForm => carlitz_w(nmax),
        Construction::Generic => {
            basic_sequence_generic(&DeltaOperator::from_triple(&AbTriple::carlitz()), nmax)
        }
    }
}

fn bessel_sequence(count: usize, construction: Construction) -> Vec<Poly> {
    match construction {
        Construction::ClosedForm => bessel_poly(count.saturating_sub(1)).polys()[..count].to_vec(),
        Construction::Generic => {
            // y_n(t) = t^{n+1} w_{n+1}(1/t): reverse the coefficients of w_{n+1}
            // and drop the (zero) constant term.
            let w = carlitz_sequence(count, Construction::Generic);
            (0..count)
                .map(|n| {
                    let rev = w.get(n + 1).expect("sequence long enough").reciprocal(n + 1);
                    Poly::new(rev.coeffs()[..=n].to_vec())
                })
                .collect()
        }
    }
}

fn integral_terms(spec: &SequenceSpec, terms: Vec<Rational>) -> Result<Vec<BigInt>, SequenceError> {
    terms
        .into_iter()
        .enumerate()
        .map(|(n, v)| {
            if is_integral(&v) {
                Ok(v.to_integer())
            } else {
                Err(SequenceError::NonIntegral {
                    id: spec.oeis_id.to_string(),
                    n,
                    value: v.to_string(),
                })
            }
        })
        .collect()
}

pub fn generate_with(id: &str, count: usize, construction: Construction) -> Result<Vec<BigInt>, SequenceError> {
    let spec = lookup(id)?;
    if count == 0 {
        return Err(SequenceError::EmptyCount);
    }
    integral_terms(spec, spec.terms(count, construction))
}

pub fn generate(id: &str, count: usize) -> Result<Vec<BigInt>, SequenceError> {
    generate_with(id, count, Construction::ClosedForm)
}

/// Quadrature moments of the matching law against the exact terms; `point`
/// in each entry is the moment index.
pub fn crosscheck(id: &str, count: usize, cfg: &QuadratureConfig) -> Result<CheckReport, SequenceError> {
    let spec = lookup(id)?;
    let exact = generate(id, count)?;
    let dist = spec.distribution();
    let mut entries = Vec::with_capacity(count);
    for (n, term) in exact.iter().enumerate() {
        let m = moment(&dist, n as u32, cfg)?;
        let rhs = to_f64(&Rational::from_integer(term.clone()));
        entries.push(ReportEntry::new("moment", n as f64, m.value, rhs, m.error_estimate));
    }
    Ok(CheckReport::new(format!("crosscheck {}", spec.oeis_id), entries))
}

/// `{ "id": ..., "terms": ["1", "2", ...] }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceOutput {
    pub id: String,
    pub terms: Vec<String>,
}

impl SequenceOutput {
    pub fn new(id: &str, terms: &[BigInt]) -> Self {
        SequenceOutput {
            id: id.to_string(),
            terms: terms.iter().map(ToString::to_string).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn generate_examples() {
        assert_eq!(generate("A144301", 5).unwrap(), big(&[1, 1, 2, 7, 37]));
        assert_eq!(
            generate_with("A144301", 5, Construction::Generic).unwrap(),
            big(&[1, 1, 2, 7, 37])
        );
        assert_eq!(generate("A080893", 4).unwrap(), big(&[1, 1, 3, 19]));
        assert_eq!(generate("A001515", 5).unwrap(), big(&[1, 2, 7, 37, 266]));
        assert_eq!(generate("A107104", 4).unwrap(), big(&[1, 2, 6, 26]));
        // w_{n+1}(2)/2 = 1, 3, 13, 77
        assert_eq!(generate("A043301", 4).unwrap(), big(&[1, 3, 13, 77]));
        // y_n(2) = 1, 3, 19, 193
        assert_eq!(generate("A001517", 4).unwrap(), big(&[1, 3, 19, 193]));
    }

    #[test]
    fn errors() {
        assert_eq!(generate("A000045", 3), Err(SequenceError::UnknownId("A000045".into())));
        assert_eq!(generate("A001515", 0), Err(SequenceError::EmptyCount));
    }

    #[test]
    fn every_sequence_starts_with_one_and_is_consistent() {
        for s in &SEQUENCES {
            assert_eq!(generate(s.oeis_id, 1).unwrap(), big(&[1]));
            let closed = generate_with(s.oeis_id, 14, Construction::ClosedForm).unwrap();
            let generic = generate_with(s.oeis_id, 14, Construction::Generic).unwrap();
            assert_eq!(closed, generic, "{}", s.oeis_id);
        }
    }

    #[test]
    fn crosscheck_examples() {
        let cfg = QuadratureConfig::default();
        let r = crosscheck("A144301", 8, &cfg).unwrap();
        assert!(r.max_rel_dev < 1e-8, "{r:?}");
        let r = crosscheck("A065919", 8, &cfg).unwrap();
        assert!(r.max_rel_dev < 1e-8, "{r:?}");
    }

    #[test]
    fn output_shape() {
        let out = SequenceOutput::new("A001515", &generate("A001515", 3).unwrap());
        assert_eq!(
            serde_json::to_string(&out).unwrap(),
            r#"{"id":"A001515","terms":["1","2","7"]}"#
        );
    }
}
