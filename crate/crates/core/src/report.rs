//! Diagnostic reports shared by every numerical check.
//!
//! Reals are written as JSON numbers with 17 significant digits so a report
//! round-trips every `f64` exactly.

use serde::{Deserialize, Serialize, Serializer};

pub mod real17 {
    use super::*;

    pub fn format(x: f64) -> String {
        format!("{x:.16e}")
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if !x.is_finite() {
            return s.serialize_none();
        }
        let number: serde_json::Number = format(*x).parse().map_err(serde::ser::Error::custom)?;
        number.serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

/// One comparison of two routes to the same number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub label: String,
    #[serde(with = "real17")]
    pub point: f64,
    #[serde(with = "real17")]
    pub value_lhs: f64,
    #[serde(with = "real17")]
    pub value_rhs: f64,
    #[serde(with = "real17")]
    pub abs_dev: f64,
    #[serde(with = "real17")]
    pub rel_dev: f64,
    #[serde(with = "real17")]
    pub quad_error: f64,
}

impl ReportEntry {
    /// `rel_dev` is taken against `|rhs|`, falling back to the absolute
    /// deviation when `rhs == 0`.
    pub fn new(label: impl Into<String>, point: f64, lhs: f64, rhs: f64, quad_error: f64) -> Self {
        let abs_dev = (lhs - rhs).abs();
        let rel_dev = if rhs != 0.0 { abs_dev / rhs.abs() } else { abs_dev };
        ReportEntry {
            label: label.into(),
            point,
            value_lhs: lhs,
            value_rhs: rhs,
            abs_dev,
            rel_dev,
            quad_error,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub entries: Vec<ReportEntry>,
    #[serde(with = "real17")]
    pub max_abs_dev: f64,
    #[serde(with = "real17")]
    pub max_rel_dev: f64,
    #[serde(with = "real17")]
    pub max_quad_error: f64,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, entries: Vec<ReportEntry>) -> Self {
        let fold = |f: fn(&ReportEntry) -> f64| entries.iter().map(f).fold(0.0, f64::max);
        CheckReport {
            check: check.into(),
            max_abs_dev: fold(|e| e.abs_dev),
            max_rel_dev: fold(|e| e.rel_dev),
            max_quad_error: fold(|e| e.quad_error),
            entries,
        }
    }

    /// Entries whose label starts with `prefix`.
    pub fn select<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a ReportEntry> + 'a {
        self.entries.iter().filter(move |e| e.label.starts_with(prefix))
    }

    pub fn max_abs_dev_of(&self, prefix: &str) -> f64 {
        self.select(prefix).map(|e| e.abs_dev).fold(0.0, f64::max)
    }

    pub fn max_rel_dev_of(&self, prefix: &str) -> f64 {
        self.select(prefix).map(|e| e.rel_dev).fold(0.0, f64::max)
    }
}
