//! Basic polynomial sequences of the delta operators `aD - bD^{p+1}`, the
//! Fuss-Catalan series behind them, Bessel polynomials, and numerical
//! certificates linking these sequences to the moments of inverse-Gaussian
//! and related laws.
//!
//! Everything under [`exact`], [`deltaops`], [`fusscat`], [`besselpoly`] and
//! [`sequences`] is exact rational arithmetic. [`distributions`] is the
//! floating-point side.

pub mod besselpoly;
pub mod deltaops;
pub mod distributions;
pub mod exact;
pub mod fusscat;
pub mod report;
pub mod sequences;
pub mod verify;

pub use deltaops::{AbTriple, BinomialSequence, DeltaOperator};
pub use distributions::{DistSpec, QuadratureConfig};
pub use exact::{FormalPowerSeries, Poly, Rational};
pub use report::{CheckReport, ReportEntry};
