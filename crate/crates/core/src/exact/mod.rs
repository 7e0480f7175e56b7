//! Exact arithmetic: rationals, dense polynomials and truncated power series.

pub mod poly;
pub mod rational;
pub mod series;

pub use poly::Poly;
pub use rational::{parse_rational, Rational};
pub use series::{FormalPowerSeries, SeriesError, DEFAULT_ORDER};
