//! Numerical certificates: convolution semigroup, Kolmogorov representation,
//! the gamma / dilated inverse-Gaussian factorization, and the Bessel-K forms
//! of `w_n` and `y_n`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bessel_k::bessel_k_half_scaled;
use super::quadrature::{integrate_half_line, integrate_interval, QuadResult, QuadratureConfig};
use super::{kolmogorov_density, DistError, DistSpec};
use crate::report::{CheckReport, ReportEntry};

/// `(f * g)(u) = int_0^u f(v) g(u - v) dv`; zero for `u <= 0`.
pub fn convolution_density(
    f: &DistSpec,
    g: &DistSpec,
    u: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadResult<f64>, DistError> {
    f.validate()?;
    g.validate()?;
    integrate_interval(
        0.0,
        u.max(0.0),
        |v: f64, rest: f64| (f.log_density(v) + g.log_density(rest)).exp(),
        cfg,
    )
}

/// Compares `rho_s * rho_t` with `rho_{s+t}` at each point.
pub fn semigroup_check(s: f64, t: f64, points: &[f64], cfg: &QuadratureConfig) -> Result<CheckReport, DistError> {
    let (a, b) = (DistSpec::inverse_gaussian(s), DistSpec::inverse_gaussian(t));
    let sum = DistSpec::inverse_gaussian(s + t);
    sum.validate()?;
    let mut entries = Vec::with_capacity(points.len());
    for &u in points {
        let conv = convolution_density(&a, &b, u, cfg)?;
        entries.push(ReportEntry::new("density", u, conv.value, sum.density(u), conv.error_estimate));
    }
    Ok(CheckReport::new(format!("semigroup s={s} t={t}"), entries))
}

/// `e^{iy} - 1 - iy` without cancellation for small `y`.
fn compensated_exp_i(y: f64) -> Complex64 {
    let half = 0.5 * y;
    let re = -2.0 * half.sin() * half.sin();
    let im = if y.abs() < 1e-3 {
        let y3 = y * y * y;
        -y3 / 6.0 + y3 * y * y / 120.0
    } else {
        y.sin() - y
    };
    Complex64::new(re, im)
}

/// `1 - sqrt(1 - 2ix) = ix + int_0^inf (e^{iux} - 1 - iux) e^{-u/2} / sqrt(2 pi u^3) du`,
/// real and imaginary parts reported separately, plus the normalization of
/// `sqrt(u) e^{-u/2} / sqrt(2 pi)`.
pub fn kolmogorov_check(x: f64, cfg: &QuadratureConfig) -> Result<CheckReport, DistError> {
    let lhs = Complex64::new(1.0, 0.0) - Complex64::new(1.0, -2.0 * x).sqrt();
    let half_ln_2pi = 0.5 * (2.0 * PI).ln();
    let integral = integrate_half_line(
        |u: f64| compensated_exp_i(u * x) * (-u / 2.0 - half_ln_2pi - 1.5 * u.ln()).exp(),
        cfg,
    )?;
    let rhs = Complex64::new(0.0, x) + integral.value;
    let norm = integrate_half_line(kolmogorov_density, cfg)?;
    let entries = vec![
        ReportEntry::new("re", x, lhs.re, rhs.re, integral.error_estimate),
        ReportEntry::new("im", x, lhs.im, rhs.im, integral.error_estimate),
        ReportEntry::new("normalization", 0.0, norm.value, 1.0, norm.error_estimate),
    ];
    Ok(CheckReport::new(format!("kolmogorov x={x}"), entries))
}

/// Positive points at which the density-level factorization is checked.
pub const FACTORIZATION_DENSITY_POINTS: [f64; 3] = [0.5, 1.0, 2.0];

/// `psi_t(x)` against `char_fun(GammaHalf(t)) * char_fun(Dilated(IG(1/t), t))`
/// at each `x` (closed forms, labels `cf-re` / `cf-im`), then
/// `nu_t = gamma_t * D_t mu_{1/t}` as densities at three positive points
/// (label `density`).
pub fn convolution_factorization_check(
    t: f64,
    x_points: &[f64],
    cfg: &QuadratureConfig,
) -> Result<CheckReport, DistError> {
    let nu = DistSpec::bessel_measure(t);
    let gamma = DistSpec::gamma_half(t);
    let dilated = DistSpec::dilated(DistSpec::inverse_gaussian(1.0 / t), t);
    nu.validate()?;
    let mut entries = Vec::new();
    for &x in x_points {
        let lhs = nu.char_fun(x);
        let rhs = gamma.char_fun(x) * dilated.char_fun(x);
        entries.push(ReportEntry::new("cf-re", x, lhs.re, rhs.re, 0.0));
        entries.push(ReportEntry::new("cf-im", x, lhs.im, rhs.im, 0.0));
    }
    for u in FACTORIZATION_DENSITY_POINTS {
        let conv = convolution_density(&gamma, &dilated, u, cfg)?;
        entries.push(ReportEntry::new("density", u, conv.value, nu.density(u), conv.error_estimate));
    }
    Ok(CheckReport::new(format!("factorization t={t}"), entries))
}

/// `t e^t 2^n (t/2)^{n-1/2} K_{1/2-n}(t) / sqrt(pi)`, equal to `w_n(t)`.
pub fn w_via_bessel_k(n: u32, t: f64) -> Result<f64, DistError> {
    let scaled = bessel_k_half_scaled(-(n as i64), t)?;
    let n_f = n as f64;
    Ok(t * 2f64.powi(n as i32) * (t / 2.0).powf(n_f - 0.5) * scaled / PI.sqrt())
}

/// `e^{1/t} sqrt(2 / (pi t)) K_{-n-1/2}(1/t)`, equal to `y_n(t)`.
pub fn y_via_bessel_k(n: u32, t: f64) -> Result<f64, DistError> {
    if t.is_nan() || t <= 0.0 {
        return Err(DistError::NonPositiveArgument(t));
    }
    let scaled = bessel_k_half_scaled(-(n as i64) - 1, 1.0 / t)?;
    Ok((2.0 / (PI * t)).sqrt() * scaled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::besselpoly::{bessel_poly, carlitz_w};
    use crate::exact::rational::to_f64;
    use crate::exact::Rational;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn rat_of(t: f64) -> Rational {
        Rational::from_float(t).unwrap()
    }

    #[test]
    fn semigroup_examples() {
        let r = semigroup_check(0.5, 0.5, &[1.0], &cfg()).unwrap();
        assert!(r.max_abs_dev < 1e-7, "{r:?}");
        let r = semigroup_check(0.5, 0.5, &[-1.0], &cfg()).unwrap();
        assert_eq!(r.entries[0].value_lhs, 0.0);
        assert_eq!(r.entries[0].value_rhs, 0.0);
        let r = semigroup_check(1.0, 2.0, &[0.5, 1.0, 2.0, 4.0], &cfg()).unwrap();
        assert!(r.max_abs_dev < 1e-7, "{r:?}");
        assert!(semigroup_check(-1.0, 1.0, &[1.0], &cfg()).is_err());
    }

    #[test]
    fn semigroup_detects_wrong_parameter() {
        // rho_1 * rho_1 is rho_2, not rho_1.5
        let conv = convolution_density(
            &DistSpec::inverse_gaussian(1.0),
            &DistSpec::inverse_gaussian(1.0),
            1.5,
            &cfg(),
        )
        .unwrap()
        .value;
        assert!((conv - DistSpec::inverse_gaussian(1.5).density(1.5)).abs() > 1e-3);
    }

    #[test]
    fn kolmogorov_examples() {
        let r = kolmogorov_check(0.0, &cfg()).unwrap();
        assert_eq!(r.entries[0].value_lhs, 0.0);
        assert!(r.max_abs_dev_of("re") == 0.0 && r.max_abs_dev_of("im") == 0.0);
        let r = kolmogorov_check(0.3, &cfg()).unwrap();
        assert!(r.max_abs_dev_of("re") < 1e-8 && r.max_abs_dev_of("im") < 1e-8, "{r:?}");
        assert!(r.max_abs_dev_of("normalization") < 1e-10);
    }

    #[test]
    fn factorization_examples() {
        let r = convolution_factorization_check(1.0, &[0.0, 0.7], &cfg()).unwrap();
        assert_eq!(r.entries[0].value_lhs, 1.0);
        assert!(r.max_abs_dev_of("cf") < 1e-12);
        let r = convolution_factorization_check(2.0, &[0.3], &cfg()).unwrap();
        let at_one = r.select("density").find(|e| e.point == 1.0).unwrap();
        assert!(at_one.abs_dev < 1e-7, "{at_one:?}");
    }

    #[test]
    fn bessel_k_closed_forms() {
        let w = carlitz_w(8);
        let y = bessel_poly(8);
        for t in [0.5, 1.0, 2.0] {
            for n in 0..=8u32 {
                let exact = to_f64(&w.get(n as usize).unwrap().eval(&rat_of(t)));
                let via_k = w_via_bessel_k(n, t).unwrap();
                assert!((via_k - exact).abs() / exact < 1e-9, "w n={n} t={t}: {via_k} vs {exact}");
                let exact = to_f64(&y.get(n as usize).unwrap().eval(&rat_of(t)));
                let via_k = y_via_bessel_k(n, t).unwrap();
                assert!((via_k - exact).abs() / exact < 1e-9, "y n={n} t={t}: {via_k} vs {exact}");
            }
        }
    }

    #[test]
    fn compensated_matches_direct() {
        for y in [1e-6, 1e-4, 0.0009, 0.01, 0.5, 3.0] {
            let direct = Complex64::new(0.0, y).exp() - Complex64::new(1.0, y);
            let c = compensated_exp_i(y);
            assert!((c - direct).norm() <= 1e-15 + 1e-9 * direct.norm(), "y={y}");
        }
    }
}
