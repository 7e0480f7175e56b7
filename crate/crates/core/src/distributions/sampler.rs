//! Inverse-Gaussian sampling by the transformation with multiple roots of
//! Michael, Schucany and Haas (The American Statistician 30(2), 1976).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::DistError;

/// `count` i.i.d. draws from `mu_t` (mean `t`, shape `t^2`), reproducible
/// from `seed`.
pub fn ig_sample(t: f64, seed: u64, count: usize) -> Result<Vec<f64>, DistError> {
    if !(t.is_finite() && t > 0.0) {
        return Err(DistError::InvalidParameter(format!("t must be positive, got {t}")));
    }
    if count == 0 {
        return Err(DistError::InvalidParameter("count must be at least 1".into()));
    }
    let mean = t;
    let shape = t * t;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let z: f64 = rng.sample(StandardNormal);
        let y = z * z;
        let ratio = mean / (2.0 * shape);
        let x = mean + ratio * (mean * y - (4.0 * mean * shape * y + mean * mean * y * y).sqrt());
        let u: f64 = rng.random();
        out.push(if u <= mean / (mean + x) { x } else { mean * mean / x });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        assert_eq!(ig_sample(1.5, 9, 100).unwrap(), ig_sample(1.5, 9, 100).unwrap());
        assert_ne!(ig_sample(1.5, 9, 100).unwrap(), ig_sample(1.5, 10, 100).unwrap());
    }

    #[test]
    fn positive_draws() {
        assert!(ig_sample(0.3, 1, 10_000).unwrap().iter().all(|&u| u > 0.0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ig_sample(0.0, 1, 5).is_err());
        assert!(ig_sample(1.0, 1, 0).is_err());
    }

    #[test]
    fn moments_at_t_two() {
        // E[U^2] = w_2(2) = 6, Var[U^2] = w_4(2) - 36 = 154 - 36
        let n = 1_000_000;
        let draws = ig_sample(2.0, 2024, n).unwrap();
        let m2 = draws.iter().map(|u| u * u).sum::<f64>() / n as f64;
        let se = (154.0f64 - 36.0).sqrt() / (n as f64).sqrt();
        assert!((m2 - 6.0).abs() < 4.0 * se, "{m2}");
    }
}
