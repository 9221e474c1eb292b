//! Birth-death walk on the integers: up at rate μ, down at rate λ.

use rand::Rng;

use super::{invalid, BoundError};
use crate::exec::Execution;
use crate::rng;
use crate::stats::MeanEstimate;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParams {
    /// Down-rate λ.
    pub lambda: f64,
    /// Up-rate μ.
    pub mu: f64,
    /// Ceiling `L`.
    pub level: u32,
    /// Start `M`.
    pub start: u32,
}

impl WalkParams {
    pub fn new(lambda: f64, mu: f64, level: u32, start: u32) -> Result<Self, BoundError> {
        if !(lambda > 0.0 && lambda.is_finite()) || !(mu > 0.0 && mu.is_finite()) {
            return Err(invalid(format!("rates must be positive (lambda={lambda}, mu={mu})")));
        }
        if level < 1 || start > level {
            return Err(invalid(format!("need 0 <= M <= L and L >= 1 (M={start}, L={level})")));
        }
        Ok(WalkParams {
            lambda,
            mu,
            level,
            start,
        })
    }
}

/// Probability that the walk started at `M` reaches `L` before `0`:
/// `(1 − (λ/μ)^M) / (1 − (λ/μ)^L)`, and `M/L` in the symmetric case.
pub fn gambler_up_probability(w: &WalkParams) -> f64 {
    let (m, l) = (w.start as i32, w.level as i32);
    if w.lambda == w.mu {
        return m as f64 / l as f64;
    }
    let rho = w.lambda / w.mu;
    if rho < 1.0 {
        (1.0 - rho.powi(m)) / (1.0 - rho.powi(l))
    } else {
        // Same ratio rewritten in q = μ/λ < 1 to keep the powers small.
        let q = rho.recip();
        q.powi(l - m) * (1.0 - q.powi(m)) / (1.0 - q.powi(l))
    }
}

/// `(1/2)((μ/λ)^{L−1} − 1)(1/λ)`: lower bound on the expected time for the
/// walk reflected at `L` and started at `L − 1` to reach `0`. Only valid for
/// `λ < μ`.
pub fn random_walk_lower_bound(w: &WalkParams) -> Result<f64, BoundError> {
    if w.lambda >= w.mu {
        return Err(BoundError::Domain {
            lambda: w.lambda.to_string(),
            mu: w.mu.to_string(),
        });
    }
    let growth = (w.mu / w.lambda).powi(w.level as i32 - 1);
    Ok(0.5 * (growth - 1.0) / w.lambda)
}

/// `p / ((1 − p) λ)` with `p` the probability of climbing from `L − 1` to
/// `L` before reaching `0`: the expected time spent on failed trials.
pub fn regeneration_time(w: &WalkParams) -> f64 {
    let from_below = WalkParams {
        start: w.level - 1,
        ..*w
    };
    let p = gambler_up_probability(&from_below);
    p / ((1.0 - p) * w.lambda)
}

/// Runs the embedded jump chain from `M` until it hits `0` or `L`; true for `L`.
pub fn sample_walk_exit<R: Rng + ?Sized>(w: &WalkParams, rng: &mut R) -> bool {
    let up = w.mu / (w.mu + w.lambda);
    let mut pos = w.start;
    while pos != 0 && pos != w.level {
        if rng.random::<f64>() < up {
            pos += 1;
        } else {
            pos -= 1;
        }
    }
    pos == w.level
}

/// Monte Carlo estimate of [`gambler_up_probability`]; run `i` uses stream
/// `i` of `seed`.
pub fn estimate_up_probability(
    w: &WalkParams,
    runs: u64,
    seed: u64,
    exec: Execution,
) -> Option<MeanEstimate> {
    let hits = exec.map_indexed(runs, |i| {
        let mut r = rng::stream(seed, i);
        if sample_walk_exit(w, &mut r) {
            1.0
        } else {
            0.0
        }
    });
    MeanEstimate::from_samples(&hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn up_probability_examples() {
        let sym = WalkParams::new(1.0, 1.0, 6, 3).unwrap();
        assert_eq!(gambler_up_probability(&sym), 0.5);
        let half = WalkParams::new(1.0, 2.0, 2, 1).unwrap();
        assert!((gambler_up_probability(&half) - 2.0 / 3.0).abs() < 1e-15);
        for (l, m) in [(5, 5), (5, 0)] {
            let w = WalkParams::new(3.0, 2.0, l, m).unwrap();
            assert_eq!(gambler_up_probability(&w), if m == l { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn up_probability_is_symmetric_under_reflection() {
        // Swapping rates and reflecting M -> L - M gives the complement.
        for l in 1..15u32 {
            for m in 0..=l {
                let a = WalkParams::new(1.0, 3.0, l, m).unwrap();
                let b = WalkParams::new(3.0, 1.0, l, l - m).unwrap();
                let sum = gambler_up_probability(&a) + gambler_up_probability(&b);
                assert!((sum - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn lower_bound_examples() {
        let w = WalkParams::new(1.0, 2.0, 3, 2).unwrap();
        assert_eq!(random_walk_lower_bound(&w).unwrap(), 1.5);
        assert!(random_walk_lower_bound(&WalkParams::new(2.0, 2.0, 3, 2).unwrap()).is_err());
        let near = WalkParams::new(1.0, 1.0 + 1e-9, 10, 9).unwrap();
        assert!(random_walk_lower_bound(&near).unwrap() < 1e-6);
    }

    #[test]
    fn invalid_params() {
        assert!(WalkParams::new(0.0, 1.0, 3, 1).is_err());
        assert!(WalkParams::new(1.0, 1.0, 0, 0).is_err());
        assert!(WalkParams::new(1.0, 1.0, 3, 4).is_err());
    }

    #[test]
    fn monte_carlo_close() {
        let w = WalkParams::new(1.0, 2.0, 6, 2).unwrap();
        let est = estimate_up_probability(&w, 20_000, 11, Execution::default()).unwrap();
        assert!(est.within(gambler_up_probability(&w), 4.0));
    }
}
