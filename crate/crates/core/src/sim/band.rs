//! Instrumentation for the capped infection-count process.
//!
//! With `γ0 = γ(I_0)`, the band is `⌊γ0/3Δ⌋ <= |I_t| <= ⌊2γ0/3Δ⌋`. Inside
//! it the cut should stay above `γ0/3 − (3E+4)Δ`, which gives `|I_t|` an
//! upward drift when the budget is small. `τ*` is the first time `|I_t|`
//! drops to the bottom of the band.

use num_rational::Rational64;
use num_traits::ToPrimitive;

use super::{EpidemicTrace, EventKind};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct BandReport {
    pub lower: usize,
    pub upper: usize,
    /// Upper level below 1: the band carries no information.
    pub vacuous: bool,
    /// `None` if `|I_t|` never dropped to `lower` before the trace ended.
    pub tau_star: Option<f64>,
    pub entered: bool,
    pub dwell_time: f64,
    pub min_cut_in_band: Option<usize>,
    /// `γ0/3 − (3E+4)Δ`, when `E` is known.
    pub premise_bound: Option<f64>,
    /// Whether every visited band state met `premise_bound`.
    pub premise_holds: Option<bool>,
    /// Cure transitions out of `|I_t| = upper` per unit time spent at or
    /// above `upper`: the observed top-state curing rate of the capped process.
    pub top_cure_rate: Option<f64>,
}

/// Replays a recorded trace; needs `trace.events`.
pub fn band_instrumentation(
    g: &Graph,
    trace: &EpidemicTrace,
    gamma0: u64,
    slack: Option<Rational64>,
) -> BandReport {
    let delta = g.max_degree().max(1) as u64;
    let lower = (gamma0 / (3 * delta)) as usize;
    let upper = (2 * gamma0 / (3 * delta)) as usize;
    let vacuous = upper < 1;
    let premise_bound = slack.map(|e| {
        let e = e.to_f64().expect("finite");
        gamma0 as f64 / 3.0 - (3.0 * e + 4.0) * delta as f64
    });

    let mut infected = trace.initial;
    let mut cut = g.cut(infected);
    let mut now = 0.0;
    let mut tau_star = None;
    let mut entered = false;
    let mut dwell = 0.0;
    let mut min_cut: Option<usize> = None;
    let mut top_time = 0.0;
    let mut top_cures = 0u64;

    let mut visit = |size: usize, cut: usize, at: f64, tau_star: &mut Option<f64>| {
        if (lower..=upper).contains(&size) {
            entered = true;
            min_cut = Some(min_cut.map_or(cut, |m| m.min(cut)));
        }
        if size <= lower && tau_star.is_none() {
            *tau_star = Some(at);
        }
    };
    visit(infected.len(), cut, 0.0, &mut tau_star);

    let end = trace.end_time();
    let steps = trace.events.iter().map(Some).chain(std::iter::once(None));
    for step in steps {
        let until = step.map_or(end, |e| e.time);
        let size = infected.len();
        let held = until - now;
        if (lower..=upper).contains(&size) {
            dwell += held;
        }
        if size >= upper && !vacuous {
            top_time += held;
        }
        now = until;
        let Some(e) = step else { break };
        match e.kind {
            EventKind::Infect => {
                cut = g.cut_after_add(infected, cut, e.vertex);
                infected = infected.with(e.vertex);
            }
            EventKind::Cure => {
                if size == upper {
                    top_cures += 1;
                }
                cut = g.cut_after_remove(infected, cut, e.vertex);
                infected = infected.without(e.vertex);
            }
        }
        visit(infected.len(), cut, e.time, &mut tau_star);
    }

    let premise_holds = match (premise_bound, min_cut, vacuous) {
        (Some(bound), Some(m), false) => Some(m as f64 >= bound),
        _ => None,
    };
    BandReport {
        lower,
        upper,
        vacuous,
        tau_star,
        entered,
        dwell_time: dwell,
        min_cut_in_band: min_cut,
        premise_bound,
        premise_holds,
        top_cure_rate: (top_time > 0.0).then(|| top_cures as f64 / top_time),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};
    use crate::nodeset::NodeSet;
    use crate::sim::{builtin_policy, simulate, PolicyKind, SimCaps};

    #[test]
    fn empty_start() {
        let g = generate(GraphKind::Complete, 4, None).unwrap();
        let p = builtin_policy(PolicyKind::MaxDegreeInfected, None).unwrap();
        let t = simulate(&g, NodeSet::EMPTY, &p, 1.0, 0, SimCaps::default()).unwrap();
        let r = band_instrumentation(&g, &t, 0, None);
        assert_eq!(r.tau_star, Some(0.0));
        assert!(r.vacuous);
        assert_eq!(r.dwell_time, 0.0);
    }

    #[test]
    fn small_resilience_is_vacuous() {
        // K4: γ(V) = 4, Δ = 3, so ⌊8/9⌋ = 0
        let g = generate(GraphKind::Complete, 4, None).unwrap();
        let p = builtin_policy(PolicyKind::MaxDegreeInfected, None).unwrap();
        let t = simulate(&g, g.vertices(), &p, 2.0, 5, SimCaps::default()).unwrap();
        let r = band_instrumentation(&g, &t, 4, Some(Rational64::new(10, 3)));
        assert!(r.vacuous);
        assert_eq!(r.upper, 0);
        assert_eq!(r.premise_holds, None);
    }

    #[test]
    fn k12_band_minimum_cut() {
        // γ0 = 132 with Δ = 11 puts the band at [4, 8]; every extinct path
        // from 12 crosses it, and min k(12-k) over 4..=8 is 32.
        let g = generate(GraphKind::Complete, 12, None).unwrap();
        let p = builtin_policy(PolicyKind::RandomInfected, None).unwrap();
        for seed in 0..5 {
            let t = simulate(&g, g.vertices(), &p, 40.0, seed, SimCaps::default()).unwrap();
            assert!(t.tau().is_some());
            let r = band_instrumentation(&g, &t, 132, Some(Rational64::new(82, 11)));
            assert_eq!((r.lower, r.upper), (4, 8));
            assert!(r.entered && !r.vacuous);
            assert_eq!(r.min_cut_in_band, Some(32));
            assert!(r.dwell_time > 0.0);
            let tau_star = r.tau_star.unwrap();
            assert!(tau_star <= t.tau().unwrap());
            assert_eq!(r.premise_holds, Some(true));
            assert!(r.top_cure_rate.unwrap() > 0.0);
        }
    }
}
