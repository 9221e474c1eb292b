use rand::Rng;

use super::{
    Allocation, CensorReason, CuringPolicy, DecisionContext, EpidemicTrace, Event, EventKind,
    Outcome, SimCaps, SimError,
};
use crate::graph::Graph;
use crate::nodeset::NodeSet;
use crate::rng::{self, SimRng};

/// Slack on the budget check, for allocations that split `r` in floating point.
const BUDGET_TOLERANCE: f64 = 1e-9;

/// Single run seeded with `seed` (replication 0 of that master seed).
pub fn simulate(
    g: &Graph,
    initial: NodeSet,
    policy: &dyn CuringPolicy,
    budget: f64,
    seed: u64,
    caps: SimCaps,
) -> Result<EpidemicTrace, SimError> {
    simulate_replication(g, initial, policy, budget, seed, 0, caps, true)
}

/// Replication `index` of master seed `seed`. Without `record` the trace
/// keeps only counts and the outcome, unless the policy needs history.
#[allow(clippy::too_many_arguments)]
pub fn simulate_replication(
    g: &Graph,
    initial: NodeSet,
    policy: &dyn CuringPolicy,
    budget: f64,
    seed: u64,
    index: u64,
    caps: SimCaps,
    record: bool,
) -> Result<EpidemicTrace, SimError> {
    g.check_set(initial)?;
    if !(budget >= 0.0 && budget.is_finite()) {
        return Err(SimError::InvalidInput(format!("budget must be finite and >= 0, got {budget}")));
    }
    let record = record || policy.needs_history();
    let mut dyn_rng = rng::dynamics_rng(seed, index);
    let mut pol_rng = rng::policy_rng(seed, index);

    let mut infected = initial;
    let mut cut = g.cut(infected);
    let mut time = 0.0f64;
    let mut events = Vec::new();
    let mut event_count = 0u64;
    let mut alloc: Allocation = Vec::new();

    let outcome = loop {
        if infected.is_empty() {
            break Outcome::Extinct { tau: time };
        }
        alloc.clear();
        let ctx = DecisionContext {
            time,
            infected,
            graph: g,
            budget,
            history: &events,
        };
        policy.decide(&ctx, &mut pol_rng, &mut alloc);
        let cure_rate = checked_cure_rate(g, policy, &ctx, &alloc)?;

        let total = cut as f64 + cure_rate;
        if total <= 0.0 {
            // nothing can ever happen again
            break Outcome::Censored {
                at: caps.max_time,
                reason: CensorReason::MaxTime,
            };
        }
        let dt = rng::exponential(&mut dyn_rng, total);
        if time + dt > caps.max_time {
            break Outcome::Censored {
                at: caps.max_time,
                reason: CensorReason::MaxTime,
            };
        }
        if event_count >= caps.max_events {
            break Outcome::Censored {
                at: time,
                reason: CensorReason::MaxEvents,
            };
        }
        let next = time + dt;
        time = if next > time { next } else { time.next_up() };

        let event = pick_event(g, infected, cut, cure_rate, &alloc, &mut dyn_rng);
        match event.kind {
            EventKind::Infect => {
                cut = g.cut_after_add(infected, cut, event.vertex);
                infected = infected.with(event.vertex);
            }
            EventKind::Cure => {
                cut = g.cut_after_remove(infected, cut, event.vertex);
                infected = infected.without(event.vertex);
            }
        }
        event_count += 1;
        if record {
            events.push(Event { time, ..event });
        }
    };

    Ok(EpidemicTrace {
        seed,
        replication: index,
        initial,
        events,
        event_count,
        outcome,
        final_infected: infected,
    })
}

/// Validates an allocation and returns the curing rate it puts on infected
/// vertices.
fn checked_cure_rate(
    g: &Graph,
    policy: &dyn CuringPolicy,
    ctx: &DecisionContext<'_>,
    alloc: &Allocation,
) -> Result<f64, SimError> {
    let fault = |reason: String| SimError::PolicyFault {
        policy: policy.name(),
        time: ctx.time,
        reason,
    };
    let mut spent = 0.0;
    let mut on_infected = 0.0;
    for &(v, rate) in alloc {
        if v >= g.n() {
            return Err(fault(format!("vertex {v} out of range")));
        }
        if !(rate >= 0.0 && rate.is_finite()) {
            return Err(fault(format!("rate {rate} on vertex {v}")));
        }
        spent += rate;
        if ctx.infected.contains(v) {
            on_infected += rate;
        }
    }
    if spent > ctx.budget + BUDGET_TOLERANCE * ctx.budget.max(1.0) {
        return Err(fault(format!("allocation {spent} exceeds budget {}", ctx.budget)));
    }
    Ok(on_infected)
}

/// Chooses the next transition with probability proportional to its rate.
fn pick_event(
    g: &Graph,
    infected: NodeSet,
    cut: usize,
    cure_rate: f64,
    alloc: &Allocation,
    rng: &mut SimRng,
) -> Event {
    let total = cut as f64 + cure_rate;
    let u = rng.random::<f64>() * total;
    if u < cut as f64 || cure_rate <= 0.0 {
        // integer weights: pick the k-th crossing edge
        let k = ((u.floor() as usize).min(cut - 1)) as isize;
        let mut remaining = k;
        for v in infected.complement(g.n()) {
            remaining -= g.neighbors(v).intersection(infected).len() as isize;
            if remaining < 0 {
                return Event {
                    time: 0.0,
                    vertex: v,
                    kind: EventKind::Infect,
                };
            }
        }
        unreachable!("cut is the number of crossing edges");
    }
    let mut remaining = u - cut as f64;
    let mut last = None;
    for &(v, rate) in alloc {
        if rate > 0.0 && infected.contains(v) {
            last = Some(v);
            remaining -= rate;
            if remaining < 0.0 {
                break;
            }
        }
    }
    Event {
        time: 0.0,
        vertex: last.expect("positive curing rate on some infected vertex"),
        kind: EventKind::Cure,
    }
}

/// Replays a recorded trace and checks it is a legal path of the process.
pub fn validate_trace(g: &Graph, trace: &EpidemicTrace) -> Result<(), String> {
    let mut infected = trace.initial;
    let mut last = 0.0f64;
    for (i, e) in trace.events.iter().enumerate() {
        if e.time <= last {
            return Err(format!("event {i}: time {} not after {last}", e.time));
        }
        last = e.time;
        match e.kind {
            EventKind::Infect => {
                if infected.contains(e.vertex) {
                    return Err(format!("event {i}: infects already infected {}", e.vertex));
                }
                if g.neighbors(e.vertex).intersection(infected).is_empty() {
                    return Err(format!("event {i}: {} has no infected neighbour", e.vertex));
                }
                infected = infected.with(e.vertex);
            }
            EventKind::Cure => {
                if !infected.contains(e.vertex) {
                    return Err(format!("event {i}: cures healthy {}", e.vertex));
                }
                infected = infected.without(e.vertex);
            }
        }
    }
    if infected != trace.final_infected {
        return Err("replayed final state differs from the recorded one".into());
    }
    if let Outcome::Extinct { tau } = trace.outcome {
        if !infected.is_empty() {
            return Err("extinct outcome with infected vertices left".into());
        }
        if tau != last {
            return Err(format!("tau {tau} is not the time of the last event {last}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};
    use crate::sim::{builtin_policy, PolicyKind};

    struct Greedy;
    impl CuringPolicy for Greedy {
        fn name(&self) -> String {
            "greedy".into()
        }
        fn decide(&self, ctx: &DecisionContext<'_>, _: &mut SimRng, out: &mut Allocation) {
            for v in ctx.infected {
                out.push((v, ctx.budget));
            }
        }
    }

    struct Offside;
    impl CuringPolicy for Offside {
        fn name(&self) -> String {
            "offside".into()
        }
        fn decide(&self, ctx: &DecisionContext<'_>, _: &mut SimRng, out: &mut Allocation) {
            out.push((ctx.graph.n(), 0.5));
        }
    }

    #[test]
    fn empty_start_is_already_extinct() {
        let g = generate(GraphKind::Complete, 3, None).unwrap();
        let p = builtin_policy(PolicyKind::MaxDegreeInfected, None).unwrap();
        let t = simulate(&g, NodeSet::EMPTY, &p, 1.0, 1, SimCaps::default()).unwrap();
        assert_eq!(t.tau(), Some(0.0));
        assert!(t.events.is_empty());
    }

    #[test]
    fn zero_budget_is_always_censored() {
        let g = generate(GraphKind::Cycle, 5, None).unwrap();
        let p = builtin_policy(PolicyKind::None, None).unwrap();
        let caps = SimCaps {
            max_time: 50.0,
            ..SimCaps::default()
        };
        for seed in 0..20 {
            let t = simulate(&g, NodeSet::singleton(0), &p, 0.0, seed, caps).unwrap();
            assert_eq!(
                t.outcome,
                Outcome::Censored {
                    at: 50.0,
                    reason: CensorReason::MaxTime
                }
            );
            // the infection fills the cycle and nothing is ever cured
            assert_eq!(t.final_infected, g.vertices());
            let mut sizes = vec![1usize];
            let mut cur = t.initial;
            for e in &t.events {
                cur = cur.with(e.vertex);
                sizes.push(cur.len());
            }
            assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn event_cap_censors() {
        let g = generate(GraphKind::Complete, 6, None).unwrap();
        let p = builtin_policy(PolicyKind::RandomInfected, None).unwrap();
        let caps = SimCaps {
            max_time: 1e9,
            max_events: 25,
        };
        let t = simulate(&g, g.vertices(), &p, 0.5, 3, caps).unwrap();
        assert!(matches!(
            t.outcome,
            Outcome::Censored {
                reason: CensorReason::MaxEvents,
                ..
            }
        ));
        assert_eq!(t.events.len(), 25);
    }

    #[test]
    fn budget_violations_are_policy_faults() {
        let g = generate(GraphKind::Path, 3, None).unwrap();
        let err = simulate(&g, g.vertices(), &Greedy, 1.0, 0, SimCaps::default()).unwrap_err();
        assert!(matches!(err, SimError::PolicyFault { .. }));
        let err = simulate(&g, g.vertices(), &Offside, 1.0, 0, SimCaps::default()).unwrap_err();
        assert!(matches!(err, SimError::PolicyFault { .. }));
    }

    #[test]
    fn traces_are_legal_and_reproducible() {
        let g = generate(GraphKind::ErdosRenyi { p: 0.3 }, 10, Some(2)).unwrap();
        for kind in [
            PolicyKind::RandomInfected,
            PolicyKind::MaxDegreeInfected,
            PolicyKind::DegreeProportional,
            PolicyKind::MaxCutDrop,
        ] {
            let p = builtin_policy(kind, None).unwrap();
            for seed in 0..10 {
                let t = simulate(&g, g.vertices(), &p, 6.0, seed, SimCaps::default()).unwrap();
                validate_trace(&g, &t).unwrap();
                let again = simulate(&g, g.vertices(), &p, 6.0, seed, SimCaps::default()).unwrap();
                assert_eq!(t.to_string(), again.to_string());
            }
        }
    }

    #[test]
    fn validator_catches_bad_traces() {
        let g = generate(GraphKind::Path, 3, None).unwrap();
        let p = builtin_policy(PolicyKind::MaxDegreeInfected, None).unwrap();
        let good = simulate(&g, NodeSet::singleton(0), &p, 2.0, 4, SimCaps::default()).unwrap();
        validate_trace(&g, &good).unwrap();

        let mut bad = good.clone();
        bad.events.insert(
            0,
            Event {
                time: 1e-12,
                vertex: 2,
                kind: EventKind::Infect,
            },
        );
        assert!(validate_trace(&g, &bad).is_err());

        let mut bad = good.clone();
        bad.events[0].kind = match bad.events[0].kind {
            EventKind::Infect => EventKind::Cure,
            EventKind::Cure => EventKind::Infect,
        };
        assert!(validate_trace(&g, &bad).is_err());
    }

    #[test]
    fn trace_csv_format() {
        let g = generate(GraphKind::Complete, 2, None).unwrap();
        let p = builtin_policy(PolicyKind::MaxDegreeInfected, None).unwrap();
        let t = simulate(&g, g.vertices(), &p, 1.0, 9, SimCaps::default()).unwrap();
        let csv = t.to_string();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("time,kind,vertex"));
        assert_eq!(lines.count(), t.events.len());
        assert!(t.events.last().unwrap().kind == EventKind::Cure);
    }
}
