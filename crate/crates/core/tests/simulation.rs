use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use epigraph::bounds::{exact_extinction_complete, exact_extinction_complete_f64};
use epigraph::crusade::ResilienceTable;
use epigraph::graph::{generate, GraphKind};
use epigraph::sim::{
    builtin_policy, estimate_extinction, simulate, validate_trace, EventKind, PolicyKind, SimCaps,
};
use epigraph::{Execution, NodeSet};

/// Expected absorption time of the `|I|` chain on `K_n` from `n`, by dense
/// Gauss-Jordan elimination on `(Q h = -1)` over states `1..=n`, exactly.
fn dense_extinction(n: usize, r: &BigRational) -> BigRational {
    let int = |v: usize| BigRational::from_integer(BigInt::from(v));
    let mut a = vec![vec![BigRational::zero(); n + 1]; n];
    for k in 1..=n {
        let row = k - 1;
        let up = int(k * (n - k));
        a[row][row] = &up + r;
        if k > 1 {
            a[row][row - 1] = -r.clone();
        }
        if k < n {
            a[row][row + 1] = -up;
        }
        a[row][n] = BigRational::one();
    }
    for col in 0..n {
        let pivot = (col..n).find(|&i| !a[i][col].is_zero()).unwrap();
        a.swap(col, pivot);
        let pivot_row = a[col].clone();
        for (row, line) in a.iter_mut().enumerate() {
            if row != col && !line[col].is_zero() {
                let f = &line[col] / &pivot_row[col];
                for (x, p) in line[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
            }
        }
    }
    &a[n - 1][n] / &a[n - 1][n - 1]
}

#[test]
fn closed_form_matches_dense_solve() {
    assert_eq!(exact_extinction_complete_f64(2, 1.0).unwrap(), 3.0);
    assert_eq!(exact_extinction_complete_f64(3, 1.0).unwrap(), 11.0);
    for n in 2..=12 {
        for r in [1, 2, 5] {
            let r = BigRational::from_integer(r.into());
            assert_eq!(exact_extinction_complete(n, &r).unwrap(), dense_extinction(n, &r), "n={n} r={r}");
        }
    }
}

#[test]
fn complete_graph_monte_carlo_matches_exact() {
    let policy = builtin_policy(PolicyKind::MaxDegreeInfected, None).unwrap();
    for n in 2..=4 {
        let g = generate(GraphKind::Complete, n, None).unwrap();
        for r in [1.0, 2.0] {
            let est = estimate_extinction(
                &g,
                g.vertices(),
                &policy,
                r,
                20_000,
                11,
                SimCaps::default(),
                Execution::default(),
            )
            .unwrap();
            assert_eq!(est.censored, 0);
            let exact = exact_extinction_complete_f64(n, r).unwrap();
            assert!(est.as_mean().unwrap().within(exact, 3.0), "n={n} r={r} {est:?}");
        }
    }
}

#[test]
fn every_policy_yields_legal_reproducible_traces() {
    let g = generate(GraphKind::Grid { rows: 2 }, 8, None).unwrap();
    let table = Arc::new(ResilienceTable::build(&g).unwrap());
    let caps = SimCaps {
        max_time: 50.0,
        max_events: 20_000,
    };
    for kind in PolicyKind::ALL {
        let policy = builtin_policy(kind, Some(table.clone())).unwrap();
        for seed in 0..3 {
            let a = simulate(&g, NodeSet::from_vertices([0, 5]), &policy, 3.0, seed, caps).unwrap();
            validate_trace(&g, &a).unwrap_or_else(|e| panic!("{kind}: {e}"));
            let b = simulate(&g, NodeSet::from_vertices([0, 5]), &policy, 3.0, seed, caps).unwrap();
            assert_eq!(a.to_string(), b.to_string());
        }
    }
}

#[test]
fn without_curing_the_infection_only_grows() {
    let g = generate(GraphKind::Cycle, 7, None).unwrap();
    let none = builtin_policy(PolicyKind::None, None).unwrap();
    let caps = SimCaps {
        max_time: 100.0,
        ..SimCaps::default()
    };
    for seed in 0..5 {
        let t = simulate(&g, NodeSet::singleton(3), &none, 4.0, seed, caps).unwrap();
        assert!(t.is_censored());
        assert!(t.events.iter().all(|e| e.kind == EventKind::Infect));
        assert_eq!(t.final_infected, g.vertices());
    }
}

#[test]
fn empty_start_is_extinct_immediately() {
    let g = generate(GraphKind::Star, 5, None).unwrap();
    let p = builtin_policy(PolicyKind::DegreeProportional, None).unwrap();
    let t = simulate(&g, NodeSet::EMPTY, &p, 1.0, 0, SimCaps::default()).unwrap();
    assert_eq!(t.tau(), Some(0.0));
    assert!(t.events.is_empty());
}
