//! Property suites over exhaustive and sampled graph sets, and over the
//! random-walk closed forms.
//!
//! Every property is tallied as checked, vacuous (its premise did not hold
//! for that instance) or failed; the first failure in enumeration order is
//! kept as a counterexample. The cut function used by the suites can be
//! replaced, which is how the fault-injection tests corrupt it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use rand::Rng;

use crate::bounds::{
    estimate_up_probability, exact_hitting_time, random_walk_bound_expr, theorem4_bound,
    gambler_up_probability, BirthDeathChain, BoundInputs, WalkParams,
};
use crate::crusade::{
    improvement_bags, optimal_crusade, oracle_resilience, oracle_resilience_all, resilience,
    EngineError, ResilienceTable, ORACLE_MAX_N,
};
use crate::exec::Execution;
use crate::graph::{generate, Connectivity, Graph, GraphKind};
use crate::nodeset::NodeSet;
use crate::rng;

/// Replacement cut function for fault injection.
pub type CutFn = dyn Fn(&Graph, NodeSet) -> usize + Sync;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Props,
    Lemmas,
    Oracle,
    Walk,
    All,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::Props => "props",
            Scope::Lemmas => "lemmas",
            Scope::Oracle => "oracle",
            Scope::Walk => "walk",
            Scope::All => "all",
        }
    }

    pub fn includes(self, other: Scope) -> bool {
        self == Scope::All || self == other
    }

    fn needs_graphs(self) -> bool {
        self != Scope::Walk
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Scope::Props, Scope::Lemmas, Scope::Oracle, Scope::Walk, Scope::All]
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown scope '{s}' (props, lemmas, oracle, walk, all)"))
    }
}

macro_rules! properties {
    ($($variant:ident => $name:literal, $scope:ident;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq)]
        pub enum Property {
            $($variant,)*
        }

        impl Property {
            pub const ALL: &'static [Property] = &[$(Property::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Property::$variant => $name,)*
                }
            }

            pub fn scope(self) -> Scope {
                match self {
                    $(Property::$variant => Scope::$scope,)*
                }
            }
        }
    };
}

properties! {
    CutSubadditive => "prop1_i_subadditive", Props;
    CutSubmodular => "prop1_ii_submodular", Props;
    CutRange => "prop1_iii_range", Props;
    CutLipschitz => "prop1_iv_lipschitz", Props;
    CutSymmetric => "cut_complement_symmetry", Props;
    GammaZero => "gamma_zero_iff_at_most_one", Lemmas;
    Lemma1Monotone => "lemma1_i_monotone", Lemmas;
    Lemma1Smooth => "lemma1_ii_smooth", Lemmas;
    Lemma2 => "lemma2_improvement_cut", Lemmas;
    ImprovementBags => "improvement_bags_definition", Lemmas;
    Lemma3Upper => "lemma3_i_upper", Lemmas;
    Lemma3Room => "lemma3_ii_room", Lemmas;
    Lemma3Lower => "lemma3_iii_lower", Lemmas;
    Lemma4 => "lemma4_cut", Lemmas;
    SlackAtLeastTwo => "slack_at_least_two", Lemmas;
    CutwidthRange => "cutwidth_at_most_half_n_delta", Lemmas;
    Theorem1 => "theorem1_gamma_v_equals_w", Oracle;
    OracleEquivalence => "oracle_equivalence", Oracle;
    SingleBag => "single_bag_resilience", Oracle;
    BellmanNeighbors => "bellman_neighbors", Oracle;
    BellmanFull => "bellman_full", Oracle;
    OptimalCrusade => "optimal_crusade_certificate", Oracle;
    UpProbability => "upprob_monte_carlo", Walk;
    LowerRandom => "lowerrandom_below_exact", Walk;
    Regeneration => "regeneration_below_exact", Walk;
    Theorem4Identity => "theorem4_walk_identity", Walk;
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub checked: u64,
    pub vacuous: u64,
    pub failed: u64,
    pub counterexample: Option<String>,
}

impl Tally {
    fn merge(&mut self, other: &Tally) {
        self.checked += other.checked;
        self.vacuous += other.vacuous;
        self.failed += other.failed;
        if self.counterexample.is_none() {
            self.counterexample.clone_from(&other.counterexample);
        }
    }

    pub fn status(&self) -> &'static str {
        if self.failed > 0 {
            "FAIL"
        } else if self.checked == 0 {
            "VACUOUS"
        } else {
            "PASS"
        }
    }
}

/// Per-property tallies for one suite run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    scope: Scope,
    tallies: Vec<Tally>,
    pub graphs: u64,
}

impl VerifyReport {
    pub fn new(scope: Scope) -> Self {
        VerifyReport {
            scope,
            tallies: vec![Tally::default(); Property::ALL.len()],
            graphs: 0,
        }
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    pub fn tally(&self, p: Property) -> &Tally {
        &self.tallies[p as usize]
    }

    /// Properties covered by the scope, with their tallies.
    pub fn entries(&self) -> impl Iterator<Item = (Property, &Tally)> {
        Property::ALL
            .iter()
            .filter(|p| self.scope.includes(p.scope()))
            .map(|&p| (p, self.tally(p)))
    }

    /// True when nothing failed; vacuous properties count as passing.
    pub fn passed(&self) -> bool {
        self.entries().all(|(_, t)| t.failed == 0)
    }

    pub fn merge(&mut self, other: &VerifyReport) {
        for (mine, theirs) in self.tallies.iter_mut().zip(&other.tallies) {
            mine.merge(theirs);
        }
        self.graphs += other.graphs;
    }

    fn skip(&mut self, p: Property) {
        self.tallies[p as usize].vacuous += 1;
    }

    fn check(&mut self, p: Property, ok: bool, detail: impl FnOnce() -> String) {
        let t = &mut self.tallies[p as usize];
        t.checked += 1;
        if !ok {
            t.failed += 1;
            if t.counterexample.is_none() {
                t.counterexample = Some(detail());
            }
        }
    }
}

/// One line per property:
/// `<name> <PASS|FAIL|VACUOUS> checked=<k> vacuous=<k> failed=<k> [counterexample: ..]`.
impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, t) in self.entries() {
            write!(
                f,
                "{} {} checked={} vacuous={} failed={}",
                p.name(),
                t.status(),
                t.checked,
                t.vacuous,
                t.failed
            )?;
            if let Some(c) = &t.counterexample {
                write!(f, " counterexample: {c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Graph sets and Monte Carlo sizes for [`run_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    /// Every connected labeled graph with `1..=exhaustive_max_n` vertices.
    pub exhaustive_max_n: usize,
    /// Seeded connected Erdős–Rényi graphs, sizes cycled from `random_sizes`.
    pub random_graphs: usize,
    pub random_sizes: Vec<usize>,
    pub seed: u64,
    /// Runs per grid point of the hitting-probability check.
    pub walk_runs: u64,
    /// Random input tuples for the bound identity.
    pub identity_tuples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            exhaustive_max_n: 6,
            random_graphs: 200,
            random_sizes: vec![7, 8],
            seed: 42,
            walk_runs: 100_000,
            identity_tuples: 100,
        }
    }
}

const ER_DENSITIES: [f64; 3] = [0.3, 0.5, 0.7];

/// The `i`-th sampled graph of the suite: size `sizes[i % len]`, density
/// cycled from `{0.3, 0.5, 0.7}`, generator seed `seed + i`.
pub fn sampled_graph(cfg: &SuiteConfig, i: usize) -> Result<Graph, crate::graph::GraphError> {
    let n = cfg.random_sizes[i % cfg.random_sizes.len()];
    let p = ER_DENSITIES[(i / cfg.random_sizes.len()) % ER_DENSITIES.len()];
    generate(GraphKind::ErdosRenyi { p }, n, Some(cfg.seed.wrapping_add(i as u64)))
}

fn pair_count(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// Runs the suites selected by `scope`. `cut` replaces the graph's own cut
/// function in every check that reads cuts.
pub fn run_suite(
    scope: Scope,
    cfg: &SuiteConfig,
    cut: Option<&CutFn>,
    exec: Execution,
) -> Result<VerifyReport, EngineError> {
    let mut report = VerifyReport::new(scope);
    if scope.needs_graphs() {
        for n in 1..=cfg.exhaustive_max_n {
            if n > ORACLE_MAX_N {
                return Err(EngineError::SizeCap { n, cap: ORACLE_MAX_N });
            }
            let masks = 1u64 << pair_count(n);
            const CHUNK: u64 = 512;
            let chunks = masks.div_ceil(CHUNK);
            let parts = exec.map_indexed(chunks, |c| {
                let mut part = VerifyReport::new(scope);
                for mask in c * CHUNK..((c + 1) * CHUNK).min(masks) {
                    if let Ok(g) = Graph::from_pair_mask(n, mask, Connectivity::Required) {
                        part.merge(&verify_graph(&g, scope, cut)?);
                    }
                }
                Ok::<_, EngineError>(part)
            });
            for part in parts {
                report.merge(&part?);
            }
        }
        let parts = exec.map_indexed(cfg.random_graphs as u64, |i| {
            let g = sampled_graph(cfg, i as usize)?;
            verify_graph(&g, scope, cut)
        });
        for part in parts {
            report.merge(&part?);
        }
    }
    if scope.includes(Scope::Walk) {
        report.merge(&walk_suite(cfg, exec));
    }
    Ok(report)
}

fn describe(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("graph(n={} edges={})", g.n(), edges.join(","))
}

/// Graph properties selected by `scope` on one connected graph with at most
/// [`ORACLE_MAX_N`] vertices.
pub fn verify_graph(g: &Graph, scope: Scope, cut: Option<&CutFn>) -> Result<VerifyReport, EngineError> {
    if g.n() > ORACLE_MAX_N {
        return Err(EngineError::SizeCap {
            n: g.n(),
            cap: ORACLE_MAX_N,
        });
    }
    let mut report = VerifyReport::new(scope);
    report.graphs = 1;
    let n = g.n();
    let size = 1usize << n;
    let cuts: Vec<i64> = (0..size)
        .map(|m| {
            let set = NodeSet::from_bits(m as u64);
            cut.map_or_else(|| g.cut(set), |f| f(g, set)) as i64
        })
        .collect();
    let delta = g.max_degree() as i64;
    if scope.includes(Scope::Props) {
        cut_properties(g, &cuts, delta, &mut report);
    }
    if scope.includes(Scope::Lemmas) || scope.includes(Scope::Oracle) {
        let table = ResilienceTable::build(g)?;
        if scope.includes(Scope::Lemmas) {
            lemma_properties(g, &table, &cuts, &mut report);
        }
        if scope.includes(Scope::Oracle) {
            oracle_properties(g, &table, &cuts, &mut report)?;
        }
    }
    Ok(report)
}

fn cut_properties(g: &Graph, cuts: &[i64], delta: i64, report: &mut VerifyReport) {
    let n = g.n();
    let full = g.vertices();
    let c = |s: NodeSet| cuts[s.bits() as usize];
    for a in full.subsets() {
        let size = a.len() as i64;
        report.check(
            Property::CutRange,
            c(a) >= 0 && c(a) <= size.min(n as i64 - size) * delta,
            || format!("{} A={a} cut={} delta={delta}", describe(g), c(a)),
        );
        let rest = a.complement(n);
        report.check(Property::CutSymmetric, c(a) == c(rest), || {
            format!("{} A={a} cut(A)={} cut(V-A)={}", describe(g), c(a), c(rest))
        });
        for b in full.subsets() {
            let joined = c(a.union(b));
            let ok = joined <= c(a) + c(b) && c(a) + c(b) <= c(a) + delta * b.len() as i64;
            report.check(Property::CutSubadditive, ok, || {
                format!(
                    "{} A={a} B={b} cut(A|B)={joined} cut(A)={} cut(B)={} delta={delta}",
                    describe(g),
                    c(a),
                    c(b)
                )
            });
            let moved = a.symmetric_difference(b).len() as i64;
            report.check(
                Property::CutLipschitz,
                (c(a) - c(b)).abs() <= delta * moved,
                || format!("{} A={a} B={b} cut(A)={} cut(B)={}", describe(g), c(a), c(b)),
            );
        }
    }
    // A ⊆ B, v ∈ A: c(A-v) - c(A) <= c(B-v) - c(B)
    for b in full.subsets() {
        for a in b.subsets() {
            for v in a {
                let small = c(a.without(v)) - c(a);
                let large = c(b.without(v)) - c(b);
                report.check(Property::CutSubmodular, small <= large, || {
                    format!("{} A={a} B={b} v={v} drop(A)={small} drop(B)={large}", describe(g))
                });
            }
        }
    }
}

fn lemma_properties(g: &Graph, table: &ResilienceTable, cuts: &[i64], report: &mut VerifyReport) {
    let n = g.n() as i64;
    let full = g.vertices();
    let delta = g.max_degree() as i64;
    let w = table.cutwidth() as i64;
    let gamma = |s: NodeSet| table.gamma(s) as i64;
    let c = |s: NodeSet| cuts[s.bits() as usize];
    // ΔE = Δ(n+2) - 2W keeps every comparison below in integers.
    let delta_e = delta * (n + 2) - 2 * w;

    report.check(Property::CutwidthRange, 2 * w <= n * delta, || {
        format!("{} W={w} delta={delta}", describe(g))
    });
    match table.slack() {
        Some(e) => report.check(Property::SlackAtLeastTwo, e >= 2.into(), || {
            format!("{} E={e}", describe(g))
        }),
        None => report.skip(Property::SlackAtLeastTwo),
    }

    let mut members = Vec::new();
    let lemma34 = delta >= 1 && w >= delta;
    for a in full.subsets() {
        let ga = gamma(a);
        let size = a.len() as i64;
        report.check(Property::GammaZero, (ga == 0) == (a.len() <= 1), || {
            format!("{} A={a} gamma={ga}", describe(g))
        });
        for b in full.subsets().filter(|&b| a.is_subset(b)) {
            report.check(Property::Lemma1Monotone, ga <= gamma(b), || {
                format!("{} A={a} B={b} gamma(A)={ga} gamma(B)={}", describe(g), gamma(b))
            });
        }
        for v in a.complement(g.n()) {
            let up = gamma(a.with(v));
            report.check(Property::Lemma1Smooth, up <= ga + delta, || {
                format!("{} A={a} v={v} gamma(A)={ga} gamma(A+v)={up} delta={delta}", describe(g))
            });
        }

        let improves = a.iter().any(|v| gamma(a.without(v)) < ga);
        if improves {
            members.push(a);
            report.check(Property::Lemma2, c(a) >= ga - delta, || {
                format!("{} A={a} cut={} gamma={ga} delta={delta}", describe(g), c(a))
            });
        } else {
            report.skip(Property::Lemma2);
        }

        if !lemma34 {
            for p in [Property::Lemma3Upper, Property::Lemma3Room, Property::Lemma3Lower, Property::Lemma4] {
                report.skip(p);
            }
            continue;
        }
        report.check(Property::Lemma3Upper, ga <= size * delta, || {
            format!("{} A={a} gamma={ga} delta={delta}", describe(g))
        });
        if ga < w {
            report.check(Property::Lemma3Room, w <= (n - size) * delta, || {
                format!("{} A={a} gamma={ga} W={w} delta={delta}", describe(g))
            });
            report.check(Property::Lemma3Lower, ga >= delta * size - delta_e, || {
                format!(
                    "{} A={a} gamma={ga} delta={delta} W={w} (needs gamma >= delta*|A| - {delta_e})",
                    describe(g)
                )
            });
        } else {
            report.skip(Property::Lemma3Room);
            report.skip(Property::Lemma3Lower);
        }
        if 0 < ga && ga < w {
            let floor = ga - 2 * delta_e - 4 * delta;
            report.check(Property::Lemma4, c(a) >= floor, || {
                format!("{} A={a} cut={} gamma={ga} bound={floor}", describe(g), c(a))
            });
        } else {
            report.skip(Property::Lemma4);
        }
    }
    let listed = improvement_bags(table);
    report.check(Property::ImprovementBags, listed == members, || {
        format!("{} listed={} expected={}", describe(g), listed.len(), members.len())
    });
}

fn oracle_properties(
    g: &Graph,
    table: &ResilienceTable,
    cuts: &[i64],
    report: &mut VerifyReport,
) -> Result<(), EngineError> {
    let full = g.vertices();
    let w = table.cutwidth();
    let gamma = |s: NodeSet| table.gamma(s) as i64;
    let c = |s: NodeSet| cuts[s.bits() as usize];

    let forward = oracle_resilience(g, full)?;
    report.check(Property::Theorem1, forward == w, || {
        format!("{} oracle gamma(V)={forward} W={w}", describe(g))
    });

    let oracle = oracle_resilience_all(g)?;
    for a in full.subsets() {
        let (got, want) = (table.gamma(a), oracle[a.bits() as usize]);
        report.check(Property::OracleEquivalence, got == want, || {
            format!("{} A={a} table={got} oracle={want}", describe(g))
        });
        let single = resilience(g, a, table.monotone())?;
        report.check(Property::SingleBag, single == got, || {
            format!("{} A={a} single={single} table={got}", describe(g))
        });

        let ga = gamma(a);
        let step = |b: NodeSet| c(b).max(gamma(b));
        let neighbours = a
            .complement(g.n())
            .iter()
            .map(|v| a.with(v))
            .chain(a.iter().map(|v| a.without(v)));
        let ok = neighbours.clone().all(|b| ga <= step(b));
        report.check(Property::BellmanNeighbors, ok, || {
            let b = neighbours.clone().find(|&b| ga > step(b)).expect("violation");
            format!("{} A={a} B={b} gamma(A)={ga} max(cut,gamma)(B)={}", describe(g), step(b))
        });
        let mut best = i64::MAX;
        for added in a.complement(g.n()).subsets() {
            let base = a.union(added);
            best = best.min(step(base));
            for v in a {
                best = best.min(step(base.without(v)));
            }
        }
        if a.is_empty() {
            report.skip(Property::BellmanFull);
        } else {
            report.check(Property::BellmanFull, best == ga, || {
                format!("{} A={a} gamma={ga} min over first steps={best}", describe(g))
            });
        }

        if a.is_empty() {
            report.skip(Property::OptimalCrusade);
            continue;
        }
        let crusade = optimal_crusade(g, a, table.monotone())?;
        let bags = crusade.bags();
        let legal = bags[0] == a
            && crusade.end().is_empty()
            && crusade.width() as i64 == ga
            && bags.windows(2).all(|s| s[0] != s[1] && s[0].difference(s[1]).len() <= 1)
            && crusade.is_monotone_after_first()
            && bags.iter().all(|&b| gamma(b) <= ga);
        report.check(Property::OptimalCrusade, legal, || {
            let shown: Vec<String> = bags.iter().map(|b| b.to_string()).collect();
            format!(
                "{} A={a} gamma={ga} width={} crusade={}",
                describe(g),
                crusade.width(),
                shown.join(" ")
            )
        });
    }
    Ok(())
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// `(1 − ρ^M) / (1 − ρ^L)` in exact arithmetic, `ρ = λ/μ ≠ 1`.
fn exact_up_probability(lambda: &BigRational, mu: &BigRational, start: u32, level: u32) -> BigRational {
    let rho = lambda / mu;
    let one = BigRational::one();
    let pow = |k: u32| Pow::pow(&rho, BigInt::from(k));
    (&one - pow(start)) / (&one - pow(level))
}

const WALK_RATIOS: [f64; 3] = [0.5, 1.0, 2.0];
const WALK_MAX_LEVEL: u32 = 10;
const DOWN_RATES: [f64; 3] = [0.25, 0.5, 1.0];
const UP_RATES: [f64; 3] = [1.5, 2.0, 4.0];
const LEVELS: std::ops::RangeInclusive<usize> = 2..=20;

/// Hitting probabilities against Monte Carlo, the reflected-walk lower
/// bound and regeneration estimate against the exact hitting time, and the
/// bound identity on random inputs.
pub fn walk_suite(cfg: &SuiteConfig, exec: Execution) -> VerifyReport {
    let mut report = VerifyReport::new(Scope::Walk);

    // Grid: λ/μ with μ = 1, 1 <= M < L <= 10. Cell k uses seed `seed + k`.
    let mut cells = Vec::new();
    for &ratio in &WALK_RATIOS {
        for level in 2..=WALK_MAX_LEVEL {
            for start in 1..level {
                cells.push(WalkParams::new(ratio, 1.0, level, start).expect("valid grid"));
            }
        }
    }
    for (k, w) in cells.iter().enumerate() {
        let exact = gambler_up_probability(w);
        let est = estimate_up_probability(w, cfg.walk_runs, cfg.seed.wrapping_add(k as u64), exec)
            .expect("runs >= 1");
        report.check(Property::UpProbability, est.within(exact, 3.0), || {
            format!(
                "lambda={} mu={} M={} L={} exact={exact} estimate={} se={:?}",
                w.lambda, w.mu, w.start, w.level, est.mean, est.std_error
            )
        });
    }

    for &lambda in &DOWN_RATES {
        for &mu in &UP_RATES {
            let (lam, m) = (rational(lambda), rational(mu));
            for level in LEVELS {
                let chain = BirthDeathChain::reflecting_walk(&lam, &m, level);
                let exact = exact_hitting_time(&chain, level - 1).expect("0 reachable");
                let bound = random_walk_bound_expr(&lam, &m, &BigRational::from_integer(level.into()))
                    .expect("lambda < mu")
                    .exact()
                    .expect("small exponent");
                report.check(Property::LowerRandom, bound <= exact, || {
                    format!("lambda={lambda} mu={mu} L={level} bound={bound} exact={exact}")
                });
                let p = exact_up_probability(&lam, &m, level as u32 - 1, level as u32);
                let regen = &p / ((BigRational::one() - &p) * &lam);
                report.check(Property::Regeneration, bound <= regen && regen <= exact, || {
                    format!(
                        "lambda={lambda} mu={mu} L={level} bound={bound} p/((1-p)lambda)={regen} exact={exact}"
                    )
                });
            }
        }
    }

    let mut rng = rng::stream(cfg.seed, u64::MAX);
    for _ in 0..cfg.identity_tuples {
        let (inputs, detail) = random_bound_inputs(&mut rng);
        let three = BigRational::from_integer(3.into());
        let delta = BigRational::from_integer(inputs.max_degree.into());
        let gamma0 = BigRational::from_integer(inputs.gamma0.into());
        let mu = &gamma0 / &three
            - (&three * &inputs.slack + BigRational::from_integer(4.into())) * &delta;
        let level = &gamma0 / (&three * &delta);
        let theorem = theorem4_bound(&inputs);
        let walk = random_walk_bound_expr(&inputs.budget, &mu, &level);
        let ok = matches!((theorem.bound(), &walk), (Some(t), Ok(w)) if t == w);
        report.check(Property::Theorem4Identity, ok, || {
            format!("{detail} theorem={theorem:?} walk={walk:?}")
        });
    }
    report
}

/// Random valid inputs strictly above the theorem's threshold.
fn random_bound_inputs<R: Rng>(rng: &mut R) -> (BoundInputs, String) {
    let delta: u64 = rng.random_range(1..=20);
    let e = BigRational::new(rng.random_range(2 * 7..=12 * 7).into(), BigInt::from(7));
    let r = BigRational::new(rng.random_range(1..=200).into(), BigInt::from(rng.random_range(1..=20)));
    let probe = BoundInputs::new(0, delta, e.clone(), r.clone()).expect("valid");
    let floor = probe.threshold().floor().to_integer();
    let extra: u64 = rng.random_range(1..=1000);
    let gamma0 = u64::try_from(floor).expect("small") + extra;
    let detail = format!("gamma0={gamma0} delta={delta} E={e} r={r}");
    let inputs = BoundInputs::new(gamma0, delta, e, r).expect("valid");
    debug_assert!(BigRational::from_integer(gamma0.into()) > inputs.threshold());
    (inputs, detail)
}
