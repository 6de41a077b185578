//! Exhaustive and randomized verification drivers.
//!
//! [`sweep_tree`] decides whether every κ-coloring of one tree synchronizes
//! (exhaustively or by seeded sampling), [`phase_transition_table`] runs
//! that question across all small tree shapes on both sides of the
//! max-degree threshold, and the `check_*` suites validate the structural
//! facts the theory leans on — monotone width convergence, the branch
//! alignment lemma, degree-bounded blinking, and eight-color stars — over
//! seeded random instance populations, recording every violation with
//! enough data to replay it.
//!
//! Determinism: instance `i` of a seeded run draws from an independent
//! stream `i` of a counter-based generator, so reports are byte-identical
//! across thread counts and runs.

use crate::construct::{counterexample_for_kappa, ConstructError};
use crate::dynamics::{width, Configuration, DynamicsError};
use crate::graph::{build_graph, decode_prufer, enumerate_tree_classes, Graph, GraphError};
use crate::io::{edge_code, parse_coloring, parse_edge_code, write_coloring};
use crate::orbit::{check_blinks_infinitely, find_orbit, OrbitEngine, OrbitError, OrbitSummary};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

/// Exhaustive sweeps refuse to start above this many colorings.
pub const EXHAUSTIVE_GUARD: u64 = 100_000_000;
/// Per-coloring step budget: min(κ^n, this cap). Below the cap the budget
/// equals the state-space size and can never be exhausted.
pub const ORBIT_BUDGET_CAP: u64 = 1_000_000;
/// Reports keep at most this many explicit counterexamples or violations.
pub const RECORD_CAP: usize = 100;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HarnessError {
    #[error("exhaustive sweep of {kappa}^{n} colorings exceeds the 10^8 guard")]
    ExhaustiveGuard { kappa: u32, n: usize },
    #[error("phase table including kappa = 6 is guarded at n_max ≤ 8, got {0}")]
    PhaseTableGuard(usize),
    #[error("exhaustive star coverage is guarded at ≤ 5 leaves, got {0}")]
    StarGuard(usize),
    #[error("at least one trial is required")]
    ZeroTrials,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Io(#[from] crate::io::IoError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// How a sweep covers the coloring space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Every one of the κ^n colorings, in index order.
    Exhaustive,
    /// `sample` colorings drawn uniformly, one generator stream per index.
    Random { sample: u64, seed: u64 },
}

/// Aggregate verdict of one (tree, κ) sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub kappa: u32,
    /// Edge code of the swept tree (see [`crate::io::edge_code`]).
    pub tree: String,
    pub colorings_tested: u64,
    pub all_synchronized: bool,
    /// Non-synchronizing initial colorings, in index order, capped at
    /// [`RECORD_CAP`]; the full count is `counterexample_total`.
    pub counterexamples: Vec<String>,
    pub counterexample_total: u64,
    /// Colorings whose orbit exceeded the step budget (possible only in
    /// random mode; exhaustive mode treats exhaustion as a hard error).
    pub skipped: u64,
    pub max_transient: u64,
    pub max_period: u64,
}

/// One verification stream per instance index: reseeding by stream keeps
/// every instance's draws independent of how work is chunked.
pub(crate) fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// κ^n saturating at `cap + 1` (enough to compare against any guard ≤ cap).
fn pow_saturating(kappa: u32, n: usize, cap: u64) -> u64 {
    let mut out: u64 = 1;
    for _ in 0..n {
        out = out.saturating_mul(u64::from(kappa));
        if out > cap {
            return cap + 1;
        }
    }
    out
}

fn orbit_budget(kappa: u32, n: usize) -> u64 {
    pow_saturating(kappa, n, ORBIT_BUDGET_CAP).min(ORBIT_BUDGET_CAP)
}

/// Digit `v` of `index` in base κ: the coloring enumeration order.
fn coloring_from_index(mut index: u64, kappa: u32, states: &mut [u8]) {
    for s in states.iter_mut() {
        *s = (index % u64::from(kappa)) as u8;
        index /= u64::from(kappa);
    }
}

fn random_coloring<R: Rng + ?Sized>(rng: &mut R, kappa: u32, states: &mut [u8]) {
    for s in states.iter_mut() {
        *s = rng.gen_range(0..kappa) as u8;
    }
}

/// Uniform random labeled tree via a uniform Prüfer sequence.
pub(crate) fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    match n {
        1 => build_graph(1, &[]).unwrap(),
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            decode_prufer(&seq)
        }
    }
}

/// Uniform-density random connected graph: edges independently with a
/// drawn probability, rejected until connected.
pub(crate) fn random_connected_graph<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    let p = rng.gen_range(0.25..0.9);
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        if let Ok(g) = build_graph(n, &edges) {
            return g;
        }
    }
}

#[derive(Default)]
struct SweepChunk {
    tested: u64,
    nonsync_total: u64,
    examples: Vec<String>,
    skipped: u64,
    max_transient: u64,
    max_period: u64,
}

fn sweep_chunk(
    g: &Graph,
    kappa: u32,
    mode: SweepMode,
    budget: u64,
    start: u64,
    end: u64,
) -> Result<SweepChunk, HarnessError> {
    let mut engine = OrbitEngine::new();
    let mut states = vec![0u8; g.n()];
    let mut out = SweepChunk::default();
    for index in start..end {
        match mode {
            SweepMode::Exhaustive => coloring_from_index(index, kappa, &mut states),
            SweepMode::Random { seed, .. } => {
                random_coloring(&mut rng_for(seed, index), kappa, &mut states)
            }
        }
        match engine.run(g, kappa, &states, budget) {
            Ok(raw) => {
                out.tested += 1;
                out.max_transient = out.max_transient.max(raw.transient);
                out.max_period = out.max_period.max(raw.period);
                if !raw.synchronized {
                    out.nonsync_total += 1;
                    if out.examples.len() < RECORD_CAP {
                        out.examples.push(write_coloring(&states));
                    }
                }
            }
            Err(OrbitError::BudgetExhausted { .. }) => match mode {
                // An unresolved orbit would silently weaken an exhaustive
                // verdict, so it is a hard failure there.
                SweepMode::Exhaustive => {
                    return Err(HarnessError::Orbit(OrbitError::BudgetExhausted {
                        max_steps: budget,
                    }))
                }
                SweepMode::Random { .. } => {
                    out.tested += 1;
                    out.skipped += 1;
                }
            },
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn sweep_impl(
    g: &Graph,
    kappa: u32,
    mode: SweepMode,
    parallel: bool,
) -> Result<SweepReport, HarnessError> {
    // Validate κ once up front; the hot loop runs on raw states.
    Configuration::new(kappa, vec![])?;
    let n = g.n();
    let total = match mode {
        SweepMode::Exhaustive => {
            let space = pow_saturating(kappa, n, EXHAUSTIVE_GUARD);
            if space > EXHAUSTIVE_GUARD {
                return Err(HarnessError::ExhaustiveGuard { kappa, n });
            }
            space
        }
        SweepMode::Random { sample, .. } => sample,
    };
    let budget = orbit_budget(kappa, n);
    const CHUNK: u64 = 4096;
    let bounds: Vec<(u64, u64)> = (0..total)
        .step_by(CHUNK as usize)
        .map(|s| (s, (s + CHUNK).min(total)))
        .collect();
    let chunks: Vec<Result<SweepChunk, HarnessError>> = if parallel {
        bounds
            .par_iter()
            .map(|&(s, e)| sweep_chunk(g, kappa, mode, budget, s, e))
            .collect()
    } else {
        bounds
            .iter()
            .map(|&(s, e)| sweep_chunk(g, kappa, mode, budget, s, e))
            .collect()
    };
    let mut report = SweepReport {
        kappa,
        tree: edge_code(g),
        colorings_tested: 0,
        all_synchronized: true,
        counterexamples: Vec::new(),
        counterexample_total: 0,
        skipped: 0,
        max_transient: 0,
        max_period: 0,
    };
    for chunk in chunks {
        let c = chunk?;
        report.colorings_tested += c.tested;
        report.counterexample_total += c.nonsync_total;
        report.skipped += c.skipped;
        report.max_transient = report.max_transient.max(c.max_transient);
        report.max_period = report.max_period.max(c.max_period);
        for e in c.examples {
            if report.counterexamples.len() < RECORD_CAP {
                report.counterexamples.push(e);
            }
        }
    }
    report.all_synchronized = report.counterexample_total == 0;
    Ok(report)
}

/// Sweep every (or a seeded sample of) κ-coloring of `g` through orbit
/// detection, in parallel. Exhaustive mode is guarded at κ^n ≤ 10^8.
pub fn sweep_tree(g: &Graph, kappa: u32, mode: SweepMode) -> Result<SweepReport, HarnessError> {
    sweep_impl(g, kappa, mode, true)
}

/// Single-threaded variant of [`sweep_tree`]; produces an identical report
/// for identical inputs, which the test suite asserts.
pub fn sweep_tree_serial(
    g: &Graph,
    kappa: u32,
    mode: SweepMode,
) -> Result<SweepReport, HarnessError> {
    sweep_impl(g, kappa, mode, false)
}

/// One row of the phase-transition table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseTableRow {
    pub kappa: u32,
    pub tree_code: String,
    pub n: usize,
    pub max_degree: usize,
    pub colorings: u64,
    pub all_sync: bool,
    /// A non-synchronizing coloring, when one exists.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseTable {
    pub rows: Vec<PhaseTableRow>,
}

impl PhaseTable {
    /// CSV rendering: `kappa,tree_code,n,max_degree,colorings,all_sync,witness`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kappa,tree_code,n,max_degree,colorings,all_sync,witness\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.kappa,
                r.tree_code,
                r.n,
                r.max_degree,
                r.colorings,
                r.all_sync,
                // The witness is a comma-separated coloring, so it is the
                // one field that needs quoting.
                r.witness
                    .as_deref()
                    .map(|w| format!("\"{w}\""))
                    .unwrap_or_default()
            ));
        }
        out
    }
}

/// Build the synchronization table across the max-degree threshold: for
/// each κ ≤ 6 in `kappas`, exhaustively sweep every isomorphism class of
/// tree on ≤ `n_max` vertices with max degree < κ; for each κ ≥ 7, run the
/// catalogued counterexample and report it as a non-synchronizing witness
/// row. Guarded at n_max ≤ 8 when κ = 6 is requested.
pub fn phase_transition_table(
    n_max: usize,
    kappas: &[u32],
) -> Result<PhaseTable, HarnessError> {
    if kappas.contains(&6) && n_max > 8 {
        return Err(HarnessError::PhaseTableGuard(n_max));
    }
    let mut rows = Vec::new();
    for &kappa in kappas {
        if kappa <= 6 {
            for n in 1..=n_max {
                for g in enumerate_tree_classes(n, kappa as usize - 1)? {
                    let report = sweep_tree(&g, kappa, SweepMode::Exhaustive)?;
                    rows.push(PhaseTableRow {
                        kappa,
                        tree_code: report.tree.clone(),
                        n,
                        max_degree: g.max_degree(),
                        colorings: report.colorings_tested,
                        all_sync: report.all_synchronized,
                        witness: report.counterexamples.first().cloned(),
                    });
                }
            }
        } else {
            let c = counterexample_for_kappa(kappa)?;
            let summary = find_orbit(
                &c.graph,
                &c.coloring,
                orbit_budget(kappa, c.graph.n()),
            )?;
            rows.push(PhaseTableRow {
                kappa,
                tree_code: edge_code(&c.graph),
                n: c.graph.n(),
                max_degree: c.max_degree,
                colorings: 1,
                all_sync: summary.synchronized,
                witness: Some(write_coloring(c.coloring.states())),
            });
        }
    }
    Ok(PhaseTable { rows })
}

/// A recorded failure with everything needed to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationRecord {
    pub kappa: u32,
    /// Edge code of the graph (see [`crate::io::edge_code`]).
    pub graph: String,
    /// Initial coloring in the comma-separated format.
    pub coloring: String,
    pub detail: String,
}

/// Re-run a recorded instance through the public API.
pub fn replay_violation(record: &ViolationRecord) -> Result<OrbitSummary, HarnessError> {
    let g = parse_edge_code(&record.graph)?;
    let x0 = parse_coloring(&record.coloring, record.kappa)?;
    Ok(find_orbit(&g, &x0, orbit_budget(record.kappa, g.n()))?)
}

/// Outcome of one randomized structural suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheckReport {
    pub lemma: String,
    pub instances_tested: u64,
    /// Violations in instance order, capped at [`RECORD_CAP`]; the full
    /// count is `violation_total`.
    pub violations: Vec<ViolationRecord>,
    pub violation_total: u64,
    pub notes: Vec<String>,
}

/// Per-instance result inside a suite, merged in index order.
#[derive(Default)]
struct InstanceOut {
    violations: Vec<ViolationRecord>,
    skipped: bool,
    /// Suite-specific informational counters (meaning fixed per suite).
    info: [u64; 2],
}

fn run_suite<F>(
    lemma: &str,
    trials: u64,
    per_instance: F,
) -> Result<(LemmaCheckReport, [u64; 2], u64), HarnessError>
where
    F: Fn(u64) -> InstanceOut + Sync + Send,
{
    if trials == 0 {
        return Err(HarnessError::ZeroTrials);
    }
    let outs: Vec<InstanceOut> = (0..trials).into_par_iter().map(per_instance).collect();
    let mut report = LemmaCheckReport {
        lemma: lemma.to_string(),
        instances_tested: trials,
        violations: Vec::new(),
        violation_total: 0,
        notes: Vec::new(),
    };
    let mut info = [0u64; 2];
    let mut skipped = 0u64;
    for out in outs {
        report.violation_total += out.violations.len() as u64;
        for v in out.violations {
            if report.violations.len() < RECORD_CAP {
                report.violations.push(v);
            }
        }
        skipped += u64::from(out.skipped);
        info[0] += out.info[0];
        info[1] += out.info[1];
    }
    Ok((report, info, skipped))
}

/// Monotone width convergence: on connected graphs with initial width
/// below κ/2, the width never increases and reaches 0.
///
/// Instances: n ∈ 2..=10, κ ∈ 4..=9, connected random graph, coloring
/// drawn uniformly and redrawn until the width precondition holds.
pub fn check_width_convergence(trials: u64, seed: u64) -> Result<LemmaCheckReport, HarnessError> {
    let (mut report, info, _) = run_suite("width-convergence", trials, |i| {
        let mut rng = rng_for(seed, i);
        let n = rng.gen_range(2..=10);
        let kappa: u32 = rng.gen_range(4..=9);
        let g = random_connected_graph(&mut rng, n);
        let mut states = vec![0u8; n];
        loop {
            random_coloring(&mut rng, kappa, &mut states);
            let x = Configuration::new(kappa, states.clone()).unwrap();
            if 2 * u32::from(width(&x, None).unwrap()) < kappa {
                break;
            }
        }
        let mut out = InstanceOut::default();
        let record = |detail: String| ViolationRecord {
            kappa,
            graph: edge_code(&g),
            coloring: write_coloring(&states),
            detail,
        };
        let mut x = Configuration::new(kappa, states.clone()).unwrap();
        let mut w = width(&x, None).unwrap();
        let mut t: u64 = 0;
        while w != 0 {
            if t >= ORBIT_BUDGET_CAP {
                out.violations
                    .push(record(format!("width still {w} after {t} steps")));
                break;
            }
            x = crate::dynamics::step(&g, &x).unwrap();
            t += 1;
            let w_next = width(&x, None).unwrap();
            if w_next > w {
                out.violations.push(record(format!(
                    "width increased from {w} to {w_next} at step {t}"
                )));
                break;
            }
            w = w_next;
        }
        out.info[0] = t;
        out
    })?;
    report
        .notes
        .push(format!("total convergence steps across instances: {}", info[0]));
    Ok(report)
}

/// Branch alignment and width control: for a branch B (a hub plus its
/// leaves, hanging off a base tree) whose initial branch width satisfies
/// w_B(X₀) < κ/2 − 1:
///
/// (i) some time r in the orbit window has every leaf clockwise-aligned to
/// the hub with w_B(X_r) ≤ w_B(X₀); (ii) w_B(X_t) ≤ w_B(X₀) + 1 at every
/// step through the transient and one period; (iii) from the first aligned
/// time on, no leaf ever pulls the hub; (iv) when deleting the leaves
/// leaves a path, the whole instance synchronizes. The alignment-time
/// bound r ≤ κ·(w_B(X₀)+1) is reported as informational only.
pub fn check_branch_width_lemma(trials: u64, seed: u64) -> Result<LemmaCheckReport, HarnessError> {
    const KAPPAS: [u32; 6] = [6, 7, 8, 9, 10, 12];
    let (mut report, info, skipped) = run_suite("branch-width", trials, |i| {
        let mut rng = rng_for(seed, i);
        let kappa = KAPPAS[rng.gen_range(0..KAPPAS.len())];
        let base_n = rng.gen_range(1..=4);
        let base = random_tree(&mut rng, base_n);
        let hub = base_n;
        let leaves_count = rng.gen_range(1..=4usize);
        let n = base_n + 1 + leaves_count;
        let mut edges = base.edges();
        edges.push((rng.gen_range(0..base_n), hub));
        for l in 0..leaves_count {
            edges.push((hub, hub + 1 + l));
        }
        let g = build_graph(n, &edges).unwrap();
        let branch: Vec<usize> = std::iter::once(hub)
            .chain(hub + 1..n)
            .collect();
        let leaves: Vec<usize> = branch[1..].to_vec();
        let mut states = vec![0u8; n];
        let wb0 = loop {
            random_coloring(&mut rng, kappa, &mut states);
            let x = Configuration::new(kappa, states.clone()).unwrap();
            let wb = width(&x, Some(&branch)).unwrap();
            if 2 * u32::from(wb) < kappa - 2 {
                break u32::from(wb);
            }
        };
        let mut out = InstanceOut::default();
        let x0 = Configuration::new(kappa, states.clone()).unwrap();
        let summary = match find_orbit(&g, &x0, ORBIT_BUDGET_CAP) {
            Ok(s) => s,
            Err(OrbitError::BudgetExhausted { .. }) => {
                out.skipped = true;
                return out;
            }
            Err(_) => unreachable!("validated instance"),
        };
        let record = |detail: String| ViolationRecord {
            kappa,
            graph: edge_code(&g),
            coloring: write_coloring(&states),
            detail,
        };
        let horizon = (summary.transient + summary.period) as usize;
        let mut x = Configuration::new(kappa, states.clone()).unwrap();
        let mut first_aligned: Option<usize> = None;
        let mut r: Option<usize> = None;
        let mut width_ok = true;
        let mut pull_after_aligned: Option<usize> = None;
        for t in 0..horizon {
            let wb = u32::from(width(&x, Some(&branch)).unwrap());
            if wb > wb0 + 1 {
                width_ok = false;
            }
            let aligned = leaves
                .iter()
                .all(|&l| crate::dynamics::clockwise(&x, l, hub));
            if aligned {
                if first_aligned.is_none() {
                    first_aligned = Some(t);
                }
                if r.is_none() && wb <= wb0 {
                    r = Some(t);
                }
            }
            if first_aligned.is_some()
                && pull_after_aligned.is_none()
                && leaves.iter().any(|&l| crate::dynamics::pulls(&g, &x, l, hub))
            {
                pull_after_aligned = Some(t);
            }
            x = crate::dynamics::step(&g, &x).unwrap();
        }
        match r {
            None => out
                .violations
                .push(record("clause i: no aligned time with branch width back at its initial value".into())),
            Some(r) => {
                // Informational: the alignment-time bound with the color
                // count as the multiplier.
                if (r as u64) > u64::from(kappa) * u64::from(wb0 + 1) {
                    out.info[0] = 1;
                }
            }
        }
        if !width_ok {
            out.violations.push(record(format!(
                "clause ii: branch width exceeded {} during the orbit window",
                wb0 + 1
            )));
        }
        if let Some(t) = pull_after_aligned {
            out.violations.push(record(format!(
                "clause iii: a leaf pulled the hub at step {t}, after alignment"
            )));
        }
        // The leaves occupy the contiguous tail hub+1..n, so the
        // leaf-deleted graph H is induced on 0..=hub; connected with all
        // degrees ≤ 2 means H is a path.
        let h_is_path = (0..=hub)
            .all(|v| g.neighbors(v).iter().filter(|&&u| u <= hub).count() <= 2);
        if h_is_path && !summary.synchronized {
            out.violations.push(record(
                "clause iv: leaf-deleted graph is a path but the instance did not synchronize"
                    .into(),
            ));
        }
        out
    })?;
    report.notes.push(format!(
        "alignment-time bound r ≤ κ(w_B+1) exceeded in {} of {} instances (informational)",
        info[0], trials
    ));
    report
        .notes
        .push(format!("skipped {skipped} instances on orbit budget"));
    Ok(report)
}

/// Degree-bounded blinking: every vertex of degree < κ blinks within the
/// detected period. Vertices of degree ≥ κ are exempt and counted in the
/// notes — hubs that never blink are expected there.
pub fn check_degree_blinking(trials: u64, seed: u64) -> Result<LemmaCheckReport, HarnessError> {
    let (mut report, info, skipped) = run_suite("degree-blink", trials, |i| {
        let mut rng = rng_for(seed, i);
        let n = rng.gen_range(2..=10);
        let kappa: u32 = rng.gen_range(3..=12);
        let g = if i % 2 == 0 {
            random_tree(&mut rng, n)
        } else {
            random_connected_graph(&mut rng, n)
        };
        let mut states = vec![0u8; n];
        random_coloring(&mut rng, kappa, &mut states);
        let x0 = Configuration::new(kappa, states.clone()).unwrap();
        let mut out = InstanceOut::default();
        let summary = match find_orbit(&g, &x0, ORBIT_BUDGET_CAP) {
            Ok(s) => s,
            Err(OrbitError::BudgetExhausted { .. }) => {
                out.skipped = true;
                return out;
            }
            Err(_) => unreachable!("validated instance"),
        };
        let blinks = check_blinks_infinitely(&summary);
        for (v, &blinks_v) in blinks.iter().enumerate() {
            if (g.degree(v) as u32) < kappa {
                if !blinks_v {
                    out.violations.push(ViolationRecord {
                        kappa,
                        graph: edge_code(&g),
                        coloring: write_coloring(&states),
                        detail: format!(
                            "vertex {v} has degree {} < kappa but never blinks in the cycle",
                            g.degree(v)
                        ),
                    });
                }
            } else {
                out.info[0] += 1;
                out.info[1] += u64::from(!blinks_v);
            }
        }
        out
    })?;
    report.notes.push(format!(
        "vertices exempt with degree ≥ κ: {} ({} of them never blink)",
        info[0], info[1]
    ));
    report
        .notes
        .push(format!("skipped {skipped} instances on orbit budget"));
    Ok(report)
}

/// Eight-color stars always synchronize: exhaustive over stars with up to
/// `max_leaves_exhaustive` leaves (guarded at 5), plus seeded random
/// samples on 6- and 7-leaf stars.
pub fn check_star_sync_kappa8(
    max_leaves_exhaustive: usize,
    sample: u64,
    seed: u64,
) -> Result<LemmaCheckReport, HarnessError> {
    if max_leaves_exhaustive > 5 {
        return Err(HarnessError::StarGuard(max_leaves_exhaustive));
    }
    let mut report = LemmaCheckReport {
        lemma: "star8".to_string(),
        instances_tested: 0,
        violations: Vec::new(),
        violation_total: 0,
        notes: Vec::new(),
    };
    let mut absorb = |sweep: SweepReport, leaves: usize, mode: &str| {
        report.instances_tested += sweep.colorings_tested;
        report.violation_total += sweep.counterexample_total;
        for coloring in sweep.counterexamples {
            if report.violations.len() < RECORD_CAP {
                report.violations.push(ViolationRecord {
                    kappa: 8,
                    graph: sweep.tree.clone(),
                    coloring,
                    detail: format!("non-synchronizing coloring on the {leaves}-leaf star ({mode})"),
                });
            }
        }
        if sweep.skipped > 0 {
            report
                .notes
                .push(format!("{}-leaf star: {} skipped on budget", leaves, sweep.skipped));
        }
    };
    for leaves in 1..=max_leaves_exhaustive {
        let g = crate::graph::make_star(leaves)?;
        absorb(sweep_tree(&g, 8, SweepMode::Exhaustive)?, leaves, "exhaustive");
    }
    for leaves in [6usize, 7] {
        let g = crate::graph::make_star(leaves)?;
        let mode = SweepMode::Random {
            sample,
            seed: seed ^ ((leaves as u64) << 32),
        };
        absorb(sweep_tree(&g, 8, mode)?, leaves, "sampled");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_star;

    #[test]
    fn exhaustive_path_sweep_synchronizes() {
        let g = build_graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let report = sweep_tree(&g, 3, SweepMode::Exhaustive).unwrap();
        assert_eq!(report.colorings_tested, 81);
        assert!(report.all_synchronized);
        assert!(report.counterexamples.is_empty());
        assert_eq!(report.skipped, 0);
        assert_eq!(report.max_period, 3);
        assert_eq!(report.tree, "0-1;1-2;2-3");
    }

    #[test]
    fn parallel_and_serial_sweeps_agree() {
        let g = build_graph(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        for mode in [
            SweepMode::Exhaustive,
            SweepMode::Random {
                sample: 2000,
                seed: 11,
            },
        ] {
            let a = sweep_tree(&g, 4, mode).unwrap();
            let b = sweep_tree_serial(&g, 4, mode).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn star_with_reachable_hub_freeze_is_caught_exhaustively() {
        // κ=3 on the 3-leaf star: the frozen-hub colorings are in the
        // enumeration, so the sweep must find non-synchronizing orbits.
        let g = make_star(3).unwrap();
        let report = sweep_tree(&g, 3, SweepMode::Exhaustive).unwrap();
        assert_eq!(report.colorings_tested, 81);
        assert!(!report.all_synchronized);
        assert!(!report.counterexamples.is_empty());
        // Every recorded counterexample replays to the same verdict.
        let replayed = replay_violation(&ViolationRecord {
            kappa: 3,
            graph: report.tree.clone(),
            coloring: report.counterexamples[0].clone(),
            detail: String::new(),
        })
        .unwrap();
        assert!(!replayed.synchronized);
    }

    #[test]
    fn random_sweep_on_a_six_star_finds_the_frozen_hub() {
        // Uniform colorings on the 6-leaf star at κ=6 hit hub-freezing
        // configurations at a rate of roughly 1%, so 3000 samples find one
        // with near certainty; the seed pins the outcome exactly.
        let g = make_star(6).unwrap();
        let report = sweep_tree(
            &g,
            6,
            SweepMode::Random {
                sample: 3000,
                seed: 5,
            },
        )
        .unwrap();
        assert_eq!(report.colorings_tested, 3000);
        assert!(!report.all_synchronized);
    }

    #[test]
    fn exhaustive_guard_trips() {
        let g = build_graph(
            11,
            &(0..10).map(|i| (i, i + 1)).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(
            sweep_tree(&g, 6, SweepMode::Exhaustive).unwrap_err(),
            HarnessError::ExhaustiveGuard { kappa: 6, n: 11 }
        );
    }

    #[test]
    fn small_phase_table() {
        let table = phase_transition_table(5, &[3, 4, 7]).unwrap();
        for row in &table.rows {
            match row.kappa {
                3 | 4 => {
                    assert!(row.all_sync, "row {row:?}");
                    assert!(row.max_degree < row.kappa as usize);
                    assert!(row.witness.is_none());
                }
                7 => {
                    assert!(!row.all_sync);
                    assert_eq!(row.n, 5);
                    assert_eq!(row.max_degree, 4);
                    assert!(row.witness.is_some());
                }
                _ => unreachable!(),
            }
        }
        // κ=3 admits only paths: one class per size.
        assert_eq!(table.rows.iter().filter(|r| r.kappa == 3).count(), 5);
        let csv = table.to_csv();
        assert!(csv.starts_with("kappa,tree_code,n,max_degree,colorings,all_sync,witness\n"));
        assert!(csv.contains("\"0,5,6,2,3\""));
    }

    #[test]
    fn phase_table_guard() {
        assert_eq!(
            phase_transition_table(9, &[6]).unwrap_err(),
            HarnessError::PhaseTableGuard(9)
        );
    }

    #[test]
    fn width_convergence_small_run() {
        let report = check_width_convergence(200, 42).unwrap();
        assert_eq!(report.instances_tested, 200);
        assert_eq!(report.violation_total, 0, "{:?}", report.violations);
    }

    #[test]
    fn branch_width_small_run() {
        let report = check_branch_width_lemma(100, 42).unwrap();
        assert_eq!(report.instances_tested, 100);
        assert_eq!(report.violation_total, 0, "{:?}", report.violations);
        assert!(report.notes.iter().any(|n| n.contains("alignment-time")));
    }

    #[test]
    fn degree_blinking_small_run() {
        let report = check_degree_blinking(300, 42).unwrap();
        assert_eq!(report.instances_tested, 300);
        assert_eq!(report.violation_total, 0, "{:?}", report.violations);
    }

    #[test]
    fn star8_small_run() {
        let report = check_star_sync_kappa8(2, 500, 42).unwrap();
        // 8^2 + 8^3 exhaustive plus two sampled stars.
        assert_eq!(report.instances_tested, 64 + 512 + 1000);
        assert_eq!(report.violation_total, 0);
        assert_eq!(
            check_star_sync_kappa8(6, 10, 1).unwrap_err(),
            HarnessError::StarGuard(6)
        );
    }

    #[test]
    fn suites_are_reproducible() {
        let a = check_width_convergence(50, 9).unwrap();
        let b = check_width_convergence(50, 9).unwrap();
        assert_eq!(a, b);
        let c = check_branch_width_lemma(30, 9).unwrap();
        let d = check_branch_width_lemma(30, 9).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn zero_trials_rejected() {
        assert_eq!(
            check_width_convergence(0, 1).unwrap_err(),
            HarnessError::ZeroTrials
        );
    }
}
