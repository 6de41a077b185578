//! Exact orbit detection and periodic-orbit analysis.
//!
//! Every trajectory of the firefly rule on a finite graph is eventually
//! periodic. [`find_orbit`] finds the exact transient length and period by
//! memoizing visited states, and the remaining tools interrogate the cycle:
//! per-vertex blink times and gaps, which vertices keep blinking forever,
//! antipodal-leaf scans, local blink digraphs, and gap-sequence refinement.

use crate::dynamics::{blinking_state, Configuration, DynamicsError};
use crate::graph::Graph;
use serde::Serialize;
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrbitError {
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error("max_steps must be at least 1")]
    ZeroBudget,
    #[error("no state repeat within the step budget {max_steps}")]
    BudgetExhausted { max_steps: u64 },
    #[error("a synthetic cycle must contain at least one configuration")]
    EmptyCycle,
    #[error("synthetic cycle configurations disagree in length or color count")]
    InconsistentCycle,
    #[error("vertex {vertex} never blinks in the cycle")]
    NeverBlinks { vertex: usize },
    #[error("this check is specific to six colors, got kappa = {0}")]
    KappaNotSix(u32),
}

/// Exact decomposition of a trajectory into transient and cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    /// Steps before the trajectory enters its cycle.
    pub transient: u64,
    /// Cycle length, ≥ 1.
    pub period: u64,
    /// The configurations of one full period; `cycle[0]` is the state at
    /// time `transient`.
    pub cycle: Vec<Configuration>,
    /// Whether the cycle consists of constant configurations. This is
    /// strictly stronger than `period == kappa`: a frozen high-degree hub
    /// with freely rotating neighbors also has period κ without ever
    /// agreeing on a color.
    pub synchronized: bool,
    /// Total steps simulated to find the repeat (`transient + period` for
    /// detected orbits, 0 for synthetic ones).
    pub steps_simulated: u64,
}

impl OrbitSummary {
    /// Wrap an externally supplied periodic trace — for example one
    /// synthesized from blink-pattern templates — so that the cycle
    /// analyses can run on it. The configurations are taken verbatim; they
    /// need not arise from the transition rule.
    pub fn synthetic(cycle: Vec<Configuration>) -> Result<Self, OrbitError> {
        let first = cycle.first().ok_or(OrbitError::EmptyCycle)?;
        let (kappa, n) = (first.kappa(), first.len());
        if cycle.iter().any(|c| c.kappa() != kappa || c.len() != n) {
            return Err(OrbitError::InconsistentCycle);
        }
        let period = cycle.len() as u64;
        let synchronized = cycle.iter().any(Configuration::is_constant);
        Ok(Self {
            transient: 0,
            period,
            cycle,
            synchronized,
            steps_simulated: 0,
        })
    }

    pub fn kappa(&self) -> u32 {
        self.cycle[0].kappa()
    }

    pub fn n(&self) -> usize {
        self.cycle[0].len()
    }

    /// Configuration at cycle offset `i`, indexed cyclically.
    pub fn cycle_state(&self, i: usize) -> &Configuration {
        &self.cycle[i % self.cycle.len()]
    }

    /// Cycle offsets (0-based, < period) at which `v` blinks.
    pub(crate) fn blink_rows(&self, v: usize) -> Vec<usize> {
        let b = blinking_state(self.kappa());
        (0..self.cycle.len())
            .filter(|&r| self.cycle[r].state(v) == b)
            .collect()
    }
}

/// Fast multiply-rotate hasher for the packed-state memo table; the default
/// hasher's DoS hardening buys nothing here and costs measurably across the
/// millions of orbits a sweep visits.
#[derive(Default)]
struct MixHasher(u64);

impl MixHasher {
    #[inline]
    fn add(&mut self, word: u64) {
        self.0 = (self.0.rotate_left(5) ^ word).wrapping_mul(0x517c_c1b7_2722_0a95);
    }
}

impl Hasher for MixHasher {
    #[inline]
    fn finish(&self) -> u64 {
        self.0
    }
    #[inline]
    fn write(&mut self, bytes: &[u8]) {
        for chunk in bytes.chunks(8) {
            let mut word = [0u8; 8];
            word[..chunk.len()].copy_from_slice(chunk);
            self.add(u64::from_le_bytes(word));
        }
    }
    #[inline]
    fn write_u64(&mut self, x: u64) {
        self.add(x);
    }
    #[inline]
    fn write_usize(&mut self, x: usize) {
        self.add(x as u64);
    }
    #[inline]
    fn write_u8(&mut self, x: u8) {
        self.add(u64::from(x));
    }
}

type BuildMix = BuildHasherDefault<MixHasher>;

/// Reusable buffers for repeated orbit detection on one thread. The sweep
/// harness holds one per worker so the per-coloring cost is a cleared map
/// and a truncated history, not fresh allocations.
pub(crate) struct OrbitEngine {
    seen_packed: HashMap<u64, u64, BuildMix>,
    seen_wide: HashMap<Vec<u8>, u64, BuildMix>,
    /// Flat history of visited states, `n` bytes per step.
    history: Vec<u8>,
    cur: Vec<u8>,
    next: Vec<u8>,
}

/// Transient/period pair plus the synchronization verdict, with cycle
/// states left in the engine's history buffer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct RawOrbit {
    pub transient: u64,
    pub period: u64,
    pub synchronized: bool,
}

impl OrbitEngine {
    pub fn new() -> Self {
        Self {
            seen_packed: HashMap::default(),
            seen_wide: HashMap::default(),
            history: Vec::new(),
            cur: Vec::new(),
            next: Vec::new(),
        }
    }

    /// Detect the orbit of `x0` (raw states) under the rule on `g`.
    pub fn run(
        &mut self,
        g: &Graph,
        kappa: u32,
        x0: &[u8],
        max_steps: u64,
    ) -> Result<RawOrbit, OrbitError> {
        if max_steps == 0 {
            return Err(OrbitError::ZeroBudget);
        }
        let n = g.n();
        if n != x0.len() {
            return Err(DynamicsError::SizeMismatch {
                vertices: n,
                states: x0.len(),
            }
            .into());
        }
        let bits = 32 - (kappa - 1).leading_zeros();
        let packable = n as u32 * bits <= 64;
        self.history.clear();
        self.cur.clear();
        self.cur.extend_from_slice(x0);
        self.next.resize(n, 0);
        let (transient, period) = if packable {
            self.seen_packed.clear();
            let mut t = 0u64;
            loop {
                let mut key = 0u64;
                for &s in &self.cur {
                    key = key << bits | u64::from(s);
                }
                if let Some(&t0) = self.seen_packed.get(&key) {
                    break (t0, t - t0);
                }
                self.seen_packed.insert(key, t);
                self.history.extend_from_slice(&self.cur);
                if t == max_steps {
                    return Err(OrbitError::BudgetExhausted { max_steps });
                }
                crate::dynamics::step_states(g, kappa, &self.cur, &mut self.next);
                std::mem::swap(&mut self.cur, &mut self.next);
                t += 1;
            }
        } else {
            self.seen_wide.clear();
            let mut t = 0u64;
            loop {
                if let Some(&t0) = self.seen_wide.get(self.cur.as_slice()) {
                    break (t0, t - t0);
                }
                self.seen_wide.insert(self.cur.clone(), t);
                self.history.extend_from_slice(&self.cur);
                if t == max_steps {
                    return Err(OrbitError::BudgetExhausted { max_steps });
                }
                crate::dynamics::step_states(g, kappa, &self.cur, &mut self.next);
                std::mem::swap(&mut self.cur, &mut self.next);
                t += 1;
            }
        };
        let synchronized = self
            .cycle_rows(transient, period, n)
            .any(|row| row.windows(2).all(|w| w[0] == w[1]));
        Ok(RawOrbit {
            transient,
            period,
            synchronized,
        })
    }

    /// The cycle states of the most recent `run`, one slice per step.
    pub fn cycle_rows(
        &self,
        transient: u64,
        period: u64,
        n: usize,
    ) -> impl Iterator<Item = &[u8]> {
        let start = transient as usize * n;
        let end = (transient + period) as usize * n;
        self.history[start..end].chunks_exact(n.max(1))
    }
}

/// Simulate from `x0` until a state repeats, and return the exact
/// transient, period, and one full period of configurations.
///
/// `max_steps` bounds the number of steps; κ^n is always sufficient, and
/// the budget-exhausted error can only fire below that.
pub fn find_orbit(
    g: &Graph,
    x0: &Configuration,
    max_steps: u64,
) -> Result<OrbitSummary, OrbitError> {
    let mut engine = OrbitEngine::new();
    let raw = engine.run(g, x0.kappa(), x0.states(), max_steps)?;
    let cycle = engine
        .cycle_rows(raw.transient, raw.period, g.n())
        .map(|row| Configuration::new(x0.kappa(), row.to_vec()).expect("states came from step"))
        .collect();
    Ok(OrbitSummary {
        transient: raw.transient,
        period: raw.period,
        cycle,
        synchronized: raw.synchronized,
        steps_simulated: raw.transient + raw.period,
    })
}

/// Blink times of one vertex over one period, with the cyclic gaps between
/// consecutive blinks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlinkingProfile {
    pub vertex: usize,
    /// Absolute times in `[transient, transient + period)`.
    pub blink_times: Vec<u64>,
    /// `gaps[i]` is the time from blink i to the next blink, the last gap
    /// wrapping around the cycle; the gaps of one pass sum to the period.
    pub gaps: Vec<u64>,
}

/// The blink times and cyclic gap sequence of `v` in the cycle, or `None`
/// if `v` never blinks there — a meaningful verdict in its own right, not
/// a failure: high-degree hubs can stay dark forever.
pub fn blinking_profile(summary: &OrbitSummary, v: usize) -> Option<BlinkingProfile> {
    let rows = summary.blink_rows(v);
    if rows.is_empty() {
        return None;
    }
    let blink_times: Vec<u64> = rows.iter().map(|&r| summary.transient + r as u64).collect();
    let mut gaps: Vec<u64> = blink_times.windows(2).map(|w| w[1] - w[0]).collect();
    gaps.push(blink_times[0] + summary.period - blink_times[blink_times.len() - 1]);
    Some(BlinkingProfile {
        vertex: v,
        blink_times,
        gaps,
    })
}

/// For each vertex, whether it blinks within the cycle — equivalently,
/// whether it blinks infinitely often along the trajectory.
pub fn check_blinks_infinitely(summary: &OrbitSummary) -> Vec<bool> {
    let b = blinking_state(summary.kappa());
    (0..summary.n())
        .map(|v| summary.cycle.iter().any(|c| c.state(v) == b))
        .collect()
}

/// A blinking vertex observed with an antipodal leaf neighbor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OppositeLeafViolation {
    pub time: u64,
    pub vertex: usize,
    pub leaf: usize,
}

/// Scan a six-color cycle for a vertex at state 2 with a leaf neighbor at
/// state 5 (the antipodal color). Returns every occurrence; structural
/// arguments say there are none on orbits that matter, and this check lets
/// the harness test that claim empirically rather than assume it.
pub fn check_opposite_leaf(
    g: &Graph,
    summary: &OrbitSummary,
) -> Result<Vec<OppositeLeafViolation>, OrbitError> {
    if summary.kappa() != 6 {
        return Err(OrbitError::KappaNotSix(summary.kappa()));
    }
    let mut violations = Vec::new();
    for (r, x) in summary.cycle.iter().enumerate() {
        for v in 0..g.n() {
            if x.state(v) != 2 {
                continue;
            }
            for &u in g.neighbors(v) {
                if g.degree(u) == 1 && x.state(u) == 5 {
                    violations.push(OppositeLeafViolation {
                        time: summary.transient + r as u64,
                        vertex: v,
                        leaf: u,
                    });
                }
            }
        }
    }
    Ok(violations)
}

/// A directed edge of a blink digraph, carrying every gap length observed
/// between its endpoint configurations (parallel edges merged).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlinkEdge {
    pub from: usize,
    pub to: usize,
    pub gaps: Vec<u64>,
}

/// Weighted digraph of the local configurations seen around a vertex at its
/// blink times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlinkDigraph {
    /// Distinct local configurations in first-seen order: the states of the
    /// chosen neighborhood vertices at a blink time. States are already
    /// rotation-canonical — subtracting the revolving activator mark from
    /// every relative phase recovers exactly the absolute colors.
    pub nodes: Vec<Vec<u8>>,
    pub edges: Vec<BlinkEdge>,
}

/// Build the digraph whose nodes are the local configurations on
/// `neighborhood` at the blink times of `v`, with an edge for each pair of
/// consecutive blinks labeled by the gap between them. Parallel edges merge
/// into one edge with the set of observed gaps.
pub fn extract_blink_digraph(
    g: &Graph,
    summary: &OrbitSummary,
    v: usize,
    neighborhood: &[usize],
) -> Result<BlinkDigraph, OrbitError> {
    let _ = g;
    let rows = summary.blink_rows(v);
    if rows.is_empty() {
        return Err(OrbitError::NeverBlinks { vertex: v });
    }
    let mut nodes: Vec<Vec<u8>> = Vec::new();
    let mut node_of_row: Vec<usize> = Vec::with_capacity(rows.len());
    for &r in &rows {
        let x = &summary.cycle[r];
        let local: Vec<u8> = neighborhood.iter().map(|&u| x.state(u)).collect();
        let id = match nodes.iter().position(|m| *m == local) {
            Some(id) => id,
            None => {
                nodes.push(local);
                nodes.len() - 1
            }
        };
        node_of_row.push(id);
    }
    let mut merged: BTreeMap<(usize, usize), Vec<u64>> = BTreeMap::new();
    for i in 0..rows.len() {
        let j = (i + 1) % rows.len();
        let gap = if j == 0 {
            rows[0] as u64 + summary.period - rows[rows.len() - 1] as u64
        } else {
            (rows[j] - rows[i]) as u64
        };
        let entry = merged.entry((node_of_row[i], node_of_row[j])).or_default();
        if !entry.contains(&gap) {
            entry.push(gap);
        }
    }
    let edges = merged
        .into_iter()
        .map(|((from, to), mut gaps)| {
            gaps.sort_unstable();
            BlinkEdge { from, to, gaps }
        })
        .collect();
    Ok(BlinkDigraph { nodes, edges })
}

/// Whether the cyclic gap sequence `fine` refines `coarse`: some rotation
/// of `fine` splits into consecutive blocks whose sums reproduce `coarse`
/// in order. Entries must be positive; with positive entries each block
/// boundary is forced, so a single greedy pass per rotation is complete.
pub fn refines(fine: &[u64], coarse: &[u64]) -> bool {
    if fine.is_empty() || coarse.is_empty() {
        return false;
    }
    debug_assert!(fine.iter().all(|&g| g > 0) && coarse.iter().all(|&g| g > 0));
    let total: u64 = fine.iter().sum();
    if total != coarse.iter().sum::<u64>() || fine.len() < coarse.len() {
        return false;
    }
    'rotation: for r in 0..fine.len() {
        let mut target = 0usize;
        let mut acc = 0u64;
        for i in 0..fine.len() {
            acc += fine[(r + i) % fine.len()];
            if acc == coarse[target] {
                target += 1;
                acc = 0;
            } else if acc > coarse[target] {
                continue 'rotation;
            }
        }
        if target == coarse.len() {
            return true;
        }
    }
    false
}
