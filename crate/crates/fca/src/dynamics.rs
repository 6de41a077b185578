//! The κ-color firefly transition rule and its geometric companions:
//! relative (rotation-adjusted) phases, circular displacement, and width.
//!
//! States live in Z_κ. A vertex in the distinguished state `b(κ)` "blinks";
//! a vertex whose state is past `b(κ)` is held for one step by any blinking
//! neighbor, and otherwise every vertex advances by one, mod κ.

use crate::graph::Graph;
use serde::Serialize;
use thiserror::Error;

/// Inclusive upper bound on the color count. Keeps states in a byte and lets
/// orbit detection pack small configurations into one machine word.
pub const MAX_KAPPA: u32 = 64;

pub const MIN_KAPPA: u32 = 3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("kappa must be in {MIN_KAPPA}..={MAX_KAPPA}, got {0}")]
    KappaOutOfRange(u32),
    #[error("state {state} at vertex {vertex} is out of range for kappa = {kappa}")]
    StateOutOfRange { vertex: usize, state: u8, kappa: u32 },
    #[error("configuration has {states} states but the graph has {vertices} vertices")]
    SizeMismatch { vertices: usize, states: usize },
    #[error("width of an empty vertex set is undefined")]
    EmptySubset,
}

/// The blinking state b(κ) = ⌊(κ−1)/2⌋.
///
/// Panics if `kappa` is outside the supported range; configurations cannot
/// be constructed with such a κ, so validated code never trips this.
pub fn blinking_state(kappa: u32) -> u8 {
    assert!(
        (MIN_KAPPA..=MAX_KAPPA).contains(&kappa),
        "kappa must be in {MIN_KAPPA}..={MAX_KAPPA}, got {kappa}"
    );
    ((kappa - 1) / 2) as u8
}

/// One time-slice of the system: a κ-coloring of the vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Configuration {
    kappa: u32,
    states: Vec<u8>,
}

impl Configuration {
    pub fn new(kappa: u32, states: Vec<u8>) -> Result<Self, DynamicsError> {
        if !(MIN_KAPPA..=MAX_KAPPA).contains(&kappa) {
            return Err(DynamicsError::KappaOutOfRange(kappa));
        }
        for (vertex, &state) in states.iter().enumerate() {
            if u32::from(state) >= kappa {
                return Err(DynamicsError::StateOutOfRange { vertex, state, kappa });
            }
        }
        Ok(Self { kappa, states })
    }

    /// The constant configuration `c` on `n` vertices.
    pub fn constant(kappa: u32, n: usize, c: u8) -> Result<Self, DynamicsError> {
        Self::new(kappa, vec![c; n])
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    pub fn states(&self) -> &[u8] {
        &self.states
    }

    pub fn state(&self, v: usize) -> u8 {
        self.states[v]
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.states.windows(2).all(|w| w[0] == w[1])
    }

    fn check_paired(&self, g: &Graph) -> Result<(), DynamicsError> {
        if g.n() != self.states.len() {
            return Err(DynamicsError::SizeMismatch {
                vertices: g.n(),
                states: self.states.len(),
            });
        }
        Ok(())
    }
}

/// Advance every state by one synchronous step of the firefly rule.
/// Pure: the input is untouched.
pub fn step(g: &Graph, x: &Configuration) -> Result<Configuration, DynamicsError> {
    x.check_paired(g)?;
    let mut next = vec![0u8; x.len()];
    step_states(g, x.kappa, x.states(), &mut next);
    Ok(Configuration {
        kappa: x.kappa,
        states: next,
    })
}

/// Unvalidated core of `step`, shared with the hot orbit/sweep loops.
/// `next` must have length `cur.len()`.
pub(crate) fn step_states(g: &Graph, kappa: u32, cur: &[u8], next: &mut [u8]) {
    let b = blinking_state(kappa);
    let k = kappa as u8;
    for v in 0..cur.len() {
        let s = cur[v];
        next[v] = if s > b && g.neighbors(v).iter().any(|&u| cur[u] == b) {
            s
        } else {
            let inc = s + 1;
            if inc == k {
                0
            } else {
                inc
            }
        };
    }
}

/// Whether `v` blinks: its state is exactly b(κ).
pub fn is_blinking(x: &Configuration, v: usize) -> bool {
    x.state(v) == blinking_state(x.kappa)
}

/// Whether the step leaves `v`'s state unchanged: `v` is past the blinking
/// state and has a blinking neighbor.
pub fn is_pulled(g: &Graph, x: &Configuration, v: usize) -> bool {
    let b = blinking_state(x.kappa);
    x.state(v) > b && g.neighbors(v).iter().any(|&u| x.state(u) == b)
}

/// Whether `u` pulls `v`: `v` is pulled, `u` blinks, and they are adjacent.
pub fn pulls(g: &Graph, x: &Configuration, u: usize, v: usize) -> bool {
    is_blinking(x, u) && g.has_edge(u, v) && is_pulled(g, x, v)
}

/// Rotation-adjusted view of a configuration: per-vertex phases plus the
/// revolving activator mark.
///
/// A vertex blinks exactly when `phase(v) − activator ≡ b(κ) (mod κ)`, which
/// is the relative-coordinates restatement of `state(v) = b(κ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelativeConfiguration {
    pub kappa: u32,
    pub phases: Vec<u8>,
    pub activator: u8,
}

impl RelativeConfiguration {
    /// Blink test in relative coordinates; agrees with `is_blinking` on the
    /// absolute configuration the phases were derived from.
    pub fn is_blinking(&self, v: usize) -> bool {
        let k = self.kappa;
        let diff = (u32::from(self.phases[v]) + k - u32::from(self.activator)) % k;
        diff == u32::from(blinking_state(k))
    }
}

/// Relative configuration at time `t`:
/// `phase(v) = x(v) − t + b(κ) mod κ`, `activator = b(κ) − t mod κ`.
pub fn to_relative(x: &Configuration, t: u64) -> RelativeConfiguration {
    let k = x.kappa;
    let b = u32::from(blinking_state(k));
    let tm = (t % u64::from(k)) as u32;
    let phases = x
        .states()
        .iter()
        .map(|&s| ((u32::from(s) + b + k - tm) % k) as u8)
        .collect();
    let activator = ((b + k - tm) % k) as u8;
    RelativeConfiguration {
        kappa: k,
        phases,
        activator,
    }
}

/// Inverse of `to_relative` at the same time `t`:
/// `x(v) = phase(v) + t − b(κ) mod κ`.
pub fn from_relative(y: &RelativeConfiguration, t: u64) -> Result<Configuration, DynamicsError> {
    let k = y.kappa;
    if !(MIN_KAPPA..=MAX_KAPPA).contains(&k) {
        return Err(DynamicsError::KappaOutOfRange(k));
    }
    let b = u32::from(blinking_state(k));
    let tm = (t % u64::from(k)) as u32;
    let states = y
        .phases
        .iter()
        .map(|&p| ((u32::from(p) + tm + k - b) % k) as u8)
        .collect();
    Configuration::new(k, states)
}

/// Counterclockwise displacement of `v` from `u`: `x(u) − x(v) mod κ`.
pub fn displacement(x: &Configuration, u: usize, v: usize) -> u8 {
    let k = x.kappa;
    (((u32::from(x.state(u)) + k) - u32::from(x.state(v))) % k) as u8
}

/// Whether `u` is clockwise to `v`: displacement(u, v) < κ/2.
pub fn clockwise(x: &Configuration, u: usize, v: usize) -> bool {
    2 * u32::from(displacement(x, u, v)) < x.kappa
}

/// Whether `u` is counterclockwise to `v`: displacement(v, u) < κ/2.
pub fn counterclockwise(x: &Configuration, u: usize, v: usize) -> bool {
    clockwise(x, v, u)
}

/// Whether `u` is opposite to `v`: displacement exactly κ/2. Identically
/// false for odd κ, where the threshold is not an integer.
pub fn opposite(x: &Configuration, u: usize, v: usize) -> bool {
    2 * u32::from(displacement(x, u, v)) == x.kappa
}

/// Width of the configuration restricted to `subset` (whole vertex set when
/// `None`): the length of the shortest arc of the color cycle covering all
/// occupied states; equals the branch width when the subset is a branch.
pub fn width(x: &Configuration, subset: Option<&[usize]>) -> Result<u8, DynamicsError> {
    let k = x.kappa;
    let mut occupied = 0u64;
    match subset {
        None => {
            if x.is_empty() {
                return Err(DynamicsError::EmptySubset);
            }
            for &s in x.states() {
                occupied |= 1 << s;
            }
        }
        Some(vs) => {
            if vs.is_empty() {
                return Err(DynamicsError::EmptySubset);
            }
            for &v in vs {
                occupied |= 1 << x.state(v);
            }
        }
    }
    if occupied.count_ones() <= 1 {
        return Ok(0);
    }
    // Width = κ − (largest circular gap between consecutive occupied colors).
    let mut max_gap = 0u32;
    let mut prev = None;
    let mut first = 0u32;
    for c in 0..k {
        if occupied >> c & 1 == 1 {
            match prev {
                None => first = c,
                Some(p) => max_gap = max_gap.max(c - p),
            }
            prev = Some(c);
        }
    }
    let wrap = k - prev.unwrap() + first;
    max_gap = max_gap.max(wrap);
    Ok((k - max_gap) as u8)
}
