//! Builders for the explicit initial conditions that keep firefly systems
//! from ever agreeing: star colorings for odd κ ≥ 7, a fixed eight-color
//! double star, star colorings for even κ ≥ 10, and the high-degree hub
//! whose center is held forever. Each builder returns the graph, the
//! initial coloring, and the claims the orbit analyses are expected to
//! confirm.

use crate::dynamics::{blinking_state, Configuration, DynamicsError};
use crate::graph::{build_graph, make_star, Graph, GraphError, RootedTree};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("kappa must be odd and at least 7, got {0}")]
    BadOddKappa(u32),
    #[error("kappa must be even and at least 10, got {0}")]
    BadEvenKappa(u32),
    #[error("every part size must be at least 2, got {0:?}")]
    PartTooSmall(Vec<u32>),
    #[error("part sizes {parts:?} must sum to {required}")]
    PartSumMismatch { parts: Vec<u32>, required: u32 },
    #[error("vertex {vertex} has degree {degree}, but the hub construction needs at least kappa = {kappa}")]
    DegreeBelowKappa {
        vertex: usize,
        degree: usize,
        kappa: u32,
    },
    #[error("center state {center_state} must exceed kappa/2 (kappa = {kappa})")]
    CenterStateTooLow { center_state: u8, kappa: u32 },
    #[error("center state {center_state} is not a valid state for kappa = {kappa}")]
    CenterStateOutOfRange { center_state: u8, kappa: u32 },
    #[error("no counterexample family is catalogued for kappa = {0}")]
    UnsupportedKappa(u32),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A built instance together with its advertised behavior.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionResult {
    pub graph: Graph,
    pub coloring: Configuration,
    pub kappa: u32,
    /// A number the orbit period is claimed to divide, when the family
    /// comes with one.
    pub claimed_period_divisor: Option<u64>,
    /// Whether the orbit is claimed to avoid every constant configuration.
    pub claimed_nonsync: bool,
    pub max_degree: usize,
}

/// Convert a phase vector pinned at time 0 into an absolute coloring:
/// `x(v) = phase(v) − b(κ) mod κ`. The builders specify their initial data
/// as rotation-adjusted phases with the activator mark at `b(κ)`, which is
/// exactly the mark's position at time 0.
fn phases_to_initial(kappa: u32, phases: &[u32]) -> Result<Configuration, DynamicsError> {
    let b = u32::from(blinking_state(kappa));
    Configuration::new(
        kappa,
        phases.iter().map(|&p| ((p + kappa - b) % kappa) as u8).collect(),
    )
}

/// Star coloring for odd κ = 2m−1 ≥ 7 that never synchronizes: m leaves,
/// center phase m−1, a block of `p` leaves at phases 1..=p and a block of
/// `q` leaves at phases m+1..=m+q, with p + q = m and p, q ≥ 2. The orbit
/// period divides 3κ² + κ.
pub fn construct_odd(kappa: u32, p: u32, q: u32) -> Result<ConstructionResult, ConstructError> {
    if kappa.is_multiple_of(2) || kappa < 7 {
        return Err(ConstructError::BadOddKappa(kappa));
    }
    let m = kappa.div_ceil(2);
    if p < 2 || q < 2 {
        return Err(ConstructError::PartTooSmall(vec![p, q]));
    }
    if p + q != m {
        return Err(ConstructError::PartSumMismatch {
            parts: vec![p, q],
            required: m,
        });
    }
    let graph = make_star(m as usize)?;
    let mut phases = vec![m - 1];
    phases.extend(1..=p);
    phases.extend(m + 1..=m + q);
    let coloring = phases_to_initial(kappa, &phases)?;
    Ok(ConstructionResult {
        max_degree: graph.max_degree(),
        graph,
        coloring,
        kappa,
        claimed_period_divisor: Some(u64::from(kappa) * u64::from(3 * kappa + 1)),
        claimed_nonsync: true,
    })
}

/// The fixed eight-color instance: a double star on 8 vertices with
/// initial coloring (1,5,7,5,6,0,3,6) whose orbit has period dividing 60
/// and never reaches a constant configuration.
pub fn construct_kappa8() -> ConstructionResult {
    let graph = build_graph(
        8,
        &[(3, 0), (3, 1), (3, 2), (3, 4), (4, 5), (4, 6), (4, 7)],
    )
    .expect("fixed tree is valid");
    let coloring = Configuration::new(8, vec![1, 5, 7, 5, 6, 0, 3, 6]).expect("fixed coloring");
    ConstructionResult {
        max_degree: graph.max_degree(),
        graph,
        coloring,
        kappa: 8,
        claimed_period_divisor: Some(60),
        claimed_nonsync: true,
    }
}

/// Star coloring for even κ = 2m ≥ 10 that never synchronizes: m+1 leaves,
/// center phase m−1, and leaf phases covering the three blocks
/// [0, p−1] ∪ [m−q, m−1] ∪ [m+p, m+p+r−1], with p + q + r = m + 1 and all
/// parts ≥ 2. The orbit period divides 5κ² + κ.
pub fn construct_even(
    kappa: u32,
    p: u32,
    q: u32,
    r: u32,
) -> Result<ConstructionResult, ConstructError> {
    if !kappa.is_multiple_of(2) || kappa < 10 {
        return Err(ConstructError::BadEvenKappa(kappa));
    }
    let m = kappa / 2;
    if p < 2 || q < 2 || r < 2 {
        return Err(ConstructError::PartTooSmall(vec![p, q, r]));
    }
    if p + q + r != m + 1 {
        return Err(ConstructError::PartSumMismatch {
            parts: vec![p, q, r],
            required: m + 1,
        });
    }
    let graph = make_star((m + 1) as usize)?;
    let mut phases = vec![m - 1];
    phases.extend(leaf_phase_blocks(m, p, q, r));
    let coloring = phases_to_initial(kappa, &phases)?;
    Ok(ConstructionResult {
        max_degree: graph.max_degree(),
        graph,
        coloring,
        kappa,
        claimed_period_divisor: Some(u64::from(kappa) * u64::from(5 * kappa + 1)),
        claimed_nonsync: true,
    })
}

/// The three leaf-phase blocks of the even-κ family, in ascending order.
/// Exposed for the intermediate-class membership check: at step 3m+q the
/// shifted phases are expected to land in the same shape with parameters
/// rotated to (q, r, p).
pub fn leaf_phase_blocks(m: u32, p: u32, q: u32, r: u32) -> Vec<u32> {
    let mut phases: Vec<u32> = (0..p).collect();
    phases.extend(m - q..m);
    phases.extend(m + p..m + p + r);
    phases
}

/// Color a tree so that a hub of degree ≥ κ never blinks: each component
/// of T − v is made constant, the components (ordered by their smallest
/// vertex) taking states 1, 2, …, deg(v) mod κ, so every residue has a
/// component blinking at every step; the hub starts past the blinking
/// state (any state > κ/2; default ⌊κ/2⌋ + 1) and is re-held forever.
pub fn construct_highdeg(
    t: &RootedTree,
    v: usize,
    kappa: u32,
    center_state: Option<u8>,
) -> Result<ConstructionResult, ConstructError> {
    let g = t.graph();
    let degree = g.degree(v);
    if (degree as u32) < kappa {
        return Err(ConstructError::DegreeBelowKappa {
            vertex: v,
            degree,
            kappa,
        });
    }
    let center_state = center_state.unwrap_or_else(|| (kappa / 2 + 1) as u8);
    if u32::from(center_state) >= kappa {
        return Err(ConstructError::CenterStateOutOfRange {
            center_state,
            kappa,
        });
    }
    if 2 * u32::from(center_state) <= kappa {
        return Err(ConstructError::CenterStateTooLow {
            center_state,
            kappa,
        });
    }
    // Components of T − v, by depth-first search from each unvisited
    // vertex; sorting the roots ascending fixes the component order to
    // smallest-vertex-first.
    let mut states = vec![0u8; g.n()];
    states[v] = center_state;
    let mut visited = vec![false; g.n()];
    visited[v] = true;
    let mut component = 0u32;
    for start in 0..g.n() {
        if visited[start] {
            continue;
        }
        component += 1;
        let state = (component % kappa) as u8;
        let mut stack = vec![start];
        visited[start] = true;
        while let Some(u) = stack.pop() {
            states[u] = state;
            for &w in g.neighbors(u) {
                if !visited[w] {
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let coloring = Configuration::new(kappa, states)?;
    Ok(ConstructionResult {
        graph: g.clone(),
        coloring,
        kappa,
        claimed_period_divisor: None,
        claimed_nonsync: true,
        max_degree: g.max_degree(),
    })
}

/// The catalogued non-synchronizing instance for a given κ ≥ 7: the odd
/// family with the most balanced split, the fixed κ = 8 instance, or the
/// even family with parts (2, 2, m−3).
pub fn counterexample_for_kappa(kappa: u32) -> Result<ConstructionResult, ConstructError> {
    match kappa {
        k if k >= 7 && k % 2 == 1 => {
            let m = k.div_ceil(2);
            construct_odd(k, m / 2, m - m / 2)
        }
        8 => Ok(construct_kappa8()),
        k if k >= 10 && k % 2 == 0 => construct_even(k, 2, 2, k / 2 - 3),
        k => Err(ConstructError::UnsupportedKappa(k)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{step, to_relative};
    use crate::graph::root_tree;
    use crate::orbit::{blinking_profile, check_blinks_infinitely, find_orbit};

    #[test]
    fn odd_seven_matches_the_frozen_instance() {
        let c = construct_odd(7, 2, 2).unwrap();
        assert_eq!(c.graph.n(), 5);
        assert_eq!(c.max_degree, 4);
        assert_eq!(c.coloring.states(), &[0, 5, 6, 2, 3]);
        assert_eq!(c.claimed_period_divisor, Some(154));
        assert!(c.claimed_nonsync);
    }

    #[test]
    fn odd_nine_divisor() {
        let c = construct_odd(9, 2, 3).unwrap();
        assert_eq!(c.graph.n(), 6);
        assert_eq!(c.claimed_period_divisor, Some(252));
        let s = find_orbit(&c.graph, &c.coloring, 100_000).unwrap();
        assert!(!s.synchronized);
        assert_eq!(c.claimed_period_divisor.unwrap() % s.period, 0);
    }

    #[test]
    fn odd_preconditions() {
        assert_eq!(construct_odd(8, 2, 2).unwrap_err(), ConstructError::BadOddKappa(8));
        assert_eq!(construct_odd(5, 2, 1).unwrap_err(), ConstructError::BadOddKappa(5));
        assert_eq!(
            construct_odd(7, 1, 3).unwrap_err(),
            ConstructError::PartTooSmall(vec![1, 3])
        );
        assert_eq!(
            construct_odd(9, 2, 2).unwrap_err(),
            ConstructError::PartSumMismatch {
                parts: vec![2, 2],
                required: 5
            }
        );
    }

    #[test]
    fn odd_orbit_shifts_phases_down_by_one_after_3k_plus_1_steps() {
        for (kappa, p, q) in [(7u32, 2u32, 2u32), (9, 2, 3), (11, 3, 3)] {
            let c = construct_odd(kappa, p, q).unwrap();
            let y0 = to_relative(&c.coloring, 0);
            let mut x = c.coloring.clone();
            let t = u64::from(3 * kappa + 1);
            for _ in 0..t {
                x = step(&c.graph, &x).unwrap();
            }
            let yt = to_relative(&x, t);
            for v in 0..c.graph.n() {
                let expected = (u32::from(y0.phases[v]) + kappa - 1) % kappa;
                assert_eq!(
                    u32::from(yt.phases[v]),
                    expected,
                    "kappa = {kappa}, vertex {v}"
                );
            }
        }
    }

    #[test]
    fn kappa8_instance() {
        let c = construct_kappa8();
        let degrees: Vec<usize> = (0..8).map(|v| c.graph.degree(v)).collect();
        assert_eq!(degrees, vec![1, 1, 1, 4, 4, 1, 1, 1]);
        assert_eq!(c.coloring.states(), &[1, 5, 7, 5, 6, 0, 3, 6]);
        assert_eq!(c.max_degree, 4);
        let s = find_orbit(&c.graph, &c.coloring, 100_000).unwrap();
        assert!(!s.synchronized);
        assert_eq!(60 % s.period, 0);
    }

    #[test]
    fn even_ten_matches_the_frozen_instance() {
        let c = construct_even(10, 2, 2, 2).unwrap();
        assert_eq!(c.graph.n(), 7);
        assert_eq!(c.max_degree, 6);
        assert_eq!(c.coloring.states(), &[0, 6, 7, 9, 0, 3, 4]);
        assert_eq!(c.claimed_period_divisor, Some(510));
        let s = find_orbit(&c.graph, &c.coloring, 100_000).unwrap();
        assert!(!s.synchronized);
        assert_eq!(s.period, 51);
    }

    #[test]
    fn even_preconditions() {
        assert_eq!(construct_even(8, 2, 2, 2).unwrap_err(), ConstructError::BadEvenKappa(8));
        assert_eq!(construct_even(11, 2, 2, 2).unwrap_err(), ConstructError::BadEvenKappa(11));
        assert_eq!(
            construct_even(10, 2, 2, 1).unwrap_err(),
            ConstructError::PartTooSmall(vec![2, 2, 1])
        );
        assert_eq!(
            construct_even(12, 2, 2, 2).unwrap_err(),
            ConstructError::PartSumMismatch {
                parts: vec![2, 2, 2],
                required: 7
            }
        );
    }

    #[test]
    fn even_orbit_shifts_phases_up_by_one_after_5k_plus_1_steps() {
        for (kappa, p, q, r) in [(10u32, 2u32, 2u32, 2u32), (12, 2, 2, 3)] {
            let c = construct_even(kappa, p, q, r).unwrap();
            let y0 = to_relative(&c.coloring, 0);
            let mut x = c.coloring.clone();
            let t = u64::from(5 * kappa + 1);
            for _ in 0..t {
                x = step(&c.graph, &x).unwrap();
            }
            let yt = to_relative(&x, t);
            for v in 0..c.graph.n() {
                let expected = u32::from(y0.phases[v]);
                assert_eq!(
                    (u32::from(yt.phases[v]) + 1) % kappa,
                    expected,
                    "kappa = {kappa}, vertex {v}"
                );
            }
        }
    }

    #[test]
    fn even_orbit_passes_through_the_rotated_block_class() {
        for (kappa, p, q, r) in [(10u32, 2u32, 2u32, 2u32), (12, 2, 2, 3), (14, 3, 2, 3)] {
            let m = kappa / 2;
            let c = construct_even(kappa, p, q, r).unwrap();
            let mut x = c.coloring.clone();
            let t = u64::from(3 * m + q);
            for _ in 0..t {
                x = step(&c.graph, &x).unwrap();
            }
            let y = to_relative(&x, t);
            let shift = m - q;
            let shifted: Vec<u32> = y
                .phases
                .iter()
                .map(|&ph| (u32::from(ph) + kappa - shift) % kappa)
                .collect();
            assert_eq!(shifted[0], m - 1, "kappa = {kappa}: center phase");
            let mut leaves = shifted[1..].to_vec();
            leaves.sort_unstable();
            let mut expected = leaf_phase_blocks(m, q, r, p);
            expected.sort_unstable();
            assert_eq!(leaves, expected, "kappa = {kappa}: leaf phase class");
        }
    }

    #[test]
    fn highdeg_star_six() {
        let g = make_star(6).unwrap();
        let t = root_tree(&g, 0).unwrap();
        let c = construct_highdeg(&t, 0, 6, None).unwrap();
        assert_eq!(c.coloring.states(), &[4, 1, 2, 3, 4, 5, 0]);
        assert_eq!(c.claimed_period_divisor, None);
        let s = find_orbit(&c.graph, &c.coloring, 10_000).unwrap();
        assert!(!s.synchronized);
        assert!(blinking_profile(&s, 0).is_none(), "hub never blinks");
        let flags = check_blinks_infinitely(&s);
        assert!(flags[1..].iter().all(|&f| f));
    }

    #[test]
    fn highdeg_star_three() {
        let g = make_star(3).unwrap();
        let t = root_tree(&g, 0).unwrap();
        let c = construct_highdeg(&t, 0, 3, Some(2)).unwrap();
        assert_eq!(c.coloring.states(), &[2, 1, 2, 0]);
    }

    #[test]
    fn highdeg_component_order_is_by_smallest_vertex() {
        // Rooting elsewhere must not change the assignment: components of
        // T − v are ordered by their smallest vertex, not by the rooting.
        let g = make_star(6).unwrap();
        let t = root_tree(&g, 3).unwrap();
        let c = construct_highdeg(&t, 0, 6, None).unwrap();
        assert_eq!(c.coloring.states(), &[4, 1, 2, 3, 4, 5, 0]);
    }

    #[test]
    fn highdeg_preconditions() {
        let g = build_graph(3, &[(0, 1), (1, 2)]).unwrap();
        let t = root_tree(&g, 0).unwrap();
        assert_eq!(
            construct_highdeg(&t, 1, 6, None).unwrap_err(),
            ConstructError::DegreeBelowKappa {
                vertex: 1,
                degree: 2,
                kappa: 6
            }
        );
        let star = make_star(6).unwrap();
        let ts = root_tree(&star, 0).unwrap();
        assert_eq!(
            construct_highdeg(&ts, 0, 6, Some(3)).unwrap_err(),
            ConstructError::CenterStateTooLow {
                center_state: 3,
                kappa: 6
            }
        );
        assert_eq!(
            construct_highdeg(&ts, 0, 6, Some(6)).unwrap_err(),
            ConstructError::CenterStateOutOfRange {
                center_state: 6,
                kappa: 6
            }
        );
    }

    #[test]
    fn catalogue_covers_seven_through_twelve() {
        for kappa in 7u32..=12 {
            let c = counterexample_for_kappa(kappa).unwrap();
            assert_eq!(c.kappa, kappa);
            assert!(c.claimed_nonsync);
            // Max degree stays within the theorem's bound: deg ≤ κ/2 + 1,
            // checked in integer form as 2(deg − 1) ≤ κ.
            assert!(
                2 * (c.max_degree as u32 - 1) <= kappa,
                "kappa = {kappa}, max degree {}",
                c.max_degree
            );
        }
        assert_eq!(
            counterexample_for_kappa(6).unwrap_err(),
            ConstructError::UnsupportedKappa(6)
        );
    }

    #[test]
    fn catalogue_instances_really_do_not_synchronize() {
        for kappa in [7u32, 8, 10] {
            let c = counterexample_for_kappa(kappa).unwrap();
            let s = find_orbit(&c.graph, &c.coloring, 200_000).unwrap();
            assert!(!s.synchronized, "kappa = {kappa}");
            assert_eq!(
                c.claimed_period_divisor.unwrap() % s.period,
                0,
                "kappa = {kappa}"
            );
        }
    }
}
