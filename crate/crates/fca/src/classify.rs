//! Six-color blink-pattern templates and subtree-type classification.
//!
//! Around a non-root vertex `v` with parent `v⁻`, the six-color rule
//! realizes only a handful of periodic local blink patterns. They are
//! captured here as two-row templates over time columns: one row for `v`,
//! one for `v⁻`, with exact colors, "any color except 2" slots, and free
//! wildcard slots. [`classify_subtree`] tests an orbit against the four
//! recognized gap signatures (constant 12; alternating 9,7; alternating
//! 10,9; alternating 11,8) together with their parent-color conditions,
//! and [`join_templates`]/[`fill_slots`] synthesize periodic traces from
//! compatible template pairs for use as classifier fixtures.

use crate::graph::RootedTree;
use crate::orbit::OrbitSummary;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("unknown template name: {0:?}")]
    UnknownTemplate(String),
    #[error("trace of length {got} is shorter than the template's {needed} columns")]
    TraceTooShort { needed: usize, got: usize },
    #[error("subtree classification is specific to six colors, got kappa = {0}")]
    KappaNotSix(u32),
    #[error("vertex {0} is the root and has no parent to classify against")]
    RootHasNoParent(usize),
    #[error("templates {first:?} and {second:?} disagree at junction column of {side}")]
    IncompatibleJunction {
        first: String,
        second: String,
        side: &'static str,
    },
}

/// One time column of a template row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    /// Exactly this color.
    Exact(u8),
    /// Any color except 2 (the six-color blinking state).
    NotTwo,
    /// Any color at all.
    Any,
}

impl Slot {
    /// Whether a concrete color satisfies the slot.
    pub fn admits(self, color: u8) -> bool {
        match self {
            Slot::Exact(c) => color == c,
            Slot::NotTwo => color != 2,
            Slot::Any => true,
        }
    }

    /// Greatest common refinement of two slots, if their constraint sets
    /// intersect.
    fn meet(self, other: Slot) -> Option<Slot> {
        match (self, other) {
            (Slot::Exact(a), Slot::Exact(b)) => (a == b).then_some(Slot::Exact(a)),
            (Slot::Exact(c), Slot::NotTwo) | (Slot::NotTwo, Slot::Exact(c)) => {
                (c != 2).then_some(Slot::Exact(c))
            }
            (Slot::Exact(c), Slot::Any) | (Slot::Any, Slot::Exact(c)) => Some(Slot::Exact(c)),
            (Slot::NotTwo, Slot::NotTwo) | (Slot::NotTwo, Slot::Any) | (Slot::Any, Slot::NotTwo) => {
                Some(Slot::NotTwo)
            }
            (Slot::Any, Slot::Any) => Some(Slot::Any),
        }
    }
}

/// Two aligned rows of slots: the subtree root `v` and its parent `v⁻`.
#[derive(Debug, Clone, Copy)]
pub struct Template {
    pub name: &'static str,
    pub v: &'static [Slot],
    pub parent: &'static [Slot],
}

impl Template {
    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }
}

macro_rules! slots {
    (@one -) => { Slot::NotTwo };
    (@one *) => { Slot::Any };
    (@one $c:literal) => { Slot::Exact($c) };
    ($($t:tt)*) => { &[ $( slots!(@one $t) ),* ] };
}

const P_V: &[Slot] = slots![2 3 - - - - - - - 5 0 1 2];
const I_V: &[Slot] = slots![2 3 - - - - 5 0 1 2 3 - - 5 0 1 2];
const F1_V: &[Slot] = slots![2 3 3 - - - - 5 0 1 2 3 - - - - 5 0 1 2];
const F2_V: &[Slot] = slots![2 3 - - - - - 5 0 1 2 3 - - - - 5 0 1 2];
const F34_V: &[Slot] = slots![2 3 - - - - - - 5 0 1 2 3 - - - 5 0 1 2];

/// The template catalogue. Single-letter names carry a constant-12 or
/// 9,7-alternating blink pattern for `v`; F-names carry the 10,9 and 11,8
/// alternations with free wildcard columns in the parent row.
pub const TEMPLATES: [Template; 14] = [
    Template {
        name: "P",
        v: P_V,
        parent: slots![5 5 0 1 2 3 - - - - - - -],
    },
    Template {
        name: "Q",
        v: P_V,
        parent: slots![4 4 5 0 1 2 3 - - - - - -],
    },
    Template {
        name: "R",
        v: P_V,
        parent: slots![5 5 5 0 1 2 3 - - - - - -],
    },
    Template {
        name: "S",
        v: P_V,
        parent: slots![5 5 0 1 2 3 4 5 0 1 2 3 4],
    },
    Template {
        name: "I",
        v: I_V,
        parent: slots![0 1 2 3 - - - - - - - - - - - - -],
    },
    Template {
        name: "J",
        v: I_V,
        parent: slots![5 5 0 1 2 3 - - - - - - - - - - -],
    },
    Template {
        name: "X",
        v: I_V,
        parent: slots![0 1 2 3 4 5 0 1 2 3 - - - - - - -],
    },
    Template {
        name: "Y",
        v: I_V,
        parent: slots![0 1 2 3 - - 5 0 1 2 3 - - - - - -],
    },
    Template {
        name: "Z",
        v: I_V,
        parent: slots![0 1 2 3 - - - 5 0 1 2 3 - - - - -],
    },
    Template {
        name: "W",
        v: I_V,
        parent: slots![5 5 0 1 2 3 - - 5 0 1 2 3 - - - -],
    },
    Template {
        name: "F1",
        v: F1_V,
        parent: slots![1 2 3 - - - - - * * * * * - * * - - - -],
    },
    Template {
        name: "F2",
        v: F2_V,
        parent: slots![5 5 0 1 2 3 - - - - * * * - * * - - - -],
    },
    Template {
        name: "F3",
        v: F34_V,
        parent: slots![0 1 2 3 - - - - - * * * * * - * - - - -],
    },
    Template {
        name: "F4",
        v: F34_V,
        parent: slots![5 5 0 1 2 3 - - - - * * * * - * - - - -],
    },
];

/// Look up a template by name.
pub fn template(name: &str) -> Result<&'static Template, ClassifyError> {
    TEMPLATES
        .iter()
        .find(|t| t.name == name)
        .ok_or_else(|| ClassifyError::UnknownTemplate(name.to_string()))
}

/// Whether the aligned traces begin with the named template: exact slots
/// must match exactly, `NotTwo` slots admit any color except 2, wildcard
/// slots admit anything.
pub fn match_template(
    trace_v: &[u8],
    trace_parent: &[u8],
    name: &str,
) -> Result<bool, ClassifyError> {
    let t = template(name)?;
    let got = trace_v.len().min(trace_parent.len());
    if got < t.len() {
        return Err(ClassifyError::TraceTooShort {
            needed: t.len(),
            got,
        });
    }
    Ok(t.v.iter().zip(trace_v).all(|(s, &c)| s.admits(c))
        && t.parent.iter().zip(trace_parent).all(|(s, &c)| s.admits(c)))
}

/// The recognized periodic subtree behaviors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SubtreeType {
    TypeA,
    TypeB,
    Fractal109,
    Fractal118,
    None,
}

impl std::fmt::Display for SubtreeType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SubtreeType::TypeA => "type-a",
            SubtreeType::TypeB => "type-b",
            SubtreeType::Fractal109 => "fractal-10/9",
            SubtreeType::Fractal118 => "fractal-11/8",
            SubtreeType::None => "none",
        })
    }
}

/// One checked blink: the time `v` blinked and whether the parent showed
/// color 2 at the required offsets after it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlinkEvidence {
    pub time: u64,
    pub parent_ok: bool,
}

/// Outcome of classifying one subtree root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubtreeTypeVerdict {
    pub vertex: usize,
    pub verdict: SubtreeType,
    /// Per-qualifying-blink records for the matched type — or, when the
    /// verdict is `None`, for the last candidate whose gap pattern matched
    /// but whose parent-color condition failed (empty if none did).
    pub evidence: Vec<BlinkEvidence>,
}

/// Gap signature and parent-color offsets of one candidate type. The gap
/// pattern alternates `hi, lo` (a constant pattern when `hi == lo`), and
/// the parent must show color 2 at one of the two offsets after each blink
/// that opens a `hi` gap.
struct Candidate {
    verdict: SubtreeType,
    hi: u64,
    lo: u64,
    offsets: [u64; 2],
}

const CANDIDATES: [Candidate; 4] = [
    Candidate {
        verdict: SubtreeType::TypeA,
        hi: 12,
        lo: 12,
        offsets: [4, 5],
    },
    Candidate {
        verdict: SubtreeType::TypeB,
        hi: 9,
        lo: 7,
        offsets: [2, 4],
    },
    Candidate {
        verdict: SubtreeType::Fractal109,
        hi: 10,
        lo: 9,
        offsets: [1, 4],
    },
    Candidate {
        verdict: SubtreeType::Fractal118,
        hi: 11,
        lo: 8,
        offsets: [2, 4],
    },
];

/// Whether the cyclic gap sequence alternates `hi, lo` in some phase.
/// Distinct values force an even count for the alternation to close.
fn gaps_alternate(gaps: &[u64], hi: u64, lo: u64) -> bool {
    if gaps.is_empty() || (hi != lo && !gaps.len().is_multiple_of(2)) {
        return false;
    }
    (0..2).any(|phase| {
        gaps.iter()
            .enumerate()
            .all(|(i, &g)| g == if (i + phase) % 2 == 0 { hi } else { lo })
    })
}

/// Classify the periodic behavior of `v` against the four recognized
/// blink-gap signatures, checking the parent-color condition at every
/// qualifying blink in the cycle. Returns the first matching type in
/// catalogue order, or a `None` verdict.
pub fn classify_subtree(
    t: &RootedTree,
    summary: &OrbitSummary,
    v: usize,
) -> Result<SubtreeTypeVerdict, ClassifyError> {
    if summary.kappa() != 6 {
        return Err(ClassifyError::KappaNotSix(summary.kappa()));
    }
    let parent = t.parent(v).ok_or(ClassifyError::RootHasNoParent(v))?;
    let rows = summary.blink_rows(v);
    let mut fallback_evidence = Vec::new();
    if !rows.is_empty() {
        let period = summary.period;
        let mut gaps: Vec<u64> = rows.windows(2).map(|w| (w[1] - w[0]) as u64).collect();
        gaps.push(rows[0] as u64 + period - rows[rows.len() - 1] as u64);
        for cand in &CANDIDATES {
            if !gaps_alternate(&gaps, cand.hi, cand.lo) {
                continue;
            }
            let mut evidence = Vec::new();
            let mut all_ok = true;
            for (i, &r) in rows.iter().enumerate() {
                if gaps[i] != cand.hi {
                    continue;
                }
                let parent_ok = cand.offsets.iter().any(|&d| {
                    summary
                        .cycle_state(r + d as usize)
                        .state(parent)
                        == 2
                });
                all_ok &= parent_ok;
                evidence.push(BlinkEvidence {
                    time: summary.transient + r as u64,
                    parent_ok,
                });
            }
            if all_ok {
                return Ok(SubtreeTypeVerdict {
                    vertex: v,
                    verdict: cand.verdict,
                    evidence,
                });
            }
            fallback_evidence = evidence;
        }
    }
    Ok(SubtreeTypeVerdict {
        vertex: v,
        verdict: SubtreeType::None,
        evidence: fallback_evidence,
    })
}

/// The synthesis partner giving each template a closed periodic trace: the
/// named template followed by its partner, overlapped one column at the
/// junction and one column around the wrap.
pub fn synthesis_plan(name: &str) -> Result<(&'static str, &'static str), ClassifyError> {
    let plan = match template(name)?.name {
        "P" => ("P", "P"),
        "Q" => ("Q", "Q"),
        "R" => ("R", "R"),
        // Two copies of S cannot join (column 12 of the parent row pins
        // color 4 against S's opening 5), but S joined with Q closes.
        "S" => ("S", "Q"),
        "I" => ("I", "J"),
        "J" => ("J", "I"),
        "X" => ("X", "X"),
        "Y" => ("Y", "Y"),
        "Z" => ("Z", "Z"),
        "W" => ("W", "W"),
        "F1" => ("F1", "F2"),
        "F2" => ("F2", "F1"),
        "F3" => ("F3", "F4"),
        "F4" => ("F4", "F3"),
        _ => unreachable!("catalogue is closed"),
    };
    Ok(plan)
}

/// The verdict a classifier is expected to reach on traces synthesized
/// from this template's plan.
pub fn expected_type(name: &str) -> Result<SubtreeType, ClassifyError> {
    Ok(match template(name)?.name {
        "P" | "Q" | "R" | "S" => SubtreeType::TypeA,
        "I" | "J" | "X" | "Y" | "Z" | "W" => SubtreeType::TypeB,
        "F1" | "F2" => SubtreeType::Fractal109,
        "F3" | "F4" => SubtreeType::Fractal118,
        _ => unreachable!("catalogue is closed"),
    })
}

/// Join two templates into one cyclic pair of slot rows: the second starts
/// on the first's final column, and the combined final column wraps onto
/// column 0. Both overlaps take the meet of the overlapping slots; an
/// empty meet means the pair cannot form a closed cycle.
pub fn join_templates(
    first: &str,
    second: &str,
) -> Result<(Vec<Slot>, Vec<Slot>), ClassifyError> {
    let a = template(first)?;
    let b = template(second)?;
    let join_row = |ra: &[Slot], rb: &[Slot], side| -> Result<Vec<Slot>, ClassifyError> {
        let err = || ClassifyError::IncompatibleJunction {
            first: first.to_string(),
            second: second.to_string(),
            side,
        };
        let mut row = Vec::with_capacity(ra.len() + rb.len() - 2);
        row.extend_from_slice(&ra[..ra.len() - 1]);
        row.push(ra[ra.len() - 1].meet(rb[0]).ok_or_else(err)?);
        row.extend_from_slice(&rb[1..rb.len() - 1]);
        row[0] = row[0].meet(rb[rb.len() - 1]).ok_or_else(err)?;
        Ok(row)
    };
    Ok((
        join_row(a.v, b.v, "v")?,
        join_row(a.parent, b.parent, "parent")?,
    ))
}

/// Instantiate a slot row with concrete colors: exact slots keep their
/// color, `NotTwo` slots draw uniformly from the five non-2 colors, and
/// wildcards draw uniformly from all six.
pub fn fill_slots<R: Rng + ?Sized>(slots: &[Slot], rng: &mut R) -> Vec<u8> {
    const NOT_TWO: [u8; 5] = [0, 1, 3, 4, 5];
    slots
        .iter()
        .map(|s| match s {
            Slot::Exact(c) => *c,
            Slot::NotTwo => NOT_TWO[rng.gen_range(0..5)],
            Slot::Any => rng.gen_range(0..6u8),
        })
        .collect()
}

/// Synthesize a random concrete cyclic trace for the template's plan:
/// `(v row, parent row)`, one full period.
pub fn synthesize_cycle<R: Rng + ?Sized>(
    name: &str,
    rng: &mut R,
) -> Result<(Vec<u8>, Vec<u8>), ClassifyError> {
    let (first, second) = synthesis_plan(name)?;
    let (v_slots, parent_slots) = join_templates(first, second)?;
    Ok((fill_slots(&v_slots, rng), fill_slots(&parent_slots, rng)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Configuration;
    use crate::graph::{build_graph, root_tree};
    use crate::orbit::{blinking_profile, extract_blink_digraph, find_orbit};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Deterministic instantiation for literal-row tests.
    fn fill_fixed(slots: &[Slot], not_two: u8, any: u8) -> Vec<u8> {
        slots
            .iter()
            .map(|s| match s {
                Slot::Exact(c) => *c,
                Slot::NotTwo => not_two,
                Slot::Any => any,
            })
            .collect()
    }

    /// Wrap a `(v row, parent row)` cyclic trace as an orbit summary on the
    /// two-vertex tree rooted at the parent (vertex 0).
    fn trace_summary(v_row: &[u8], parent_row: &[u8]) -> OrbitSummary {
        let cycle = v_row
            .iter()
            .zip(parent_row)
            .map(|(&v, &p)| Configuration::new(6, vec![p, v]).unwrap())
            .collect();
        OrbitSummary::synthetic(cycle).unwrap()
    }

    #[test]
    fn template_lengths_and_lookup() {
        for t in &TEMPLATES {
            assert_eq!(t.v.len(), t.parent.len(), "template {}", t.name);
        }
        assert_eq!(template("P").unwrap().len(), 13);
        assert_eq!(template("I").unwrap().len(), 17);
        assert_eq!(template("F1").unwrap().len(), 20);
        assert_eq!(
            template("nope").unwrap_err(),
            ClassifyError::UnknownTemplate("nope".into())
        );
    }

    #[test]
    fn literal_rows_match_their_template() {
        for t in &TEMPLATES {
            let v = fill_fixed(t.v, 4, 0);
            let p = fill_fixed(t.parent, 4, 0);
            assert!(match_template(&v, &p, t.name).unwrap(), "template {}", t.name);
        }
    }

    #[test]
    fn a_two_in_a_dash_slot_breaks_the_match() {
        let t = template("P").unwrap();
        let v = fill_fixed(t.v, 4, 0);
        let mut p = fill_fixed(t.parent, 4, 0);
        // Column 6 of P's parent row is a dash slot.
        assert!(matches!(t.parent[6], Slot::NotTwo));
        p[6] = 2;
        assert!(!match_template(&v, &p, "P").unwrap());
    }

    #[test]
    fn wildcards_admit_two() {
        let t = template("F1").unwrap();
        let v = fill_fixed(t.v, 4, 2);
        let p = fill_fixed(t.parent, 4, 2);
        assert!(match_template(&v, &p, "F1").unwrap());
    }

    #[test]
    fn short_trace_is_an_error() {
        assert_eq!(
            match_template(&[2, 3], &[5, 5], "P").unwrap_err(),
            ClassifyError::TraceTooShort { needed: 13, got: 2 }
        );
    }

    #[test]
    fn every_plan_joins_and_has_the_advertised_gaps() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for t in &TEMPLATES {
            let (v_row, parent_row) = synthesize_cycle(t.name, &mut rng).unwrap();
            assert_eq!(v_row.len(), parent_row.len());
            let s = trace_summary(&v_row, &parent_row);
            let profile = blinking_profile(&s, 1).unwrap();
            let expected_gaps: &[u64] = match expected_type(t.name).unwrap() {
                SubtreeType::TypeA => &[12, 12],
                SubtreeType::TypeB => &[9, 7, 9, 7],
                SubtreeType::Fractal109 => &[10, 9, 10, 9],
                SubtreeType::Fractal118 => &[11, 8, 11, 8],
                SubtreeType::None => unreachable!(),
            };
            assert_eq!(profile.gaps, expected_gaps, "template {}", t.name);
        }
    }

    #[test]
    fn synthesized_traces_classify_as_expected() {
        let g = build_graph(2, &[(0, 1)]).unwrap();
        let t = root_tree(&g, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for tpl in &TEMPLATES {
            for _ in 0..5 {
                let (v_row, parent_row) = synthesize_cycle(tpl.name, &mut rng).unwrap();
                let s = trace_summary(&v_row, &parent_row);
                let verdict = classify_subtree(&t, &s, 1).unwrap();
                assert_eq!(
                    verdict.verdict,
                    expected_type(tpl.name).unwrap(),
                    "template {}",
                    tpl.name
                );
                assert!(verdict.evidence.iter().all(|e| e.parent_ok));
                assert!(!verdict.evidence.is_empty());
            }
        }
    }

    #[test]
    fn synchronized_orbit_classifies_as_none() {
        let g = build_graph(2, &[(0, 1)]).unwrap();
        let t = root_tree(&g, 0).unwrap();
        let s = find_orbit(&g, &Configuration::new(6, vec![0, 1]).unwrap(), 1000).unwrap();
        let verdict = classify_subtree(&t, &s, 1).unwrap();
        assert_eq!(verdict.verdict, SubtreeType::None, "gaps of 6 match nothing");
    }

    #[test]
    fn classification_preconditions() {
        let g = build_graph(2, &[(0, 1)]).unwrap();
        let t = root_tree(&g, 0).unwrap();
        let seven = OrbitSummary::synthetic(vec![Configuration::new(7, vec![0, 1]).unwrap()])
            .unwrap();
        assert_eq!(
            classify_subtree(&t, &seven, 1).unwrap_err(),
            ClassifyError::KappaNotSix(7)
        );
        let six = OrbitSummary::synthetic(vec![Configuration::new(6, vec![0, 1]).unwrap()])
            .unwrap();
        assert_eq!(
            classify_subtree(&t, &six, 0).unwrap_err(),
            ClassifyError::RootHasNoParent(0)
        );
    }

    #[test]
    fn double_s_cannot_close_but_s_q_can() {
        assert_eq!(
            join_templates("S", "S").unwrap_err(),
            ClassifyError::IncompatibleJunction {
                first: "S".into(),
                second: "S".into(),
                side: "parent"
            }
        );
        assert!(join_templates("S", "Q").is_ok());
    }

    #[test]
    fn fractal_trace_digraph_has_two_nodes_with_weights_ten_and_nine() {
        // Two copies of F1 joined with identical deterministic fills give a
        // 38-step cycle whose local configurations at v's blinks alternate
        // between two values.
        let (v_slots, parent_slots) = join_templates("F1", "F1").unwrap();
        let v_row = fill_fixed(&v_slots, 4, 0);
        let parent_row = fill_fixed(&parent_slots, 4, 0);
        let s = trace_summary(&v_row, &parent_row);
        let g = build_graph(2, &[(0, 1)]).unwrap();
        let d = extract_blink_digraph(&g, &s, 1, &[1, 0]).unwrap();
        assert_eq!(d.nodes.len(), 2);
        assert_eq!(d.nodes[0], vec![2, 1]);
        let mut gap_sets: Vec<Vec<u64>> = d.edges.iter().map(|e| e.gaps.clone()).collect();
        gap_sets.sort();
        assert_eq!(gap_sets, vec![vec![9], vec![10]]);
    }

    #[test]
    fn alternation_detector() {
        assert!(gaps_alternate(&[12, 12], 12, 12));
        assert!(gaps_alternate(&[12], 12, 12));
        assert!(gaps_alternate(&[9, 7, 9, 7], 9, 7));
        assert!(gaps_alternate(&[7, 9, 7, 9], 9, 7));
        assert!(!gaps_alternate(&[9, 7, 9], 9, 7), "odd count cannot close");
        assert!(!gaps_alternate(&[9, 9, 7, 7], 9, 7));
        assert!(!gaps_alternate(&[], 12, 12));
    }
}
