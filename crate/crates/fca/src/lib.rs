//! Simulation and analysis of the κ-color firefly cellular automaton on
//! finite connected graphs.
//!
//! Each vertex carries a state in Z_κ that normally advances by one per
//! synchronous step; a vertex past the distinguished blinking state is held
//! in place for a step whenever a neighbor blinks. The crate provides:
//!
//! - graph construction, rooted trees, branch decomposition, and exhaustive
//!   tree enumeration ([`graph`]);
//! - the transition rule, rotation-adjusted phases, circular displacement,
//!   and width ([`dynamics`]);
//! - exact orbit detection with transient/period splitting, blink profiles,
//!   blink digraphs, and profile refinement ([`orbit`]);
//! - local blink-pattern templates and subtree classification for the
//!   six-color rule ([`classify`]);
//! - explicit families of non-synchronizing tree colorings for κ ≥ 7 and
//!   high-degree obstructions ([`construct`]);
//! - randomized and exhaustive verification sweeps over trees and colorings
//!   ([`harness`]);
//! - text formats for graphs, colorings, traces, and reports ([`io`]).

pub mod classify;
pub mod construct;
pub mod dynamics;
pub mod graph;
pub mod harness;
pub mod io;
pub mod orbit;
