//! Minimum-knock planning for tightly packed unit blocks on a tabletop grid.
//!
//! Blocks sit on an `m x n` grid with no clearance. A block can be picked
//! once it has at most one neighbor or two collinear neighbors; otherwise a
//! directional knock along a clear grid ray must make room first. This crate
//! computes plans with a provably minimum number of knocks:
//!
//! 1. [`grid`] — instances, feasibility predicates, exhaustive-pick cleanup;
//! 2. [`gadgets`] — unit faces and the minimal non-pickable patterns;
//! 3. [`matching`] — optimal exact face covers via maximum matching
//!    ([`blossom`] supplies the general-graph matcher);
//! 4. [`executor`] — turning a cover into a feasible, validated action plan;
//! 5. [`oracle`] — exhaustive ground truth for small instances;
//! 6. [`bench`] — the synthetic benchmark harness.

pub mod bench;
pub mod blossom;
pub mod executor;
pub mod gadgets;
pub mod grid;
pub mod matching;
pub mod oracle;

pub use executor::{solve, validate_plan, Action, Plan, SolveError, ValidationReport};
pub use gadgets::{enumerate_faces, Face, Gadget, GadgetKind};
pub use grid::{BlockSet, Direction, GridCoord, GridHull};
pub use matching::{optimal_cover, ExactCover};
