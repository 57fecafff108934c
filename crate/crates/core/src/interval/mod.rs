//! Exact closed subsets of the unit interval.
//!
//! Endpoints live in the field `Q(√2)`, so both rational and irrational
//! cut points compare exactly. Sets are finite unions of segments, points
//! and geometric tails `{c ± 2^-n : n ≥ n0} ∪ {c}`, kept in a canonical form
//! so that equality of sets is equality of values.

mod base;
mod bounded;
mod demo;
pub mod gen;
mod literal;
mod num;
mod set;
mod swell;
mod topo;

pub use base::{generate_sample, generate_sample_with, BaseSpec};
pub use bounded::{bounded_eval, BoundedModel};
pub use demo::{
    default_base, default_depth, run_demo, DemoReport, ElementEvidence, Findings, EVIDENCE_LABEL,
};
pub use num::Num;
pub use set::{Dir, Indices, IntervalSet, Piece, Segment, Span, Tail};
pub use swell::{is_swelling, swell_1d, Swell};
pub use topo::{
    complement_gaps, component_split, is_connected_pointset, make_cut, verify_cut,
    verify_partition, CutError, Gap, MixedComponent,
};
