//! Executable lattice-theoretic dimension theory.
//!
//! * [`lattice`]: finite distributive lattices as set families.
//! * [`formula`]: first-order lattice formulas, brute-force model checking,
//!   and the covering-dimension, partition and cut formulas.
//! * [`wallman`]: ultrafilters and the Wallman space of a finite lattice.
//! * [`elementarity`]: witness closure of a sublattice for a finite family
//!   of existential schemas, the finite stand-in for Löwenheim–Skolem.
//! * [`interval`]: exact closed subsets of `[0,1]` with endpoints in
//!   `Q(√2)`, the generated interval lattices, and cut/partition tools.
//! * [`corpus`]: seeded generation of small test lattices.

pub mod config;
pub mod corpus;
pub mod elementarity;
pub mod error;
pub mod exec;
pub mod formula;
pub mod interval;
pub mod lattice;
pub mod wallman;

pub use config::Bounds;
pub use error::{Error, Result};
pub use exec::Exec;
pub use lattice::{ElementRef, Lattice};
