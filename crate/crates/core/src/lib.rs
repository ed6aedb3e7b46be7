//! Finite duality toolkit for bounded lattices.
//!
//! * [`lattice`]: finite bounded lattices, irreducibles, filters and ideals,
//!   embeddings, density and compactness.
//! * [`ploscica`]: maximal disjoint filter–ideal pairs and the dual graph.
//! * [`structures`]: graphs and frames with (S), (R), (Ti) checkers.
//! * [`functors`]: the frame `ρ(X)` of a graph, the graph `gr(F)` of a
//!   frame, the canonical isomorphisms, morphisms and naturality.
//! * [`galois`]: Galois-closed sets, the frame of a perfect lattice, and the
//!   canonical extension built two independent ways.
//! * [`pti`]: the PTi condition and its frame-level form.
//! * [`generators`]: seeded random and exhaustive structure generation.

// Points of both sorts are indices into parallel tables; index loops read
// closer to the quantifiers than zipped iterators.
#![allow(clippy::needless_range_loop)]

pub mod fixtures;
pub mod functors;
pub mod galois;
pub mod generators;
pub mod iso;
pub mod lattice;
pub mod ploscica;
pub mod pti;
pub mod relation;
pub mod report;
pub mod structures;

pub use lattice::{build_lattice, FiniteLattice, LatticeEmbedding, LatticeError};
pub use relation::{Bits, Relation};
pub use report::{CheckReport, Witness, WitnessMode};
pub use structures::{check_frame, check_graph, ConditionReport, Frame, Graph};
