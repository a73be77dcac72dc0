//! Exact Alexander invariants and Chen ranks of hyperplane arrangement
//! complements.
//!
//! The crate computes, with exact integer and rational arithmetic:
//!
//! * Fox free-derivative gradients and the Gassner (Magnus) representation of
//!   basis-conjugating free-group automorphisms ([`word`], [`braid`]);
//! * Koszul complex differentials over the Laurent ring and localized
//!   subcomplexes attached to the vertices of a line arrangement ([`koszul`]);
//! * finite presentations of the Alexander invariant of an arrangement group
//!   from a braid monodromy, a wiring diagram, or lattice data ([`alexinv`]);
//! * the linearized chain maps, cokernel tests and combinatorial lower bounds
//!   governing decomposability ([`localcc`]);
//! * Chen ranks through a tangent-cone standard basis over the truncated
//!   polynomial ring, with an independent linear-algebra oracle ([`chen`]);
//! * exact rational ingestion of real line arrangements: deconing, generic
//!   frames, wiring diagrams and braid monodromy ([`geom`]).

pub mod alexinv;
pub mod braid;
pub mod chen;
pub mod error;
pub mod geom;
pub mod intmat;
pub mod koszul;
pub mod localcc;
pub mod matrix;
pub mod ring;
pub mod subsets;
pub mod word;

pub use error::ArralexError;
