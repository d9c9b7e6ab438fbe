//! Decide k-decomposability and weak k-decomposability of pure simplicial
//! complexes with replayable certificates, build transportation polytopes
//! and their polar simplicial complexes from integer margins, and check the
//! Hirsch and Billera-Provan diameter bounds.
//!
//! The crate is organized around [`complex::SimplicialComplex`] (facet-list
//! representation, links, deletions, ridge graph, diameter),
//! [`decomp`] (the decision procedures and bound checks),
//! [`transport`] (exact vertex enumeration and polar complexes), and
//! [`family`] (closed-form generators for the polar complexes of the
//! 2 x n transportation polytopes that fail weak vertex-decomposability).

pub mod complex;
pub mod decomp;
mod error;
pub mod face;
pub mod family;
pub mod io;
pub mod transport;

pub use complex::{CanonicalKey, DiameterReport, FacetGraph, SimplicialComplex};
pub use decomp::{
    check_billera_provan, check_hirsch, decide, is_k_decomposable, is_weakly_k_decomposable,
    verify_certificate, BoundKind, BoundReport, Certificate, Decision, Mode, SearchOptions,
};
pub use error::{Error, Result};
pub use face::{Face, VertexId};
pub use transport::{make_polytope, Margins, TransportationPolytope, VertexMatrix};
