//! Finite combinatorics of sphere complexes of doubled handlebodies.
//!
//! * [`complex`]: flag complexes, links, joins, cliques and map searches.
//! * [`genus_zero`]: the boundary-partition model of the `s`-holed sphere.
//! * [`pants`]: pants decompositions, flips, dual multigraphs, link types.
//! * [`whitney`]: edge isomorphisms of multigraphs and their lifts.
//! * [`homology`]: integral simplicial homology via Smith normal form.
//! * [`rigidity`]: automorphisms, rigidity certificates and related scans.

pub mod complex;
pub mod error;
pub mod genus_zero;
pub mod homology;
pub mod pants;
pub mod rigidity;
pub mod sampling;
pub mod whitney;

pub use complex::{FlagComplex, Simplex, VertexMap};
pub use error::{Error, Result};
pub use genus_zero::{ManifoldSignature, SpherePartition};
