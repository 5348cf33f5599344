//! Exact rings, matrices, graded chain complexes and their homology.

mod complex;
mod homology;
mod iso;
pub mod json;
mod laurent;
mod matrix;
mod ring;
mod snf;

pub use complex::{BasisElement, GradedChainComplex};
pub use homology::{homology, HomologyGroup, HomologySummary};
pub use iso::{complexes_isomorphic, IsoWitness, NODE_CAP};
pub use laurent::LaurentPoly;
pub use matrix::ExactMatrix;
pub use ring::{Elem, RingId};
pub use snf::{field_rank, invariant_factors, smith_normal_form, SmithForm};
