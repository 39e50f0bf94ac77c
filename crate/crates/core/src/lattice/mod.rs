//! Exact lattice geometry: points, covectors, polytopes, hulls and integer
//! normal forms.

pub mod hull;
pub mod point;
pub mod polytope;
pub mod smith;
pub mod unimodular;

pub use point::{primitive_and_weight, Covector, LatticePoint};
pub use polytope::{dilated_simplex, binomial, Face, FacetInequality, LatticePolytope};
pub use smith::smith_invariants;
pub use unimodular::AffineUnimodularMap;
