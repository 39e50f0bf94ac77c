//! Tropical hypersurfaces: corner loci, balancing, reconstruction, face
//! complexes, compactification strata and the moment reparametrization.

pub mod complex;
pub mod face;
pub mod moment;
pub mod region;
pub mod strata;

pub use complex::{
    check_balanced, corner_locus, corner_locus_of, vertex_edge_weights, AffineConstraint,
    BalanceCertificate, CellSignature, TropicalCell, TropicalComplex, VertexEdge,
};
pub use face::{face_chart, face_complex, FaceChart};
pub use moment::phi_delta;
pub use region::{extract_region_graph, reconstruct_lifting, RegionGraph, Wall};
pub use strata::{stratify, StrataCell, StratifiedComplex};
