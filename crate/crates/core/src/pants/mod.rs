//! Pair-of-pants decomposition of maximal complexes: the cutting locus,
//! primitive pieces and their normalization, homology of the compactified
//! base, and numerical invariants of hypersurfaces.

pub mod cutting;
pub mod homology;
pub mod invariants;
pub mod pieces;

pub use cutting::{cutting_locus, CutSimplex, CuttingLocus};
pub use homology::{base_homology, HomologyReport};
pub use invariants::{boundary_strata_count, hypersurface_invariants, InvariantReport};
pub use pieces::{normalize_piece, primitive_pieces, PieceNormalization, PrimitivePiece};

use crate::error::{Error, Result};
use crate::subdivision::{is_unimodular, RegularSubdivision};
use crate::tropical::TropicalComplex;

pub(crate) fn require_maximal(c: &TropicalComplex) -> Result<&RegularSubdivision> {
    let sub = c.subdivision().ok_or(Error::NoDualData)?;
    if !is_unimodular(sub).unimodular {
        return Err(Error::NotMaximal);
    }
    Ok(sub)
}
