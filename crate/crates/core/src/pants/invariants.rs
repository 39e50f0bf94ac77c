use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::dilated_simplex;
use crate::subdivision::LiftingFunction;
use crate::tropical::stratify;

/// Number of connected components of the boundary stratum of `P̄_n` made of
/// copies of `P_j`. They are counted as the faces of dimension `j + 1` of the
/// unit simplex along which the compactified `Σ_n` meets its boundary.
pub fn boundary_strata_count(n: usize, j: usize) -> Result<u64> {
    if j >= n {
        return Err(Error::InvalidArgument(format!("need 0 <= j <= n-1, got n={n}, j={j}")));
    }
    let delta = dilated_simplex(n, 1)?;
    let strata = stratify(&LiftingFunction::constant_on(&delta))?;
    let faces: BTreeSet<usize> = strata.cells.iter().filter(|c| c.l == j).map(|c| c.face).collect();
    Ok(faces.len() as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub n: usize,
    pub d: i64,
    pub p_g: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<i64>,
}

/// Geometric genus by interior lattice-point count; Euler characteristic and
/// signature of a degree-`d` surface in `CP³` when `n = 2`.
pub fn hypersurface_invariants(n: usize, d: i64) -> Result<InvariantReport> {
    let p_g = dilated_simplex(n, d)?.interior_lattice_points().len() as i64;
    let (mut chi, mut sigma) = (None, None);
    if n == 2 {
        let closed = (d - 1) * (d - 2) * (d - 3) / 6;
        if closed != p_g {
            return Err(Error::InvalidArgument(format!(
                "interior count {p_g} disagrees with (d-1)(d-2)(d-3)/6 = {closed}"
            )));
        }
        chi = Some(d * d * d - 4 * d * d + 6 * d);
        sigma = Some((4 * d - d * d * d) / 3);
    }
    Ok(InvariantReport { n, d, p_g, chi, sigma })
}
