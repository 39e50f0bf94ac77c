use std::collections::BTreeSet;

use super::require_maximal;
use crate::error::{Error, Result};
use crate::lattice::AffineUnimodularMap;
use crate::num::{dot_int, det_int, Rat};
use crate::tropical::TropicalComplex;

/// The piece of `Π ∖ Ξ` around one vertex, as the cells whose closure
/// contains that vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivePiece {
    pub vertex: usize,
    /// indices into `A` of the dual simplex
    pub dual_simplex: Vec<usize>,
    pub fragments: Vec<usize>,
}

pub fn primitive_pieces(c: &TropicalComplex) -> Result<Vec<PrimitivePiece>> {
    require_maximal(c)?;
    Ok(c.vertex_ids()
        .into_iter()
        .map(|v| PrimitivePiece {
            vertex: v,
            dual_simplex: c.cells[v].dual.clone(),
            fragments: (0..c.cells.len())
                .filter(|&k| c.cells[k].dim >= 1 && c.is_face_of(v, k))
                .collect(),
        })
        .collect())
}

/// `y ↦ M y` carries the piece into `Σ_n + translate`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceNormalization {
    pub map: AffineUnimodularMap,
    pub translate: Vec<Rat>,
}

/// Ray of `Σ_n` on which `d` lies (`0..n` for `−e_i`, `n+1` for `(1,…,1)`).
fn sigma_ray(d: &[i64]) -> Option<usize> {
    let m = d.len();
    if d.iter().all(|&x| x > 0) && d.iter().all(|&x| x == d[0]) {
        return Some(m);
    }
    let nz: Vec<usize> = (0..m).filter(|&i| d[i] != 0).collect();
    (nz.len() == 1 && d[nz[0]] < 0).then(|| nz[0])
}

/// The linear part sends the edge directions of the dual simplex
/// `s_0, …, s_{n+1}` to the rays of `Σ_n`: its rows are `s_i − s_0`.
pub fn normalize_piece(c: &TropicalComplex, p: &PrimitivePiece) -> Result<PieceNormalization> {
    let sub = require_maximal(c)?;
    let mut simplex: Vec<Vec<i64>> = p.dual_simplex.iter().map(|&i| sub.point(i).0.clone()).collect();
    simplex.sort();
    let s0 = simplex[0].clone();
    let mut rows: Vec<Vec<i64>> = simplex[1..]
        .iter()
        .map(|s| s.iter().zip(&s0).map(|(a, b)| a - b).collect())
        .collect();
    rows.sort_by(|a, b| b.cmp(a));
    if det_int(&rows) < 0.into() {
        rows.swap(0, 1);
    }
    let m = c.ambient_dim;
    let map = AffineUnimodularMap::new(rows, vec![0; m])
        .map_err(|_| Error::NotUnimodular(p.dual_simplex.clone()))?;
    let b = &c.cells[p.vertex].vertices[0];
    let translate: Vec<Rat> = map.matrix.iter().map(|r| dot_int(b, r)).collect();

    // every germ at the vertex must land on rays of Σ_n, k distinct rays per k-cell
    for &f in &p.fragments {
        let mut rays = BTreeSet::new();
        for e in c.cofaces(p.vertex) {
            if !c.is_face_of(e, f) {
                continue;
            }
            let image = map.apply_linear(&c.edge_direction(p.vertex, e));
            let ray = sigma_ray(&image).ok_or_else(|| Error::NotUnimodular(p.dual_simplex.clone()))?;
            rays.insert(ray);
        }
        if rays.len() != c.cells[f].dim {
            return Err(Error::NotUnimodular(p.dual_simplex.clone()));
        }
    }
    Ok(PieceNormalization { map, translate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticePoint;
    use crate::num::rat;
    use crate::subdivision::{build_maximal_lifting, LiftingFunction};
    use crate::tropical::corner_locus;

    #[test]
    fn census() {
        for (n, d) in [(1usize, 1i64), (1, 3), (2, 2)] {
            let c = corner_locus(&build_maximal_lifting(n, d).unwrap()).unwrap();
            let pieces = primitive_pieces(&c).unwrap();
            assert_eq!(pieces.len() as i64, d.pow(n as u32 + 1));
            for p in &pieces {
                normalize_piece(&c, p).unwrap();
            }
        }
    }

    #[test]
    fn sigma_is_identity() {
        let v = LiftingFunction::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[0; 4]).unwrap();
        let c = corner_locus(&v).unwrap();
        let p = &primitive_pieces(&c).unwrap()[0];
        let nm = normalize_piece(&c, p).unwrap();
        assert_eq!(nm.map, AffineUnimodularMap::identity(3));
        assert!(nm.translate.iter().all(|x| *x == rat(0)));
    }

    #[test]
    fn shifted_simplex_is_translation() {
        let v = LiftingFunction::from_ints(&[&[1, 0], &[2, 0], &[1, 1]], &[0, 3, 1]).unwrap();
        let c = corner_locus(&v).unwrap();
        let nm = normalize_piece(&c, &primitive_pieces(&c).unwrap()[0]).unwrap();
        assert_eq!(nm.map.matrix, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(nm.translate, vec![rat(3), rat(1)]);
    }

    #[test]
    fn non_maximal_rejected() {
        let v = LiftingFunction::new(
            vec![LatticePoint(vec![0, 0]), LatticePoint(vec![2, 0]), LatticePoint(vec![0, 1])],
            vec![rat(0); 3],
        )
        .unwrap();
        assert!(primitive_pieces(&corner_locus(&v).unwrap()).is_err());
    }
}
