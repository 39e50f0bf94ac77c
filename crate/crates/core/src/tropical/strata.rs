//! Combinatorial closure of a maximal complex inside its Newton polytope.
//!
//! A closure cell is a pair `(F, G)`: a face `F` of `Δ` of positive dimension
//! (the whole polytope for cells of `Π` itself) and a face `G ⊆ F` of the
//! subdivision with `dim G ≥ 1`. It is the cell dual to `G` in the face
//! complex of `F`, of dimension `dim F − dim G`.

use std::collections::BTreeMap;

use super::complex::{corner_locus_of, TropicalComplex};
use crate::error::{Error, Result};
use crate::subdivision::{is_subset, is_unimodular, lower_hull_subdivision, LiftingFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataCell {
    /// index into the Newton polytope's face list
    pub face: usize,
    /// index into the subdivision's face list
    pub dual: usize,
    pub k: usize,
    pub l: usize,
}

#[derive(Clone, Debug)]
pub struct StratifiedComplex {
    pub complex: TropicalComplex,
    pub cells: Vec<StrataCell>,
}

impl StratifiedComplex {
    /// `a` lies in the closure of `b`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        let sub = self.complex.subdivision().expect("built from a lifting");
        let faces = sub.parent().faces();
        let (ca, cb) = (&self.cells[a], &self.cells[b]);
        is_subset(&faces[ca.face].vertices, &faces[cb.face].vertices)
            && is_subset(&sub.faces()[cb.dual].points, &sub.faces()[ca.dual].points)
    }

    /// Number of closure cells of each label `(k, l)`.
    pub fn census(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for c in &self.cells {
            *out.entry((c.k, c.l)).or_insert(0) += 1;
        }
        out
    }

    pub fn top_dim(&self) -> usize {
        self.complex.ambient_dim - 1
    }
}

pub fn stratify(v: &LiftingFunction) -> Result<StratifiedComplex> {
    let sub = lower_hull_subdivision(v)?;
    if !is_unimodular(&sub).unimodular {
        return Err(Error::NotMaximal);
    }
    let complex = corner_locus_of(&sub);
    let delta = sub.parent();
    let mut cells = Vec::new();
    for (fi, face) in delta.faces().iter().enumerate() {
        if face.dim == 0 {
            continue;
        }
        // facets of Δ containing F
        let containing: Vec<usize> = delta
            .facets()
            .iter()
            .enumerate()
            .filter(|(_, fac)| is_subset(&face.vertices, &fac.vertices))
            .map(|(k, _)| k)
            .collect();
        for (gi, g) in sub.faces().iter().enumerate() {
            if g.dim == 0 || g.dim > face.dim {
                continue;
            }
            if containing.iter().all(|k| g.boundary_facets.contains(k)) {
                cells.push(StrataCell {
                    face: fi,
                    dual: gi,
                    k: face.dim - g.dim,
                    l: face.dim - 1,
                });
            }
        }
    }
    Ok(StratifiedComplex { complex, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdivision::build_maximal_lifting;

    #[test]
    fn sigma_one_census() {
        let s = stratify(&build_maximal_lifting(1, 1).unwrap()).unwrap();
        let census: Vec<((usize, usize), usize)> = s.census().into_iter().collect();
        assert_eq!(census, vec![((0, 0), 3), ((0, 1), 1), ((1, 1), 3)]);
    }

    #[test]
    fn label_types() {
        let s = stratify(&build_maximal_lifting(2, 1).unwrap()).unwrap();
        assert_eq!(s.census().len(), 6);
        let sq = LiftingFunction::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], &[0, 0, 0, 0]).unwrap();
        assert!(matches!(stratify(&sq), Err(Error::NotMaximal)));
    }
}
