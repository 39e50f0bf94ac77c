use num_traits::Zero;

use super::require_maximal;
use crate::error::Result;
use crate::num::{rat, Rat};
use crate::tropical::TropicalComplex;

/// A simplex of the cutting locus: the barycenters of a tower of bounded cells
/// `F_1 ⊂ … ⊂ F_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSimplex {
    pub tower: Vec<usize>,
    pub points: Vec<Vec<Rat>>,
}

impl CutSimplex {
    pub fn dim(&self) -> usize {
        self.tower.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuttingLocus {
    pub simplices: Vec<CutSimplex>,
}

impl CuttingLocus {
    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.dim()).max()
    }

    pub fn vertices(&self) -> Vec<&Vec<Rat>> {
        self.simplices.iter().filter(|s| s.dim() == 0).map(|s| &s.points[0]).collect()
    }
}

/// Vertex average of a bounded cell.
pub fn barycenter(c: &TropicalComplex, cell: usize) -> Vec<Rat> {
    let vs = &c.cells[cell].vertices;
    let mut p = vec![Rat::zero(); c.ambient_dim];
    for v in vs {
        for (a, b) in p.iter_mut().zip(v) {
            *a += b;
        }
    }
    let k = rat(vs.len() as i64);
    p.into_iter().map(|x| x / &k).collect()
}

/// `Ξ`: the simplicial complex on barycenters of bounded positive-dimensional
/// cells whose simplices are towers of such cells.
pub fn cutting_locus(c: &TropicalComplex) -> Result<CuttingLocus> {
    require_maximal(c)?;
    let bounded: Vec<usize> = c
        .cells
        .iter()
        .enumerate()
        .filter(|(_, x)| x.bounded && x.dim >= 1)
        .map(|(i, _)| i)
        .collect();
    let mut simplices = Vec::new();
    let mut stack: Vec<Vec<usize>> = bounded.iter().map(|&b| vec![b]).collect();
    while let Some(tower) = stack.pop() {
        let top = *tower.last().unwrap();
        for &b in &bounded {
            if c.cells[b].dim > c.cells[top].dim && c.is_face_of(top, b) {
                let mut t = tower.clone();
                t.push(b);
                stack.push(t);
            }
        }
        let points = tower.iter().map(|&f| barycenter(c, f)).collect();
        simplices.push(CutSimplex { tower, points });
    }
    simplices.sort_by(|a, b| a.tower.len().cmp(&b.tower.len()).then_with(|| a.tower.cmp(&b.tower)));
    Ok(CuttingLocus { simplices })
}
