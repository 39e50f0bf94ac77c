//! Region adjacency graphs of `R^{n+1} ∖ Π` and the inverse construction that
//! recovers a lifting function from them.

use std::collections::VecDeque;

use num_traits::Zero;

use super::complex::TropicalComplex;
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::num::{dot_int, rat, Rat};
use crate::subdivision::LiftingFunction;

/// A wall between regions `a` and `b`: the weighted covector `c` is the jump of
/// the gradient when crossing from `a` to `b`, and `anchor` is a point of the wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub a: usize,
    pub b: usize,
    pub covector: Vec<i64>,
    pub anchor: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionGraph {
    pub ambient_dim: usize,
    pub regions: usize,
    pub walls: Vec<Wall>,
    pub reference: usize,
    /// lattice point of `A` dual to each region, when known
    pub labels: Vec<Option<LatticePoint>>,
}

/// One region per vertex of `D_v`, one wall per top-dimensional cell.
pub fn extract_region_graph(c: &TropicalComplex) -> Result<RegionGraph> {
    let sub = c.subdivision().ok_or(Error::NoDualData)?;
    let verts = sub.vertices();
    let region_of = |i: usize| verts.binary_search(&i).expect("dual edge endpoints are vertices");
    let n = c.ambient_dim - 1;
    let walls = c
        .cells_of_dim(n)
        .map(|(_, cell)| {
            let (a, b) = (region_of(cell.dual[0]), region_of(cell.dual[1]));
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let covector = sub.point(verts[hi]).sub(sub.point(verts[lo]));
            Wall {
                a: lo,
                b: hi,
                covector,
                anchor: cell.interior_point(),
            }
        })
        .collect();
    Ok(RegionGraph {
        ambient_dim: c.ambient_dim,
        regions: verts.len(),
        walls,
        reference: 0,
        labels: verts.iter().map(|&i| Some(sub.point(i).clone())).collect(),
    })
}

/// Propagates affine functions across walls starting from `H ≡ 0` on the
/// reference region; gradients become `A` and negated constants become `v`.
pub fn reconstruct_lifting(g: &RegionGraph) -> Result<LiftingFunction> {
    let m = g.ambient_dim;
    if g.regions == 0 || g.reference >= g.regions {
        return Err(Error::NonRealizable("no reference region".into()));
    }
    if let Some(w) = g.walls.iter().find(|w| w.covector.iter().all(|&x| x == 0)) {
        return Err(Error::NonRealizable(format!("zero covector on wall {}-{}", w.a, w.b)));
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); g.regions];
    for (k, w) in g.walls.iter().enumerate() {
        if w.a >= g.regions || w.b >= g.regions {
            return Err(Error::NonRealizable(format!("wall {k} names a missing region")));
        }
        adj[w.a].push(k);
        adj[w.b].push(k);
    }
    let mut grad: Vec<Option<Vec<i64>>> = vec![None; g.regions];
    let mut constant: Vec<Rat> = vec![Rat::zero(); g.regions];
    grad[g.reference] = Some(vec![0; m]);
    let mut queue = VecDeque::from([g.reference]);
    while let Some(r) = queue.pop_front() {
        for &k in &adj[r] {
            let w = &g.walls[k];
            let (other, sign) = if w.a == r { (w.b, 1) } else { (w.a, -1) };
            if grad[other].is_some() {
                continue;
            }
            let base = grad[r].clone().expect("visited");
            let c_dot_p = dot_int(&w.anchor, &w.covector);
            grad[other] = Some(base.iter().zip(&w.covector).map(|(x, c)| x + sign * c).collect());
            constant[other] = &constant[r] - rat(sign) * c_dot_p;
            queue.push_back(other);
        }
    }
    if let Some(r) = grad.iter().position(|x| x.is_none()) {
        return Err(Error::NonRealizable(format!("region {r} is unreachable")));
    }
    let grad: Vec<Vec<i64>> = grad.into_iter().map(|x| x.unwrap()).collect();
    for (k, w) in g.walls.iter().enumerate() {
        let jump: Vec<i64> = grad[w.b].iter().zip(&grad[w.a]).map(|(x, y)| x - y).collect();
        let expect_const = &constant[w.a] - dot_int(&w.anchor, &w.covector);
        if jump != w.covector || constant[w.b] != expect_const {
            return Err(Error::NonRealizable(format!(
                "wall {k} between regions {} and {} is inconsistent with propagation",
                w.a, w.b
            )));
        }
    }
    let points: Vec<LatticePoint> = grad.into_iter().map(LatticePoint).collect();
    let values = constant.into_iter().map(|c| -c).collect();
    LiftingFunction::new(points, values)
        .map_err(|e| Error::NonRealizable(format!("regions share a gradient: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat_vec;
    use crate::tropical::complex::corner_locus;

    #[test]
    fn sigma_one_graph() {
        let v = LiftingFunction::from_ints(&[&[0, 0], &[1, 0], &[0, 1]], &[0, 0, 0]).unwrap();
        let g = extract_region_graph(&corner_locus(&v).unwrap()).unwrap();
        assert_eq!((g.regions, g.walls.len()), (3, 3));
        let back = reconstruct_lifting(&g).unwrap();
        let mut pts = back.points().to_vec();
        pts.sort();
        assert_eq!(pts, vec![LatticePoint(vec![0, 0]), LatticePoint(vec![0, 1]), LatticePoint(vec![1, 0])]);
        assert!(back.values().iter().all(|x| *x == back.values()[0]));
    }

    #[test]
    fn square_graph() {
        let v = LiftingFunction::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], &[0, 0, 0, 1]).unwrap();
        let g = extract_region_graph(&corner_locus(&v).unwrap()).unwrap();
        assert_eq!((g.regions, g.walls.len()), (4, 5));
    }

    #[test]
    fn mismatched_walls_are_rejected() {
        let g = RegionGraph {
            ambient_dim: 2,
            regions: 2,
            walls: vec![
                Wall { a: 0, b: 1, covector: vec![1, 0], anchor: rat_vec(&[0, 0]) },
                Wall { a: 0, b: 1, covector: vec![0, 1], anchor: rat_vec(&[0, 0]) },
            ],
            reference: 0,
            labels: vec![None, None],
        };
        let err = reconstruct_lifting(&g).unwrap_err();
        assert!(err.to_string().starts_with("unbalanced or non-realizable region graph"));
    }
}
