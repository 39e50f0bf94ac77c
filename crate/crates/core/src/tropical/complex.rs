//! The corner locus `Π_v` of a Legendre transform, represented through its dual
//! subdivision with exact H- and V-descriptions for every cell.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::polytope::intrinsic_simplex_volume;
use crate::lattice::LatticePoint;
use crate::num::{dot, dot_int, primitive_integer, rank, rat, rat_vec, solve, to_i64_vec, Rat};
use crate::subdivision::{lower_hull_subdivision, LiftingFunction, RegularSubdivision};

/// `covector · y = rhs` (equality) or `covector · y <= rhs` (inequality).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineConstraint {
    pub covector: Vec<i64>,
    pub rhs: Rat,
}

impl AffineConstraint {
    pub fn eval(&self, y: &[Rat]) -> Rat {
        dot_int(y, &self.covector) - &self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCell {
    pub dim: usize,
    /// indices into `A` of the vertices of the dual face of `D_v`
    pub dual: Vec<usize>,
    pub equalities: Vec<AffineConstraint>,
    pub inequalities: Vec<AffineConstraint>,
    /// vertices of the closed cell
    pub vertices: Vec<Vec<Rat>>,
    /// primitive generators of the recession cone
    pub recession: Vec<Vec<i64>>,
    pub bounded: bool,
    /// lattice length of the dual edge, on top-dimensional cells only
    pub weight: Option<u64>,
    /// indices of the cells of dimension `dim − 1` in the boundary
    pub faces: Vec<usize>,
}

impl TropicalCell {
    /// A point of the relative interior: vertex average plus the sum of the
    /// recession generators.
    pub fn interior_point(&self) -> Vec<Rat> {
        let m = self
            .vertices
            .first()
            .map(|v| v.len())
            .or_else(|| self.recession.first().map(|r| r.len()))
            .unwrap_or(0);
        let mut p = vec![Rat::zero(); m];
        for v in &self.vertices {
            for (a, b) in p.iter_mut().zip(v) {
                *a += b;
            }
        }
        if !self.vertices.is_empty() {
            let k = rat(self.vertices.len() as i64);
            p.iter_mut().for_each(|x| *x /= &k);
        }
        for r in &self.recession {
            for (a, &b) in p.iter_mut().zip(r) {
                *a += rat(b);
            }
        }
        p
    }

    pub fn contains(&self, y: &[Rat]) -> bool {
        self.equalities.iter().all(|c| c.eval(y).is_zero())
            && self.inequalities.iter().all(|c| !c.eval(y).is_positive())
    }

    /// Comparison key independent of cell numbering and of the dual labels.
    pub fn signature(&self) -> CellSignature {
        let mut vertices = self.vertices.clone();
        vertices.sort();
        let mut recession = self.recession.clone();
        recession.sort();
        CellSignature {
            dim: self.dim,
            vertices,
            recession,
            weight: self.weight,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CellSignature {
    pub dim: usize,
    pub vertices: Vec<Vec<Rat>>,
    pub recession: Vec<Vec<i64>>,
    pub weight: Option<u64>,
}

/// A weighted rational polyhedral complex in `R^{n+1}`.
#[derive(Clone, Debug)]
pub struct TropicalComplex {
    pub ambient_dim: usize,
    /// cells sorted by dimension
    pub cells: Vec<TropicalCell>,
    pub source: Option<LiftingFunction>,
    pub(crate) subdivision: Option<RegularSubdivision>,
    /// subdivision face index -> cell index
    pub(crate) by_dual_face: BTreeMap<usize, usize>,
}

impl TropicalComplex {
    /// Builds a complex from explicit cells, without dual data.
    pub fn from_cells(ambient_dim: usize, mut cells: Vec<TropicalCell>) -> Self {
        cells.sort_by_key(|c| c.dim);
        TropicalComplex {
            ambient_dim,
            cells,
            source: None,
            subdivision: None,
            by_dual_face: BTreeMap::new(),
        }
    }

    pub fn subdivision(&self) -> Option<&RegularSubdivision> {
        self.subdivision.as_ref()
    }

    pub fn cells_of_dim(&self, k: usize) -> impl Iterator<Item = (usize, &TropicalCell)> {
        self.cells.iter().enumerate().filter(move |(_, c)| c.dim == k)
    }

    pub fn count_of_dim(&self, k: usize) -> usize {
        self.cells_of_dim(k).count()
    }

    pub fn vertex_ids(&self) -> Vec<usize> {
        self.cells_of_dim(0).map(|(i, _)| i).collect()
    }

    /// Cells having `c` in their boundary.
    pub fn cofaces(&self, c: usize) -> Vec<usize> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, d)| d.faces.contains(&c))
            .map(|(i, _)| i)
            .collect()
    }

    /// Cell dual to a face of the subdivision.
    pub fn cell_of_dual_face(&self, face: usize) -> Option<usize> {
        self.by_dual_face.get(&face).copied()
    }

    /// Subdivision face dual to a cell.
    pub fn dual_face_of(&self, cell: usize) -> Option<usize> {
        self.by_dual_face.iter().find(|(_, &c)| c == cell).map(|(&f, _)| f)
    }

    /// Sorted multiset of cell signatures, for cell-for-cell comparison.
    pub fn signatures(&self) -> Vec<CellSignature> {
        let mut v: Vec<CellSignature> = self.cells.iter().map(|c| c.signature()).collect();
        v.sort();
        v
    }

    /// Primitive direction of the edge `edge` leaving the vertex `vertex`.
    pub fn edge_direction(&self, vertex: usize, edge: usize) -> Vec<i64> {
        let b = &self.cells[vertex].vertices[0];
        let ec = &self.cells[edge];
        let dir: Vec<Rat> = match ec.vertices.iter().find(|p| *p != b) {
            Some(other) => other.iter().zip(b).map(|(x, y)| x - y).collect(),
            None => rat_vec(&ec.recession[0]),
        };
        to_i64_vec(&primitive_integer(&dir))
    }

    /// Whether `a` lies in the closure of `b` (by iterated boundary relations).
    pub fn is_face_of(&self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        let mut stack = vec![b];
        while let Some(c) = stack.pop() {
            for &f in &self.cells[c].faces {
                if f == a {
                    return true;
                }
                if self.cells[f].dim > self.cells[a].dim {
                    stack.push(f);
                }
            }
        }
        false
    }
}

/// `Π_v`: the corner locus of `L_v(y) = max_x (x·y − v(x))`.
pub fn corner_locus(v: &LiftingFunction) -> Result<TropicalComplex> {
    let sub = lower_hull_subdivision(v)?;
    Ok(corner_locus_of(&sub))
}

pub fn corner_locus_of(sub: &RegularSubdivision) -> TropicalComplex {
    let m = sub.ambient_dim();
    let v = sub.lifting();
    let coords: Vec<Vec<i64>> = v.points().iter().map(|p| p.0.clone()).collect();
    let faces = sub.faces();
    let mut order: Vec<usize> = (0..faces.len()).filter(|&g| faces[g].dim >= 1).collect();
    order.sort_by(|&a, &b| faces[b].dim.cmp(&faces[a].dim).then(a.cmp(&b)));
    let by_dual_face: BTreeMap<usize, usize> = order.iter().enumerate().map(|(c, &g)| (g, c)).collect();

    let diff = |a: usize, b: usize| -> Vec<i64> { coords[a].iter().zip(&coords[b]).map(|(x, y)| x - y).collect() };
    let cells = order
        .iter()
        .map(|&g| {
            let face = &faces[g];
            let x0 = face.vertices[0];
            let mut equalities = Vec::new();
            let mut rows: Vec<Vec<Rat>> = Vec::new();
            for &xi in &face.vertices[1..] {
                let d = diff(xi, x0);
                rows.push(rat_vec(&d));
                if rank(&rows) < rows.len() {
                    rows.pop();
                    continue;
                }
                equalities.push(AffineConstraint {
                    covector: d,
                    rhs: &v.values()[xi] - &v.values()[x0],
                });
            }
            let cofaces = sub.cofaces(g);
            let inequalities = cofaces
                .iter()
                .map(|&h| {
                    let xp = *faces[h]
                        .vertices
                        .iter()
                        .find(|x| face.vertices.binary_search(x).is_err())
                        .expect("coface has an extra vertex");
                    AffineConstraint {
                        covector: diff(xp, x0),
                        rhs: &v.values()[xp] - &v.values()[x0],
                    }
                })
                .collect();
            let mut vertices: Vec<Vec<Rat>> = face.cells.iter().map(|&c| sub.cells()[c].slope.clone()).collect();
            vertices.sort();
            let mut recession: Vec<Vec<i64>> = face
                .boundary_facets
                .iter()
                .map(|&f| sub.parent().facets()[f].normal.clone())
                .collect();
            recession.sort();
            let weight = (face.dim == 1).then(|| {
                let d = diff(face.vertices[1], face.vertices[0]);
                d.iter().fold(0i64, |g, x| g.gcd(x)) as u64
            });
            let mut boundary: Vec<usize> = cofaces.iter().map(|h| by_dual_face[h]).collect();
            boundary.sort_unstable();
            TropicalCell {
                dim: m - face.dim,
                dual: face.vertices.clone(),
                equalities,
                inequalities,
                vertices,
                bounded: recession.is_empty(),
                recession,
                weight,
                faces: boundary,
            }
        })
        .collect();
    TropicalComplex {
        ambient_dim: m,
        cells,
        source: Some(v.clone()),
        subdivision: Some(sub.clone()),
        by_dual_face,
    }
}

/// Result of the balancing test, naming the first failing codimension-one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceCertificate {
    pub balanced: bool,
    pub failing_cell: Option<usize>,
    pub residual: Option<Vec<Rat>>,
}

/// Primitive integer covector spanning the annihilator of a top-dimensional cell.
fn cell_covector(c: &TropicalCell) -> Vec<i64> {
    let eq = c
        .equalities
        .iter()
        .find(|e| e.covector.iter().any(|&x| x != 0))
        .expect("top-dimensional cell has an equality");
    let g = eq.covector.iter().fold(0i64, |g, x| g.gcd(x));
    eq.covector.iter().map(|x| x / g).collect()
}

/// Two independent equality covectors of a codimension-two cell.
fn annihilator_pair(c: &TropicalCell) -> (Vec<Rat>, Vec<Rat>) {
    let mut picked: Vec<Vec<Rat>> = Vec::new();
    for e in &c.equalities {
        picked.push(rat_vec(&e.covector));
        if rank(&picked) < picked.len() {
            picked.pop();
        }
        if picked.len() == 2 {
            break;
        }
    }
    assert_eq!(picked.len(), 2, "codimension-two cell needs two independent equalities");
    let b = picked.pop().unwrap();
    let a = picked.pop().unwrap();
    (a, b)
}

/// Signed incidence of a top-dimensional cell `f` at the codimension-two cell
/// `g`, together with the primitive covector of `f`. The sign orients the
/// covectors of all cells around `g` coherently.
pub(crate) fn rotation_sign(complex: &TropicalComplex, g: usize, f: usize) -> (i32, Vec<i64>) {
    let gc = &complex.cells[g];
    let fc = &complex.cells[f];
    let (alpha, beta) = annihilator_pair(gc);
    let p = cell_covector(fc);
    let u: Vec<Rat> = fc
        .interior_point()
        .iter()
        .zip(gc.interior_point())
        .map(|(a, b)| a - b)
        .collect();
    let a = dot(&alpha, &u);
    let b = dot(&beta, &u);
    let m = alpha.len();
    let system: Vec<Vec<Rat>> = (0..m).map(|i| vec![alpha[i].clone(), beta[i].clone()]).collect();
    let st = solve(&system, &rat_vec(&p)).expect("cell covector lies in the annihilator of its face");
    let orient = -(&st[0] * &b) + &st[1] * &a;
    let sign = if orient.is_positive() { 1 } else { -1 };
    (sign, p)
}

/// Exact balancing test at every codimension-one cell of the complex.
pub fn check_balanced(c: &TropicalComplex) -> Result<BalanceCertificate> {
    let m = c.ambient_dim;
    if m < 2 {
        return Err(Error::UnsupportedDimension(m));
    }
    let n = m - 1;
    for (i, cell) in c.cells_of_dim(n) {
        if cell.weight.is_none() {
            return Err(Error::MissingWeight(n, i));
        }
    }
    for (g, _) in c.cells_of_dim(n - 1) {
        let mut sum = vec![Rat::zero(); m];
        for f in c.cofaces(g) {
            let w = c.cells[f].weight.expect("checked above") as i64;
            let (sign, p) = rotation_sign(c, g, f);
            for (s, x) in sum.iter_mut().zip(&p) {
                *s += rat(sign as i64 * w * x);
            }
        }
        if sum.iter().any(|x| !x.is_zero()) {
            return Ok(BalanceCertificate {
                balanced: false,
                failing_cell: Some(g),
                residual: Some(sum),
            });
        }
    }
    Ok(BalanceCertificate {
        balanced: true,
        failing_cell: None,
        residual: None,
    })
}

/// Edge of `Π` at a vertex: its cell, primitive direction away from the vertex
/// and the intrinsic volume of its dual face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexEdge {
    pub cell: usize,
    pub direction: Vec<i64>,
    pub weight: u64,
}

/// Edge weights at a vertex whose dual cell is a simplex; `Σ w_j v_j = 0`.
pub fn vertex_edge_weights(c: &TropicalComplex, vertex: usize) -> Result<Vec<VertexEdge>> {
    let sub = c.subdivision.as_ref().ok_or(Error::NoDualData)?;
    let cell = c.cells.get(vertex).ok_or_else(|| Error::InvalidArgument(format!("no cell #{vertex}")))?;
    if cell.dim != 0 {
        return Err(Error::InvalidArgument(format!("cell #{vertex} is not a vertex")));
    }
    let m = c.ambient_dim;
    if cell.dual.len() != m + 1 {
        return Err(Error::NonGenericVertex(cell.dual.len()));
    }
    let mut out = Vec::new();
    for e in c.cofaces(vertex) {
        let ec = &c.cells[e];
        let direction = c.edge_direction(vertex, e);
        let pts: Vec<LatticePoint> = ec.dual.iter().map(|&i| sub.point(i).clone()).collect();
        let weight = intrinsic_simplex_volume(&pts)
            .try_into()
            .map_err(|_| Error::InvalidArgument("weight overflow".into()))?;
        out.push(VertexEdge { cell: e, direction, weight });
    }
    let mut sum = vec![0i64; m];
    for e in &out {
        for (s, d) in sum.iter_mut().zip(&e.direction) {
            *s += e.weight as i64 * d;
        }
    }
    if sum.iter().any(|&x| x != 0) {
        return Err(Error::NonRealizable(format!("edge weights at vertex #{vertex} do not cancel: {sum:?}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdivision::build_maximal_lifting;

    fn sigma1() -> TropicalComplex {
        let v = LiftingFunction::from_ints(&[&[0, 0], &[1, 0], &[0, 1]], &[0, 0, 0]).unwrap();
        corner_locus(&v).unwrap()
    }

    #[test]
    fn sigma_one_shape() {
        let c = sigma1();
        assert_eq!(c.count_of_dim(0), 1);
        assert_eq!(c.count_of_dim(1), 3);
        assert_eq!(c.cells[0].vertices, vec![rat_vec(&[0, 0])]);
        let mut rays: Vec<Vec<i64>> = c.cells_of_dim(1).map(|(_, r)| r.recession[0].clone()).collect();
        rays.sort();
        assert_eq!(rays, vec![vec![-1, 0], vec![0, -1], vec![1, 1]]);
        assert!(check_balanced(&c).unwrap().balanced);
    }

    #[test]
    fn translated_sigma() {
        let v = LiftingFunction::from_ints(&[&[0, 0], &[1, 0], &[0, 1]], &[0, 5, 0]).unwrap();
        let c = corner_locus(&v).unwrap();
        assert_eq!(c.cells[0].vertices, vec![rat_vec(&[5, 0])]);
    }

    #[test]
    fn square_with_diagonal() {
        let v = LiftingFunction::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], &[0, 0, 0, 1]).unwrap();
        let c = corner_locus(&v).unwrap();
        let mut verts: Vec<Vec<Rat>> = c.cells_of_dim(0).map(|(_, x)| x.vertices[0].clone()).collect();
        verts.sort();
        assert_eq!(verts, vec![rat_vec(&[0, 0]), rat_vec(&[1, 1])]);
        let bounded: Vec<&TropicalCell> = c.cells_of_dim(1).map(|(_, x)| x).filter(|x| x.bounded).collect();
        assert_eq!(bounded.len(), 1);
        assert_eq!(c.count_of_dim(1), 5);
        assert!(check_balanced(&c).unwrap().balanced);
    }

    #[test]
    fn tampered_weight_fails() {
        let mut c = sigma1();
        c.cells[1].weight = Some(2);
        let cert = check_balanced(&c).unwrap();
        assert!(!cert.balanced);
        assert_eq!(cert.failing_cell, Some(0));
        c.cells[2].weight = None;
        assert!(matches!(check_balanced(&c), Err(Error::MissingWeight(1, 2))));
    }

    #[test]
    fn edge_weights() {
        let w: Vec<u64> = vertex_edge_weights(&sigma1(), 0).unwrap().iter().map(|e| e.weight).collect();
        assert_eq!(w, vec![1, 1, 1]);
        let c = corner_locus(&build_maximal_lifting(1, 2).unwrap()).unwrap();
        for v in c.vertex_ids() {
            assert!(vertex_edge_weights(&c, v).unwrap().iter().all(|e| e.weight == 1));
        }
        let fat = LiftingFunction::from_ints(&[&[0, 0], &[2, 0], &[0, 1]], &[0, 0, 0]).unwrap();
        let c = corner_locus(&fat).unwrap();
        let mut got: Vec<(Vec<i64>, u64)> = vertex_edge_weights(&c, 0)
            .unwrap()
            .into_iter()
            .map(|e| (e.direction, e.weight))
            .collect();
        got.sort();
        assert_eq!(got, vec![(vec![-1, 0], 1), (vec![0, -1], 2), (vec![1, 2], 1)]);
        let square = LiftingFunction::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], &[0, 0, 0, 0]).unwrap();
        let c = corner_locus(&square).unwrap();
        assert_eq!(vertex_edge_weights(&c, 0), Err(Error::NonGenericVertex(4)));
    }
}
