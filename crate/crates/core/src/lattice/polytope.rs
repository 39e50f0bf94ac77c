//! Convex lattice polytopes with their full face lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::hull;
use super::point::LatticePoint;
use super::smith::integer_kernel;
use crate::error::{Error, Result};
use std::collections::BTreeSet;

use crate::num::{det_int, dot, nullspace, primitive_integer, rank, rat_vec, to_i64_vec, Rat};

/// A face, as the sorted indices of the polytope vertices it contains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<usize>,
}

/// Facet inequality `normal · x <= offset` with a primitive outward normal,
/// taken relative to the affine hull for lower-dimensional polytopes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetInequality {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePolytope {
    ambient_dim: usize,
    dim: usize,
    vertices: Vec<LatticePoint>,
    faces: Vec<Face>,
    facets: Vec<FacetInequality>,
    /// integer equations `a · x = b` cutting out the affine hull
    equations: Vec<(Vec<i64>, i64)>,
}

impl LatticePolytope {
    /// Convex hull of a finite set of lattice points.
    pub fn from_points(points: &[LatticePoint]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let ambient_dim = first.dim();
        if let Some(p) = points.iter().find(|p| p.dim() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: p.dim(),
            });
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let coords: Vec<Vec<Rat>> = pts.iter().map(|p| rat_vec(p.coords())).collect();
        let ids: Vec<usize> = (0..pts.len()).collect();
        let dim = hull::affine_dim(&coords, &ids);
        let cols = hull::chart_columns(&coords, &ids);
        let local: Vec<Vec<Rat>> = coords
            .iter()
            .map(|c| cols.iter().map(|&j| c[j].clone()).collect())
            .collect();

        // facets as (primitive chart normal, all points on it)
        let mut raw_facets: Vec<(Vec<i64>, Vec<usize>)> = Vec::new();
        if dim > 0 {
            let lift: Vec<Rat> = local.iter().map(|c| dot(c, c)).collect();
            let lower = hull::lower_hull(&local, &lift);
            let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
            for ridge in &lower.boundary {
                let normal = to_i64_vec(&primitive_integer(&ridge.normal));
                if !seen.insert(normal.clone()) {
                    continue;
                }
                let on = |c: &Vec<Rat>| dot(&ridge.normal, c) + &ridge.offset;
                let pts_on: Vec<usize> = ids.iter().copied().filter(|&i| on(&local[i]).is_zero()).collect();
                raw_facets.push((normal, pts_on));
            }
        }

        // vertices: points where the containing facet normals have full rank
        let vertex_ids: Vec<usize> = if dim == 0 {
            vec![0]
        } else {
            ids.iter()
                .copied()
                .filter(|&i| {
                    let rows: Vec<Vec<Rat>> = raw_facets
                        .iter()
                        .filter(|(_, on)| on.binary_search(&i).is_ok())
                        .map(|(n, _)| rat_vec(n))
                        .collect();
                    rank(&rows) == dim
                })
                .collect()
        };
        let vertices: Vec<LatticePoint> = vertex_ids.iter().map(|&i| pts[i].clone()).collect();
        let to_vertex = |set: &[usize]| -> Vec<usize> {
            set.iter()
                .filter_map(|i| vertex_ids.binary_search(i).ok())
                .collect()
        };

        // every proper face is an intersection of facets
        let mut face_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        face_sets.insert((0..vertex_ids.len()).collect());
        let facet_sets: Vec<Vec<usize>> = raw_facets.iter().map(|(_, on)| to_vertex(on)).collect();
        let mut frontier: Vec<Vec<usize>> = facet_sets.clone();
        while let Some(f) = frontier.pop() {
            if f.is_empty() || !face_sets.insert(f.clone()) {
                continue;
            }
            for g in &facet_sets {
                let meet: Vec<usize> = f.iter().copied().filter(|x| g.binary_search(x).is_ok()).collect();
                if !face_sets.contains(&meet) {
                    frontier.push(meet);
                }
            }
        }
        let vcoords: Vec<Vec<Rat>> = vertices.iter().map(|p| rat_vec(p.coords())).collect();
        let mut faces: Vec<Face> = face_sets
            .into_iter()
            .map(|f| Face {
                dim: hull::affine_dim(&vcoords, &f),
                vertices: f,
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));

        let base = &pts[0];
        let diffs: Vec<Vec<Rat>> = pts[1..].iter().map(|p| rat_vec(&p.sub(base))).collect();
        let equations: Vec<(Vec<i64>, i64)> = nullspace(&diffs, ambient_dim)
            .into_iter()
            .map(|n| {
                let a = to_i64_vec(&primitive_integer(&n));
                let b = dot_i64(&a, base.coords());
                (a, b)
            })
            .collect();

        let mut facets: Vec<FacetInequality> = raw_facets
            .iter()
            .map(|(prim, on)| {
                let mut normal = vec![0i64; ambient_dim];
                for (k, &j) in cols.iter().enumerate() {
                    normal[j] = prim[k];
                }
                let offset = dot_i64(&normal, pts[on[0]].coords());
                FacetInequality {
                    normal,
                    offset,
                    vertices: to_vertex(on),
                }
            })
            .collect();
        facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        Ok(LatticePolytope {
            ambient_dim,
            dim,
            vertices,
            faces,
            facets,
            equations,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// All non-empty faces including the polytope itself, sorted by dimension.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    pub fn facets(&self) -> &[FacetInequality] {
        &self.facets
    }

    pub fn face_points(&self, face: &Face) -> Vec<LatticePoint> {
        face.vertices.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Polytope spanned by a face.
    pub fn face_polytope(&self, face: &Face) -> LatticePolytope {
        LatticePolytope::from_points(&self.face_points(face)).expect("faces are non-empty")
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.equations.iter().all(|(a, b)| dot_i64(a, p) == *b)
            && self.facets.iter().all(|f| dot_i64(&f.normal, p) <= f.offset)
    }

    /// Strictly inside every facet (relative interior for lower-dimensional polytopes).
    pub fn contains_strictly(&self, p: &[i64]) -> bool {
        self.equations.iter().all(|(a, b)| dot_i64(a, p) == *b)
            && self.facets.iter().all(|f| dot_i64(&f.normal, p) < f.offset)
    }

    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        self.box_points(|p| self.contains(p))
    }

    pub fn interior_lattice_points(&self) -> Vec<LatticePoint> {
        self.box_points(|p| self.contains_strictly(p))
    }

    fn box_points(&self, keep: impl Fn(&[i64]) -> bool) -> Vec<LatticePoint> {
        let m = self.ambient_dim;
        let lo: Vec<i64> = (0..m).map(|i| self.vertices.iter().map(|v| v.0[i]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..m).map(|i| self.vertices.iter().map(|v| v.0[i]).max().unwrap()).collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            if keep(&cur) {
                out.push(LatticePoint(cur.clone()));
            }
            let mut i = m;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i];
            }
        }
    }

    /// Pulling triangulation of a face, as lists of vertex indices.
    pub fn pulling_triangulation(&self, face: &Face) -> Vec<Vec<usize>> {
        if face.vertices.len() == face.dim + 1 {
            return vec![face.vertices.clone()];
        }
        let apex = face.vertices[0];
        let mut out = Vec::new();
        for sub in self.faces_of_dim(face.dim - 1) {
            if sub.vertices.contains(&apex) || !is_subset(&sub.vertices, &face.vertices) {
                continue;
            }
            for mut s in self.pulling_triangulation(sub) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    }

    pub fn whole(&self) -> &Face {
        self.faces.last().expect("polytope has at least one face")
    }

    /// `(ambient dim)! · volume`; zero for lower-dimensional polytopes.
    pub fn normalized_volume(&self) -> BigInt {
        if !self.is_full_dimensional() {
            return BigInt::zero();
        }
        self.pulling_triangulation(self.whole())
            .iter()
            .map(|s| simplex_volume(&self.points_of(s)))
            .sum()
    }

    /// Normalized volume measured in the lattice of the affine hull.
    pub fn intrinsic_volume(&self) -> BigInt {
        self.pulling_triangulation(self.whole())
            .iter()
            .map(|s| intrinsic_simplex_volume(&self.points_of(s)))
            .sum()
    }

    fn points_of(&self, ids: &[usize]) -> Vec<LatticePoint> {
        ids.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Basis of the lattice `Z^m ∩ span(P − P)`.
    pub fn lattice_basis(&self) -> Vec<Vec<i64>> {
        let rows: Vec<Vec<i64>> = self.equations.iter().map(|(a, _)| a.clone()).collect();
        integer_kernel(&rows, self.ambient_dim)
    }
}

/// `Δ_d = {x ≥ 0, Σ x ≤ d}` in `R^{n+1}`.
pub fn dilated_simplex(n: usize, d: i64) -> Result<LatticePolytope> {
    if n < 1 || d < 1 {
        return Err(Error::InvalidArgument(format!(
            "dilated simplex needs n >= 1 and d >= 1, got n={n}, d={d}"
        )));
    }
    let m = n + 1;
    let mut pts = vec![LatticePoint::origin(m)];
    for i in 0..m {
        let mut v = vec![0; m];
        v[i] = d;
        pts.push(LatticePoint(v));
    }
    LatticePolytope::from_points(&pts)
}

/// Normalized volume of a full-dimensional simplex given by its vertices.
pub fn simplex_volume(vertices: &[LatticePoint]) -> BigInt {
    let base = &vertices[0];
    let rows: Vec<Vec<i64>> = vertices[1..].iter().map(|v| v.sub(base)).collect();
    if rows.len() != base.dim() {
        return BigInt::zero();
    }
    det_int(&rows).abs()
}

/// Normalized volume of a simplex in the lattice of its own affine hull: the gcd
/// of the maximal minors of its edge matrix.
pub fn intrinsic_simplex_volume(vertices: &[LatticePoint]) -> BigInt {
    let base = &vertices[0];
    let rows: Vec<Vec<i64>> = vertices[1..].iter().map(|v| v.sub(base)).collect();
    let k = rows.len();
    let m = base.dim();
    if k == 0 {
        return BigInt::from(1);
    }
    let mut g = BigInt::zero();
    hull::for_each_combination(m, k, |cols| {
        let minor: Vec<Vec<i64>> = rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        g = g.gcd(&det_int(&minor));
    });
    g
}

fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(v: &[&[i64]]) -> Vec<LatticePoint> {
        v.iter().map(|p| LatticePoint(p.to_vec())).collect()
    }

    #[test]
    fn volumes() {
        let d1 = dilated_simplex(1, 1).unwrap();
        assert_eq!(d1.normalized_volume(), BigInt::from(1));
        assert_eq!(dilated_simplex(1, 3).unwrap().normalized_volume(), BigInt::from(9));
        let s = LatticePolytope::from_points(&lp(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 2]])).unwrap();
        assert_eq!(s.normalized_volume(), BigInt::from(2));
        let flat = LatticePolytope::from_points(&lp(&[&[0, 0, 0], &[2, 0, 0], &[0, 1, 0]])).unwrap();
        assert_eq!(flat.normalized_volume(), BigInt::zero());
        assert_eq!(flat.intrinsic_volume(), BigInt::from(2));
        let cube = LatticePolytope::from_points(&lp(&[
            &[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0],
            &[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1],
        ]))
        .unwrap();
        assert_eq!(cube.normalized_volume(), BigInt::from(6));
        assert_eq!(cube.faces().len(), 8 + 12 + 6 + 1);
    }

    #[test]
    fn lattice_point_counts() {
        assert_eq!(dilated_simplex(1, 1).unwrap().vertices().len(), 3);
        assert_eq!(dilated_simplex(1, 2).unwrap().lattice_points().len(), 6);
        assert_eq!(dilated_simplex(2, 4).unwrap().lattice_points().len(), 35);
        assert_eq!(
            dilated_simplex(1, 3).unwrap().interior_lattice_points(),
            lp(&[&[1, 1]])
        );
        assert_eq!(
            dilated_simplex(2, 4).unwrap().interior_lattice_points(),
            lp(&[&[1, 1, 1]])
        );
        assert!(dilated_simplex(1, 1).unwrap().interior_lattice_points().is_empty());
        for d in 1..=6 {
            let k = dilated_simplex(1, d).unwrap().interior_lattice_points().len() as i64;
            assert_eq!(k, (d - 1) * (d - 2) / 2);
        }
        assert!(dilated_simplex(0, 1).is_err());
        assert!(LatticePolytope::from_points(&[]).is_err());
    }

    #[test]
    fn lower_dimensional_face_data() {
        let seg = LatticePolytope::from_points(&lp(&[&[0, 0, 0], &[3, 0, 0]])).unwrap();
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.lattice_points().len(), 4);
        assert_eq!(seg.interior_lattice_points().len(), 2);
        assert_eq!(seg.intrinsic_volume(), BigInt::from(3));
        let b = seg.lattice_basis();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].iter().map(|x| x.abs()).sum::<i64>(), 1);
    }

    #[test]
    fn facets_of_simplex() {
        let d = dilated_simplex(2, 2).unwrap();
        assert_eq!(d.facets().len(), 4);
        let diag = d.facets().iter().find(|f| f.normal == vec![1, 1, 1]).unwrap();
        assert_eq!(diag.offset, 2);
        assert_eq!(d.faces_of_dim(1).count(), 6);
    }
}
