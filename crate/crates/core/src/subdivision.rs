//! Lifting functions, their Legendre transforms and the regular subdivisions
//! they induce on the Newton polytope.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::hull::{self, LowerHull};
use crate::lattice::polytope::simplex_volume;
use crate::lattice::{dilated_simplex, LatticePoint, LatticePolytope};
use crate::num::{dot, rat, rat_vec, Rat};

/// A finite set `A ⊂ Z^{n+1}` with rational values `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingFunction {
    points: Vec<LatticePoint>,
    values: Vec<Rat>,
}

impl LiftingFunction {
    pub fn new(points: Vec<LatticePoint>, values: Vec<Rat>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let m = first.dim();
        if values.len() != points.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                got: values.len(),
            });
        }
        if let Some(p) = points.iter().find(|p| p.dim() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: p.dim(),
            });
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p) {
                return Err(Error::DuplicatePoint(p.0.clone()));
            }
        }
        Ok(LiftingFunction { points, values })
    }

    /// Integer-valued convenience constructor.
    pub fn from_ints(points: &[&[i64]], values: &[i64]) -> Result<Self> {
        Self::new(
            points.iter().map(|p| LatticePoint(p.to_vec())).collect(),
            values.iter().map(|&v| rat(v)).collect(),
        )
    }

    /// The zero lifting on every lattice point of a polytope.
    pub fn constant_on(poly: &LatticePolytope) -> Self {
        let pts = poly.lattice_points();
        let vals = vec![rat(0); pts.len()];
        LiftingFunction { points: pts, values: vals }
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    pub fn value_at(&self, p: &LatticePoint) -> Option<&Rat> {
        self.index_of(p).map(|i| &self.values[i])
    }

    pub(crate) fn coords(&self) -> Vec<Vec<Rat>> {
        self.points.iter().map(|p| rat_vec(p.coords())).collect()
    }

    /// Adds the affine function `slope · x + c`.
    pub fn add_affine(&self, slope: &[Rat], c: &Rat) -> Self {
        let values = self
            .points
            .iter()
            .zip(&self.values)
            .map(|(p, v)| v + dot(slope, &rat_vec(p.coords())) + c)
            .collect();
        LiftingFunction {
            points: self.points.clone(),
            values,
        }
    }

    /// Restriction to the points satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(&LatticePoint) -> bool) -> Self {
        let (points, values) = self
            .points
            .iter()
            .zip(&self.values)
            .filter(|(p, _)| keep(p))
            .map(|(p, v)| (p.clone(), v.clone()))
            .unzip();
        LiftingFunction { points, values }
    }

    pub fn newton_polytope(&self) -> Result<LatticePolytope> {
        LatticePolytope::from_points(&self.points)
    }
}

/// `L_v(y) = max_{x ∈ A} (x·y − v(x))` together with the indices attaining it.
pub fn legendre(v: &LiftingFunction, y: &[Rat]) -> (Rat, Vec<usize>) {
    let mut best: Option<Rat> = None;
    let mut arg = Vec::new();
    for (i, (p, val)) in v.points.iter().zip(&v.values).enumerate() {
        let s = dot(&rat_vec(p.coords()), y) - val;
        match &best {
            Some(b) if s < *b => {}
            Some(b) if s == *b => arg.push(i),
            _ => {
                best = Some(s);
                arg = vec![i];
            }
        }
    }
    (best.expect("non-empty point set"), arg)
}

/// A maximal cell of `D_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionCell {
    /// every point of `A` on the cell's lifted supporting hyperplane
    pub points: Vec<usize>,
    pub vertices: Vec<usize>,
    /// the supporting affine function `slope · x + offset`
    pub slope: Vec<Rat>,
    pub offset: Rat,
}

/// A face of `D_v` of any dimension, including the maximal cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionFace {
    pub dim: usize,
    pub points: Vec<usize>,
    pub vertices: Vec<usize>,
    /// maximal cells containing this face
    pub cells: Vec<usize>,
    /// facets of the Newton polytope containing this face
    pub boundary_facets: Vec<usize>,
}

impl SubdivisionFace {
    pub fn on_boundary(&self) -> bool {
        !self.boundary_facets.is_empty()
    }
}

/// The lattice subdivision `D_v` induced by the lower hull of the lifted points.
#[derive(Clone, Debug)]
pub struct RegularSubdivision {
    lifting: LiftingFunction,
    parent: LatticePolytope,
    cells: Vec<SubdivisionCell>,
    adjacency: Vec<(usize, usize)>,
    faces: Vec<SubdivisionFace>,
    face_index: BTreeMap<Vec<usize>, usize>,
}

/// Outcome of the unimodularity test, naming the first offending cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularityCertificate {
    pub unimodular: bool,
    pub offending_cell: Option<usize>,
    pub offending_volume: Option<BigInt>,
}

pub fn lower_hull_subdivision(v: &LiftingFunction) -> Result<RegularSubdivision> {
    let m = v.ambient_dim();
    let coords = v.coords();
    let all: Vec<usize> = (0..v.len()).collect();
    let span = hull::affine_dim(&coords, &all);
    if span < m {
        return Err(Error::DegenerateSpan { span, ambient: m });
    }
    let LowerHull {
        cells: raw, adjacency, ..
    } = hull::lower_hull(&coords, &v.values);

    let mut face_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for c in &raw {
        for f in hull::faces(&coords, &c.ids) {
            face_sets.insert(f);
        }
    }
    let singletons: BTreeSet<usize> = face_sets
        .iter()
        .filter(|f| f.len() == 1)
        .map(|f| f[0])
        .collect();
    let vertices_of = |set: &[usize]| -> Vec<usize> {
        set.iter().copied().filter(|i| singletons.contains(i)).collect()
    };
    let cells: Vec<SubdivisionCell> = raw
        .iter()
        .map(|c| SubdivisionCell {
            points: c.ids.clone(),
            vertices: vertices_of(&c.ids),
            slope: c.slope.clone(),
            offset: c.offset.clone(),
        })
        .collect();

    let vertex_points: Vec<LatticePoint> = singletons.iter().map(|&i| v.points[i].clone()).collect();
    let parent = LatticePolytope::from_points(&vertex_points)?;

    let mut faces: Vec<SubdivisionFace> = face_sets
        .into_iter()
        .map(|f| {
            let dim = hull::affine_dim(&coords, &f);
            let containing: Vec<usize> = cells
                .iter()
                .enumerate()
                .filter(|(_, c)| is_subset(&f, &c.points))
                .map(|(i, _)| i)
                .collect();
            let boundary_facets = parent
                .facets()
                .iter()
                .enumerate()
                .filter(|(_, fac)| {
                    f.iter()
                        .all(|&i| dot_i64(&fac.normal, v.points[i].coords()) == fac.offset)
                })
                .map(|(k, _)| k)
                .collect();
            SubdivisionFace {
                dim,
                vertices: vertices_of(&f),
                points: f,
                cells: containing,
                boundary_facets,
            }
        })
        .collect();
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.points.cmp(&b.points)));
    let face_index = faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.points.clone(), i))
        .collect();
    Ok(RegularSubdivision {
        lifting: v.clone(),
        parent,
        cells,
        adjacency,
        faces,
        face_index,
    })
}

impl RegularSubdivision {
    pub fn lifting(&self) -> &LiftingFunction {
        &self.lifting
    }

    pub fn parent(&self) -> &LatticePolytope {
        &self.parent
    }

    pub fn ambient_dim(&self) -> usize {
        self.lifting.ambient_dim()
    }

    pub fn cells(&self) -> &[SubdivisionCell] {
        &self.cells
    }

    pub fn adjacency(&self) -> &[(usize, usize)] {
        &self.adjacency
    }

    /// Every face of the subdivision, sorted by dimension.
    pub fn faces(&self) -> &[SubdivisionFace] {
        &self.faces
    }

    pub fn face_id(&self, points: &[usize]) -> Option<usize> {
        self.face_index.get(points).copied()
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = (usize, &SubdivisionFace)> {
        self.faces.iter().enumerate().filter(move |(_, f)| f.dim == k)
    }

    /// Indices into `A` of the vertices of the subdivision.
    pub fn vertices(&self) -> Vec<usize> {
        self.faces_of_dim(0).map(|(_, f)| f.points[0]).collect()
    }

    pub fn point(&self, i: usize) -> &LatticePoint {
        &self.lifting.points[i]
    }

    /// Faces of dimension `dim G + 1` containing `G`.
    pub fn cofaces(&self, g: usize) -> Vec<usize> {
        let face = &self.faces[g];
        self.faces
            .iter()
            .enumerate()
            .filter(|(_, h)| h.dim == face.dim + 1 && is_subset(&face.points, &h.points))
            .map(|(i, _)| i)
            .collect()
    }

    /// Faces of dimension `dim G − 1` contained in `G`.
    pub fn subfaces(&self, g: usize) -> Vec<usize> {
        let face = &self.faces[g];
        self.faces
            .iter()
            .enumerate()
            .filter(|(_, h)| h.dim + 1 == face.dim && is_subset(&h.points, &face.points))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn cell_volume(&self, c: usize) -> BigInt {
        let cell = &self.cells[c];
        let verts: Vec<LatticePoint> = cell.vertices.iter().map(|&i| self.point(i).clone()).collect();
        if verts.len() == self.ambient_dim() + 1 {
            simplex_volume(&verts)
        } else {
            LatticePolytope::from_points(&verts)
                .expect("cells are non-empty")
                .normalized_volume()
        }
    }

    /// Cell-for-cell comparison key: sorted lists of cell point sets.
    pub fn cell_point_sets(&self) -> Vec<Vec<LatticePoint>> {
        let mut out: Vec<Vec<LatticePoint>> = self
            .cells
            .iter()
            .map(|c| {
                let mut v: Vec<LatticePoint> = c.vertices.iter().map(|&i| self.point(i).clone()).collect();
                v.sort();
                v
            })
            .collect();
        out.sort();
        out
    }
}

/// Value at `x` of the lower envelope of the lifted points (the largest convex
/// function below `v`), for `x` in the Newton polytope.
pub fn envelope_at(s: &RegularSubdivision, x: &[Rat]) -> Rat {
    s.cells
        .iter()
        .map(|c| dot(&c.slope, x) + &c.offset)
        .max()
        .expect("at least one cell")
}

/// `v̲` restricted to `A`.
pub fn underlying_convex(v: &LiftingFunction) -> Result<LiftingFunction> {
    let s = lower_hull_subdivision(v)?;
    let values = v
        .points
        .iter()
        .map(|p| envelope_at(&s, &rat_vec(p.coords())))
        .collect();
    Ok(LiftingFunction {
        points: v.points.clone(),
        values,
    })
}

pub fn is_unimodular(s: &RegularSubdivision) -> UnimodularityCertificate {
    for (i, c) in s.cells.iter().enumerate() {
        let vol = s.cell_volume(i);
        if c.points.len() != s.ambient_dim() + 1 || !vol.is_one() {
            return UnimodularityCertificate {
                unimodular: false,
                offending_cell: Some(i),
                offending_volume: Some(vol),
            };
        }
    }
    UnimodularityCertificate {
        unimodular: true,
        offending_cell: None,
        offending_volume: None,
    }
}

/// Quadratic lifting on `Δ_d ∩ Z^{n+1}` inducing a unimodular triangulation.
///
/// The value at `x` is `Σ_{0≤i<j≤n+1} (s_j − s_i)²` where `s_0 = 0` and
/// `s_k = x_1 + … + x_k`; its lower hull is the alcoved (Freudenthal)
/// triangulation. The result is checked before it is returned.
pub fn build_maximal_lifting(n: usize, d: i64) -> Result<LiftingFunction> {
    let delta = dilated_simplex(n, d)?;
    let points = delta.lattice_points();
    let values = points.iter().map(|p| rat(freudenthal_value(p.coords()))).collect();
    let v = LiftingFunction::new(points, values)?;
    let s = lower_hull_subdivision(&v)?;
    if !is_unimodular(&s).unimodular {
        return Err(Error::MaximalLiftingFailed { n, d: d as usize });
    }
    Ok(v)
}

pub fn freudenthal_value(x: &[i64]) -> i64 {
    let mut sums = vec![0i64];
    for &c in x {
        sums.push(sums.last().unwrap() + c);
    }
    let mut total = 0;
    for i in 0..sums.len() {
        for j in i + 1..sums.len() {
            total += (sums[j] - sums[i]).pow(2);
        }
    }
    total
}

/// `Σ x_i² + Σ_{i<j} x_i x_j`.
pub fn quadratic_form_value(x: &[i64]) -> i64 {
    let sq: i64 = x.iter().map(|a| a * a).sum();
    let mut cross = 0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            cross += x[i] * x[j];
        }
    }
    sq + cross
}

fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ratio;

    fn square() -> LiftingFunction {
        LiftingFunction::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], &[0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn legendre_examples() {
        let tri = LiftingFunction::from_ints(&[&[0, 0], &[1, 0], &[0, 1]], &[0, 0, 0]).unwrap();
        assert_eq!(legendre(&tri, &rat_vec(&[0, 0])), (rat(0), vec![0, 1, 2]));
        assert_eq!(legendre(&tri, &rat_vec(&[2, 1])), (rat(2), vec![1]));
        assert_eq!(legendre(&square(), &rat_vec(&[1, 1])), (rat(1), vec![1, 2, 3]));
    }

    #[test]
    fn subdivision_examples() {
        let tri = LiftingFunction::from_ints(&[&[0, 0], &[1, 0], &[0, 1]], &[0, 0, 0]).unwrap();
        assert_eq!(lower_hull_subdivision(&tri).unwrap().cells().len(), 1);
        let s = lower_hull_subdivision(&square()).unwrap();
        let sets: Vec<Vec<usize>> = s.cells().iter().map(|c| c.points.clone()).collect();
        assert!(sets.contains(&vec![0, 1, 2]) && sets.contains(&vec![1, 2, 3]));
        assert!(is_unimodular(&s).unimodular);
        let d2 = dilated_simplex(1, 2).unwrap().lattice_points();
        let vals: Vec<Rat> = d2.iter().map(|p| rat(p.0.iter().map(|x| x * x).sum())).collect();
        let s = lower_hull_subdivision(&LiftingFunction::new(d2, vals).unwrap()).unwrap();
        // the unit square is cocircular under |x|², so ties keep it as one cell
        assert_eq!(s.cells().len(), 3);
        let total: BigInt = (0..3).map(|c| s.cell_volume(c)).sum();
        assert_eq!(total, BigInt::from(4));
        assert!(!is_unimodular(&s).unimodular);
    }

    #[test]
    fn degenerate_span_is_rejected() {
        let line = LiftingFunction::from_ints(&[&[0, 0], &[1, 0], &[2, 0]], &[0, 5, 0]).unwrap();
        assert!(matches!(
            lower_hull_subdivision(&line),
            Err(Error::DegenerateSpan { span: 1, ambient: 2 })
        ));
    }

    #[test]
    fn underlying_convex_examples() {
        let line = LiftingFunction::from_ints(&[&[0], &[1], &[2]], &[0, 5, 0]).unwrap();
        assert_eq!(underlying_convex(&line).unwrap().values(), &rat_vec(&[0, 0, 0])[..]);
        let pts = dilated_simplex(1, 2).unwrap().lattice_points();
        let vals: Vec<Rat> = pts.iter().map(|p| if p.0 == [1, 0] { rat(7) } else { rat(0) }).collect();
        let v = LiftingFunction::new(pts, vals).unwrap();
        let u = underlying_convex(&v).unwrap();
        assert!(u.values().iter().all(|x| *x == rat(0)));
        assert_eq!(underlying_convex(&u).unwrap(), u);
    }

    #[test]
    fn non_subdividable_simplex() {
        let v = LiftingFunction::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 2]], &[0, 0, 0, 0]).unwrap();
        let cert = is_unimodular(&lower_hull_subdivision(&v).unwrap());
        assert!(!cert.unimodular);
        assert_eq!(cert.offending_volume, Some(BigInt::from(2)));
    }

    #[test]
    fn staircase_and_maximal() {
        for (n, d, cells) in [(1, 2, 4), (1, 3, 9), (2, 2, 8), (2, 3, 27), (2, 4, 64)] {
            let v = build_maximal_lifting(n, d).unwrap();
            assert_eq!(lower_hull_subdivision(&v).unwrap().cells().len(), cells);
        }
        let _ = ratio(1, 2);
    }

    #[test]
    fn mixed_quadratic_form_is_not_maximal_in_higher_dimension() {
        let unimodular = |n: usize, d: i64| {
            let pts = dilated_simplex(n, d).unwrap().lattice_points();
            let vals = pts.iter().map(|p| rat(quadratic_form_value(p.coords()))).collect();
            is_unimodular(&lower_hull_subdivision(&LiftingFunction::new(pts, vals).unwrap()).unwrap())
        };
        assert!(unimodular(1, 3).unimodular);
        let c = unimodular(2, 2);
        assert!(!c.unimodular);
        assert_eq!(c.offending_volume, Some(BigInt::from(4)));
    }
}
