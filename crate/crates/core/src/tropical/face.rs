//! Restriction of a lifting function to a face of its Newton polytope,
//! expressed in the lattice of that face.

use super::complex::{corner_locus, TropicalComplex};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolytope};
use crate::num::{rat_vec, solve, Rat};
use crate::subdivision::LiftingFunction;

/// Lattice coordinates on a face: `x = origin + Σ μ_i basis_i`.
#[derive(Clone, Debug)]
pub struct FaceChart {
    pub origin: LatticePoint,
    pub basis: Vec<Vec<i64>>,
    /// indices into the original `A` of the points on the face
    pub indices: Vec<usize>,
    /// the restricted lifting in the coordinates `μ`
    pub lifting: LiftingFunction,
}

impl FaceChart {
    pub fn to_ambient(&self, mu: &[i64]) -> LatticePoint {
        let mut x = self.origin.0.clone();
        for (b, &c) in self.basis.iter().zip(mu) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += c * bi;
            }
        }
        LatticePoint(x)
    }
}

fn locate_face(v: &LiftingFunction, face: &LatticePolytope) -> Result<LatticePolytope> {
    let delta = v.newton_polytope()?;
    let mut want: Vec<LatticePoint> = face.vertices().to_vec();
    want.sort();
    let found = delta.faces().iter().any(|f| {
        let mut pts = delta.face_points(f);
        pts.sort();
        pts == want
    });
    if !found {
        return Err(Error::InvalidArgument("not a face of the Newton polytope".into()));
    }
    if face.dim() == 0 {
        return Err(Error::InvalidArgument("face complex of a vertex is empty".into()));
    }
    if face.dim() == delta.dim() {
        return Err(Error::InvalidArgument("face must be proper".into()));
    }
    Ok(delta)
}

pub fn face_chart(v: &LiftingFunction, face: &LatticePolytope) -> Result<FaceChart> {
    locate_face(v, face)?;
    let basis = face.lattice_basis();
    let origin = face.vertices()[0].clone();
    let m = v.ambient_dim();
    let system: Vec<Vec<Rat>> = (0..m)
        .map(|i| basis.iter().map(|b| rat_vec(&[b[i]])[0].clone()).collect())
        .collect();
    let mut indices = Vec::new();
    let mut points = Vec::new();
    let mut values = Vec::new();
    for (i, p) in v.points().iter().enumerate() {
        if !face.contains(p.coords()) {
            continue;
        }
        let mu = solve(&system, &rat_vec(&p.sub(&origin))).expect("face points lie in the face lattice");
        let mu: Vec<i64> = mu
            .iter()
            .map(|x| {
                assert!(x.is_integer(), "face basis is saturated");
                i64::try_from(x.to_integer()).expect("coordinate fits")
            })
            .collect();
        indices.push(i);
        points.push(LatticePoint(mu));
        values.push(v.values()[i].clone());
    }
    Ok(FaceChart {
        origin,
        basis,
        indices,
        lifting: LiftingFunction::new(points, values)?,
    })
}

/// `Π'`: the corner locus of `v` restricted to a proper face, in the face lattice.
pub fn face_complex(v: &LiftingFunction, face: &LatticePolytope) -> Result<TropicalComplex> {
    corner_locus(&face_chart(v, face)?.lifting)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::dilated_simplex;
    use crate::num::rat;
    use crate::subdivision::{build_maximal_lifting, is_unimodular, lower_hull_subdivision};

    #[test]
    fn bottom_edge_of_maximal_curve() {
        for d in 1..=4 {
            let v = build_maximal_lifting(1, d).unwrap();
            let delta = dilated_simplex(1, d).unwrap();
            let bottom = delta
                .faces_of_dim(1)
                .find(|f| delta.face_points(f).iter().all(|p| p.0[1] == 0))
                .unwrap();
            let c = face_complex(&v, &delta.face_polytope(bottom)).unwrap();
            assert_eq!(c.ambient_dim, 1);
            assert_eq!(c.count_of_dim(0), d as usize);
            let chart = face_chart(&v, &delta.face_polytope(bottom)).unwrap();
            assert!(is_unimodular(&lower_hull_subdivision(&chart.lifting).unwrap()).unimodular);
        }
    }

    #[test]
    fn constant_edge_gives_a_point() {
        let v = LiftingFunction::from_ints(&[&[0, 0], &[1, 0], &[0, 1]], &[0, 0, 0]).unwrap();
        let delta = v.newton_polytope().unwrap();
        for f in delta.faces_of_dim(1) {
            let c = face_complex(&v, &delta.face_polytope(f)).unwrap();
            assert_eq!(c.cells.len(), 1);
            assert_eq!(c.cells[0].vertices, vec![vec![rat(0)]]);
        }
        let vertex = delta.faces_of_dim(0).next().unwrap();
        assert!(face_complex(&v, &delta.face_polytope(vertex)).is_err());
    }
}
