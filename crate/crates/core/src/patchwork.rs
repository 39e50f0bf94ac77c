//! Combinatorial patchworking in the positive orthant.
//!
//! A sign distribution on the vertices of a unimodular triangulation cuts
//! every mixed-sign simplex by the convex hull of the midpoints of its
//! sign-changing edges. The face of the membrane inside a simplex face `τ` is
//! nonempty exactly when `τ` carries both signs, and then has dimension
//! `dim τ − 1`, so the membrane can be handled through the mixed faces alone.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::lattice::smith_invariants;
use crate::lattice::LatticePoint;
use crate::num::Rat;
use crate::subdivision::{is_unimodular, RegularSubdivision};
use crate::tropical::complex::rotation_sign;
use crate::tropical::TropicalComplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignDistribution {
    /// sign of each vertex of the triangulation, keyed by index into `A`
    pub signs: BTreeMap<usize, i8>,
}

impl SignDistribution {
    pub fn sign(&self, i: usize) -> Option<i8> {
        self.signs.get(&i).copied()
    }

    pub fn negatives(&self) -> Vec<usize> {
        self.signs.iter().filter(|(_, &s)| s < 0).map(|(&i, _)| i).collect()
    }
}

/// `−1` at `j` and `+1` at every other vertex.
pub fn single_negative_signs(s: &RegularSubdivision, j: &LatticePoint) -> Result<SignDistribution> {
    let verts = s.vertices();
    let idx = verts
        .iter()
        .copied()
        .find(|&i| s.point(i) == j)
        .ok_or_else(|| Error::NotAVertex(j.0.clone()))?;
    let signs = verts.into_iter().map(|i| (i, if i == idx { -1 } else { 1 })).collect();
    Ok(SignDistribution { signs })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MembranePiece {
    /// face of the triangulation cut by this piece
    pub simplex: usize,
    /// sign-changing edges, as pairs of indices into `A`
    pub crossings: Vec<(usize, usize)>,
    /// midpoints of the crossings
    pub vertices: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug)]
pub struct SignMembrane {
    pub ambient_dim: usize,
    pub signs: SignDistribution,
    /// one piece per mixed-sign maximal simplex
    pub facets: Vec<MembranePiece>,
    /// pairs of facets sharing a codimension-one face
    pub adjacency: Vec<(usize, usize)>,
    /// every mixed face of the triangulation, with the dimension of its piece
    pub faces: Vec<(usize, usize)>,
    /// for each mixed face of dimension `n`, the facets containing it
    ridges: BTreeMap<usize, Vec<usize>>,
}

impl SignMembrane {
    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }
}

fn mixed(sigma: &SignDistribution, vertices: &[usize]) -> bool {
    let signs: BTreeSet<i8> = vertices.iter().filter_map(|&v| sigma.sign(v)).collect();
    signs.len() == 2
}

fn midpoint(s: &RegularSubdivision, a: usize, b: usize) -> Vec<Rat> {
    s.point(a)
        .0
        .iter()
        .zip(&s.point(b).0)
        .map(|(x, y)| Rat::new((x + y).into(), 2.into()))
        .collect()
}

pub fn build_membrane(s: &RegularSubdivision, sigma: &SignDistribution) -> Result<SignMembrane> {
    let cert = is_unimodular(s);
    if !cert.unimodular {
        return Err(Error::NotUnimodular(s.cells()[cert.offending_cell.unwrap()].points.clone()));
    }
    for i in s.vertices() {
        if sigma.sign(i).is_none() {
            return Err(Error::InvalidArgument(format!("no sign at vertex {i}")));
        }
    }
    let m = s.parent().dim();
    let mut facets = Vec::new();
    let mut facet_of_face = BTreeMap::new();
    let mut faces = Vec::new();
    for (fid, f) in s.faces().iter().enumerate() {
        if f.dim == 0 || !mixed(sigma, &f.vertices) {
            continue;
        }
        faces.push((fid, f.dim - 1));
        if f.dim == m {
            let mut crossings = Vec::new();
            for (x, &a) in f.vertices.iter().enumerate() {
                for &b in &f.vertices[x + 1..] {
                    if sigma.sign(a) != sigma.sign(b) {
                        crossings.push((a, b));
                    }
                }
            }
            let vertices = crossings.iter().map(|&(a, b)| midpoint(s, a, b)).collect();
            facet_of_face.insert(fid, facets.len());
            facets.push(MembranePiece {
                simplex: fid,
                crossings,
                vertices,
            });
        }
    }
    let mut ridges = BTreeMap::new();
    let mut adjacency = Vec::new();
    for &(fid, dim) in &faces {
        if dim + 2 != m {
            continue;
        }
        let containing: Vec<usize> = s
            .cofaces(fid)
            .into_iter()
            .filter_map(|c| facet_of_face.get(&c).copied())
            .collect();
        for (x, &a) in containing.iter().enumerate() {
            for &b in &containing[x + 1..] {
                adjacency.push((a.min(b), a.max(b)));
            }
        }
        ridges.insert(fid, containing);
    }
    adjacency.sort();
    Ok(SignMembrane {
        ambient_dim: s.lifting().ambient_dim(),
        signs: sigma.clone(),
        facets,
        adjacency,
        faces,
        ridges,
    })
}

/// Combinatorial sphere evidence for a membrane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SphereReport {
    pub closed: bool,
    pub connected: bool,
    pub euler: i64,
}

impl SphereReport {
    /// `closed ∧ connected ∧ χ(S^n)` for a membrane of dimension `n`.
    pub fn looks_like_sphere(&self, n: usize) -> bool {
        let chi = if n % 2 == 0 { 2 } else { 0 };
        self.closed && self.connected && self.euler == chi
    }
}

pub fn verify_sphere(m: &SignMembrane) -> SphereReport {
    let closed = !m.facets.is_empty() && m.ridges.values().all(|c| c.len() == 2);
    let mut seen = vec![false; m.facets.len()];
    let mut nbrs = vec![Vec::new(); m.facets.len()];
    for &(a, b) in &m.adjacency {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    let mut queue = VecDeque::new();
    if !seen.is_empty() {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(a) = queue.pop_front() {
        for &b in &nbrs[a] {
            if !seen[b] {
                seen[b] = true;
                queue.push_back(b);
            }
        }
    }
    let connected = seen.iter().all(|&x| x);
    let euler = m
        .faces
        .iter()
        .map(|&(_, d)| if d % 2 == 0 { 1 } else { -1 })
        .sum();
    SphereReport {
        closed,
        connected,
        euler,
    }
}

/// An `n`-chain on the top cells of the tropical hypersurface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseClass {
    /// index into `A` of the negative vertex
    pub vertex: usize,
    /// `(cell, coefficient)` pairs, sorted by cell
    pub chain: Vec<(usize, i64)>,
    /// `φ_vertex` evaluated on the chain
    pub pairing: i64,
}

/// The `n`-cells of `C` dual to the sign-changing edges, oriented as the
/// boundary of the region of the negative vertex and checked to be a cycle.
pub fn membrane_base_class(m: &SignMembrane, c: &TropicalComplex) -> Result<BaseClass> {
    let s = c.subdivision().ok_or(Error::NoDualData)?;
    let neg = m.signs.negatives();
    let [j] = neg[..] else {
        return Err(Error::InvalidArgument("membrane is not single-negative".into()));
    };
    let vid = s.face_id(&[j]).ok_or_else(|| Error::NotAVertex(s.point(j).0.clone()))?;
    if s.faces()[vid].on_boundary() {
        return Err(Error::InvalidArgument(format!("vertex {j} is on the boundary of Δ")));
    }
    let n = c.ambient_dim - 1;
    let mut chain = Vec::new();
    for (cell, tc) in c.cells_of_dim(n) {
        if tc.dual.contains(&j) && mixed(&m.signs, &tc.dual) {
            let coef = if tc.dual[0] == j { 1 } else { -1 };
            chain.push((cell, coef * tc.weight.unwrap_or(1) as i64));
        }
    }
    chain.sort();
    let coef: BTreeMap<usize, i64> = chain.iter().copied().collect();
    let ridges: BTreeSet<usize> = chain.iter().flat_map(|(f, _)| c.cells[*f].faces.clone()).collect();
    for g in ridges {
        let total: i64 = c
            .cofaces(g)
            .into_iter()
            .filter_map(|f| coef.get(&f).map(|k| k * rotation_sign(c, g, f).0 as i64))
            .sum();
        if total != 0 {
            return Err(Error::InvalidArgument(format!("chain has boundary {total} at cell {g}")));
        }
    }
    let pairing = pair(c, &chain, j)?;
    Ok(BaseClass {
        vertex: j,
        chain,
        pairing,
    })
}

/// `φ_k`: signed count of crossings of the chain by a path of edges of the
/// triangulation from `k` to the boundary of `Δ`. Traversing an edge from its
/// lower to its higher index counts `+1`.
pub fn pair(c: &TropicalComplex, chain: &[(usize, i64)], k: usize) -> Result<i64> {
    let s = c.subdivision().ok_or(Error::NoDualData)?;
    let mut nbrs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (_, e) in s.faces_of_dim(1) {
        let (a, b) = (e.vertices[0], e.vertices[1]);
        nbrs.entry(a).or_default().push(b);
        nbrs.entry(b).or_default().push(a);
    }
    let on_boundary = |v: usize| s.face_id(&[v]).map(|f| s.faces()[f].on_boundary()).unwrap_or(false);
    let mut prev = BTreeMap::from([(k, k)]);
    let mut queue = VecDeque::from([k]);
    let mut end = None;
    while let Some(a) = queue.pop_front() {
        if on_boundary(a) {
            end = Some(a);
            break;
        }
        for &b in nbrs.get(&a).into_iter().flatten() {
            if !prev.contains_key(&b) {
                prev.insert(b, a);
                queue.push_back(b);
            }
        }
    }
    let mut at = end.ok_or_else(|| Error::NotAVertex(s.point(k).0.clone()))?;
    let coef: BTreeMap<&[usize], i64> = chain
        .iter()
        .map(|&(f, w)| (c.cells[f].dual.as_slice(), w))
        .collect();
    let mut total = 0;
    while at != k {
        let from = prev[&at];
        let key = [from.min(at), from.max(at)];
        if let Some(&w) = coef.get(&key[..]) {
            total += if from < at { w } else { -w };
        }
        at = from;
    }
    Ok(total)
}

/// Matrix `(φ_k(z_j))` over the given classes and vertices.
pub fn pairing_matrix(c: &TropicalComplex, classes: &[BaseClass], vertices: &[usize]) -> Result<Vec<Vec<i64>>> {
    classes
        .iter()
        .map(|z| vertices.iter().map(|&k| pair(c, &z.chain, k)).collect())
        .collect()
}

pub fn integer_rank(m: &[Vec<i64>]) -> usize {
    smith_invariants(m).len()
}

/// Midpoint of an edge, as used for membrane vertices.
pub fn crossing_point(s: &RegularSubdivision, a: usize, b: usize) -> Vec<Rat> {
    midpoint(s, a, b)
}
