//! Exact convex-hull machinery on small point configurations.
//!
//! Point sets are addressed by index into a shared coordinate table so that
//! faces can be compared as sorted index sets across different cells.

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::num::{dot, nullspace, rank, rref, Rat};

/// Supporting hyperplane `normal·x + offset = 0` of a point configuration,
/// strictly negative on the points off the facet.
#[derive(Clone, Debug)]
pub struct HullFacet {
    pub ids: Vec<usize>,
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

impl HullFacet {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot(&self.normal, x) + &self.offset
    }
}

fn diff(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn affine_dim(coords: &[Vec<Rat>], ids: &[usize]) -> usize {
    if ids.len() <= 1 {
        return 0;
    }
    let base = &coords[ids[0]];
    let rows: Vec<Vec<Rat>> = ids[1..].iter().map(|&i| diff(&coords[i], base)).collect();
    rank(&rows)
}

/// Coordinate indices onto which the affine span of `ids` projects bijectively.
pub fn chart_columns(coords: &[Vec<Rat>], ids: &[usize]) -> Vec<usize> {
    if ids.len() <= 1 {
        return Vec::new();
    }
    let base = &coords[ids[0]];
    let mut rows: Vec<Vec<Rat>> = ids[1..].iter().map(|&i| diff(&coords[i], base)).collect();
    rref(&mut rows)
}

fn project(coords: &[Vec<Rat>], cols: &[usize]) -> Vec<Vec<Rat>> {
    coords
        .iter()
        .map(|c| cols.iter().map(|&j| c[j].clone()).collect())
        .collect()
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 && idx[0] == n - k {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Hyperplane through `pts` (affinely independent, as many as the ambient dimension).
fn hyperplane_through(coords: &[Vec<Rat>], pts: &[usize]) -> Option<(Vec<Rat>, Rat)> {
    let dim = coords[pts[0]].len();
    let base = &coords[pts[0]];
    let rows: Vec<Vec<Rat>> = pts[1..].iter().map(|&i| diff(&coords[i], base)).collect();
    let ns = nullspace(&rows, dim);
    if ns.len() != 1 {
        return None;
    }
    let normal = ns.into_iter().next().unwrap();
    let offset = -dot(&normal, base);
    Some((normal, offset))
}

/// Facets of `conv(ids)`, which must be full-dimensional in the ambient space
/// of `coords`.
pub fn facets(coords: &[Vec<Rat>], ids: &[usize]) -> Vec<HullFacet> {
    let dim = coords[ids[0]].len();
    if dim == 0 {
        return Vec::new();
    }
    if ids.len() == dim + 1 {
        // simplex: every facet drops one vertex
        return (0..ids.len())
            .map(|drop| {
                let rest: Vec<usize> = ids
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, &x)| x)
                    .collect();
                let (mut normal, mut offset) =
                    hyperplane_through(coords, &rest).expect("simplex vertices independent");
                let s = dot(&normal, &coords[ids[drop]]) + &offset;
                if s.is_positive() {
                    normal.iter_mut().for_each(|x| *x = -x.clone());
                    offset = -offset;
                }
                let mut rest = rest;
                rest.sort_unstable();
                HullFacet {
                    ids: rest,
                    normal,
                    offset,
                }
            })
            .collect();
    }
    let mut found: Vec<HullFacet> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for_each_combination(ids.len(), dim, |comb| {
        let pts: Vec<usize> = comb.iter().map(|&c| ids[c]).collect();
        if found
            .iter()
            .any(|f| pts.iter().all(|p| f.ids.binary_search(p).is_ok()))
        {
            return;
        }
        let Some((mut normal, mut offset)) = hyperplane_through(coords, &pts) else {
            return;
        };
        let mut pos = false;
        let mut neg = false;
        let mut on = Vec::new();
        for &i in ids {
            let s = dot(&normal, &coords[i]) + &offset;
            if s.is_zero() {
                on.push(i);
            } else if s.is_positive() {
                pos = true;
            } else {
                neg = true;
            }
            if pos && neg {
                return;
            }
        }
        if pos {
            normal.iter_mut().for_each(|x| *x = -x.clone());
            offset = -offset;
        }
        on.sort_unstable();
        if seen.insert(on.clone()) {
            found.push(HullFacet {
                ids: on,
                normal,
                offset,
            });
        }
    });
    found
}

/// All non-empty faces of `conv(ids)` (including the polytope itself), as sorted
/// index sets, for a configuration of any affine dimension.
pub fn faces(coords: &[Vec<Rat>], ids: &[usize]) -> Vec<Vec<usize>> {
    let mut out: HashSet<Vec<usize>> = HashSet::new();
    let mut sorted = ids.to_vec();
    sorted.sort_unstable();
    collect_faces(coords, sorted, &mut out);
    let mut v: Vec<Vec<usize>> = out.into_iter().collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

fn collect_faces(coords: &[Vec<Rat>], ids: Vec<usize>, out: &mut HashSet<Vec<usize>>) {
    if out.contains(&ids) {
        return;
    }
    let d = affine_dim(coords, &ids);
    if ids.len() == d + 1 {
        // simplex: every non-empty subset is a face
        let k = ids.len();
        for mask in 1u64..(1u64 << k) {
            let sub: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| ids[b]).collect();
            out.insert(sub);
        }
        return;
    }
    out.insert(ids.clone());
    let cols = chart_columns(coords, &ids);
    let local = project(coords, &cols);
    for f in facets(&local, &ids) {
        collect_faces(coords, f.ids, out);
    }
}

/// A maximal cell of a lower hull: the points `ids` lie on the graph of the
/// affine function `slope·x + offset`, and every other point lies strictly above.
#[derive(Clone, Debug)]
pub struct LowerCell {
    pub ids: Vec<usize>,
    pub slope: Vec<Rat>,
    pub offset: Rat,
}

impl LowerCell {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot(&self.slope, x) + &self.offset
    }
}

/// A facet of a lower cell lying on the boundary of the convex hull.
#[derive(Clone, Debug)]
pub struct BoundaryRidge {
    pub cell: usize,
    pub ids: Vec<usize>,
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

#[derive(Clone, Debug)]
pub struct LowerHull {
    pub cells: Vec<LowerCell>,
    /// pairs of cells sharing a facet
    pub adjacency: Vec<(usize, usize)>,
    pub boundary: Vec<BoundaryRidge>,
}

/// Lower convex hull of the lifted points `(coords[i], values[i])`.
///
/// Cells include every point lying on their supporting hyperplane, so
/// non-generic liftings produce non-simplicial cells. The points must affinely
/// span their ambient space.
pub fn lower_hull(coords: &[Vec<Rat>], values: &[Rat]) -> LowerHull {
    let first = initial_cell(coords, values);
    let mut cells = vec![first];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    index.insert(cells[0].ids.clone(), 0);
    let mut adjacency = Vec::new();
    let mut boundary = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(ci) = queue.pop_front() {
        let cell = cells[ci].clone();
        for f in facets(coords, &cell.ids) {
            let mut best: Option<Rat> = None;
            for (i, x) in coords.iter().enumerate() {
                let l = f.eval(x);
                if l.is_positive() {
                    let s = (&values[i] - cell.eval(x)) / l;
                    if best.as_ref().is_none_or(|b| s < *b) {
                        best = Some(s);
                    }
                }
            }
            let Some(s) = best else {
                boundary.push(BoundaryRidge {
                    cell: ci,
                    ids: f.ids,
                    normal: f.normal,
                    offset: f.offset,
                });
                continue;
            };
            let slope: Vec<Rat> = cell
                .slope
                .iter()
                .zip(&f.normal)
                .map(|(a, n)| a + &s * n)
                .collect();
            let offset = &cell.offset + &s * &f.offset;
            let ids: Vec<usize> = (0..coords.len())
                .filter(|&i| values[i] == dot(&slope, &coords[i]) + &offset)
                .collect();
            let next = match index.get(&ids) {
                Some(&j) => j,
                None => {
                    let j = cells.len();
                    index.insert(ids.clone(), j);
                    cells.push(LowerCell { ids, slope, offset });
                    queue.push_back(j);
                    j
                }
            };
            let pair = (ci.min(next), ci.max(next));
            if !adjacency.contains(&pair) {
                adjacency.push(pair);
            }
        }
    }
    adjacency.sort_unstable();
    LowerHull {
        cells,
        adjacency,
        boundary,
    }
}

/// Raises an affine function from below until its contact set spans the space.
fn initial_cell(coords: &[Vec<Rat>], values: &[Rat]) -> LowerCell {
    let dim = coords[0].len();
    let min = values.iter().min().expect("non-empty").clone();
    let mut slope = vec![Rat::zero(); dim];
    let mut offset = min;
    let contact = |slope: &[Rat], offset: &Rat| -> Vec<usize> {
        (0..coords.len())
            .filter(|&i| values[i] == dot(slope, &coords[i]) + offset)
            .collect()
    };
    let mut ids = contact(&slope, &offset);
    loop {
        // orthogonal basis of the direction space of the contact set
        let base = coords[ids[0]].clone();
        let mut basis: Vec<Vec<Rat>> = Vec::new();
        let residual = |v: Vec<Rat>, basis: &[Vec<Rat>]| -> Vec<Rat> {
            let mut w = v;
            for b in basis {
                let f = dot(&w, b) / dot(b, b);
                for (x, y) in w.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
            w
        };
        for &i in &ids[1..] {
            let w = residual(diff(&coords[i], &base), &basis);
            if w.iter().any(|x| !x.is_zero()) {
                basis.push(w);
            }
        }
        if basis.len() == dim {
            return LowerCell { ids, slope, offset };
        }
        let (w, p) = coords
            .iter()
            .find_map(|x| {
                let w = residual(diff(x, &base), &basis);
                w.iter().any(|c| !c.is_zero()).then(|| (w, x.clone()))
            })
            .expect("points span the ambient space");
        // g vanishes on the contact span and equals 1 at p
        let scale = dot(&w, &diff(&p, &base));
        let g_lin: Vec<Rat> = w.iter().map(|x| x / &scale).collect();
        let g_off = -dot(&g_lin, &base);
        let mut best: Option<Rat> = None;
        for (i, x) in coords.iter().enumerate() {
            let g = dot(&g_lin, x) + &g_off;
            if g.is_positive() {
                let s = (&values[i] - dot(&slope, x) - &offset) / g;
                if best.as_ref().is_none_or(|b| s < *b) {
                    best = Some(s);
                }
            }
        }
        let s = best.expect("p has positive g");
        for (a, g) in slope.iter_mut().zip(&g_lin) {
            *a += &s * g;
        }
        offset += &s * &g_off;
        ids = contact(&slope, &offset);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, rat_vec};

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rat>> {
        v.iter().map(|p| rat_vec(p)).collect()
    }

    #[test]
    fn combinations_count() {
        let mut n = 0;
        for_each_combination(6, 3, |_| n += 1);
        assert_eq!(n, 20);
        let mut m = 0;
        for_each_combination(3, 3, |_| m += 1);
        assert_eq!(m, 1);
    }

    #[test]
    fn square_facets_and_faces() {
        let c = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[0, 2], &[1, 2]]);
        let f = facets(&c, &[0, 1, 2, 3, 4, 5]);
        assert_eq!(f.len(), 4);
        let left = f.iter().find(|x| x.ids == vec![0, 2, 4]).unwrap();
        assert!(left.eval(&c[1]) < rat(0));
        let all = faces(&c, &[0, 1, 2, 3, 4, 5]);
        // rectangle: itself, 4 edges, 4 vertices
        assert_eq!(all.len(), 9);
    }

    #[test]
    fn square_lower_hull_splits() {
        let c = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let v = rat_vec(&[0, 0, 0, 1]);
        let h = lower_hull(&c, &v);
        let mut cells: Vec<Vec<usize>> = h.cells.iter().map(|c| c.ids.clone()).collect();
        cells.sort();
        assert_eq!(cells, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(h.adjacency.len(), 1);
        assert_eq!(h.boundary.len(), 4);
    }

    #[test]
    fn flat_lifting_gives_one_cell() {
        let c = pts(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[1, 1], &[0, 2]]);
        let h = lower_hull(&c, &vec![rat(0); 6]);
        assert_eq!(h.cells.len(), 1);
        assert_eq!(h.cells[0].ids.len(), 6);
    }
}
