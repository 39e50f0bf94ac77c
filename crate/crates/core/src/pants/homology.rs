//! Integral homology of the compactified base via the order complex of its
//! face poset.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::lattice::smith::sparse_rank_and_torsion;
use crate::tropical::StratifiedComplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    /// Betti numbers `b_0, …, b_n`
    pub betti: Vec<usize>,
    /// torsion coefficients of `H_0, …, H_n`
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyReport {
    pub fn reduced_betti(&self) -> Vec<usize> {
        let mut b = self.betti.clone();
        if let Some(b0) = b.first_mut() {
            *b0 = b0.saturating_sub(1);
        }
        b
    }

    pub fn torsion_free(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty())
    }
}

/// Chains `a_0 < a_1 < … < a_q` of a finite poset given by its strict upper sets.
fn chains(up: &[Vec<usize>], max_len: usize) -> Vec<Vec<Vec<usize>>> {
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); max_len];
    let mut stack: Vec<Vec<usize>> = (0..up.len()).map(|a| vec![a]).collect();
    while let Some(ch) = stack.pop() {
        let top = *ch.last().unwrap();
        if ch.len() < max_len {
            for &b in &up[top] {
                let mut next = ch.clone();
                next.push(b);
                stack.push(next);
            }
        }
        by_dim[ch.len() - 1].push(ch);
    }
    for level in by_dim.iter_mut() {
        level.sort();
    }
    by_dim
}

pub fn base_homology(s: &StratifiedComplex) -> HomologyReport {
    let n = s.top_dim();
    let count = s.cells.len();
    let up: Vec<Vec<usize>> = (0..count)
        .map(|a| (0..count).filter(|&b| b != a && s.le(a, b)).collect())
        .collect();
    // the order complex can have dimension up to n; one extra level for ∂_{n+1}
    let simplices = chains(&up, n + 2);
    let index: Vec<HashMap<&Vec<usize>, usize>> = simplices
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    // boundary[q] : C_q -> C_{q-1}, as sparse columns
    let mut ranks = vec![0usize; n + 3];
    let mut torsions: Vec<Vec<BigInt>> = vec![Vec::new(); n + 3];
    for q in 1..simplices.len() {
        let cols: Vec<BTreeMap<usize, i64>> = simplices[q]
            .iter()
            .map(|ch| {
                let mut col = BTreeMap::new();
                for i in 0..ch.len() {
                    let mut face = ch.clone();
                    face.remove(i);
                    let row = index[q - 1][&face];
                    col.insert(row, if i % 2 == 0 { 1 } else { -1 });
                }
                col
            })
            .collect();
        let (r, t) = sparse_rank_and_torsion(&cols);
        ranks[q] = r;
        torsions[q] = t;
    }
    let betti = (0..=n)
        .map(|q| simplices[q].len() - ranks[q] - ranks[q + 1])
        .collect();
    let torsion = (0..=n).map(|q| torsions[q + 1].clone()).collect();
    HomologyReport { betti, torsion }
}
