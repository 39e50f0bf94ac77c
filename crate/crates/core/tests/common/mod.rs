#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tropical_core::lattice::LatticePoint;
use tropical_core::num::Rat;
use tropical_core::subdivision::LiftingFunction;

/// Random full-dimensional lifting in `R^m` with at most `max_points` points
/// in a small box and rational values with denominators up to 3.
pub fn random_lifting(rng: &mut ChaCha8Rng, m: usize, max_points: usize) -> LiftingFunction {
    loop {
        let side = if m <= 2 { 4 } else { 2 };
        let count = rng.gen_range(m + 1..=max_points);
        let mut pts = BTreeSet::new();
        for _ in 0..count * 4 {
            if pts.len() == count {
                break;
            }
            pts.insert((0..m).map(|_| rng.gen_range(0..=side)).collect::<Vec<i64>>());
        }
        let points: Vec<LatticePoint> = pts.into_iter().map(LatticePoint).collect();
        let values = points
            .iter()
            .map(|_| Rat::new(rng.gen_range(-12i64..=12).into(), rng.gen_range(1i64..=3).into()))
            .collect();
        if let Ok(v) = LiftingFunction::new(points, values) {
            if v.newton_polytope().map(|p| p.dim() == m).unwrap_or(false) {
                return v;
            }
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

/// Interior lattice points of `{x ≥ 0, Σx ≤ d}` in `R^m`, by brute force.
pub fn interior_simplex_points(m: usize, d: i64) -> usize {
    let mut count = 0;
    let mut x = vec![1i64; m];
    loop {
        if x.iter().sum::<i64>() < d {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == m {
                return count;
            }
            x[i] += 1;
            if x[i] < d {
                break;
            }
            x[i] = 1;
            i += 1;
        }
    }
}
