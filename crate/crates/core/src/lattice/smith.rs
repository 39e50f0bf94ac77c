//! Smith normal form over the integers, integer kernels and a sparse
//! elimination front end for large boundary matrices.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Nonzero elementary divisors `d_1 | d_2 | ...` of an integer matrix.
pub fn smith_invariants(m: &[Vec<i64>]) -> Vec<BigInt> {
    let big: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    smith_diagonal(big)
}

/// Dense Smith normal form; returns the positive diagonal entries.
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for i in t..rows {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // the pivot must divide the whole trailing block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &p).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for r in a.iter_mut() {
                r.swap(t, best.1);
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Basis (as columns, returned as vectors) of the integer kernel `{x ∈ Z^cols : m x = 0}`.
pub fn integer_kernel(m: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    // column operations; `u` accumulates them so that `a = m * u`
    let col_op = |a: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, dst: usize, src: usize, q: i128| {
        for r in a.iter_mut() {
            r[dst] -= q * r[src];
        }
        for r in u.iter_mut() {
            r[dst] -= q * r[src];
        }
    };
    let swap = |a: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for r in a.iter_mut() {
            r.swap(x, y);
        }
        for r in u.iter_mut() {
            r.swap(x, y);
        }
    };
    let mut piv = 0;
    for row in 0..a.len() {
        if piv == cols {
            break;
        }
        loop {
            let nz: Vec<usize> = (piv..cols).filter(|&j| a[row][j] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let &small = nz.iter().min_by_key(|&&j| a[row][j].abs()).unwrap();
            swap(&mut a, &mut u, piv, small);
            let mut done = true;
            for j in piv + 1..cols {
                if a[row][j] != 0 {
                    let q = a[row][j].div_euclid(a[row][piv]);
                    col_op(&mut a, &mut u, j, piv, q);
                    if a[row][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                piv += 1;
                break;
            }
        }
    }
    (piv..cols)
        .map(|j| {
            u.iter()
                .map(|r| i64::try_from(r[j]).expect("kernel entry exceeds i64"))
                .collect()
        })
        .collect()
}

/// Rank and torsion (elementary divisors greater than one) of a sparse integer
/// matrix given by its columns.
///
/// Unit pivots are eliminated sparsely first; whatever remains is handed to the
/// dense Smith form.
pub fn sparse_rank_and_torsion(columns: &[BTreeMap<usize, i64>]) -> (usize, Vec<BigInt>) {
    let mut cols: Vec<BTreeMap<usize, i128>> = columns
        .iter()
        .map(|c| c.iter().filter(|(_, &v)| v != 0).map(|(&r, &v)| (r, v as i128)).collect())
        .collect();
    let mut row_index: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for (j, c) in cols.iter().enumerate() {
        for &r in c.keys() {
            row_index.entry(r).or_default().insert(j);
        }
    }
    let mut alive: BTreeSet<usize> = (0..cols.len()).filter(|&j| !cols[j].is_empty()).collect();
    let mut rank = 0;
    loop {
        let pivot = alive.iter().find_map(|&j| {
            cols[j]
                .iter()
                .find(|(_, &v)| v == 1 || v == -1)
                .map(|(&r, &v)| (j, r, v))
        });
        let Some((pj, pr, pv)) = pivot else { break };
        rank += 1;
        alive.remove(&pj);
        let pcol = std::mem::take(&mut cols[pj]);
        for &r in pcol.keys() {
            if let Some(s) = row_index.get_mut(&r) {
                s.remove(&pj);
            }
        }
        let others: Vec<usize> = row_index
            .get(&pr)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default();
        for j in others {
            let f = cols[j][&pr] * pv;
            for (&r, &v) in &pcol {
                let e = cols[j].entry(r).or_insert(0);
                *e = e
                    .checked_sub(f.checked_mul(v).expect("overflow in sparse elimination"))
                    .expect("overflow in sparse elimination");
                if *e == 0 {
                    cols[j].remove(&r);
                    if let Some(s) = row_index.get_mut(&r) {
                        s.remove(&j);
                    }
                } else {
                    row_index.entry(r).or_default().insert(j);
                }
            }
            if cols[j].is_empty() {
                alive.remove(&j);
            }
        }
        row_index.remove(&pr);
    }
    let rest: Vec<usize> = alive.into_iter().collect();
    if rest.is_empty() {
        return (rank, Vec::new());
    }
    let rows: Vec<usize> = rest
        .iter()
        .flat_map(|&j| cols[j].keys().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut dense = vec![vec![BigInt::zero(); rest.len()]; rows.len()];
    for (c, &j) in rest.iter().enumerate() {
        for (&r, &v) in &cols[j] {
            dense[pos[&r]][c] = BigInt::from(v);
        }
    }
    let diag = smith_diagonal(dense);
    let torsion = diag.iter().filter(|d| !d.is_one()).cloned().collect();
    (rank + diag.len(), torsion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(smith_invariants(&[vec![1, 0], vec![0, 1]]), big(&[1, 1]));
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 0]]), big(&[2]));
        assert_eq!(smith_invariants(&[vec![2, 4], vec![6, 8]]), big(&[2, 4]));
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 3]]), big(&[1, 6]));
        assert!(smith_invariants(&[]).is_empty());
    }

    fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        (0..a.len())
            .map(|i| {
                (0..b[0].len())
                    .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
        let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for _ in 0..6 {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i != j {
                let q = rng.gen_range(-2..=2);
                for k in 0..n {
                    u[i][k] += q * u[j][k];
                }
            }
        }
        u
    }

    #[test]
    fn invariant_under_unimodular_equivalence() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let (r, c) = (rng.gen_range(1..5), rng.gen_range(1..5));
            let m: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-6..=6)).collect()).collect();
            let u = random_unimodular(&mut rng, r);
            let v = random_unimodular(&mut rng, c);
            let umv = mul(&mul(&u, &m), &v);
            assert_eq!(smith_invariants(&m), smith_invariants(&umv));
        }
    }

    #[test]
    fn kernel_is_saturated() {
        // x + 2y + 3z = 0 has a kernel lattice of index 1
        let k = integer_kernel(&[vec![1, 2, 3]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v[0] + 2 * v[1] + 3 * v[2], 0);
        }
        let minors = [
            k[0][0] * k[1][1] - k[0][1] * k[1][0],
            k[0][0] * k[1][2] - k[0][2] * k[1][0],
            k[0][1] * k[1][2] - k[0][2] * k[1][1],
        ];
        let g = minors.iter().fold(0i64, |g, &x| g.gcd(&x));
        assert_eq!(g, 1);
        assert_eq!(integer_kernel(&[], 2).len(), 2);
    }

    #[test]
    fn sparse_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
            let m: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let cols: Vec<BTreeMap<usize, i64>> = (0..c)
                .map(|j| (0..r).filter(|&i| m[i][j] != 0).map(|i| (i, m[i][j])).collect())
                .collect();
            let dense = smith_invariants(&m);
            let (rank, torsion) = sparse_rank_and_torsion(&cols);
            assert_eq!(rank, dense.len());
            let want: Vec<BigInt> = dense.into_iter().filter(|d| !d.is_one()).collect();
            assert_eq!(torsion, want);
        }
    }
}
