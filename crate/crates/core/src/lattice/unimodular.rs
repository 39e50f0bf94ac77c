use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::point::LatticePoint;
use crate::error::{Error, Result};
use crate::num::det_int;

/// `x ↦ M x + b` with `M ∈ GL_{n+1}(Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineUnimodularMap {
    pub matrix: Vec<Vec<i64>>,
    pub translation: Vec<i64>,
}

impl AffineUnimodularMap {
    pub fn new(matrix: Vec<Vec<i64>>, translation: Vec<i64>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) || translation.len() != n {
            return Err(Error::InvalidArgument("map must be square with matching translation".into()));
        }
        let d = det_int(&matrix);
        if !d.abs().is_one() {
            return Err(Error::NotUnimodularMatrix(d.to_string()));
        }
        Ok(AffineUnimodularMap { matrix, translation })
    }

    pub fn identity(n: usize) -> Self {
        AffineUnimodularMap {
            matrix: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
            translation: vec![0; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn determinant(&self) -> i64 {
        det_int(&self.matrix).to_i64().expect("unimodular determinant")
    }

    /// Whether the linear part lies in `SL_{n+1}(Z)`.
    pub fn is_special(&self) -> bool {
        self.determinant() == 1
    }

    pub fn apply_linear(&self, x: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn apply(&self, p: &LatticePoint) -> LatticePoint {
        let mut y = self.apply_linear(p.coords());
        for (a, b) in y.iter_mut().zip(&self.translation) {
            *a += b;
        }
        LatticePoint(y)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineUnimodularMap) -> AffineUnimodularMap {
        let n = self.dim();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum())
                    .collect()
            })
            .collect();
        let mut translation = self.apply_linear(&other.translation);
        for (a, b) in translation.iter_mut().zip(&self.translation) {
            *a += b;
        }
        AffineUnimodularMap { matrix, translation }
    }

    pub fn inverse(&self) -> AffineUnimodularMap {
        let n = self.dim();
        let det = self.determinant();
        // adjugate / det, exact because det = ±1
        let matrix: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let minor: Vec<Vec<i64>> = (0..n)
                            .filter(|&r| r != j)
                            .map(|r| (0..n).filter(|&c| c != i).map(|c| self.matrix[r][c]).collect())
                            .collect();
                        let c = det_int(&minor).to_i64().expect("cofactor fits");
                        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        sign * c * det
                    })
                    .collect()
            })
            .collect();
        let lin = AffineUnimodularMap {
            matrix,
            translation: vec![0; n],
        };
        let t = lin.apply_linear(&self.translation);
        AffineUnimodularMap {
            translation: t.into_iter().map(|x| -x).collect(),
            ..lin
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_unimodular() {
        assert!(AffineUnimodularMap::new(vec![vec![2, 0], vec![0, 1]], vec![0, 0]).is_err());
        let m = AffineUnimodularMap::new(vec![vec![2, 1], vec![1, 1]], vec![3, -1]).unwrap();
        assert!(m.is_special());
        let p = LatticePoint(vec![4, -7]);
        assert_eq!(m.inverse().apply(&m.apply(&p)), p);
        assert_eq!(m.compose(&m.inverse()), AffineUnimodularMap::identity(2));
    }
}
