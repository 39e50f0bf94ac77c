use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::num::Rat;

/// `x ⊕_t y = log_t(t^x + t^y)`; `t = f64::INFINITY` gives `max`.
///
/// Evaluated as `max + log_t(1 + t^{-|x-y|})` so large arguments do not overflow.
pub fn t_plus(x: f64, y: f64, t: f64) -> f64 {
    assert!(t > 1.0, "semiring parameter must exceed 1");
    let hi = x.max(y);
    if t.is_infinite() || hi == f64::NEG_INFINITY {
        return hi;
    }
    let gap = (x - y).abs();
    hi + (-(gap * t.ln())).exp().ln_1p() / t.ln()
}

/// `⊕_t`-sum of a finite family (the semiring zero `-∞` for an empty one).
pub fn t_sum(xs: &[f64], t: f64) -> f64 {
    assert!(t > 1.0, "semiring parameter must exceed 1");
    let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if t.is_infinite() || hi == f64::NEG_INFINITY {
        return hi;
    }
    let lt = t.ln();
    let s: f64 = xs.iter().map(|x| ((x - hi) * lt).exp()).sum();
    hi + s.ln() / lt
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Direct,
    Valuations,
    Patchwork { t: String },
}

/// `max_j (c_j + j·x)` with real coefficients; exact values are kept when the
/// coefficients come from valuations.
#[derive(Clone, Debug, PartialEq)]
pub struct TropicalizedPoly {
    pub exponents: Vec<LatticePoint>,
    pub coefficients: Vec<f64>,
    pub exact: Option<Vec<Rat>>,
    pub provenance: Provenance,
}

impl TropicalizedPoly {
    pub fn new(exponents: Vec<LatticePoint>, coefficients: Vec<f64>) -> Result<Self> {
        if exponents.len() != coefficients.len() {
            return Err(Error::DimensionMismatch {
                expected: exponents.len(),
                got: coefficients.len(),
            });
        }
        let mut sorted = exponents.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].0.clone()));
        }
        Ok(TropicalizedPoly {
            exponents,
            coefficients,
            exact: None,
            provenance: Provenance::Direct,
        })
    }

    pub fn terms(&self, x: &[f64]) -> Vec<f64> {
        self.exponents
            .iter()
            .zip(&self.coefficients)
            .map(|(j, c)| c + j.coords().iter().zip(x).map(|(&a, b)| a as f64 * b).sum::<f64>())
            .collect()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms(x).into_iter().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Floating slack added to the tube inequality; it only absorbs rounding in
/// the evaluation of the monomials.
pub const TUBE_SLACK: f64 = 1e-12;

/// `c_k + k·x <= max_{j≠k}(c_j + j·x) + log_t N` for every `k`, with `N + 1` the
/// number of monomials.
pub fn in_tube(x: &[f64], p: &TropicalizedPoly, t: f64) -> Result<bool> {
    let terms = p.terms(x);
    if terms.len() < 2 {
        return Err(Error::SingleMonomial);
    }
    let n = (terms.len() - 1) as f64;
    let slack = if t.is_infinite() { 0.0 } else { n.ln() / t.ln() };
    let scale = terms.iter().fold(1.0f64, |a, b| a.max(b.abs()));
    for k in 0..terms.len() {
        let rest = terms
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &v)| v)
            .fold(f64::NEG_INFINITY, f64::max);
        if terms[k] > rest + slack + TUBE_SLACK * scale {
            return Ok(false);
        }
    }
    Ok(true)
}
