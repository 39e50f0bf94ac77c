//! Truncated Puiseux series `Σ b_k t^{e_k}` with complex coefficients.
//!
//! The valuation is `−(lowest exponent)`. For numerical work a series is
//! evaluated at `t = 1/T` for a large real `T`, so that `log_T |b| → val(b)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{to_f64, Rat};

#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxSeries {
    terms: Vec<(Rat, Complex64)>,
    trunc: Rat,
}

impl PuiseuxSeries {
    /// Terms at or beyond `trunc` are discarded; equal exponents are merged.
    pub fn new(mut terms: Vec<(Rat, Complex64)>, trunc: Rat) -> Self {
        terms.retain(|(e, c)| *e < trunc && *c != Complex64::zero());
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Rat, Complex64)> = Vec::new();
        for (e, c) in terms {
            match merged.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| *c != Complex64::zero());
        PuiseuxSeries { terms: merged, trunc }
    }

    pub fn monomial(coeff: Complex64, exp: Rat, trunc: Rat) -> Self {
        Self::new(vec![(exp, coeff)], trunc)
    }

    pub fn terms(&self) -> &[(Rat, Complex64)] {
        &self.terms
    }

    pub fn trunc(&self) -> &Rat {
        &self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Result<&(Rat, Complex64)> {
        self.terms.first().ok_or(Error::ZeroSeries)
    }

    pub fn val(&self) -> Result<Rat> {
        Ok(-self.leading()?.0.clone())
    }

    /// `(val, argument of the leading coefficient)`, the argument in `(−π, π]`.
    pub fn lift(&self) -> Result<(Rat, f64)> {
        let (e, c) = self.leading()?;
        Ok((-e.clone(), c.arg()))
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            trunc: self.trunc.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.trunc.clone().min(other.trunc.clone());
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(terms, trunc)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let lo = |s: &Self| s.terms.first().map(|t| t.0.clone()).unwrap_or_else(|| s.trunc.clone());
        let trunc = (&self.trunc + lo(other)).min(&other.trunc + lo(self));
        let mut terms = Vec::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                terms.push((ea + eb, ca * cb));
            }
        }
        Self::new(terms, trunc)
    }

    /// `Σ b_k T^{−e_k}`.
    pub fn eval_at(&self, big_t: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| c * big_t.powf(-to_f64(e)))
            .sum()
    }
}

/// Sum of two angles reduced to `(−π, π]`.
pub fn add_angles(a: f64, b: f64) -> f64 {
    let mut s = (a + b) % (2.0 * PI);
    if s <= -PI {
        s += 2.0 * PI;
    } else if s > PI {
        s -= 2.0 * PI;
    }
    s
}

pub fn angle_distance(a: f64, b: f64) -> f64 {
    add_angles(a, -b).abs()
}

impl PuiseuxSeries {
    pub fn has_negative_lead(&self) -> bool {
        self.terms.first().is_some_and(|(e, _)| e.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn valuation_examples() {
        let b = PuiseuxSeries::new(vec![(rat(-3), c(2.0, 0.0)), (rat(1), c(1.0, 0.0))], rat(5));
        assert_eq!(b.val().unwrap(), rat(3));
        let (v, u) = PuiseuxSeries::monomial(c(-1.0, 0.0), rat(-1), rat(4)).lift().unwrap();
        assert_eq!(v, rat(1));
        assert!((u - PI).abs() < 1e-15);
        let (v, u) = PuiseuxSeries::monomial(c(1.0, 1.0), rat(2), rat(4)).lift().unwrap();
        assert_eq!(v, rat(-2));
        assert!((u - PI / 4.0).abs() < 1e-15);
        assert_eq!(PuiseuxSeries::new(vec![], rat(1)).val(), Err(Error::ZeroSeries));
    }

    fn random_series(rng: &mut ChaCha8Rng) -> PuiseuxSeries {
        let k = rng.gen_range(1..5);
        let terms = (0..k)
            .map(|_| {
                (
                    ratio(rng.gen_range(-6..6), rng.gen_range(1..4)),
                    c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
                )
            })
            .collect();
        PuiseuxSeries::new(terms, rat(8))
    }

    #[test]
    fn valuation_is_multiplicative_and_ultrametric() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let (a, b) = (random_series(&mut rng), random_series(&mut rng));
            let (va, ua) = a.lift().unwrap();
            let (vb, ub) = b.lift().unwrap();
            let (vp, up) = a.mul(&b).lift().unwrap();
            assert_eq!(vp, &va + &vb);
            assert!(angle_distance(up, add_angles(ua, ub)) < 1e-12);
            let s = a.add(&b);
            if let Ok(vs) = s.val() {
                assert!(vs <= va.clone().max(vb.clone()));
                if va != vb {
                    assert_eq!(vs, va.max(vb));
                }
            }
        }
    }

    #[test]
    fn numeric_evaluation_tracks_valuation() {
        let b = PuiseuxSeries::new(vec![(rat(-2), c(3.0, 0.0)), (rat(0), c(1.0, 0.0))], rat(3));
        let big_t = 1e8f64;
        let est = b.eval_at(big_t).norm().ln() / big_t.ln();
        assert!((est - 2.0).abs() < 0.1);
    }
}
