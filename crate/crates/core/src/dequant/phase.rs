//! Convergence of `H_t(V_t)` to the phase-tropical limit `W(V_K)` for lines.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::puiseux::PuiseuxSeries;
use crate::error::Result;
use crate::num::{to_f64, Rat};

/// `H_T(z) = |z|^{1/ln T} e^{i arg z}`, so that `Log_T = Log ∘ H_T`.
pub fn h_t(z: Complex64, big_t: f64) -> Complex64 {
    Complex64::from_polar(z.norm().powf(1.0 / big_t.ln()), z.arg())
}

/// `W = e^{val} e^{i u}` of a lift `(val, u)`.
pub fn w_image(val: &Rat, arg: f64) -> Complex64 {
    Complex64::from_polar(to_f64(val).exp(), arg)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseRow {
    pub t: f64,
    pub max_distance: f64,
    pub samples: usize,
}

/// For the line `a_0 + a_1 z_1 + a_2 z_2 = 0`, compares `H_T` of numerical
/// solutions at `t = 1/T` with `W` of the exact Puiseux solutions
/// `z_1 = e^{iθ} t^{−q}`, over the exponents `qs` and `samples` angles.
pub fn phase_limit_experiment(
    a: [&PuiseuxSeries; 3],
    ts: &[f64],
    qs: &[Rat],
    samples: usize,
) -> Result<Vec<PhaseRow>> {
    let trunc = a.iter().map(|s| s.trunc().clone()).min().expect("three coefficients");
    let (val2, arg2) = a[2].lift()?;
    let mut params = Vec::new();
    for q in qs {
        for k in 0..samples {
            let theta = 2.0 * PI * (k as f64 + 0.5) / samples as f64 - PI;
            let z1 = PuiseuxSeries::monomial(Complex64::from_polar(1.0, theta), -q.clone(), trunc.clone());
            let rhs = a[0].add(&a[1].mul(&z1)).neg();
            let Ok((val, arg)) = rhs.lift() else { continue };
            let w2 = w_image(&(val - &val2), arg - arg2);
            params.push((q.clone(), theta, w2));
        }
    }
    let rows = ts
        .iter()
        .map(|&big_t| {
            let mut worst: f64 = 0.0;
            for (q, theta, w2) in &params {
                let z1 = Complex64::from_polar(big_t.powf(to_f64(q)), *theta);
                let z2 = -(a[0].eval_at(big_t) + a[1].eval_at(big_t) * z1) / a[2].eval_at(big_t);
                let w1 = w_image(q, *theta);
                let d1 = (h_t(z1, big_t) - w1).norm();
                let d2 = (h_t(z2, big_t) - w2).norm();
                worst = worst.max((d1 * d1 + d2 * d2).sqrt());
            }
            PhaseRow {
                t: big_t,
                max_distance: worst,
                samples: params.len(),
            }
        })
        .collect();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, ratio};

    fn one() -> PuiseuxSeries {
        PuiseuxSeries::monomial(Complex64::new(1.0, 0.0), rat(0), rat(6))
    }

    #[test]
    fn distances_decrease() {
        let qs = [rat(-1), ratio(-1, 2), rat(0), ratio(1, 2), rat(1)];
        let rows = phase_limit_experiment([&one(), &one(), &one()], &[10.0, 1e3, 1e6], &qs, 16).unwrap();
        assert!(rows[1].max_distance < rows[0].max_distance);
        assert!(rows[2].max_distance < rows[1].max_distance);
    }

    #[test]
    fn hand_lift() {
        let trunc = rat(6);
        let z1 = PuiseuxSeries::new(
            vec![(rat(0), Complex64::new(-1.0, 0.0)), (rat(-1), Complex64::new(-1.0, 0.0))],
            trunc.clone(),
        );
        let z2 = z1.add(&one()).neg();
        assert_eq!(z2.terms(), &[(rat(-1), Complex64::new(1.0, 0.0))]);
        let (v1, u1) = z1.lift().unwrap();
        let (v2, u2) = z2.lift().unwrap();
        assert_eq!((v1, v2), (rat(1), rat(1)));
        assert!((u1 - PI).abs() < 1e-15 && u2.abs() < 1e-15);
    }
}
