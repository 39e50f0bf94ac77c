//! Simultaneous root finding (Aberth–Ehrlich) for complex polynomials whose
//! coefficients span many orders of magnitude.

use std::f64::consts::PI;

use num_complex::Complex64;

/// `Σ |a_k| |z|^k`, the scale against which residuals are measured.
fn magnitude(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
}

/// `|p(z)| / Σ |a_k||z|^k`.
pub fn relative_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let m = magnitude(coeffs, z);
    if m == 0.0 {
        return 0.0;
    }
    horner(coeffs, z).norm() / m
}

/// Newton correction `p(z)/p'(z)`, evaluated through the reversed polynomial
/// when `|z| > 1`.
fn newton_step(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let n = coeffs.len() - 1;
    if z.norm() <= 1.0 {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for a in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        return p / dp;
    }
    let y = z.inv();
    let mut q = Complex64::new(0.0, 0.0);
    let mut dq = Complex64::new(0.0, 0.0);
    for a in coeffs.iter() {
        dq = dq * y + q;
        q = q * y + a;
    }
    // p(z) = z^n q(y), p'(z) = z^{n-1} (n q(y) − y q'(y))
    z / (Complex64::new(n as f64, 0.0) - y * dq / q)
}

/// Initial guesses on circles whose radii come from the upper convex hull of
/// `(k, log|a_k|)`.
fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let pts: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 0.0)
        .map(|(k, a)| (k, a.norm().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::new();
    let mut offset = 0.4;
    for w in hull.windows(2) {
        let count = w[1].0 - w[0].0;
        let slope = (w[1].1 - w[0].1) / count as f64;
        let r = (-slope).exp();
        for i in 0..count {
            let ang = 2.0 * PI * i as f64 / count as f64 + offset;
            out.push(Complex64::from_polar(r, ang));
        }
        offset += 0.7;
    }
    out
}

/// Roots of `Σ a_k z^k` (ascending coefficients), zero roots excluded.
///
/// Each root is returned with its relative residual so callers can filter.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<(Complex64, f64)> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|a| a.norm() == 0.0) {
        c.pop();
    }
    let lead = c.iter().position(|a| a.norm() > 0.0).unwrap_or(c.len());
    let c: Vec<Complex64> = c[lead.min(c.len())..].to_vec();
    if c.len() < 2 {
        return Vec::new();
    }
    let n = c.len() - 1;
    let mut z = initial_guesses(&c);
    for _ in 0..500 {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let w = newton_step(&c, z[i]);
            if !w.is_finite() {
                continue;
            }
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let corr = w / (Complex64::new(1.0, 0.0) - w * s);
            if corr.is_finite() {
                z[i] -= corr;
                worst = worst.max(corr.norm() / z[i].norm().max(f64::MIN_POSITIVE));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    // a couple of plain Newton polishing steps
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let w = newton_step(&c, *zi);
            if w.is_finite() && w.norm() < zi.norm() {
                *zi -= w;
            }
        }
    }
    z.into_iter().map(|r| (r, relative_residual(&c, r))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn quadratic_with_spread_roots() {
        let roots = polynomial_roots(&re(&[1.0, 1e6, 1.0]));
        let mut mags: Vec<f64> = roots.iter().map(|(r, _)| r.norm().log10()).collect();
        mags.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((mags[0] + 6.0).abs() < 1e-6 && (mags[1] - 6.0).abs() < 1e-6);
        assert!(roots.iter().all(|(_, res)| *res < 1e-12));
    }

    #[test]
    fn cubic_and_zero_roots() {
        // (z-1)(z-2)(z-3) z^2
        let roots = polynomial_roots(&re(&[0.0, 0.0, -6.0, 11.0, -6.0, 1.0]));
        let mut r: Vec<f64> = roots.iter().map(|(z, _)| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(r.len(), 3);
        for (a, b) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}
