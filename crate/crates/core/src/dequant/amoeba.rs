//! Numerical amoebas of plane curves `f_t(z) = Σ a_j t^{−v(j)} z^j`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::maslov::{in_tube, Provenance, TropicalizedPoly};
use super::roots::polynomial_roots;
use crate::error::{Error, Result};
use crate::num::to_f64;
use crate::subdivision::LiftingFunction;
use crate::tropical::TropicalComplex;

/// Relative residual above which a computed root is discarded.
pub const ROOT_RESIDUAL: f64 = 1e-9;

/// `radial` samples of `log_t|z_1|` on `[lo, hi]` times `angular` samples of `arg z_1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub radial: usize,
    pub angular: usize,
    pub lo: f64,
    pub hi: f64,
}

impl GridSpec {
    pub fn new(radial: usize, angular: usize) -> Self {
        GridSpec {
            radial,
            angular,
            lo: -2.0,
            hi: 2.0,
        }
    }

    /// Parses `RxA`, e.g. `201x64`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("grid must look like 200x64, got {s:?}"));
        let (r, a) = s.split_once('x').ok_or_else(bad)?;
        let r: usize = r.trim().parse().map_err(|_| bad())?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        if r < 2 || a < 1 {
            return Err(bad());
        }
        Ok(GridSpec::new(r, a))
    }

    pub fn pitch(&self) -> f64 {
        (self.hi - self.lo) / (self.radial - 1) as f64
    }

    pub fn radial_values(&self) -> Vec<f64> {
        (0..self.radial).map(|i| self.lo + i as f64 * self.pitch()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmoebaPoint {
    pub x: [f64; 2],
    pub in_tube: bool,
}

#[derive(Clone, Debug)]
pub struct AmoebaSample {
    pub t: f64,
    pub grid: GridSpec,
    pub points: Vec<AmoebaPoint>,
    /// roots discarded for exceeding the residual bound
    pub dropped: usize,
    pub tube: TropicalizedPoly,
}

impl AmoebaSample {
    pub fn tube_failures(&self) -> usize {
        self.points.iter().filter(|p| !p.in_tube).count()
    }

    pub fn coords(&self) -> Vec<[f64; 2]> {
        self.points.iter().map(|p| p.x).collect()
    }
}

/// Samples `Log_t` of the curve over a grid in the first coordinate, solving
/// for the second coordinate numerically.
pub fn sample_amoeba_curve(
    v: &LiftingFunction,
    coeffs: &[Complex64],
    t: f64,
    grid: GridSpec,
) -> Result<AmoebaSample> {
    if v.ambient_dim() != 2 {
        return Err(Error::UnsupportedDimension(v.ambient_dim()));
    }
    if coeffs.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: v.len(),
            got: coeffs.len(),
        });
    }
    if coeffs.iter().any(|a| a.norm() == 0.0) {
        return Err(Error::InvalidArgument("coefficients must be nonzero".into()));
    }
    if !(t > 1.0) || t.is_infinite() {
        return Err(Error::InvalidArgument(format!("t must be a finite value > 1, got {t}")));
    }
    let lt = t.ln();
    let tube_coeffs: Vec<f64> = v
        .values()
        .iter()
        .zip(coeffs)
        .map(|(val, a)| -to_f64(val) + a.norm().ln() / lt)
        .collect();
    let mut tube = TropicalizedPoly::new(v.points().to_vec(), tube_coeffs)?;
    tube.provenance = Provenance::Patchwork { t: t.to_string() };

    let deg2 = v.points().iter().map(|p| p.0[1]).max().unwrap();
    let min2 = v.points().iter().map(|p| p.0[1]).min().unwrap();
    let mut points = Vec::new();
    let mut dropped = 0;
    for u in grid.radial_values() {
        for k in 0..grid.angular {
            let theta = 2.0 * PI * k as f64 / grid.angular as f64;
            let log_z1 = Complex64::new(u * lt, theta);
            let mut poly = vec![Complex64::new(0.0, 0.0); (deg2 - min2 + 1) as usize];
            for ((p, val), a) in v.points().iter().zip(v.values()).zip(coeffs) {
                let term = a * (Complex64::new(-to_f64(val) * lt, 0.0) + log_z1 * p.0[0] as f64).exp();
                poly[(p.0[1] - min2) as usize] += term;
            }
            for (z2, res) in polynomial_roots(&poly) {
                if !(res <= ROOT_RESIDUAL) || z2.norm() == 0.0 {
                    dropped += 1;
                    continue;
                }
                let x = [u, z2.norm().ln() / lt];
                let ok = in_tube(&x, &tube, t)?;
                points.push(AmoebaPoint { x, in_tube: ok });
            }
        }
    }
    Ok(AmoebaSample {
        t,
        grid,
        points,
        dropped,
        tube,
    })
}

fn seg_distance(p: [f64; 2], a: [f64; 2], d: [f64; 2], max_s: f64) -> f64 {
    let dd = d[0] * d[0] + d[1] * d[1];
    let s = (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / dd).clamp(0.0, max_s);
    let q = [a[0] + s * d[0] - p[0], a[1] + s * d[1] - p[1]];
    (q[0] * q[0] + q[1] * q[1]).sqrt()
}

/// Distance from a point to the union of the cells of a plane complex.
pub fn distance_to_complex(p: [f64; 2], c: &TropicalComplex) -> f64 {
    let mut best = f64::INFINITY;
    for cell in &c.cells {
        let vs: Vec<[f64; 2]> = cell.vertices.iter().map(|v| [to_f64(&v[0]), to_f64(&v[1])]).collect();
        let dist = match (cell.dim, vs.len()) {
            (0, _) => seg_distance(p, vs[0], [1.0, 0.0], 0.0),
            (1, 2) => seg_distance(p, vs[0], [vs[1][0] - vs[0][0], vs[1][1] - vs[0][1]], 1.0),
            (1, 1) => {
                let r = &cell.recession[0];
                seg_distance(p, vs[0], [r[0] as f64, r[1] as f64], f64::INFINITY)
            }
            _ => continue,
        };
        best = best.min(dist);
    }
    best
}

/// `max_{p ∈ points} dist(p, Π)`.
pub fn directed_hausdorff(points: &[[f64; 2]], c: &TropicalComplex) -> f64 {
    points
        .iter()
        .map(|&p| distance_to_complex(p, c))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::corner_locus;

    fn line() -> LiftingFunction {
        LiftingFunction::from_ints(&[&[0, 0], &[1, 0], &[0, 1]], &[0, 0, 0]).unwrap()
    }

    #[test]
    fn line_samples_stay_in_tube() {
        let ones = vec![Complex64::new(1.0, 0.0); 3];
        let s = sample_amoeba_curve(&line(), &ones, 100.0, GridSpec::new(41, 16)).unwrap();
        assert_eq!(s.points.len(), 41 * 16 - s.dropped);
        assert_eq!(s.tube_failures(), 0);
        let c = corner_locus(&line()).unwrap();
        let h = directed_hausdorff(&s.coords(), &c);
        assert!(h <= 2f64.ln() / 100f64.ln() + 1e-9, "{h}");
    }

    #[test]
    fn grid_parsing() {
        let g = GridSpec::parse("201x64").unwrap();
        assert_eq!((g.radial, g.angular), (201, 64));
        assert!((g.pitch() - 0.02).abs() < 1e-15);
        assert!(GridSpec::parse("12").is_err());
    }
}
