use num_complex::Complex64;

use super::maslov::{Provenance, TropicalizedPoly};
use super::puiseux::PuiseuxSeries;
use super::roots::polynomial_roots;
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::num::{to_f64, Rat};
use crate::subdivision::LiftingFunction;
use crate::tropical::{corner_locus, TropicalComplex};

/// `Σ_j a_j z^j` with Puiseux-series coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxPolynomial {
    pub terms: Vec<(LatticePoint, PuiseuxSeries)>,
}

impl PuiseuxPolynomial {
    pub fn new(terms: Vec<(LatticePoint, PuiseuxSeries)>) -> Self {
        PuiseuxPolynomial { terms }
    }

    /// Ascending coefficients of a univariate polynomial evaluated at `t = 1/T`.
    pub fn univariate_at(&self, big_t: f64) -> Result<Vec<Complex64>> {
        if self.terms.iter().any(|(j, _)| j.dim() != 1 || j.0[0] < 0) {
            return Err(Error::UnsupportedDimension(self.terms[0].0.dim()));
        }
        let deg = self.terms.iter().map(|(j, _)| j.0[0]).max().unwrap_or(0) as usize;
        let mut c = vec![Complex64::new(0.0, 0.0); deg + 1];
        for (j, a) in &self.terms {
            c[j.0[0] as usize] += a.eval_at(big_t);
        }
        Ok(c)
    }

    /// `log_T |z|` over the nonzero roots at `t = 1/T`, sorted.
    pub fn numeric_root_valuations(&self, big_t: f64) -> Result<Vec<f64>> {
        let c = self.univariate_at(big_t)?;
        let mut out: Vec<f64> = polynomial_roots(&c)
            .into_iter()
            .map(|(z, _)| z.norm().ln() / big_t.ln())
            .collect();
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(out)
    }
}

/// Tropical polynomial `max_j (val(a_j) + j·x)` and its corner locus.
pub fn kapranov_tropicalize(f: &PuiseuxPolynomial) -> Result<(TropicalizedPoly, TropicalComplex)> {
    let vals: Vec<Rat> = f.terms.iter().map(|(_, a)| a.val()).collect::<Result<_>>()?;
    let exponents: Vec<LatticePoint> = f.terms.iter().map(|(j, _)| j.clone()).collect();
    let mut poly = TropicalizedPoly::new(exponents.clone(), vals.iter().map(to_f64).collect())?;
    poly.exact = Some(vals.clone());
    poly.provenance = Provenance::Valuations;
    let lifting = LiftingFunction::new(exponents, vals.iter().map(|v| -v).collect())?;
    Ok((poly, corner_locus(&lifting)?))
}

/// Breakpoints of a univariate complex, each repeated by its weight.
pub fn breakpoints(c: &TropicalComplex) -> Result<Vec<Rat>> {
    if c.ambient_dim != 1 {
        return Err(Error::UnsupportedDimension(c.ambient_dim));
    }
    let mut out = Vec::new();
    for (_, cell) in c.cells_of_dim(0) {
        for _ in 0..cell.weight.unwrap_or(1) {
            out.push(cell.vertices[0][0].clone());
        }
    }
    out.sort();
    Ok(out)
}
