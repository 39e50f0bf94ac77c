//! Python bindings: liftings, tropical complexes and the experiments built on
//! them. Rationals cross the boundary as `"p/q"` strings.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tropical_core::dequant::{self, GridSpec};
use tropical_core::io;
use tropical_core::lattice::LatticePoint;
use tropical_core::num::{fmt_rat, parse_rat, Rat};
use tropical_core::pants;
use tropical_core::patchwork;
use tropical_core::subdivision::{self, LiftingFunction};
use tropical_core::svg::{self, Scene, Viewport};
use tropical_core::tropical::{self, TropicalComplex};

fn err(e: tropical_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[derive(FromPyObject)]
enum RatLike {
    Int(i64),
    Str(String),
}

impl RatLike {
    fn to_rat(&self) -> PyResult<Rat> {
        match self {
            RatLike::Int(i) => Ok(Rat::from_integer((*i).into())),
            RatLike::Str(s) => parse_rat(s).map_err(err),
        }
    }
}

/// A lifting function `v: A → Q` on a finite set of lattice points.
#[pyclass(name = "Lifting", module = "tropical_py", skip_from_py_object)]
#[derive(Clone)]
pub struct PyLifting {
    inner: LiftingFunction,
}

#[pymethods]
impl PyLifting {
    #[new]
    fn new(points: Vec<Vec<i64>>, values: Vec<RatLike>) -> PyResult<Self> {
        let values = values.iter().map(RatLike::to_rat).collect::<PyResult<Vec<_>>>()?;
        let points = points.into_iter().map(LatticePoint).collect();
        Ok(PyLifting {
            inner: LiftingFunction::new(points, values).map_err(err)?,
        })
    }

    /// Lifting of `Δ_d ⊂ R^{n+1}` whose subdivision is a unimodular triangulation.
    #[staticmethod]
    fn maximal(n: usize, d: i64) -> PyResult<Self> {
        Ok(PyLifting {
            inner: subdivision::build_maximal_lifting(n, d).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v = io::parse_json(text, "<string>").map_err(err)?;
        Ok(PyLifting {
            inner: io::lifting_from_json(&v, "$").map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        io::to_canonical_string(&io::lifting_to_json(&self.inner))
    }

    #[getter]
    fn points(&self) -> Vec<Vec<i64>> {
        self.inner.points().iter().map(|p| p.0.clone()).collect()
    }

    #[getter]
    fn values(&self) -> Vec<String> {
        self.inner.values().iter().map(fmt_rat).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn corner_locus(&self) -> PyResult<PyComplex> {
        Ok(PyComplex {
            inner: tropical::corner_locus(&self.inner).map_err(err)?,
        })
    }

    fn subdivision_json(&self) -> PyResult<String> {
        let s = subdivision::lower_hull_subdivision(&self.inner).map_err(err)?;
        Ok(io::to_canonical_string(&io::subdivision_to_json(&s)))
    }

    fn is_unimodular(&self) -> PyResult<bool> {
        let s = subdivision::lower_hull_subdivision(&self.inner).map_err(err)?;
        Ok(subdivision::is_unimodular(&s).unimodular)
    }

    /// Betti numbers of the compactified base; the subdivision must be maximal.
    fn base_homology(&self) -> PyResult<Vec<usize>> {
        let s = tropical::stratify(&self.inner).map_err(err)?;
        Ok(pants::base_homology(&s).betti)
    }

    /// Membrane of the single-negative sign distribution at `vertex`.
    fn patchwork<'py>(&self, py: Python<'py>, vertex: Vec<i64>) -> PyResult<Bound<'py, PyDict>> {
        let s = subdivision::lower_hull_subdivision(&self.inner).map_err(err)?;
        let sigma = patchwork::single_negative_signs(&s, &LatticePoint(vertex)).map_err(err)?;
        let m = patchwork::build_membrane(&s, &sigma).map_err(err)?;
        let r = patchwork::verify_sphere(&m);
        let out = PyDict::new(py);
        out.set_item("facets", m.facets.len())?;
        out.set_item("closed", r.closed)?;
        out.set_item("connected", r.connected)?;
        out.set_item("euler", r.euler)?;
        let c = tropical::corner_locus_of(&s);
        match patchwork::membrane_base_class(&m, &c) {
            Ok(z) => out.set_item("pairing", z.pairing)?,
            Err(_) => out.set_item("pairing", py.None())?,
        }
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!("Lifting(ambient_dim={}, points={})", self.inner.ambient_dim(), self.inner.len())
    }
}

/// A weighted rational polyhedral complex, usually a corner locus.
#[pyclass(name = "Complex", module = "tropical_py")]
pub struct PyComplex {
    inner: TropicalComplex,
}

#[pymethods]
impl PyComplex {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v = io::parse_json(text, "<string>").map_err(err)?;
        Ok(PyComplex {
            inner: io::complex_from_json(&v, "$").map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        io::to_canonical_string(&io::complex_to_json(&self.inner))
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim
    }

    /// Number of cells of each dimension `0..ambient_dim`.
    fn cell_counts(&self) -> Vec<usize> {
        (0..self.inner.ambient_dim).map(|k| self.inner.count_of_dim(k)).collect()
    }

    fn vertices(&self) -> Vec<Vec<String>> {
        self.inner
            .cells_of_dim(0)
            .map(|(_, c)| c.vertices[0].iter().map(fmt_rat).collect())
            .collect()
    }

    fn weights(&self) -> Vec<u64> {
        let n = self.inner.ambient_dim.saturating_sub(1);
        self.inner.cells_of_dim(n).filter_map(|(_, c)| c.weight).collect()
    }

    fn is_balanced(&self) -> PyResult<bool> {
        Ok(tropical::check_balanced(&self.inner).map_err(err)?.balanced)
    }

    fn region_graph_json(&self) -> PyResult<String> {
        let g = tropical::extract_region_graph(&self.inner).map_err(err)?;
        Ok(io::to_canonical_string(&io::region_graph_to_json(&g)))
    }

    /// Lifting recovered from the region graph, up to constant and translation.
    fn reconstruct(&self) -> PyResult<PyLifting> {
        let g = tropical::extract_region_graph(&self.inner).map_err(err)?;
        Ok(PyLifting {
            inner: tropical::reconstruct_lifting(&g).map_err(err)?,
        })
    }

    fn primitive_pieces(&self) -> PyResult<usize> {
        Ok(pants::primitive_pieces(&self.inner).map_err(err)?.len())
    }

    #[pyo3(signature = (viewport=None))]
    fn render_svg(&self, viewport: Option<(f64, f64, f64, f64)>) -> PyResult<String> {
        let vp = match viewport {
            Some((a, b, c, d)) => Viewport([a, b, c, d]),
            None => Viewport::fit(&self.inner),
        };
        let scene = Scene {
            complex: Some(&self.inner),
            ..Default::default()
        };
        svg::render_svg(&scene, vp).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Complex(ambient_dim={}, cells={:?})", self.inner.ambient_dim, self.cell_counts())
    }
}

#[pyfunction]
fn invariants<'py>(py: Python<'py>, n: usize, d: i64) -> PyResult<Bound<'py, PyDict>> {
    let r = pants::hypersurface_invariants(n, d).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("p_g", r.p_g)?;
    out.set_item("chi", r.chi)?;
    out.set_item("sigma", r.sigma)?;
    Ok(out)
}

#[pyfunction]
fn boundary_strata_count(n: usize, j: usize) -> PyResult<u64> {
    pants::boundary_strata_count(n, j).map_err(err)
}

/// `log_t Σ t^{x_i}`; `t = inf` gives the maximum.
#[pyfunction]
fn t_sum(xs: Vec<f64>, t: f64) -> f64 {
    dequant::t_sum(&xs, t)
}

/// `(x, y, in_tube)` samples of `Log_t` of a plane curve.
#[pyfunction]
#[pyo3(signature = (lifting, coefficients, t, radial=201, angular=64))]
fn amoeba_sample(
    lifting: &PyLifting,
    coefficients: Vec<Complex64>,
    t: f64,
    radial: usize,
    angular: usize,
) -> PyResult<Vec<(f64, f64, bool)>> {
    let s = dequant::sample_amoeba_curve(&lifting.inner, &coefficients, t, GridSpec::new(radial, angular))
        .map_err(err)?;
    Ok(s.points.iter().map(|p| (p.x[0], p.x[1], p.in_tube)).collect())
}

#[pyfunction]
fn hausdorff(points: Vec<(f64, f64)>, complex: &PyComplex) -> f64 {
    let pts: Vec<[f64; 2]> = points.into_iter().map(|(x, y)| [x, y]).collect();
    dequant::directed_hausdorff(&pts, &complex.inner)
}

/// Breakpoints of the tropicalization of a univariate Puiseux polynomial
/// given as JSON, with the numerically estimated root valuations at `t`.
#[pyfunction]
#[pyo3(signature = (json, t=1e6))]
fn kapranov(json: &str, t: f64) -> PyResult<(Vec<String>, Vec<f64>)> {
    let v = io::parse_json(json, "<string>").map_err(err)?;
    let f = io::puiseux_poly_from_json(&v, "$").map_err(err)?;
    let (_, c) = dequant::kapranov_tropicalize(&f).map_err(err)?;
    let b = dequant::breakpoints(&c).map_err(err)?;
    let numeric = f.numeric_root_valuations(t).map_err(err)?;
    Ok((b.iter().map(fmt_rat).collect(), numeric))
}

#[pymodule]
fn tropical_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLifting>()?;
    m.add_class::<PyComplex>()?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_strata_count, m)?)?;
    m.add_function(wrap_pyfunction!(t_sum, m)?)?;
    m.add_function(wrap_pyfunction!(amoeba_sample, m)?)?;
    m.add_function(wrap_pyfunction!(hausdorff, m)?)?;
    m.add_function(wrap_pyfunction!(kapranov, m)?)?;
    Ok(())
}
