//! Canonical JSON for liftings, complexes, region graphs, Puiseux polynomials
//! and membranes. Keys are sorted and rationals are written as `"p/q"` in
//! lowest terms, so every document re-emits byte-identically.

use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::dequant::{PuiseuxPolynomial, PuiseuxSeries};
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::num::{fmt_rat, parse_rat, Rat};
use crate::patchwork::{SignMembrane, SphereReport};
use crate::subdivision::{is_unimodular, LiftingFunction, RegularSubdivision};
use crate::tropical::{AffineConstraint, RegionGraph, TropicalCell, TropicalComplex, Wall};

pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are serializable");
    s.push('\n');
    s
}

/// Parses JSON text, reporting syntax errors with line and column.
pub fn parse_json(text: &str, origin: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        path: origin.to_string(),
        message: format!("line {}, column {}: {}", e.line(), e.column(), e),
    })
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)?;
    parse_json(&text, &path.display().to_string())
}

fn err(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

fn field<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err(path, format!("missing field `{key}`")))
}

fn arr<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn usize_of(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| err(path, "expected a nonnegative integer"))
}

fn i64_of(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| err(path, "expected an integer"))
}

fn f64_of(v: &Value, path: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| err(path, "expected a number"))
}

fn rat_of(v: &Value, path: &str) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s).map_err(|_| err(path, format!("invalid rational {s:?}"))),
        Value::Number(n) if n.is_i64() => Ok(Rat::from_integer(n.as_i64().unwrap().into())),
        _ => Err(err(path, "expected a rational string such as \"3/2\"")),
    }
}

fn list<T>(v: &Value, path: &str, f: impl Fn(&Value, &str) -> Result<T>) -> Result<Vec<T>> {
    arr(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| f(x, &format!("{path}[{i}]")))
        .collect()
}

fn int_vec(v: &Value, path: &str) -> Result<Vec<i64>> {
    list(v, path, i64_of)
}

fn rat_vec_of(v: &Value, path: &str) -> Result<Vec<Rat>> {
    list(v, path, rat_of)
}

fn rats(xs: &[Rat]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(fmt_rat(x))).collect())
}

pub fn lifting_to_json(v: &LiftingFunction) -> Value {
    json!({
        "ambient_dim": v.ambient_dim(),
        "points": v.points().iter().map(|p| p.0.clone()).collect::<Vec<_>>(),
        "values": rats(v.values()),
    })
}

pub fn lifting_from_json(v: &Value, path: &str) -> Result<LiftingFunction> {
    let m = usize_of(field(v, path, "ambient_dim")?, &format!("{path}.ambient_dim"))?;
    let points = list(field(v, path, "points")?, &format!("{path}.points"), |x, p| {
        let c = int_vec(x, p)?;
        if c.len() != m {
            return Err(err(p, format!("expected {m} coordinates, got {}", c.len())));
        }
        Ok(LatticePoint(c))
    })?;
    let values = rat_vec_of(field(v, path, "values")?, &format!("{path}.values"))?;
    LiftingFunction::new(points, values)
}

fn constraint_json(c: &AffineConstraint) -> Value {
    json!({ "covector": c.covector, "rhs": fmt_rat(&c.rhs) })
}

fn constraint_from(v: &Value, path: &str) -> Result<AffineConstraint> {
    Ok(AffineConstraint {
        covector: int_vec(field(v, path, "covector")?, &format!("{path}.covector"))?,
        rhs: rat_of(field(v, path, "rhs")?, &format!("{path}.rhs"))?,
    })
}

pub fn complex_to_json(c: &TropicalComplex) -> Value {
    let cells: Vec<Value> = c
        .cells
        .iter()
        .map(|cell| {
            json!({
                "dim": cell.dim,
                "dual": cell.dual,
                "equalities": cell.equalities.iter().map(constraint_json).collect::<Vec<_>>(),
                "inequalities": cell.inequalities.iter().map(constraint_json).collect::<Vec<_>>(),
                "vertices": cell.vertices.iter().map(|v| rats(v)).collect::<Vec<_>>(),
                "recession": cell.recession,
                "bounded": cell.bounded,
                "weight": cell.weight,
                "faces": cell.faces,
            })
        })
        .collect();
    json!({
        "ambient_dim": c.ambient_dim,
        "cells": cells,
        "source": c.source.as_ref().map(lifting_to_json),
    })
}

/// Reads the cells verbatim. The result carries no dual subdivision, so a
/// tampered file is checked as written.
pub fn complex_from_json(v: &Value, path: &str) -> Result<TropicalComplex> {
    let m = usize_of(field(v, path, "ambient_dim")?, &format!("{path}.ambient_dim"))?;
    let cells = list(field(v, path, "cells")?, &format!("{path}.cells"), |x, p| {
        let sub = |k: &str| format!("{p}.{k}");
        let weight = match field(x, p, "weight")? {
            Value::Null => None,
            w => Some(usize_of(w, &sub("weight"))? as u64),
        };
        let vertices = list(field(x, p, "vertices")?, &sub("vertices"), rat_vec_of)?;
        let recession = list(field(x, p, "recession")?, &sub("recession"), int_vec)?;
        for (i, y) in vertices.iter().enumerate() {
            if y.len() != m {
                return Err(err(&format!("{p}.vertices[{i}]"), format!("expected {m} coordinates")));
            }
        }
        Ok(TropicalCell {
            dim: usize_of(field(x, p, "dim")?, &sub("dim"))?,
            dual: list(field(x, p, "dual")?, &sub("dual"), usize_of)?,
            equalities: list(field(x, p, "equalities")?, &sub("equalities"), constraint_from)?,
            inequalities: list(field(x, p, "inequalities")?, &sub("inequalities"), constraint_from)?,
            vertices,
            recession,
            bounded: field(x, p, "bounded")?
                .as_bool()
                .ok_or_else(|| err(&sub("bounded"), "expected a boolean"))?,
            weight,
            faces: list(field(x, p, "faces")?, &sub("faces"), usize_of)?,
        })
    })?;
    let n = cells.len();
    for (i, c) in cells.iter().enumerate() {
        if let Some(&f) = c.faces.iter().find(|&&f| f >= n) {
            return Err(err(&format!("{path}.cells[{i}].faces"), format!("cell index {f} out of range")));
        }
    }
    let mut complex = TropicalComplex::from_cells(m, cells);
    complex.source = match v.get("source") {
        None | Some(Value::Null) => None,
        Some(s) => Some(lifting_from_json(s, &format!("{path}.source"))?),
    };
    Ok(complex)
}

pub fn subdivision_to_json(s: &RegularSubdivision) -> Value {
    let cells: Vec<Value> = s
        .cells()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "points": c.points,
                "vertices": c.vertices,
                "slope": rats(&c.slope),
                "offset": fmt_rat(&c.offset),
                "volume": s.cell_volume(i).to_string(),
            })
        })
        .collect();
    json!({
        "lifting": lifting_to_json(s.lifting()),
        "cells": cells,
        "adjacency": s.adjacency(),
        "unimodular": is_unimodular(s).unimodular,
    })
}

pub fn region_graph_to_json(g: &RegionGraph) -> Value {
    let walls: Vec<Value> = g
        .walls
        .iter()
        .map(|w| json!({ "a": w.a, "b": w.b, "covector": w.covector, "anchor": rats(&w.anchor) }))
        .collect();
    json!({
        "ambient_dim": g.ambient_dim,
        "regions": g.regions,
        "reference": g.reference,
        "walls": walls,
        "labels": g.labels.iter().map(|l| l.as_ref().map(|p| p.0.clone())).collect::<Vec<_>>(),
    })
}

pub fn region_graph_from_json(v: &Value, path: &str) -> Result<RegionGraph> {
    let m = usize_of(field(v, path, "ambient_dim")?, &format!("{path}.ambient_dim"))?;
    let regions = usize_of(field(v, path, "regions")?, &format!("{path}.regions"))?;
    let walls = list(field(v, path, "walls")?, &format!("{path}.walls"), |x, p| {
        let w = Wall {
            a: usize_of(field(x, p, "a")?, &format!("{p}.a"))?,
            b: usize_of(field(x, p, "b")?, &format!("{p}.b"))?,
            covector: int_vec(field(x, p, "covector")?, &format!("{p}.covector"))?,
            anchor: rat_vec_of(field(x, p, "anchor")?, &format!("{p}.anchor"))?,
        };
        if w.a >= regions || w.b >= regions {
            return Err(err(p, "region index out of range"));
        }
        if w.covector.len() != m || w.anchor.len() != m {
            return Err(err(p, format!("expected {m} coordinates")));
        }
        Ok(w)
    })?;
    let labels = match v.get("labels") {
        None | Some(Value::Null) => vec![None; regions],
        Some(l) => list(l, &format!("{path}.labels"), |x, p| match x {
            Value::Null => Ok(None),
            _ => Ok(Some(LatticePoint(int_vec(x, p)?))),
        })?,
    };
    Ok(RegionGraph {
        ambient_dim: m,
        regions,
        walls,
        reference: v.get("reference").map(|r| usize_of(r, "reference")).transpose()?.unwrap_or(0),
        labels,
    })
}

pub fn series_to_json(s: &PuiseuxSeries) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .iter()
        .map(|(e, c)| json!({ "exp": fmt_rat(e), "re": c.re, "im": c.im }))
        .collect();
    json!({ "terms": terms, "trunc": fmt_rat(s.trunc()) })
}

pub fn series_from_json(v: &Value, path: &str) -> Result<PuiseuxSeries> {
    let terms = list(field(v, path, "terms")?, &format!("{path}.terms"), |x, p| {
        let e = rat_of(field(x, p, "exp")?, &format!("{p}.exp"))?;
        let re = f64_of(field(x, p, "re")?, &format!("{p}.re"))?;
        let im = match x.get("im") {
            Some(i) => f64_of(i, &format!("{p}.im"))?,
            None => 0.0,
        };
        Ok((e, Complex64::new(re, im)))
    })?;
    let trunc = rat_of(field(v, path, "trunc")?, &format!("{path}.trunc"))?;
    Ok(PuiseuxSeries::new(terms, trunc))
}

pub fn puiseux_poly_to_json(f: &PuiseuxPolynomial) -> Value {
    let terms: Vec<Value> = f
        .terms
        .iter()
        .map(|(j, a)| json!({ "exponent": j.0, "coefficient": series_to_json(a) }))
        .collect();
    json!({ "terms": terms })
}

pub fn puiseux_poly_from_json(v: &Value, path: &str) -> Result<PuiseuxPolynomial> {
    let terms = list(field(v, path, "terms")?, &format!("{path}.terms"), |x, p| {
        let j = LatticePoint(int_vec(field(x, p, "exponent")?, &format!("{p}.exponent"))?);
        let a = series_from_json(field(x, p, "coefficient")?, &format!("{p}.coefficient"))?;
        Ok((j, a))
    })?;
    Ok(PuiseuxPolynomial::new(terms))
}

pub fn membrane_to_json(s: &RegularSubdivision, m: &SignMembrane, report: &SphereReport) -> Value {
    let signs: Vec<Value> = m
        .signs
        .signs
        .iter()
        .map(|(&i, &sg)| json!({ "point": s.point(i).0, "sign": sg }))
        .collect();
    let facets: Vec<Value> = m
        .facets
        .iter()
        .map(|p| {
            json!({
                "simplex": s.faces()[p.simplex].vertices,
                "crossings": p.crossings,
                "vertices": p.vertices.iter().map(|v| rats(v)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut out = Map::new();
    out.insert("signs".into(), Value::Array(signs));
    out.insert("facets".into(), Value::Array(facets));
    out.insert("adjacency".into(), json!(m.adjacency));
    out.insert("report".into(), serde_json::to_value(report).expect("serializable"));
    Value::Object(out)
}
