//! Deterministic SVG rendering of plane complexes, amoeba samples and
//! membranes. Coordinates are written with six decimals.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::num::to_f64;
use crate::patchwork::SignMembrane;
use crate::tropical::TropicalComplex;

const WIDTH: f64 = 600.0;
const HEIGHT: f64 = 600.0;

/// Viewport `[x0, y0, x1, y1]` in world coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport(pub [f64; 4]);

impl Viewport {
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|x| x.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidArgument(format!("viewport must be x0,y0,x1,y1, got {s:?}")))?;
        match parts[..] {
            [x0, y0, x1, y1] if x0 < x1 && y0 < y1 => Ok(Viewport([x0, y0, x1, y1])),
            _ => Err(Error::InvalidArgument(format!("viewport must be x0,y0,x1,y1 with x0<x1, y0<y1, got {s:?}"))),
        }
    }

    /// Bounding box of the vertices of `c`, padded by a quarter of its size
    /// and at least one unit on each side.
    pub fn fit(c: &TropicalComplex) -> Self {
        let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for cell in c.cells.iter().filter(|c| c.dim == 0) {
            let p: Vec<f64> = cell.vertices[0].iter().map(to_f64).collect();
            b = [b[0].min(p[0]), b[1].min(p[1]), b[2].max(p[0]), b[3].max(p[1])];
        }
        if !b[0].is_finite() {
            b = [0.0, 0.0, 0.0, 0.0];
        }
        let pad = ((b[2] - b[0]).max(b[3] - b[1]) / 4.0).max(1.0);
        Viewport([b[0] - pad, b[1] - pad, b[2] + pad, b[3] + pad])
    }

    fn map(&self, p: [f64; 2]) -> [f64; 2] {
        let [x0, y0, x1, y1] = self.0;
        [(p[0] - x0) / (x1 - x0) * WIDTH, (y1 - p[1]) / (y1 - y0) * HEIGHT]
    }

    /// Clips `a + s·d`, `s ∈ [0, s_max]`, to the viewport.
    fn clip(&self, a: [f64; 2], d: [f64; 2], s_max: f64) -> Option<([f64; 2], [f64; 2])> {
        let [x0, y0, x1, y1] = self.0;
        let (mut lo, mut hi) = (0.0f64, s_max);
        for (p, q) in [
            (-d[0], a[0] - x0),
            (d[0], x1 - a[0]),
            (-d[1], a[1] - y0),
            (d[1], y1 - a[1]),
        ] {
            if p == 0.0 {
                if q < 0.0 {
                    return None;
                }
            } else if p < 0.0 {
                lo = lo.max(q / p);
            } else {
                hi = hi.min(q / p);
            }
        }
        if lo >= hi {
            return None;
        }
        let at = |s: f64| [a[0] + s * d[0], a[1] + s * d[1]];
        Some((at(lo), at(hi)))
    }
}

fn num(x: f64) -> String {
    let s = format!("{:.6}", (x * 1e6).round() / 1e6);
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// What to draw. The projection, if given, maps `R^m` to the plane.
#[derive(Clone, Debug, Default)]
pub struct Scene<'a> {
    pub complex: Option<&'a TropicalComplex>,
    /// cells of the complex drawn in the highlight layer
    pub highlight: Vec<usize>,
    pub samples: Vec<[f64; 2]>,
    pub membrane: Option<&'a SignMembrane>,
    pub projection: Option<[Vec<f64>; 2]>,
}

impl Scene<'_> {
    fn project(&self, p: &[f64]) -> Result<[f64; 2]> {
        match &self.projection {
            Some([u, v]) if u.len() == p.len() && v.len() == p.len() => Ok([
                u.iter().zip(p).map(|(a, b)| a * b).sum(),
                v.iter().zip(p).map(|(a, b)| a * b).sum(),
            ]),
            Some(_) => Err(Error::DimensionMismatch {
                expected: p.len(),
                got: self.projection.as_ref().unwrap()[0].len(),
            }),
            None if p.len() == 2 => Ok([p[0], p[1]]),
            None => Err(Error::UnsupportedDimension(p.len())),
        }
    }
}

fn line(out: &mut String, class: &str, a: [f64; 2], b: [f64; 2]) {
    writeln!(
        out,
        r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        num(a[0]),
        num(a[1]),
        num(b[0]),
        num(b[1])
    )
    .unwrap();
}

fn complex_layer(out: &mut String, scene: &Scene, c: &TropicalComplex, vp: &Viewport, cells: &[usize], class: &str) -> Result<()> {
    writeln!(out, r#"<g class="{class}">"#).unwrap();
    let mut labels = Vec::new();
    for &i in cells {
        let cell = &c.cells[i];
        if cell.dim != 1 {
            continue;
        }
        let a = scene.project(&cell.vertices[0].iter().map(to_f64).collect::<Vec<_>>())?;
        let (d, s_max) = if cell.vertices.len() == 2 {
            let b = scene.project(&cell.vertices[1].iter().map(to_f64).collect::<Vec<_>>())?;
            ([b[0] - a[0], b[1] - a[1]], 1.0)
        } else {
            let r: Vec<f64> = cell.recession[0].iter().map(|&x| x as f64).collect();
            let z = vec![0.0; r.len()];
            let (r, z) = (scene.project(&r)?, scene.project(&z)?);
            ([r[0] - z[0], r[1] - z[1]], f64::INFINITY)
        };
        if let Some((p, q)) = vp.clip(a, d, s_max) {
            let (p, q) = (vp.map(p), vp.map(q));
            line(out, "edge", p, q);
            if let Some(w) = cell.weight.filter(|&w| w >= 2) {
                labels.push(([(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0], w));
            }
        }
    }
    for (i, cell) in c.cells.iter().enumerate() {
        if cell.dim == 0 && cells.contains(&i) {
            let p = scene.project(&cell.vertices[0].iter().map(to_f64).collect::<Vec<_>>())?;
            let [x0, y0, x1, y1] = vp.0;
            if (x0..=x1).contains(&p[0]) && (y0..=y1).contains(&p[1]) {
                let q = vp.map(p);
                writeln!(out, r#"<circle class="vertex" cx="{}" cy="{}" r="3"/>"#, num(q[0]), num(q[1])).unwrap();
            }
        }
    }
    for (p, w) in labels {
        writeln!(out, r#"<text class="weight" x="{}" y="{}">{w}</text>"#, num(p[0]), num(p[1])).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    Ok(())
}

pub fn render_svg(scene: &Scene, vp: Viewport) -> Result<String> {
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = WIDTH,
        h = HEIGHT
    )
    .unwrap();
    out.push_str(
        "<style>.edge{stroke:#222;stroke-width:1.5}.highlight .edge{stroke:#c22;stroke-width:3}\
.vertex{fill:#222}.sample{fill:#27c}.membrane{stroke:#2a2;stroke-width:2}.weight{font:12px sans-serif}</style>\n",
    );
    if let Some(c) = scene.complex {
        let all: Vec<usize> = (0..c.cells.len()).collect();
        complex_layer(&mut out, scene, c, &vp, &all, "complex")?;
        if !scene.highlight.is_empty() {
            let mut h = scene.highlight.clone();
            h.sort_unstable();
            h.dedup();
            complex_layer(&mut out, scene, c, &vp, &h, "highlight")?;
        }
    }
    if !scene.samples.is_empty() {
        writeln!(out, r#"<g class="samples">"#).unwrap();
        let [x0, y0, x1, y1] = vp.0;
        for &p in &scene.samples {
            if (x0..=x1).contains(&p[0]) && (y0..=y1).contains(&p[1]) {
                let q = vp.map(p);
                writeln!(out, r#"<circle class="sample" cx="{}" cy="{}" r="1"/>"#, num(q[0]), num(q[1])).unwrap();
            }
        }
        writeln!(out, "</g>").unwrap();
    }
    if let Some(m) = scene.membrane {
        writeln!(out, r#"<g class="membrane">"#).unwrap();
        for piece in &m.facets {
            let pts: Vec<[f64; 2]> = piece
                .vertices
                .iter()
                .map(|v| scene.project(&v.iter().map(to_f64).collect::<Vec<_>>()))
                .collect::<Result<_>>()?;
            for (i, &a) in pts.iter().enumerate() {
                for &b in &pts[i + 1..] {
                    let d = [b[0] - a[0], b[1] - a[1]];
                    if let Some((p, q)) = vp.clip(a, d, 1.0) {
                        line(&mut out, "membrane", vp.map(p), vp.map(q));
                    }
                }
            }
        }
        writeln!(out, "</g>").unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdivision::LiftingFunction;
    use crate::tropical::corner_locus;

    #[test]
    fn sigma_one_has_three_rays() {
        let v = LiftingFunction::from_ints(&[&[0, 0], &[1, 0], &[0, 1]], &[0, 0, 0]).unwrap();
        let c = corner_locus(&v).unwrap();
        let scene = Scene {
            complex: Some(&c),
            ..Default::default()
        };
        let svg = render_svg(&scene, Viewport([-1.0, -1.0, 1.0, 1.0])).unwrap();
        assert_eq!(svg.matches("<line class=\"edge\"").count(), 3);
        assert!(svg.contains(r#"x1="300.000000" y1="300.000000" x2="600.000000" y2="0.000000""#));
        assert_eq!(svg, render_svg(&scene, Viewport([-1.0, -1.0, 1.0, 1.0])).unwrap());
    }

    #[test]
    fn weights_are_annotated() {
        let v = LiftingFunction::from_ints(&[&[0, 0], &[2, 0], &[0, 1]], &[0, 0, 0]).unwrap();
        let c = corner_locus(&v).unwrap();
        let scene = Scene {
            complex: Some(&c),
            ..Default::default()
        };
        let svg = render_svg(&scene, Viewport([-2.0, -2.0, 2.0, 2.0])).unwrap();
        assert_eq!(svg.matches("<text class=\"weight\"").count(), 1);
    }

    #[test]
    fn space_complex_needs_projection() {
        let v = LiftingFunction::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[0, 0, 0, 0]).unwrap();
        let c = corner_locus(&v).unwrap();
        let mut scene = Scene {
            complex: Some(&c),
            ..Default::default()
        };
        assert!(matches!(
            render_svg(&scene, Viewport([-1.0, -1.0, 1.0, 1.0])),
            Err(Error::UnsupportedDimension(3))
        ));
        scene.projection = Some([vec![1.0, 0.0, 0.5], vec![0.0, 1.0, 0.5]]);
        assert!(render_svg(&scene, Viewport([-1.0, -1.0, 1.0, 1.0])).is_ok());
    }
}
