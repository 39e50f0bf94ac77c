//! The `tropical` command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::dequant::{
    breakpoints, directed_hausdorff, kapranov_tropicalize, phase_limit_experiment, sample_amoeba_curve, GridSpec,
};
use crate::error::{Error, Result};
use crate::io::{
    complex_from_json, complex_to_json, lifting_from_json, lifting_to_json, membrane_to_json,
    puiseux_poly_from_json, read_json, region_graph_from_json, region_graph_to_json, subdivision_to_json,
    to_canonical_string,
};
use crate::lattice::LatticePoint;
use crate::num::{fmt_rat, parse_rat, Rat};
use crate::pants::{base_homology, hypersurface_invariants, normalize_piece, primitive_pieces};
use crate::patchwork::{build_membrane, membrane_base_class, single_negative_signs, verify_sphere};
use crate::subdivision::{build_maximal_lifting, lower_hull_subdivision, LiftingFunction};
use crate::svg::{render_svg, Scene, Viewport};
use crate::tropical::{
    check_balanced, corner_locus, corner_locus_of, extract_region_graph, reconstruct_lifting, stratify,
    TropicalComplex,
};

#[derive(Parser, Debug)]
#[command(name = "tropical", version, about = "Tropical hypersurfaces, subdivisions and dequantization experiments")]
pub struct Cli {
    /// input file (JSON unless stated otherwise)
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// output file; standard output when absent
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// comma-separated ladder of t values, each > 1
    #[arg(long = "t", global = true)]
    pub t: Option<String>,
    /// amoeba grid, radial x angular
    #[arg(long, global = true, default_value = "200x64")]
    pub grid: String,
    /// recorded in CSV and SVG headers
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// x0,y0,x1,y1; fitted to the vertices when absent
    #[arg(long, global = true)]
    pub viewport: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// lifting JSON to complex JSON
    Tropicalize,
    /// lifting JSON to subdivision JSON
    Subdivide,
    /// verify balancing of a complex (or of the corner locus of a lifting)
    CheckBalance,
    /// lifting JSON to region graph JSON
    Regions,
    /// region graph JSON to lifting JSON
    Reconstruct,
    /// pair-of-pants census and normalization table
    Decompose {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<i64>,
    },
    /// integral homology of the compactified base of a maximal complex
    Homology {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<i64>,
    },
    /// p_g, χ and σ of a degree-d hypersurface
    Invariants { n: usize, d: i64 },
    /// Log_t samples of a plane curve, as CSV
    AmoebaSample,
    /// tropicalize a polynomial with Puiseux-series coefficients
    Kapranov,
    /// phase-tropical convergence table for a line
    PhaseLimit {
        /// exponents q of the sampled z_1 = e^{iθ} t^{-q}
        #[arg(long, default_value = "-1,-1/2,0,1/2,1")]
        q: String,
        #[arg(long, default_value_t = 32)]
        samples: usize,
    },
    /// single-negative patchworking membrane at a vertex
    Patchwork {
        /// lattice point carrying the negative sign, e.g. 1,1
        #[arg(long)]
        vertex: String,
        /// also write an SVG of the membrane (plane case only)
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// SVG of a complex, with optional samples and highlighted cycle
    RenderSvg {
        /// CSV produced by amoeba-sample
        #[arg(long)]
        samples: Option<PathBuf>,
        /// interior lattice point whose base class is highlighted
        #[arg(long)]
        cycle: Option<String>,
        /// two rows of a linear projection to the plane, e.g. "1,0,0.5;0,1,0.5"
        #[arg(long)]
        projection: Option<String>,
    },
}

/// Parses and runs, printing errors to standard error. Exit status 0 means no
/// domain error, 1 a domain error, 2 a usage error.
pub fn main_entry<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.text) {
                eprintln!("error: {e}");
                return 1;
            }
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Text produced by a subcommand; `ok` is false when the result is a
/// negative certificate.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => {
            use std::io::Write;
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn ok(v: Value) -> Result<Outcome> {
    Ok(Outcome {
        text: to_canonical_string(&v),
        ok: true,
    })
}

fn input(cli: &Cli) -> Result<(&Path, Value)> {
    let p = cli
        .input
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("--input is required".into()))?;
    Ok((p, read_json(p)?))
}

fn read_lifting(cli: &Cli) -> Result<LiftingFunction> {
    let (_, v) = input(cli)?;
    lifting_from_json(&v, "$")
}

fn lifting_or_maximal(cli: &Cli, n: Option<usize>, d: Option<i64>) -> Result<LiftingFunction> {
    match (n, d) {
        (Some(n), Some(d)) => build_maximal_lifting(n, d),
        (None, None) => read_lifting(cli),
        _ => Err(Error::InvalidArgument("give both --n and --d, or --input".into())),
    }
}

pub fn parse_t_ladder(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| {
            let t: f64 = x
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("invalid t value {x:?}")))?;
            if !(t > 1.0) || !t.is_finite() {
                return Err(Error::InvalidArgument(format!("t values must be finite and > 1, got {t}")));
            }
            Ok(t)
        })
        .collect()
}

fn parse_point(s: &str) -> Result<LatticePoint> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(LatticePoint)
        .map_err(|_| Error::InvalidArgument(format!("invalid lattice point {s:?}")))
}

/// Coefficients `a_j` from an optional `coefficients` field of a lifting
/// document: numbers or `[re, im]` pairs. Defaults to all ones.
fn read_coefficients(v: &Value, len: usize) -> Result<Vec<Complex64>> {
    let Some(list) = v.get("coefficients") else {
        return Ok(vec![Complex64::new(1.0, 0.0); len]);
    };
    let bad = |i: usize| Error::Parse {
        path: format!("$.coefficients[{i}]"),
        message: "expected a number or [re, im]".into(),
    };
    let list = list.as_array().ok_or_else(|| bad(0))?;
    if list.len() != len {
        return Err(Error::DimensionMismatch {
            expected: len,
            got: list.len(),
        });
    }
    list.iter()
        .enumerate()
        .map(|(i, x)| match x {
            Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap(), 0.0)),
            Value::Array(p) if p.len() == 2 => match (p[0].as_f64(), p[1].as_f64()) {
                (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                _ => Err(bad(i)),
            },
            _ => Err(bad(i)),
        })
        .collect()
}

fn read_samples_csv(path: &Path) -> Result<Vec<[f64; 2]>> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        if line.starts_with('#') || line.starts_with("t,") || line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        let parse = |k: usize| -> Result<f64> {
            cols.get(k).and_then(|s| s.trim().parse().ok()).ok_or_else(|| Error::Parse {
                path: format!("{}:{}", path.display(), no + 1),
                message: format!("column {k} is not a number"),
            })
        };
        out.push([parse(1)?, parse(2)?]);
    }
    Ok(out)
}

fn complex_input(cli: &Cli) -> Result<TropicalComplex> {
    let (_, v) = input(cli)?;
    if v.get("cells").is_some() {
        complex_from_json(&v, "$")
    } else {
        corner_locus(&lifting_from_json(&v, "$")?)
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Tropicalize => ok(complex_to_json(&corner_locus(&read_lifting(cli)?)?)),
        Command::Subdivide => ok(subdivision_to_json(&lower_hull_subdivision(&read_lifting(cli)?)?)),
        Command::CheckBalance => {
            let c = complex_input(cli)?;
            let cert = check_balanced(&c)?;
            let v = json!({
                "balanced": cert.balanced,
                "failing_cell": cert.failing_cell,
                "residual": cert.residual.map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>()),
            });
            Ok(Outcome {
                text: to_canonical_string(&v),
                ok: cert.balanced,
            })
        }
        Command::Regions => ok(region_graph_to_json(&extract_region_graph(&corner_locus(&read_lifting(cli)?)?)?)),
        Command::Reconstruct => {
            let (_, v) = input(cli)?;
            ok(lifting_to_json(&reconstruct_lifting(&region_graph_from_json(&v, "$")?)?))
        }
        Command::Decompose { n, d } => {
            let v = lifting_or_maximal(cli, *n, *d)?;
            let c = corner_locus(&v)?;
            let pieces = primitive_pieces(&c)?;
            let volume = v.newton_polytope()?.normalized_volume();
            let mut table = Vec::new();
            for p in &pieces {
                let norm = normalize_piece(&c, p)?;
                table.push(json!({
                    "vertex": c.cells[p.vertex].vertices[0].iter().map(fmt_rat).collect::<Vec<_>>(),
                    "dual_simplex": p.dual_simplex.iter().map(|&i| v.points()[i].0.clone()).collect::<Vec<_>>(),
                    "matrix": norm.map.matrix,
                    "translate": norm.translate.iter().map(fmt_rat).collect::<Vec<_>>(),
                }));
            }
            ok(json!({
                "pieces": pieces.len(),
                "normalized_volume": volume.to_string(),
                "table": table,
            }))
        }
        Command::Homology { n, d } => {
            let v = lifting_or_maximal(cli, *n, *d)?;
            let h = base_homology(&stratify(&v)?);
            ok(json!({
                "betti": h.betti,
                "torsion": h.torsion.iter().map(|t| t.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }))
        }
        Command::Invariants { n, d } => ok(serde_json::to_value(hypersurface_invariants(*n, *d)?).unwrap()),
        Command::AmoebaSample => amoeba(cli),
        Command::Kapranov => {
            let (_, v) = input(cli)?;
            let f = puiseux_poly_from_json(&v, "$")?;
            let (poly, c) = kapranov_tropicalize(&f)?;
            let mut out = json!({
                "tropical_coefficients": poly.exact.as_ref().unwrap().iter().map(fmt_rat).collect::<Vec<_>>(),
                "exponents": poly.exponents.iter().map(|j| j.0.clone()).collect::<Vec<_>>(),
                "complex": complex_to_json(&c),
            });
            if c.ambient_dim == 1 {
                let big_t = match &cli.t {
                    Some(s) => parse_t_ladder(s)?[0],
                    None => 1e6,
                };
                out["breakpoints"] = json!(breakpoints(&c)?.iter().map(fmt_rat).collect::<Vec<_>>());
                out["numeric_valuations"] = json!(f.numeric_root_valuations(big_t)?);
                out["t"] = json!(big_t);
            }
            ok(out)
        }
        Command::PhaseLimit { q, samples } => {
            let (_, v) = input(cli)?;
            let f = puiseux_poly_from_json(&v, "$")?;
            let coeff = |e: &[i64]| {
                f.terms
                    .iter()
                    .find(|(j, _)| j.0 == e)
                    .map(|(_, a)| a.clone())
                    .ok_or_else(|| Error::InvalidArgument(format!("line needs a term with exponent {e:?}")))
            };
            let a = [coeff(&[0, 0])?, coeff(&[1, 0])?, coeff(&[0, 1])?];
            let qs: Vec<Rat> = q.split(',').map(parse_rat).collect::<Result<_>>()?;
            let ts = parse_t_ladder(cli.t.as_deref().unwrap_or("10,1000,1000000"))?;
            let rows = phase_limit_experiment([&a[0], &a[1], &a[2]], &ts, &qs, *samples)?;
            let mut text = format!("# seed={}\nt,samples,max_distance\n", cli.seed);
            for r in rows {
                writeln!(text, "{},{},{:e}", r.t, r.samples, r.max_distance).unwrap();
            }
            Ok(Outcome { text, ok: true })
        }
        Command::Patchwork { vertex, svg } => {
            let v = read_lifting(cli)?;
            let s = lower_hull_subdivision(&v)?;
            let sigma = single_negative_signs(&s, &parse_point(vertex)?)?;
            let m = build_membrane(&s, &sigma)?;
            let report = verify_sphere(&m);
            let mut out = membrane_to_json(&s, &m, &report);
            let c = corner_locus_of(&s);
            if let Ok(z) = membrane_base_class(&m, &c) {
                out["base_class"] = json!({
                    "chain": z.chain.iter().map(|&(f, k)| json!({"dual": c.cells[f].dual, "coefficient": k})).collect::<Vec<_>>(),
                    "pairing": z.pairing,
                });
            }
            if let Some(path) = svg {
                let coord = |k: usize| v.points().iter().map(move |p| p.0.get(k).copied().unwrap_or(0) as f64);
                let (x0, x1) = (coord(0).fold(f64::INFINITY, f64::min), coord(0).fold(f64::NEG_INFINITY, f64::max));
                let (y0, y1) = (coord(1).fold(f64::INFINITY, f64::min), coord(1).fold(f64::NEG_INFINITY, f64::max));
                let scene = Scene {
                    membrane: Some(&m),
                    ..Default::default()
                };
                let doc = render_svg(&scene, Viewport([x0 - 0.5, y0 - 0.5, x1 + 0.5, y1 + 0.5]))?;
                std::fs::write(path, with_seed(doc, cli.seed))?;
            }
            ok(out)
        }
        Command::RenderSvg {
            samples,
            cycle,
            projection,
        } => {
            let c = complex_input(cli)?;
            let mut highlight = Vec::new();
            let rebuilt;
            let c = match (cycle, &c.source) {
                (Some(_), Some(src)) => {
                    rebuilt = corner_locus(src)?;
                    &rebuilt
                }
                (Some(_), None) => return Err(Error::NoDualData),
                _ => &c,
            };
            if let Some(j) = cycle {
                let s = c.subdivision().ok_or(Error::NoDualData)?;
                let m = build_membrane(s, &single_negative_signs(s, &parse_point(j)?)?)?;
                let z = membrane_base_class(&m, c)?;
                for &(f, _) in &z.chain {
                    highlight.push(f);
                    highlight.extend(c.cells[f].faces.iter().copied());
                }
            }
            let projection = projection.as_deref().map(parse_projection).transpose()?;
            let scene = Scene {
                complex: Some(c),
                highlight,
                samples: samples.as_deref().map(read_samples_csv).transpose()?.unwrap_or_default(),
                membrane: None,
                projection,
            };
            let vp = match &cli.viewport {
                Some(v) => Viewport::parse(v)?,
                None if scene.projection.is_none() && c.ambient_dim == 2 => Viewport::fit(c),
                None => Viewport([-3.0, -3.0, 3.0, 3.0]),
            };
            let doc = render_svg(&scene, vp)?;
            Ok(Outcome {
                text: with_seed(doc, cli.seed),
                ok: true,
            })
        }
    }
}

fn parse_projection(s: &str) -> Result<[Vec<f64>; 2]> {
    let rows: Vec<Vec<f64>> = s
        .split(';')
        .map(|r| r.split(',').map(|x| x.trim().parse::<f64>()).collect())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidArgument(format!("invalid projection {s:?}")))?;
    match <[Vec<f64>; 2]>::try_from(rows) {
        Ok(r) if r[0].len() == r[1].len() => Ok(r),
        _ => Err(Error::InvalidArgument(format!("projection needs two rows of equal length, got {s:?}"))),
    }
}

fn with_seed(doc: String, seed: u64) -> String {
    match doc.split_once('\n') {
        Some((head, rest)) => format!("{head}\n<!-- seed={seed} -->\n{rest}"),
        None => doc,
    }
}

fn amoeba(cli: &Cli) -> Result<Outcome> {
    let (_, doc) = input(cli)?;
    let v = lifting_from_json(&doc, "$")?;
    let coeffs = read_coefficients(&doc, v.len())?;
    let ts = parse_t_ladder(cli.t.as_deref().unwrap_or("10,100,1000,10000"))?;
    let grid = GridSpec::parse(&cli.grid)?;
    let c = corner_locus(&v)?;
    let mut body = String::new();
    let mut summary = String::new();
    let mut failures = 0;
    for &t in &ts {
        let s = sample_amoeba_curve(&v, &coeffs, t, grid)?;
        for p in &s.points {
            writeln!(body, "{t},{:.12},{:.12},{}", p.x[0], p.x[1], p.in_tube as u8).unwrap();
        }
        failures += s.tube_failures();
        writeln!(
            summary,
            "# t={t} points={} dropped={} tube_failures={} hausdorff={:.9}",
            s.points.len(),
            s.dropped,
            s.tube_failures(),
            directed_hausdorff(&s.coords(), &c)
        )
        .unwrap();
    }
    let text = format!(
        "# seed={} grid={}x{} pitch={}\n{summary}t,x,y,in_tube\n{body}",
        cli.seed,
        grid.radial,
        grid.angular,
        grid.pitch()
    );
    Ok(Outcome {
        text,
        ok: failures == 0,
    })
}
