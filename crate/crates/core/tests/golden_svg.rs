//! Byte-for-byte SVG goldens. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use num_complex::Complex64;
use tropical_core::dequant::{sample_amoeba_curve, GridSpec};
use tropical_core::lattice::LatticePoint;
use tropical_core::patchwork::{build_membrane, membrane_base_class, single_negative_signs};
use tropical_core::subdivision::{build_maximal_lifting, lower_hull_subdivision, LiftingFunction};
use tropical_core::svg::{render_svg, Scene, Viewport};
use tropical_core::tropical::{corner_locus, corner_locus_of};

fn compare(name: &str, svg: &str) {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, svg).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(svg, want, "{name} drifted from its golden file");
}

#[test]
fn cubic_with_cycle() {
    let s = lower_hull_subdivision(&build_maximal_lifting(1, 3).unwrap()).unwrap();
    let c = corner_locus_of(&s);
    let m = build_membrane(&s, &single_negative_signs(&s, &LatticePoint(vec![1, 1])).unwrap()).unwrap();
    let z = membrane_base_class(&m, &c).unwrap();
    let mut highlight: Vec<usize> = z.chain.iter().map(|&(f, _)| f).collect();
    for &(f, _) in &z.chain {
        highlight.extend(c.cells[f].faces.iter().copied());
    }
    let scene = Scene {
        complex: Some(&c),
        highlight,
        ..Default::default()
    };
    let vp = Viewport::fit(&c);
    let svg = render_svg(&scene, vp).unwrap();
    assert_eq!(svg, render_svg(&scene, vp).unwrap());
    compare("cubic_cycle.svg", &svg);
}

#[test]
fn hyperbola_samples() {
    let v = LiftingFunction::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], &[0, 0, 0, 0]).unwrap();
    let one = Complex64::new(1.0, 0.0);
    let s = sample_amoeba_curve(&v, &[-one, one, one, one], 100.0, GridSpec::new(21, 8)).unwrap();
    let c = corner_locus(&v).unwrap();
    let scene = Scene {
        complex: Some(&c),
        samples: s.coords(),
        ..Default::default()
    };
    compare("hyperbola_samples.svg", &render_svg(&scene, Viewport([-2.0, -2.0, 2.0, 2.0])).unwrap());
}

#[test]
fn membrane_overlay() {
    let s = lower_hull_subdivision(&build_maximal_lifting(1, 2).unwrap()).unwrap();
    let m = build_membrane(&s, &single_negative_signs(&s, &LatticePoint(vec![1, 0])).unwrap()).unwrap();
    let scene = Scene {
        membrane: Some(&m),
        ..Default::default()
    };
    compare("membrane_arc.svg", &render_svg(&scene, Viewport([-0.5, -0.5, 2.5, 2.5])).unwrap());
}
