use crate::lattice::LatticePolytope;

/// `Φ_Δ(x) = Σ_j j e^{2 j·x} / Σ_j e^{2 j·x}` over the lattice points of `Δ`.
///
/// The largest exponent is factored out before summing so that large `|x|`
/// neither overflows nor loses the dominant terms.
pub fn phi_delta(x: &[f64], delta: &LatticePolytope) -> Vec<f64> {
    let pts = delta.lattice_points();
    let exps: Vec<f64> = pts
        .iter()
        .map(|p| 2.0 * p.coords().iter().zip(x).map(|(&a, b)| a as f64 * b).sum::<f64>())
        .collect();
    let top = exps.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut total = 0.0;
    let mut acc = vec![0.0; x.len()];
    for (p, e) in pts.iter().zip(&exps) {
        let w = (e - top).exp();
        total += w;
        for (a, &c) in acc.iter_mut().zip(p.coords()) {
            *a += w * c as f64;
        }
    }
    acc.into_iter().map(|a| a / total).collect()
}
