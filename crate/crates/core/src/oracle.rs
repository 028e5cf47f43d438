//! Brute-force reference for the transfer matrix.
//!
//! Integrates `φ'' = (v(x) - k²) φ` with fixed-step classical RK4 and reads
//! off the asymptotic coefficients. Step boundaries are aligned with every
//! layer interface, so the piecewise-constant coefficient never jumps inside
//! a step and the scheme keeps its fourth order.
//!
//! Nothing here uses the analytic layer propagators.

use num_complex::Complex64;

use crate::potential::PiecewisePotential;
use crate::scattering::{LocalSolution, TransferMatrix};
use crate::{Error, Result};

/// Plane-wave bases with a larger 2-norm condition number are rejected.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegratorConfig {
    /// RK4 steps spread across the support of the potential.
    pub steps: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig { steps: 100_000 }
    }
}

impl IntegratorConfig {
    pub fn with_steps(steps: usize) -> Self {
        IntegratorConfig { steps }
    }
}

fn rk4_segment(
    mut phi: Complex64,
    mut dphi: Complex64,
    c: Complex64,
    h: f64,
    n: usize,
) -> (Complex64, Complex64) {
    // y' = (dphi, c phi)
    for _ in 0..n {
        let k1 = (dphi, c * phi);
        let k2 = (dphi + k1.1 * (h / 2.0), c * (phi + k1.0 * (h / 2.0)));
        let k3 = (dphi + k2.1 * (h / 2.0), c * (phi + k2.0 * (h / 2.0)));
        let k4 = (dphi + k3.1 * h, c * (phi + k3.0 * h));
        phi += (k1.0 + k2.0 * 2.0 + k3.0 * 2.0 + k4.0) * (h / 6.0);
        dphi += (k1.1 + k2.1 * 2.0 + k3.1 * 2.0 + k4.1) * (h / 6.0);
    }
    (phi, dphi)
}

/// Propagates `(φ, φ')` from `x_from` to `x_to` (either direction).
pub fn integrate(
    p: &PiecewisePotential,
    k: f64,
    init: LocalSolution,
    x_from: f64,
    x_to: f64,
    cfg: IntegratorConfig,
) -> LocalSolution {
    if x_from == x_to {
        return init;
    }
    let span = match p.support_width() {
        w if w > 0.0 => w,
        _ => (x_to - x_from).abs(),
    };
    let h_target = span / cfg.steps.max(1) as f64;

    let (lo, hi) = (x_from.min(x_to), x_from.max(x_to));
    let mut cuts: Vec<f64> = p
        .interfaces()
        .into_iter()
        .filter(|&x| x > lo && x < hi)
        .collect();
    cuts.push(x_from);
    cuts.push(x_to);
    cuts.sort_by(|a, b| a.total_cmp(b));
    if x_to < x_from {
        cuts.reverse();
    }

    let k2 = Complex64::from(k * k);
    let (mut phi, mut dphi) = (init.phi, init.dphi);
    for seg in cuts.windows(2) {
        let (s, e) = (seg[0], seg[1]);
        let len = e - s;
        if len == 0.0 {
            continue;
        }
        let c = p.value_at(0.5 * (s + e)) - k2;
        let n = (len.abs() / h_target).ceil().max(1.0) as usize;
        (phi, dphi) = rk4_segment(phi, dphi, c, len / n as f64, n);
    }
    LocalSolution::new(phi, dphi)
}

fn plane_wave(k: f64, x: f64, sign: f64) -> LocalSolution {
    let e = Complex64::cis(sign * k * x);
    LocalSolution::new(e, Complex64::new(0.0, sign * k) * e)
}

fn condition_number(m: [[Complex64; 2]; 2]) -> f64 {
    let fro2: f64 = m.iter().flatten().map(|z| z.norm_sqr()).sum();
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).norm();
    if det == 0.0 {
        return f64::INFINITY;
    }
    let smax2 = 0.5 * (fro2 + (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt());
    let smin2 = det * det / smax2;
    (smax2 / smin2).sqrt()
}

/// Coefficients `(A, B)` of `A e^{ikx} + B e^{-ikx}` matching `s` at `x`,
/// by Cramer's rule on the plane-wave basis.
fn decompose(k: f64, x: f64, s: LocalSolution) -> Result<(Complex64, Complex64)> {
    let u = plane_wave(k, x, 1.0);
    let v = plane_wave(k, x, -1.0);
    let basis = [[u.phi, v.phi], [u.dphi, v.dphi]];
    let cond = condition_number(basis);
    if cond.is_nan() || cond > MAX_CONDITION {
        return Err(Error::DegenerateBasis(cond));
    }
    let det = basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0];
    let a = (s.phi * basis[1][1] - basis[0][1] * s.dphi) / det;
    let b = (basis[0][0] * s.dphi - s.phi * basis[1][0]) / det;
    Ok((a, b))
}

/// Transfer matrix rebuilt by integrating `e^{ikx}` and `e^{-ikx}` from the
/// left edge to the right edge.
pub fn transfer_matrix_numeric(
    p: &PiecewisePotential,
    k: f64,
    cfg: IntegratorConfig,
) -> Result<TransferMatrix> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::InvalidWavenumber(k));
    }
    let (x0, x1) = (p.left_edge(), p.right_edge());
    let mut cols = [(Complex64::default(), Complex64::default()); 2];
    for (col, sign) in cols.iter_mut().zip([1.0, -1.0]) {
        let end = integrate(p, k, plane_wave(k, x0, sign), x0, x1, cfg);
        *col = decompose(k, x1, end)?;
    }
    Ok(TransferMatrix {
        m11: cols[0].0,
        m12: cols[1].0,
        m21: cols[0].1,
        m22: cols[1].1,
        k,
    })
}

/// Left and right transmission amplitudes from the two scattering solutions,
/// each integrated on its own without forming `M`.
pub fn transmissions(
    p: &PiecewisePotential,
    k: f64,
    cfg: IntegratorConfig,
) -> Result<(Complex64, Complex64)> {
    let (x0, x1) = (p.left_edge(), p.right_edge());
    // Left incidence: pure e^{ikx} on the right, integrate leftwards.
    let s = integrate(p, k, plane_wave(k, x1, 1.0), x1, x0, cfg);
    let (a_minus, _) = decompose(k, x0, s)?;
    // Right incidence: pure e^{-ikx} on the left, integrate rightwards.
    let s = integrate(p, k, plane_wave(k, x0, -1.0), x0, x1, cfg);
    let (_, b_plus) = decompose(k, x1, s)?;
    Ok((a_minus.inv(), b_plus.inv()))
}

/// Entrywise deviations between the analytic and numeric matrices, ordered
/// `m11, m12, m21, m22`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviations {
    pub abs: [f64; 4],
    pub rel: [f64; 4],
}

impl Deviations {
    pub fn max_rel(&self) -> f64 {
        self.rel.iter().copied().fold(0.0, f64::max)
    }
}

pub fn deviations(analytic: &TransferMatrix, numeric: &TransferMatrix) -> Deviations {
    let a = [analytic.m11, analytic.m12, analytic.m21, analytic.m22];
    let n = [numeric.m11, numeric.m12, numeric.m21, numeric.m22];
    let mut out = Deviations {
        abs: [0.0; 4],
        rel: [0.0; 4],
    };
    for i in 0..4 {
        let d = (a[i] - n[i]).norm();
        out.abs[i] = d;
        out.rel[i] = if a[i].norm() > 0.0 {
            d / a[i].norm()
        } else {
            d
        };
    }
    out
}

/// Maximum relative entrywise deviation of [`crate::scattering::transfer_matrix`]
/// from [`transfer_matrix_numeric`].
pub fn compare(p: &PiecewisePotential, k: f64, cfg: IntegratorConfig) -> Result<f64> {
    let analytic = crate::scattering::transfer_matrix(p, k)?;
    let numeric = transfer_matrix_numeric(p, k, cfg)?;
    Ok(deviations(&analytic, &numeric).max_rel())
}
