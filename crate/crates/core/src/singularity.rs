//! Locating spectral singularities, i.e. real zeros of `M22(k)`.
//!
//! For the PT barrier the conditions `f₁ = f₂ = 0` reduce, with
//! `2akw = r - iq`, to
//!
//! ```text
//! cos r cosh q = -(1 + 4/y²)
//! sin r sinh q = 2/y
//! ```
//!
//! Eliminating `y` gives a quadratic for `cosh q` with two branches
//! `q±(r)`. Each branch fixes `y±(r) = 2/|sin r sinh q±|`, and the
//! definition of `q` in terms of `(ak, y)` gives a second expression
//! `q̃±(r)`. Singularities are the `r` where `q-(r) = q̃-(r)`, one per window
//! `|r - (2n+1)π| ≤ π/6`. The plus branch has no solutions.
//!
//! [`find_generic`] is an independent route: damped Newton on
//! `(Re M22, Im M22)(k, θ) = 0` for any one-parameter family of potentials.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::barrier::{ak_from_r, BarrierParams};
use crate::brent::brentq;
use crate::potential::PiecewisePotential;
use crate::scattering::transfer_matrix;
use crate::{Error, Result};

/// Distance kept from the window edges, where `2 cos 2r - 1` reaches zero.
pub const WINDOW_INSET: f64 = 1e-9;

/// Grid points per window used to bracket roots and count sign changes.
pub const WINDOW_GRID: usize = 1000;

/// Absolute tolerance on the root `r`.
pub const R_TOL: f64 = 1e-13;

/// Index `n ≥ 0` of the admissible window `|r - (2n+1)π| ≤ π/6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct WindowIndex(pub u32);

impl WindowIndex {
    pub fn center(&self) -> f64 {
        (2 * self.0 as u64 + 1) as f64 * PI
    }

    /// Closed window `[center - π/6, center + π/6]`.
    pub fn bounds(&self) -> (f64, f64) {
        let c = self.center();
        (c - PI / 6.0, c + PI / 6.0)
    }

    /// The two open half-windows on either side of `sin r = 0`, inset from
    /// every endpoint by [`WINDOW_INSET`].
    pub fn halves(&self) -> [(f64, f64); 2] {
        let (lo, hi) = self.bounds();
        let c = self.center();
        [
            (lo + WINDOW_INSET, c - WINDOW_INSET),
            (c + WINDOW_INSET, hi - WINDOW_INSET),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// Both solutions `(plus, minus)` of the quadratic for `cosh q`:
/// `½ (-1 ± sqrt(2 cos 2r - 1)) cot r csc r`.
///
/// Requires `cos 2r ≥ ½` and `cos r < 0`. As `sin r → 0` the minus branch
/// diverges while the plus branch tends to `|cos r|`.
pub fn cosh_q_branches(r: f64) -> Result<(f64, f64)> {
    if !r.is_finite() {
        return Err(Error::NonFinite("r"));
    }
    let disc = 2.0 * (2.0 * r).cos() - 1.0;
    if disc < 0.0 {
        return Err(Error::Domain {
            r,
            reason: "cos 2r < 1/2",
        });
    }
    let cos_r = r.cos();
    if cos_r >= 0.0 {
        return Err(Error::Domain {
            r,
            reason: "cos r >= 0",
        });
    }
    let s = disc.sqrt();
    let sin2 = r.sin().powi(2);
    // (s - 1) / sin²r rewritten via 1 - s² = 4 sin²r.
    let plus = -2.0 * cos_r / (1.0 + s);
    let minus = -cos_r * (1.0 + s) / (2.0 * sin2);
    Ok((plus, minus))
}

/// `q±(r)`, `y±(r)` and `q̃±(r)` on one branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chain {
    pub q: f64,
    pub y: f64,
    pub q_tilde: f64,
}

pub fn chain_functions(r: f64, branch: Branch) -> Result<Chain> {
    let (plus, minus) = cosh_q_branches(r)?;
    let cosh_q = match branch {
        Branch::Plus => plus,
        Branch::Minus => minus,
    };
    let q = cosh_q.acosh();
    let y = 2.0 / (r.sin() * q.sinh()).abs();
    let s = y.hypot(1.0);
    let q_tilde = r * r.sin().signum() * ((s - 1.0) / (s + 1.0)).sqrt();
    Ok(Chain { q, y, q_tilde })
}

/// `q±(r) - q̃±(r)`.
pub fn branch_residual(r: f64, branch: Branch) -> Result<f64> {
    chain_functions(r, branch).map(|c| c.q - c.q_tilde)
}

/// `g(r) = r / sqrt(2 (sqrt(y-(r)² + 1) + 1))`, the value of `ak`.
pub fn g_of_r(r: f64) -> Result<f64> {
    let c = chain_functions(r, Branch::Minus)?;
    Ok(ak_from_r(r, c.y))
}

/// `a²z = g(r)² sgn(sin r) y-(r)`.
pub fn a2z_of_r(r: f64) -> Result<f64> {
    let c = chain_functions(r, Branch::Minus)?;
    let g = ak_from_r(r, c.y);
    Ok(g * g * r.sin().signum() * c.y)
}

/// One spectral singularity of the barrier, in units of the half-width `a`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SingularityRecord {
    pub n: i64,
    pub r: f64,
    pub y: f64,
    /// `a k_n`
    pub ak: f64,
    /// `a² z_n`
    pub a2z: f64,
    /// `|M22(k_n)|` from the closed form with `a = 1`.
    pub residual: f64,
}

impl SingularityRecord {
    /// Sign-flipped `(r, ak, a2z)` with the index negated; `y` is kept as the
    /// magnitude `y-(r)`, which is even in `r`.
    pub fn mirrored(&self) -> Self {
        let (ak, a2z) = (-self.ak, -self.a2z);
        SingularityRecord {
            n: -self.n,
            r: -self.r,
            y: self.y,
            ak,
            a2z,
            residual: barrier_residual(ak, a2z),
        }
    }
}

/// `|M22|` of the barrier with `a = 1`, `z = a2z`, evaluated at `|ak|`.
pub fn barrier_residual(ak: f64, a2z: f64) -> f64 {
    match BarrierParams::new(1.0, a2z) {
        Ok(b) => b.m22_closed_form(ak.abs()).norm(),
        Err(_) => f64::NAN,
    }
}

fn grid_sign_changes<F>(lo: f64, hi: f64, points: usize, f: F) -> (Vec<(f64, f64)>, f64)
where
    F: Fn(f64) -> Option<f64>,
{
    let mut brackets = Vec::new();
    let mut min_abs = f64::INFINITY;
    let mut prev: Option<(f64, f64)> = None;
    let step = (hi - lo) / (points - 1) as f64;
    for i in 0..points {
        let x = if i + 1 == points {
            hi
        } else {
            lo + step * i as f64
        };
        match f(x).filter(|v| v.is_finite()) {
            Some(v) => {
                min_abs = min_abs.min(v.abs());
                if let Some((px, pv)) = prev {
                    if pv.signum() != v.signum() || v == 0.0 {
                        brackets.push((px, x));
                    }
                }
                prev = Some((x, v));
            }
            None => prev = None,
        }
    }
    (brackets, min_abs)
}

/// Sign changes of `q± - q̃±` across a window, on a grid of `points` split
/// evenly between the two half-windows.
pub fn window_brackets(n: WindowIndex, branch: Branch, points: usize) -> (Vec<(f64, f64)>, f64) {
    let per_half = (points / 2).max(2);
    let mut brackets = Vec::new();
    let mut min_abs = f64::INFINITY;
    for (lo, hi) in n.halves() {
        let (b, m) = grid_sign_changes(lo, hi, per_half, |r| branch_residual(r, branch).ok());
        brackets.extend(b);
        min_abs = min_abs.min(m);
    }
    (brackets, min_abs)
}

/// Spectral singularity in window `n`, reported with positive `(ak, a²z)`.
pub fn solve_window(n: u32) -> Result<SingularityRecord> {
    let idx = WindowIndex(n);
    let (brackets, _) = window_brackets(idx, Branch::Minus, WINDOW_GRID);
    let (lo, hi) = match brackets.as_slice() {
        [] => return Err(Error::NoRoot { n }),
        [one] => *one,
        many => {
            return Err(Error::MultipleRoots {
                n,
                count: many.len(),
            })
        }
    };
    let f = |r: f64| branch_residual(r, Branch::Minus).unwrap_or(f64::NAN);
    let r = brentq(f, lo, hi, R_TOL, 4.0 * f64::EPSILON, 200).ok_or(Error::NoRoot { n })?;
    let chain = chain_functions(r, Branch::Minus)?;
    let ak = ak_from_r(r, chain.y);
    let a2z = ak * ak * r.sin().signum() * chain.y;
    Ok(SingularityRecord {
        n: n as i64,
        r,
        y: chain.y,
        ak,
        a2z,
        residual: barrier_residual(ak, a2z),
    })
}

/// Solves several windows in parallel; output follows input order.
pub fn solve_windows(ns: &[u32]) -> Result<Vec<SingularityRecord>> {
    ns.par_iter().map(|&n| solve_window(n)).collect()
}

/// Record at index `-n` from the record at `n + 1` via
/// `k₋ₙ = -kₙ₊₁`, `z₋ₙ = -zₙ₊₁`. Needs `rec.n ≥ 2`.
pub fn extend_negative(rec: &SingularityRecord) -> Result<SingularityRecord> {
    if rec.n < 2 {
        return Err(Error::InvalidExtension(rec.n));
    }
    let mut out = rec.mirrored();
    out.n = -(rec.n - 1);
    Ok(out)
}

/// Record for any integer index; negative indices use [`extend_negative`].
pub fn record_for_index(n: i64) -> Result<SingularityRecord> {
    if n >= 0 {
        solve_window(n as u32)
    } else {
        extend_negative(&solve_window((1 - n) as u32)?)
    }
}

/// Result of scanning one window of the plus branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowScan {
    pub n: u32,
    pub sign_changes: usize,
    pub min_abs_diff: f64,
}

/// Per-window evidence that `q+(r) = q̃+(r)` has no solution.
#[derive(Debug, Clone, PartialEq)]
pub struct PlusBranchReport {
    pub windows: Vec<WindowScan>,
}

impl PlusBranchReport {
    /// Threshold below which a grid value counts as a near-root.
    pub const NEAR_ZERO: f64 = 1e-6;

    pub fn is_empty(&self) -> bool {
        self.windows
            .iter()
            .all(|w| w.sign_changes == 0 && w.min_abs_diff >= Self::NEAR_ZERO)
    }

    pub fn min_abs_diff(&self) -> f64 {
        self.windows
            .iter()
            .map(|w| w.min_abs_diff)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Scans `q+ - q̃+` on a 1000-point grid in every window `0..=n_max`.
pub fn scan_plus_branch(n_max: u32) -> PlusBranchReport {
    let windows = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let (brackets, min_abs_diff) =
                window_brackets(WindowIndex(n), Branch::Plus, WINDOW_GRID);
            WindowScan {
                n,
                sign_changes: brackets.len(),
                min_abs_diff,
            }
        })
        .collect();
    PlusBranchReport { windows }
}

/// Reference values `(n, r, y, ak, a²z)` to nine significant digits.
pub const REFERENCE_TABLE: [(u32, f64, f64, f64, f64); 5] = [
    (0, 2.64390700, 1.82765566, 1.06468255, 2.07173713),
    (1, 9.11655393, 0.71364271, 4.31823693, 13.3074170),
    (2, 15.4804556, 0.49008727, 7.52928304, 27.7830976),
    (10, 65.8884385, 0.17167639, 32.8243878, 184.971084),
    (100, 631.445619, 0.02901727, 315.689592, 2891.85852),
];

/// Settings for [`find_generic_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    pub max_iter: usize,
    /// Converged once `|M22| <` this.
    pub tol: f64,
    /// Central-difference step relative to `max(|x|, 1)`.
    pub rel_step: f64,
    pub max_halvings: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            max_iter: 50,
            tol: 1e-10,
            rel_step: 1e-7,
            max_halvings: 30,
        }
    }
}

/// A real zero `(k, θ)` of `M22` for a one-parameter family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenericSingularity {
    pub k: f64,
    pub theta: f64,
    pub m22_abs: f64,
    pub iterations: usize,
}

/// [`find_generic_with`] using [`NewtonOptions::default`].
pub fn find_generic<F>(family: F, k0: f64, theta0: f64) -> Result<GenericSingularity>
where
    F: Fn(f64) -> Result<PiecewisePotential>,
{
    find_generic_with(family, k0, theta0, NewtonOptions::default())
}

/// Damped Newton iteration on `(Re M22, Im M22)(k, θ) = 0` with a
/// central-difference Jacobian. Steps are halved until `|M22|` decreases.
pub fn find_generic_with<F>(
    family: F,
    k0: f64,
    theta0: f64,
    opts: NewtonOptions,
) -> Result<GenericSingularity>
where
    F: Fn(f64) -> Result<PiecewisePotential>,
{
    if !(k0.is_finite() && k0 > 0.0) {
        return Err(Error::LeftDomain(k0));
    }
    let eval = |k: f64, theta: f64| -> Result<[f64; 2]> {
        if k <= 0.0 {
            return Err(Error::LeftDomain(k));
        }
        let m22 = transfer_matrix(&family(theta)?, k)?.m22;
        Ok([m22.re, m22.im])
    };
    let norm = |f: [f64; 2]| f[0].hypot(f[1]);

    let (mut k, mut theta) = (k0, theta0);
    let mut f = eval(k, theta)?;
    let mut fnorm = norm(f);
    for iter in 0..=opts.max_iter {
        if fnorm < opts.tol {
            return Ok(GenericSingularity {
                k,
                theta,
                m22_abs: fnorm,
                iterations: iter,
            });
        }
        if iter == opts.max_iter {
            break;
        }

        let hk = opts.rel_step * k.abs().max(1.0);
        let ht = opts.rel_step * theta.abs().max(1.0);
        let (kp, km) = (eval(k + hk, theta)?, eval(k - hk, theta)?);
        let (tp, tm) = (eval(k, theta + ht)?, eval(k, theta - ht)?);
        let j = [
            [(kp[0] - km[0]) / (2.0 * hk), (tp[0] - tm[0]) / (2.0 * ht)],
            [(kp[1] - km[1]) / (2.0 * hk), (tp[1] - tm[1]) / (2.0 * ht)],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if !det.is_finite() || det == 0.0 {
            break;
        }
        let dk = -(j[1][1] * f[0] - j[0][1] * f[1]) / det;
        let dt = -(-j[1][0] * f[0] + j[0][0] * f[1]) / det;

        let mut lambda = 1.0;
        let mut accepted = None;
        let mut last_k = k + dk;
        for _ in 0..=opts.max_halvings {
            let (nk, nt) = (k + lambda * dk, theta + lambda * dt);
            last_k = nk;
            if nk > 0.0 {
                if let Ok(nf) = eval(nk, nt) {
                    let nn = norm(nf);
                    if nn.is_finite() && nn < fnorm {
                        accepted = Some((nk, nt, nf, nn));
                        break;
                    }
                }
            }
            lambda *= 0.5;
        }
        match accepted {
            Some((nk, nt, nf, nn)) => {
                k = nk;
                theta = nt;
                f = nf;
                fnorm = nn;
            }
            None if last_k <= 0.0 => return Err(Error::LeftDomain(last_k)),
            None => break,
        }
    }
    Err(Error::NoSingularityFound {
        iterations: opts.max_iter,
        m22_abs: fnorm,
    })
}

/// The barrier family `θ = a² z` at `a = 1`.
pub fn barrier_family(theta: f64) -> Result<PiecewisePotential> {
    Ok(BarrierParams::new(1.0, theta)?.profile())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn cosh_branches_domain() {
        assert!(matches!(cosh_q_branches(0.0), Err(Error::Domain { .. })));
        assert!(matches!(
            cosh_q_branches(PI - 0.6),
            Err(Error::Domain { .. })
        ));
        assert!(cosh_q_branches(f64::NAN).is_err());
        // Near the window center the minus branch blows up, the plus branch
        // tends to |cos r| = 1.
        let (p, m) = cosh_q_branches(3.0 * PI - 1e-3).unwrap();
        assert!(m > 1e5);
        assert!((p - 1.0).abs() < 1e-5 && p >= 1.0);
    }

    #[test]
    fn cosh_branches_solve_the_quadratic() {
        // sin²r C² + cos r C + cos²r = 0 for both branches.
        for r in [2.64390700, 2.7, 3.1, 9.0, 9.6] {
            let (p, m) = cosh_q_branches(r).unwrap();
            let (s, c) = r.sin_cos();
            for x in [p, m] {
                assert!(x >= 1.0);
                let res = s * s * x * x + c * x + c * c;
                assert!(
                    res.abs() < 1e-12 * (1.0 + x * x * s * s),
                    "r={r} x={x} res={res}"
                );
            }
        }
    }

    #[test]
    fn chain_satisfies_reduced_equations() {
        for r in [2.64390700, 2.7, 3.0, 9.11655393, 15.3, 65.9] {
            let c = chain_functions(r, Branch::Minus).unwrap();
            let lhs1 = r.cos() * c.q.cosh();
            let rhs1 = -(1.0 + 4.0 / (c.y * c.y));
            assert!((lhs1 - rhs1).abs() < 1e-10 * rhs1.abs(), "r={r}");
            let lhs2 = (r.sin() * c.q.sinh()).abs();
            assert!((lhs2 - 2.0 / c.y).abs() < 1e-10 * lhs2, "r={r}");
        }
    }

    #[test]
    fn chain_matches_table_y() {
        let c = chain_functions(2.64390700, Branch::Minus).unwrap();
        assert!((c.y - 1.82765566).abs() < 1e-6);
        let c = chain_functions(9.11655393, Branch::Minus).unwrap();
        assert!((c.y - 0.71364271).abs() < 1e-6);
    }

    #[test]
    fn windows_reproduce_table() {
        for &(n, r, y, ak, a2z) in &REFERENCE_TABLE {
            let rec = solve_window(n).unwrap();
            assert!(rel(rec.r, r) < 1e-6, "n={n} r={}", rec.r);
            assert!(rel(rec.y, y) < 1e-6, "n={n} y={}", rec.y);
            assert!(rel(rec.ak, ak) < 1e-6, "n={n} ak={}", rec.ak);
            assert!(rel(rec.a2z, a2z) < 1e-6, "n={n} a2z={}", rec.a2z);
            assert!(rec.residual < 1e-9, "n={n} residual={}", rec.residual);
        }
    }

    #[test]
    fn root_is_refined_to_tolerance() {
        let rec = solve_window(3).unwrap();
        let f = |r| branch_residual(r, Branch::Minus).unwrap();
        assert!(f(rec.r - 1e-12) * f(rec.r + 1e-12) <= 0.0);
    }

    #[test]
    fn plus_branch_has_no_roots() {
        let report = scan_plus_branch(5);
        assert_eq!(report.windows.len(), 6);
        assert!(report.is_empty(), "{report:?}");
        assert!(report.windows[0].min_abs_diff > 0.0);
    }

    #[test]
    fn negative_extension() {
        let rec1 = solve_window(1).unwrap();
        let m = rec1.mirrored();
        assert!(rel(m.ak, -4.31823693) < 1e-6 && rel(m.a2z, -13.3074170) < 1e-6);
        assert!(m.residual < 1e-9);
        assert_eq!(m.mirrored().ak, rec1.ak);
        assert_eq!(m.mirrored().a2z, rec1.a2z);
        assert_eq!(m.mirrored().n, rec1.n);

        let rec2 = solve_window(2).unwrap();
        let neg = extend_negative(&rec2).unwrap();
        assert_eq!(neg.n, -1);
        assert_eq!(neg.ak, -rec2.ak);
        assert!(neg.residual < 1e-9);
        assert_eq!(extend_negative(&rec1), Err(Error::InvalidExtension(1)));
        assert_eq!(record_for_index(-1).unwrap(), neg);
    }

    #[test]
    fn g_and_strength_are_odd() {
        for n in [0, 1, 4] {
            let r = solve_window(n).unwrap().r;
            assert!((g_of_r(-r).unwrap() + g_of_r(r).unwrap()).abs() < 1e-14 * r);
            assert!((a2z_of_r(-r).unwrap() + a2z_of_r(r).unwrap()).abs() < 1e-12 * r * r);
        }
    }

    #[test]
    fn newton_finds_first_two_rows() {
        let s = find_generic(barrier_family, 1.0, 2.0).unwrap();
        assert!((s.k - 1.06468255).abs() < 1e-6, "{s:?}");
        assert!((s.theta - 2.07173713).abs() < 1e-6);
        assert!(s.m22_abs < 1e-10);

        let s = find_generic(barrier_family, 4.3, 13.3).unwrap();
        assert!((s.k - 4.31823693).abs() < 1e-6, "{s:?}");
        assert!((s.theta - 13.3074170).abs() < 1e-6);
    }

    #[test]
    fn newton_rejects_nonpositive_seed() {
        assert!(matches!(
            find_generic(barrier_family, 0.0, 2.0),
            Err(Error::LeftDomain(_))
        ));
    }
}
