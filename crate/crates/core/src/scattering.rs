//! Transfer matrices and scattering data for piecewise-constant potentials.
//!
//! Solutions of `-ψ'' + v(x) ψ = k² ψ` are written far from the support as
//! `A e^{ikx} + B e^{-ikx}`. The transfer matrix maps the left pair
//! `(A₋, B₋)` to the right pair `(A₊, B₊)`. Inside the support it is built
//! from exact per-layer propagators acting on `(φ, φ')`, which are entire in
//! `κ² = k² - v` so the branch of `κ` never matters.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::potential::{Layer, PiecewisePotential};
use crate::{Error, Result};

/// Row-major 2×2 complex matrix.
pub type Mat2 = [[Complex64; 2]; 2];

/// Smallest wavenumber accepted by the plane-wave basis conversion.
pub const MIN_WAVENUMBER: f64 = 1e-12;

/// `|M22|` below this is treated as an exact zero (amplitudes diverge).
pub const SINGULAR_M22: f64 = 1e-300;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

pub(crate) fn mat_vec(m: &Mat2, v: [Complex64; 2]) -> [Complex64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

pub(crate) fn identity() -> Mat2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

/// `sin(z)/z`, with a Taylor series near the origin.
fn sinc(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        ONE - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// Propagator of `(φ, φ')` across a constant layer of `width` with local
/// wavenumber `kappa`.
///
/// Even in `kappa`: passing `-kappa` gives the same matrix.
pub fn layer_propagator(width: f64, kappa: Complex64) -> Mat2 {
    let x = kappa * width;
    let c = x.cos();
    let s = sinc(x) * width;
    [[c, s], [-kappa * kappa * s, c]]
}

/// Propagator of `(φ, φ')` across a layer of `width` where the potential
/// equals `v`, at energy `k²`.
///
/// Returns `[[cos κw, sin κw / κ], [-κ sin κw, cos κw]]` with
/// `κ = sqrt(k² - v)`; at `κ = 0` this is `[[1, w], [0, 1]]`.
pub fn layer_matrix(width: f64, v: Complex64, k: f64) -> Result<Mat2> {
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::NonFinite("potential value"));
    }
    if !k.is_finite() {
        return Err(Error::NonFinite("wavenumber"));
    }
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::InvalidWidth(width));
    }
    let kappa = (Complex64::from(k * k) - v).sqrt();
    Ok(layer_propagator(width, kappa))
}

fn validate_k(k: f64) -> Result<()> {
    if k.is_finite() && k > MIN_WAVENUMBER {
        Ok(())
    } else {
        Err(Error::InvalidWavenumber(k))
    }
}

/// Columns are `(φ, φ')` of `e^{ikx}` and `e^{-ikx}` at `x`.
fn plane_wave_basis(x: f64, k: f64) -> Mat2 {
    let e = Complex64::cis(k * x);
    let f = Complex64::cis(-k * x);
    let ik = I * k;
    [[e, f], [ik * e, -ik * f]]
}

fn plane_wave_basis_inv(x: f64, k: f64) -> Mat2 {
    let e = Complex64::cis(k * x);
    let f = Complex64::cis(-k * x);
    let two_ik = I * (2.0 * k);
    [[f * 0.5, f / two_ik], [e * 0.5, -e / two_ik]]
}

/// Coefficients `(A, B)` of `A e^{ikx} + B e^{-ikx}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffPair {
    pub a: Complex64,
    pub b: Complex64,
}

impl CoeffPair {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        CoeffPair { a, b }
    }

    /// Value and derivative of the plane-wave combination at `x`.
    pub fn local(&self, k: f64, x: f64) -> LocalSolution {
        let [phi, dphi] = mat_vec(&plane_wave_basis(x, k), [self.a, self.b]);
        LocalSolution { phi, dphi }
    }
}

/// `(φ(x), φ'(x))` of an eigenfunction at one position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalSolution {
    pub phi: Complex64,
    pub dphi: Complex64,
}

impl LocalSolution {
    pub fn new(phi: Complex64, dphi: Complex64) -> Self {
        LocalSolution { phi, dphi }
    }

    /// `φ₁ φ₂' - φ₂ φ₁'`.
    pub fn wronskian(&self, other: &LocalSolution) -> Complex64 {
        self.phi * other.dphi - other.phi * self.dphi
    }

    fn propagate(self, m: &Mat2) -> Self {
        let [phi, dphi] = mat_vec(m, [self.phi, self.dphi]);
        LocalSolution { phi, dphi }
    }
}

/// Transfer matrix `M(k)`: `(A₊, B₊) = M (A₋, B₋)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
    pub k: f64,
}

impl TransferMatrix {
    pub fn from_array(k: f64, m: Mat2) -> Self {
        TransferMatrix {
            m11: m[0][0],
            m12: m[0][1],
            m21: m[1][0],
            m22: m[1][1],
            k,
        }
    }

    pub fn identity(k: f64) -> Self {
        Self::from_array(k, identity())
    }

    pub fn to_array(&self) -> Mat2 {
        [[self.m11, self.m12], [self.m21, self.m22]]
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn apply(&self, c: CoeffPair) -> CoeffPair {
        let [a, b] = mat_vec(&self.to_array(), [c.a, c.b]);
        CoeffPair { a, b }
    }

    /// Inverse assuming `det M = 1`.
    pub fn unimodular_inverse(&self) -> Self {
        TransferMatrix {
            m11: self.m22,
            m12: -self.m12,
            m21: -self.m21,
            m22: self.m11,
            k: self.k,
        }
    }

    /// Largest modulus among the four entries.
    pub fn max_entry(&self) -> f64 {
        [self.m11, self.m12, self.m21, self.m22]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Product of layer propagators across the whole support, acting on `(φ, φ')`.
pub fn fundamental_matrix(p: &PiecewisePotential, k: f64) -> Result<Mat2> {
    p.layers().iter().try_fold(identity(), |acc, layer| {
        Ok(mat_mul(&layer_matrix(layer.width, layer.value, k)?, &acc))
    })
}

/// Transfer matrix of `p` at wavenumber `k > 0`.
pub fn transfer_matrix(p: &PiecewisePotential, k: f64) -> Result<TransferMatrix> {
    validate_k(k)?;
    if p.is_empty() {
        return Ok(TransferMatrix::identity(k));
    }
    let inner = fundamental_matrix(p, k)?;
    let m = mat_mul(
        &plane_wave_basis_inv(p.right_edge(), k),
        &mat_mul(&inner, &plane_wave_basis(p.left_edge(), k)),
    );
    Ok(TransferMatrix::from_array(k, m))
}

/// Reflection and transmission amplitudes at one real `k`, with the
/// eigenvalues of the S-matrix `[[T, Rʳ], [Rˡ, T]]`.
///
/// Left and right transmission amplitudes coincide, so a single `t` is kept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringAmplitudes {
    pub k: f64,
    pub t: Complex64,
    pub r_left: Complex64,
    pub r_right: Complex64,
    pub s_plus: Complex64,
    pub s_minus: Complex64,
}

impl ScatteringAmplitudes {
    /// `|T|²`
    pub fn transmission(&self) -> f64 {
        self.t.norm_sqr()
    }

    /// `|Rˡ|²`
    pub fn reflection_left(&self) -> f64 {
        self.r_left.norm_sqr()
    }

    /// `|Rʳ|²`
    pub fn reflection_right(&self) -> f64 {
        self.r_right.norm_sqr()
    }
}

/// Amplitudes from a transfer matrix. Fails when `M22` vanishes, i.e. at a
/// spectral singularity.
pub fn amplitudes(m: &TransferMatrix) -> Result<ScatteringAmplitudes> {
    let m22_abs = m.m22.norm();
    if m22_abs.is_nan() || m22_abs < SINGULAR_M22 {
        return Err(Error::AtSingularity { k: m.k, m22_abs });
    }
    let inv = m.m22.inv();
    let root = (ONE - m.m11 * m.m22).sqrt();
    // s± are the roots of M22 s² - 2s + M11 = 0. The smaller one is taken
    // from s+ s- = M11/M22 to avoid cancellation in 1 - root.
    let plus_is_big = (ONE + root).norm() >= (ONE - root).norm();
    let big = if plus_is_big { ONE + root } else { ONE - root };
    let (s_big, s_small) = (big * inv, m.m11 / big);
    let (s_plus, s_minus) = if plus_is_big {
        (s_big, s_small)
    } else {
        (s_small, s_big)
    };
    Ok(ScatteringAmplitudes {
        k: m.k,
        t: inv,
        r_left: -m.m21 * inv,
        r_right: m.m12 * inv,
        s_plus,
        s_minus,
    })
}

/// Outcome of evaluating the amplitudes at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sample {
    Finite(ScatteringAmplitudes),
    Diverged { k: f64, m22_abs: f64 },
}

pub fn sample(p: &PiecewisePotential, k: f64) -> Result<Sample> {
    let m = transfer_matrix(p, k)?;
    match amplitudes(&m) {
        Ok(a) if a.transmission().is_finite() => Ok(Sample::Finite(a)),
        Ok(_) | Err(Error::AtSingularity { .. }) => Ok(Sample::Diverged {
            k,
            m22_abs: m.m22.norm(),
        }),
        Err(e) => Err(e),
    }
}

/// Evaluates [`sample`] on every `k`, in parallel, preserving input order.
pub fn scan(p: &PiecewisePotential, ks: &[f64]) -> Result<Vec<Sample>> {
    ks.par_iter().map(|&k| sample(p, k)).collect()
}

/// Uniform grid on `[lo, hi]` with both endpoints included.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (points - 1) as f64;
            (0..points)
                .map(|i| {
                    if i + 1 == points {
                        hi
                    } else {
                        lo + step * i as f64
                    }
                })
                .collect()
        }
    }
}

/// Asymptotic coefficients of the two Jost solutions.
///
/// `ψ₊ → e^{ikx}` as `x → +∞` and `ψ₋ → e^{-ikx}` as `x → -∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostSolutions {
    pub plus_left: CoeffPair,
    pub plus_right: CoeffPair,
    pub minus_left: CoeffPair,
    pub minus_right: CoeffPair,
}

pub fn jost_coefficients(m: &TransferMatrix) -> JostSolutions {
    JostSolutions {
        plus_left: CoeffPair::new(m.m22, -m.m21),
        plus_right: CoeffPair::new(ONE, ZERO),
        minus_left: CoeffPair::new(ZERO, ONE),
        minus_right: CoeffPair::new(m.m12, m.m22),
    }
}

/// Wronskian `f g' - g f'` of two plane-wave combinations in the same region.
pub fn coefficient_wronskian(k: f64, f: CoeffPair, g: CoeffPair) -> Complex64 {
    I * (2.0 * k) * (f.b * g.a - f.a * g.b)
}

/// Wronskian `ψ₊ ψ₋' - ψ₋ ψ₊'` of the Jost solutions, `-2ik M22`.
pub fn wronskian(m: &TransferMatrix) -> Complex64 {
    -I * (2.0 * m.k) * m.m22
}

/// Value and derivative at `x` of the solution whose left asymptotic
/// coefficients are `left`.
pub fn solution_at(
    p: &PiecewisePotential,
    k: f64,
    left: CoeffPair,
    x: f64,
) -> Result<LocalSolution> {
    validate_k(k)?;
    let x0 = p.left_edge();
    if x <= x0 {
        return Ok(left.local(k, x));
    }
    let mut state = left.local(k, x0);
    let mut start = x0;
    for &Layer { width, value } in p.layers() {
        let end = start + width;
        if x <= end {
            let partial = x - start;
            if partial > 0.0 {
                state = state.propagate(&layer_matrix(partial, value, k)?);
            }
            return Ok(state);
        }
        state = state.propagate(&layer_matrix(width, value, k)?);
        start = end;
    }
    Ok(state.propagate(&layer_propagator(x - start, Complex64::from(k))))
}
