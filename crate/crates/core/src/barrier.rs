//! The PT-symmetric imaginary barrier `v(x) = i z` on `(-a, 0)` and `-i z`
//! on `(0, a)`, zero elsewhere.
//!
//! Its `M22` has the closed form `e^{2iak} (f₁ - i f₂) / sqrt(1 + y²)` with
//! `y = z/k²` and `w = sqrt(1 - iy)`:
//!
//! ```text
//! f₁ = sqrt(1 + y²) |cos(akw)|² - |sin(akw)|²
//! f₂ = Re[ sqrt(1 + iy) (2 - iy) sin(akw) cos(ak w̄) ]
//! ```
//!
//! `w̄` is the complex conjugate of `w`.

use num_complex::Complex64;

use crate::potential::{Layer, PiecewisePotential};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierParams {
    a: f64,
    z: f64,
}

impl BarrierParams {
    /// `a > 0` is the half-width, `z ≠ 0` the strength.
    pub fn new(a: f64, z: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidBarrier(format!(
                "half-width a = {a} must be positive"
            )));
        }
        if !z.is_finite() || z == 0.0 {
            return Err(Error::InvalidBarrier(format!(
                "strength z = {z} must be finite and nonzero"
            )));
        }
        Ok(BarrierParams { a, z })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// Same barrier with gain and loss swapped (`z -> -z`).
    pub fn flipped(&self) -> Self {
        BarrierParams {
            a: self.a,
            z: -self.z,
        }
    }

    pub fn profile(&self) -> PiecewisePotential {
        let gain = Layer {
            width: self.a,
            value: Complex64::new(0.0, self.z),
        };
        let loss = Layer {
            width: self.a,
            value: Complex64::new(0.0, -self.z),
        };
        PiecewisePotential::new(-self.a, vec![gain, loss]).expect("validated barrier parameters")
    }

    fn y(&self, k: f64) -> f64 {
        self.z / (k * k)
    }

    fn w(y: f64) -> Complex64 {
        Complex64::new(1.0, -y).sqrt()
    }

    pub fn f1(&self, k: f64) -> f64 {
        let y = self.y(k);
        let arg = Self::w(y) * (self.a * k);
        y.hypot(1.0) * arg.cos().norm_sqr() - arg.sin().norm_sqr()
    }

    pub fn f2(&self, k: f64) -> f64 {
        let y = self.y(k);
        let w = Self::w(y);
        let ak = self.a * k;
        let pre = Complex64::new(1.0, y).sqrt() * Complex64::new(2.0, -y);
        (pre * (w * ak).sin() * (w.conj() * ak).cos()).re
    }

    /// `M22(k)` from the closed form.
    pub fn m22_closed_form(&self, k: f64) -> Complex64 {
        let y = self.y(k);
        let phase = Complex64::cis(2.0 * self.a * k);
        phase * Complex64::new(self.f1(k), -self.f2(k)) / y.hypot(1.0)
    }

    pub fn reduced_vars(&self, k: f64) -> ReducedVars {
        ReducedVars::new(self.a * k, self.y(k))
    }
}

/// The change of variables `(ak, y) -> (r, q)` with `2akw = r - iq`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedVars {
    pub y: f64,
    pub w: Complex64,
    pub q: f64,
    pub r: f64,
}

impl ReducedVars {
    pub fn new(ak: f64, y: f64) -> Self {
        let s = y.hypot(1.0);
        // s - 1 written as y²/(s + 1) to avoid cancellation at small y.
        let q = ak * (2.0 * y * y / (s + 1.0)).sqrt() * y.signum();
        let r = ak * (2.0 * (s + 1.0)).sqrt();
        ReducedVars {
            y,
            w: Complex64::new(1.0, -y).sqrt(),
            q,
            r,
        }
    }
}

/// `ak` recovered from `(r, y)`; this is `g(r)` once `y` is fixed by `r`.
pub fn ak_from_r(r: f64, y: f64) -> f64 {
    r / (2.0 * (y.hypot(1.0) + 1.0)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::transfer_matrix;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn profile_layers() {
        let p = BarrierParams::new(1.0, 1.0).unwrap().profile();
        assert_eq!(p.left_edge(), -1.0);
        let l = p.layers();
        assert_eq!((l[0].width, l[0].value), (1.0, Complex64::new(0.0, 1.0)));
        assert_eq!((l[1].width, l[1].value), (1.0, Complex64::new(0.0, -1.0)));

        let p = BarrierParams::new(2.0, -3.0).unwrap().profile();
        assert_eq!(p.left_edge(), -2.0);
        assert_eq!(p.layers()[0].value, Complex64::new(0.0, -3.0));
        assert_eq!(p.layers()[1].value, Complex64::new(0.0, 3.0));
    }

    #[test]
    fn profile_is_pt_symmetric() {
        let p = BarrierParams::new(1.3, 0.7).unwrap().profile();
        for x in [0.1, 0.5, 1.0, 1.29, 2.0] {
            assert_eq!(p.value_at(-x), p.value_at(x).conj(), "x = {x}");
        }
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(BarrierParams::new(0.0, 1.0).is_err());
        assert!(BarrierParams::new(1.0, 0.0).is_err());
        assert!(BarrierParams::new(-1.0, 1.0).is_err());
        assert!(BarrierParams::new(1.0, f64::NAN).is_err());
    }

    #[test]
    fn weak_barrier_limit() {
        // y -> 0: f1 -> cos 2ak, f2 -> sin 2ak and M22 -> 1.
        let b = BarrierParams::new(1.0, 1e-12).unwrap();
        for k in [0.3, 1.0, 2.7] {
            assert!((b.f1(k) - (2.0 * k).cos()).abs() < 1e-10);
            assert!((b.f2(k) - (2.0 * k).sin()).abs() < 1e-10);
            assert!((b.m22_closed_form(k) - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn closed_form_matches_composition() {
        let b = BarrierParams::new(1.0, 1.0).unwrap();
        let m = transfer_matrix(&b.profile(), 1.0).unwrap();
        assert!(rel(b.m22_closed_form(1.0), m.m22) < 1e-12);

        for &(a, z, k) in &[(0.7, -2.3, 1.9), (2.0, 5.0, 0.4), (0.1, 40.0, 3.0)] {
            let b = BarrierParams::new(a, z).unwrap();
            let m = transfer_matrix(&b.profile(), k).unwrap();
            assert!(rel(b.m22_closed_form(k), m.m22) < 1e-10, "{a} {z} {k}");
            let y: f64 = z / (k * k);
            let lhs = Complex64::new(b.f1(k), -b.f2(k));
            let rhs = m.m22 * Complex64::cis(-2.0 * a * k) * y.hypot(1.0);
            assert!(rel(lhs, rhs) < 1e-10);
        }
    }

    #[test]
    fn table_row_one_is_a_zero_of_m22() {
        let b = BarrierParams::new(1.0, 13.3074170).unwrap();
        assert!(b.m22_closed_form(4.31823693).norm() < 1e-6);
        let b = BarrierParams::new(1.0, 2.07173713).unwrap();
        assert!(b.f1(1.06468255).abs() < 1e-7);
        assert!(b.f2(1.06468255).abs() < 1e-7);
    }

    #[test]
    fn flipping_strength_keeps_m22() {
        // z -> -z is the parity image: M22 is unchanged, M12 <-> -M21.
        let b = BarrierParams::new(0.9, 2.2).unwrap();
        for k in [0.2, 1.1, 5.0] {
            assert!((b.m22_closed_form(k) - b.flipped().m22_closed_form(k)).norm() < 1e-12);
            let m = transfer_matrix(&b.profile(), k).unwrap();
            let f = transfer_matrix(&b.flipped().profile(), k).unwrap();
            assert!((m.m12 + f.m21).norm() < 1e-12 && (m.m21 + f.m12).norm() < 1e-12);
            // PT symmetry: M11 = conj(M22).
            assert!((m.m11 - m.m22.conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn reduced_vars_limits_and_cosine_split() {
        let v = ReducedVars::new(0.8, 1e-9);
        assert!(v.q.abs() < 1e-8);
        assert!((v.r - 1.6).abs() < 1e-12);

        for &(ak, y) in &[(1.2, 0.5), (3.0, -2.0), (0.4, 7.0)] {
            let v = ReducedVars::new(ak, y);
            assert_eq!(v.q.signum(), y.signum());
            let lhs = (v.w * (2.0 * ak)).cos();
            let re = v.r.cos() * v.q.cosh();
            let im = v.r.sin() * v.q.sinh();
            assert!((lhs.re - re).abs() < 1e-12 * (1.0 + re.abs()));
            assert!((lhs.im - im).abs() < 1e-12 * (1.0 + im.abs()));
        }
    }

    #[test]
    fn inversion_recovers_ak() {
        let ak = ak_from_r(2.64390700, 1.82765566);
        assert!((ak - 1.06468255).abs() < 1e-8);
        let v = ReducedVars::new(2.5, 0.3);
        assert!((ak_from_r(v.r, v.y) - 2.5).abs() < 1e-14);
    }
}
