//! Rectangular waveguide with a gain region `(-α, 0)` and a loss region
//! `(0, α)` along its axis.
//!
//! A TE mode `χ_m(x) = sin[K_m (x + β)]`, `K_m = π m / (2β)`, reduces
//! Maxwell's equations to `φ'' + (K² ε(z) - K_m²) φ = 0` with `K = ω/c`.
//! Writing `ε = 1 - v_{α, 𝔰/ω}` turns this into the barrier problem with
//! wavenumber `κ = sqrt(K² - K_m²)` and strength `z_eff = K² 𝔰/ω`, so that
//! `y = z_eff / κ²`.
//!
//! Energies are `ħ × frequency` in eV and lengths are in nm; `c` only enters
//! through `ħc`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::barrier::BarrierParams;
use crate::potential::PiecewisePotential;
use crate::scattering::{
    amplitudes, linspace, transfer_matrix, ScatteringAmplitudes, TransferMatrix,
};
use crate::singularity::{solve_window, SingularityRecord};
use crate::{Error, Result};

/// ħc in eV·nm.
pub const HBAR_C_EV_NM: f64 = 197.3269804;

/// Photon energy (eV) to vacuum wavenumber (1/nm).
pub fn ev_to_wavenumber(ev: f64) -> f64 {
    ev / HBAR_C_EV_NM
}

/// Vacuum wavenumber (1/nm) to photon energy (eV).
pub fn wavenumber_to_ev(k: f64) -> f64 {
    k * HBAR_C_EV_NM
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Error::InvalidWaveguide(format!(
            "{name} = {x} must be positive"
        )))
    }
}

/// Resonant gas filling the gain/loss region: plasma energy `ħω_p` and
/// damping `ħδ`, both in eV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainMedium {
    homega_p_ev: f64,
    hdelta_ev: f64,
}

impl GainMedium {
    /// `ħω_p = 0` is allowed and describes an empty guide.
    pub fn new(homega_p_ev: f64, hdelta_ev: f64) -> Result<Self> {
        if !(homega_p_ev.is_finite() && homega_p_ev >= 0.0) {
            return Err(Error::InvalidWaveguide(format!(
                "homega_p = {homega_p_ev} must be >= 0"
            )));
        }
        positive("hdelta", hdelta_ev)?;
        Ok(GainMedium {
            homega_p_ev,
            hdelta_ev,
        })
    }

    pub fn homega_p_ev(&self) -> f64 {
        self.homega_p_ev
    }

    pub fn hdelta_ev(&self) -> f64 {
        self.hdelta_ev
    }

    /// `ħ𝔰 = (ħω_p)² / (2ħδ)` in eV.
    pub fn s_ev(&self) -> f64 {
        self.homega_p_ev * self.homega_p_ev / (2.0 * self.hdelta_ev)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveguideSpec {
    pub alpha_nm: f64,
    pub beta_nm: f64,
    pub m: u32,
    pub medium: GainMedium,
}

/// Propagation data of mode `m` at one frequency. Wavenumbers in 1/nm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeState {
    pub omega_ev: f64,
    pub k_free: f64,
    pub k_cut: f64,
    pub kappa: f64,
}

/// The equivalent one-dimensional problem at one frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveProblem {
    pub potential: PiecewisePotential,
    /// Wavenumber along the guide (1/nm).
    pub kappa: f64,
    /// Barrier strength `K² 𝔰/ω` (1/nm²).
    pub z_eff: f64,
}

impl EffectiveProblem {
    /// `(α κ, α² z_eff)`, the dimensionless barrier coordinates.
    pub fn scaled(&self, alpha_nm: f64) -> (f64, f64) {
        (alpha_nm * self.kappa, alpha_nm * alpha_nm * self.z_eff)
    }

    pub fn transfer_matrix(&self) -> Result<TransferMatrix> {
        transfer_matrix(&self.potential, self.kappa)
    }
}

impl WaveguideSpec {
    pub fn new(alpha_nm: f64, beta_nm: f64, m: u32, medium: GainMedium) -> Result<Self> {
        positive("alpha", alpha_nm)?;
        positive("beta", beta_nm)?;
        if m == 0 {
            return Err(Error::InvalidWaveguide("mode index m must be >= 1".into()));
        }
        Ok(WaveguideSpec {
            alpha_nm,
            beta_nm,
            m,
            medium,
        })
    }

    /// `K_m = π m / (2β)` in 1/nm.
    pub fn cutoff_wavenumber(&self) -> f64 {
        PI * self.m as f64 / (2.0 * self.beta_nm)
    }

    pub fn cutoff_ev(&self) -> f64 {
        wavenumber_to_ev(self.cutoff_wavenumber())
    }

    /// Transverse profile `χ_m(x) = sin[K_m (x + β)]`, vanishing at `x = ±β`.
    pub fn transverse_profile(&self, x_nm: f64) -> f64 {
        (self.cutoff_wavenumber() * (x_nm + self.beta_nm)).sin()
    }

    pub fn mode_state(&self, omega_ev: f64) -> Result<ModeState> {
        positive("omega", omega_ev)?;
        let k_free = ev_to_wavenumber(omega_ev);
        let k_cut = self.cutoff_wavenumber();
        if k_free <= k_cut {
            return Err(Error::BelowCutoff {
                omega_ev,
                cutoff_ev: self.cutoff_ev(),
            });
        }
        Ok(ModeState {
            omega_ev,
            k_free,
            k_cut,
            kappa: ((k_free - k_cut) * (k_free + k_cut)).sqrt(),
        })
    }

    /// Relative permittivity at position `z` along the axis (nm).
    pub fn permittivity(&self, omega_ev: f64, z_nm: f64) -> Complex64 {
        let ratio = self.medium.s_ev() / omega_ev;
        if z_nm > -self.alpha_nm && z_nm < 0.0 {
            Complex64::new(1.0, -ratio)
        } else if z_nm > 0.0 && z_nm < self.alpha_nm {
            Complex64::new(1.0, ratio)
        } else {
            Complex64::new(1.0, 0.0)
        }
    }

    pub fn effective_problem(&self, omega_ev: f64) -> Result<EffectiveProblem> {
        let mode = self.mode_state(omega_ev)?;
        let z_eff = mode.k_free * mode.k_free * self.medium.s_ev() / omega_ev;
        let potential = if z_eff == 0.0 {
            PiecewisePotential::free(-self.alpha_nm)
        } else {
            BarrierParams::new(self.alpha_nm, z_eff)?.profile()
        };
        Ok(EffectiveProblem {
            potential,
            kappa: mode.kappa,
            z_eff,
        })
    }

    /// Reflection and transmission amplitudes of the propagating TE wave.
    pub fn te_scattering(&self, omega_ev: f64) -> Result<ScatteringAmplitudes> {
        amplitudes(&self.effective_problem(omega_ev)?.transfer_matrix()?)
    }

    /// `ħω_{n,m} = ħc sqrt((a k_n / α)² + K_m²)` for this geometry.
    pub fn reference_omega(&self, rec: &SingularityRecord) -> f64 {
        let kn = rec.ak.abs() / self.alpha_nm;
        wavenumber_to_ev(kn.hypot(self.cutoff_wavenumber()))
    }

    /// Samples `|T|²`, `|Rˡ|²`, `|Rʳ|²` on a uniform grid of `ω/ω_ref`.
    pub fn frequency_scan(
        &self,
        ratio_min: f64,
        ratio_max: f64,
        points: usize,
        omega_ref_ev: f64,
    ) -> Vec<ScanRow> {
        linspace(ratio_min, ratio_max, points)
            .into_par_iter()
            .map(|ratio| self.scan_row(ratio, omega_ref_ev))
            .collect()
    }

    fn scan_row(&self, ratio: f64, omega_ref_ev: f64) -> ScanRow {
        let omega_ev = ratio * omega_ref_ev;
        let state = match self
            .effective_problem(omega_ev)
            .and_then(|e| e.transfer_matrix())
        {
            Err(_) => ScanState::BelowCutoff,
            Ok(m) => match amplitudes(&m) {
                Ok(a) if a.transmission().is_finite() => ScanState::Finite {
                    t2: a.transmission(),
                    rl2: a.reflection_left(),
                    rr2: a.reflection_right(),
                },
                _ => ScanState::Diverged {
                    m22_abs: m.m22.norm(),
                },
            },
        };
        ScanRow {
            omega_ratio: ratio,
            omega_ev,
            state,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScanState {
    Finite {
        t2: f64,
        rl2: f64,
        rr2: f64,
    },
    /// `|M22|` underflowed; the amplitudes are not representable.
    Diverged {
        m22_abs: f64,
    },
    /// Evanescent mode (or otherwise not propagating).
    BelowCutoff,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub omega_ratio: f64,
    pub omega_ev: f64,
    pub state: ScanState,
}

impl ScanRow {
    pub fn t2(&self) -> Option<f64> {
        match self.state {
            ScanState::Finite { t2, .. } => Some(t2),
            _ => None,
        }
    }
}

/// Which design variable is fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DesignTarget {
    /// Photon energy `ħω_{n,m}` in eV.
    Frequency(f64),
    /// Gain/loss half-length `α` in nm.
    Alpha(f64),
}

/// Geometry and operating point that place singularity `n` of mode `m` at
/// a real frequency.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SingularDesign {
    pub n: i64,
    pub m: u32,
    pub omega_nm_ev: f64,
    /// `ħ𝔰_{n,m} = (ħc)² z_n / ħω_{n,m}` with `z_n = a²z_n / α²`.
    pub s_nm_ev: f64,
    pub alpha_nm: f64,
    pub beta_nm: f64,
    /// `κ = k_n / α` in 1/nm.
    pub kappa: f64,
}

impl SingularDesign {
    pub fn spec(&self, medium: GainMedium) -> Result<WaveguideSpec> {
        WaveguideSpec::new(self.alpha_nm, self.beta_nm, self.m, medium)
    }
}

/// Design for window `n` (see [`singular_design_from`]).
pub fn singular_design(
    n: u32,
    m: u32,
    medium: GainMedium,
    target: DesignTarget,
) -> Result<SingularDesign> {
    singular_design_from(&solve_window(n)?, m, medium, target)
}

/// Solves `κ α = a k_n` and `z_eff / κ² = y_n` for the free design variables,
/// with `𝔰` fixed by `medium`.
pub fn singular_design_from(
    rec: &SingularityRecord,
    m: u32,
    medium: GainMedium,
    target: DesignTarget,
) -> Result<SingularDesign> {
    if m == 0 {
        return Err(Error::InvalidWaveguide("mode index m must be >= 1".into()));
    }
    let s = medium.s_ev();
    if s <= 0.0 {
        return Err(Error::NoPropagatingMode(
            "a singularity needs a nonzero gain/loss strength".into(),
        ));
    }
    let (ak, y) = (rec.ak.abs(), rec.y);
    let hc2 = HBAR_C_EV_NM * HBAR_C_EV_NM;
    let (omega_ev, kappa, alpha_nm) = match target {
        DesignTarget::Frequency(omega) => {
            let omega = positive("omega", omega)?;
            let kappa = (omega * s / hc2 / y).sqrt();
            (omega, kappa, ak / kappa)
        }
        DesignTarget::Alpha(alpha) => {
            let alpha = positive("alpha", alpha)?;
            let kappa = ak / alpha;
            (y * kappa * kappa * hc2 / s, kappa, alpha)
        }
    };
    let k_free = ev_to_wavenumber(omega_ev);
    if k_free <= kappa {
        return Err(Error::NoPropagatingMode(format!(
            "K = {k_free:e}/nm does not exceed kappa = {kappa:e}/nm"
        )));
    }
    let k_cut = ((k_free - kappa) * (k_free + kappa)).sqrt();
    let beta_nm = PI * m as f64 / (2.0 * k_cut);
    let z_n = rec.a2z.abs() / (alpha_nm * alpha_nm);
    Ok(SingularDesign {
        n: rec.n,
        m,
        omega_nm_ev: omega_ev,
        s_nm_ev: hc2 * z_n / omega_ev,
        alpha_nm,
        beta_nm,
        kappa,
    })
}
