//! Self-checks of every module, reported as named measurements against
//! bounds.

use num_complex::Complex64;
use serde::Serialize;

use crate::barrier::BarrierParams;
use crate::oracle::{compare, transmissions, IntegratorConfig};
use crate::sampling::PotentialSampler;
use crate::scattering::{amplitudes, jost_coefficients, solution_at, transfer_matrix, wronskian};
use crate::singularity::{
    barrier_family, find_generic, record_for_index, scan_plus_branch, solve_window, solve_windows,
    REFERENCE_TABLE,
};
use crate::waveguide::{singular_design, DesignTarget, GainMedium, WaveguideSpec};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Core,
    Barrier,
    Solver,
    Oracle,
    Waveguide,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Barrier => "barrier",
            Suite::Solver => "solver",
            Suite::Oracle => "oracle",
            Suite::Waveguide => "waveguide",
            Suite::All => "all",
        }
    }
}

/// One measurement. `pass` means `measured ≤ bound`; a failed computation
/// is reported as a NaN measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
}

impl Check {
    fn at_most(name: &str, measured: Result<f64>, bound: f64) -> Self {
        let measured = measured.unwrap_or(f64::NAN);
        Check {
            name: name.to_string(),
            measured,
            bound,
            pass: measured <= bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub suite: &'static str,
    pub pass: bool,
    pub checks: Vec<Check>,
}

pub fn run(suite: Suite) -> Report {
    let checks = match suite {
        Suite::Core => core_checks(),
        Suite::Barrier => barrier_checks(),
        Suite::Solver => solver_checks(),
        Suite::Oracle => oracle_checks(),
        Suite::Waveguide => waveguide_checks(),
        Suite::All => [
            core_checks(),
            barrier_checks(),
            solver_checks(),
            oracle_checks(),
            waveguide_checks(),
        ]
        .concat(),
    };
    Report {
        schema: crate::cli::SCHEMA,
        suite: suite.name(),
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn max_over<I>(items: I) -> Result<f64>
where
    I: IntoIterator<Item = Result<f64>>,
{
    items.into_iter().try_fold(0.0, |acc, x| {
        x.map(|v| if v > acc || v.is_nan() { v } else { acc })
    })
}

/// Moderate potentials whose transfer matrices stay well scaled.
fn moderate_sampler(seed: u64) -> PotentialSampler {
    let mut s = PotentialSampler::new(seed);
    s.max_abs_v = 5.0;
    s.max_support = 2.0;
    s
}

fn core_checks() -> Vec<Check> {
    let mut s = moderate_sampler(11);
    let draws: Vec<_> = (0..50)
        .map(|_| (s.complex_potential(), s.uniform(0.5, 10.0)))
        .collect();

    let det = max_over(
        draws
            .iter()
            .map(|(p, k)| Ok((transfer_matrix(p, *k)?.det() - 1.0).norm())),
    );
    let eigen = max_over(draws.iter().map(|(p, k)| {
        let m = transfer_matrix(p, *k)?;
        let a = amplitudes(&m)?;
        Ok(rel(a.s_plus * a.s_minus, m.m11 / m.m22).max(rel(a.s_plus + a.s_minus, 2.0 / m.m22)))
    }));
    let wr = max_over(draws.iter().take(10).map(|(p, k)| {
        let m = transfer_matrix(p, *k)?;
        let j = jost_coefficients(&m);
        let x = p.left_edge() + 0.37 * p.support_width();
        let plus = solution_at(p, *k, j.plus_left, x)?;
        let minus = solution_at(p, *k, j.minus_left, x)?;
        Ok(rel(plus.wronskian(&minus), wronskian(&m)))
    }));
    let cfg = IntegratorConfig::with_steps(20_000);
    let t_lr = max_over(draws.iter().take(5).map(|(p, k)| {
        let (tl, tr) = transmissions(p, *k, cfg)?;
        Ok(rel(tl, tr))
    }));

    let mut real = moderate_sampler(12);
    let flux = max_over((0..50).map(|_| {
        let p = real.real_potential();
        let k = real.uniform(0.5, 10.0);
        let a = amplitudes(&transfer_matrix(&p, k)?)?;
        Ok((a.transmission() + a.reflection_left() - 1.0).abs())
    }));

    vec![
        Check::at_most("det M = 1 within 1e-10", det, 1e-10),
        Check::at_most(
            "s+ s- = M11/M22 and s+ + s- = 2/M22 within 1e-12",
            eigen,
            1e-12,
        ),
        Check::at_most("Jost Wronskian = -2ik M22 within 1e-10", wr, 1e-10),
        Check::at_most("left/right transmission agree within 1e-8", t_lr, 1e-8),
        Check::at_most("real potential |t|^2 + |r|^2 = 1 within 1e-8", flux, 1e-8),
    ]
}

fn barrier_checks() -> Vec<Check> {
    let mut s = PotentialSampler::new(21);
    let closed = max_over((0..200).map(|_| {
        let a = s.uniform(0.2, 2.0);
        let mut z = s.uniform(-20.0, 20.0);
        if z == 0.0 {
            z = 1.0;
        }
        let k = s.uniform(0.1, 10.0);
        let b = BarrierParams::new(a, z)?;
        Ok(rel(
            b.m22_closed_form(k),
            transfer_matrix(&b.profile(), k)?.m22,
        ))
    }));
    let flip = max_over((0..50).map(|_| {
        let b = BarrierParams::new(s.uniform(0.2, 2.0), s.uniform(0.5, 20.0))?;
        let k = s.uniform(0.1, 10.0);
        let m = transfer_matrix(&b.profile(), k)?.m22;
        let mf = transfer_matrix(&b.flipped().profile(), k)?.m22;
        Ok(rel(mf, m))
    }));
    let pt = max_over((0..50).map(|_| {
        let b = BarrierParams::new(s.uniform(0.2, 2.0), s.uniform(-20.0, 20.0))?;
        let m = transfer_matrix(&b.profile(), s.uniform(0.1, 10.0))?;
        Ok(rel(m.m11.conj(), m.m22))
    }));
    vec![
        Check::at_most("closed-form vs composition M22 within 1e-10", closed, 1e-10),
        Check::at_most("z -> -z leaves M22 unchanged within 1e-12", flip, 1e-12),
        Check::at_most("PT symmetry M11 = conj(M22) within 1e-12", pt, 1e-12),
    ]
}

fn solver_checks() -> Vec<Check> {
    let table = solve_windows(&REFERENCE_TABLE.map(|row| row.0)).map(|recs| {
        recs.iter()
            .zip(REFERENCE_TABLE)
            .flat_map(|(rec, (_, r, y, ak, a2z))| {
                [(rec.r, r), (rec.y, y), (rec.ak, ak), (rec.a2z, a2z)]
                    .map(|(got, want)| ((got - want) / want).abs())
            })
            .fold(0.0, f64::max)
    });
    let residual = max_over((-20..=20).map(|n| Ok(record_for_index(n)?.residual)));
    let plus = scan_plus_branch(20);
    let plus_roots = plus.windows.iter().map(|w| w.sign_changes).sum::<usize>() as f64;
    let mirror = record_for_index(-1).and_then(|m| Ok(((m.ak + solve_window(2)?.ak) / m.ak).abs()));
    let newton = find_generic(barrier_family, 1.0, 2.0).and_then(|g| {
        let rec = solve_window(0)?;
        Ok(((g.k - rec.ak) / rec.ak)
            .abs()
            .max(((g.theta - rec.a2z) / rec.a2z).abs()))
    });
    vec![
        Check::at_most("reference table matches within 1e-6 relative", table, 1e-6),
        Check::at_most("|M22(k_n)| < 1e-9 for |n| <= 20", residual, 1e-9),
        Check::at_most("plus branch sign changes for n <= 20", Ok(plus_roots), 0.0),
        Check::at_most("k_-1 = -k_2", mirror, 0.0),
        Check::at_most(
            "generic Newton search recovers n = 0 within 1e-8",
            newton,
            1e-8,
        ),
    ]
}

fn oracle_checks() -> Vec<Check> {
    let mut s = PotentialSampler::new(31);
    let cfg = IntegratorConfig::default();
    let dev = max_over((0..10).map(|_| {
        let p = s.complex_potential();
        let k = s.uniform(0.1, 20.0);
        compare(&p, k, cfg)
    }));
    vec![Check::at_most(
        "analytic vs RK4 transfer matrix within 1e-6",
        dev,
        1e-6,
    )]
}

fn waveguide_checks() -> Vec<Check> {
    let medium = GainMedium::new(0.2, 1.25).expect("valid medium");
    let design = singular_design(0, 1, medium, DesignTarget::Frequency(5.0));
    let field = |f: fn(&crate::waveguide::SingularDesign) -> f64| {
        design.as_ref().map(f).map_err(Clone::clone)
    };
    let alpha = field(|d| ((d.alpha_nm - 1004.17) / 1004.17).abs());
    let beta = field(|d| ((d.beta_nm - 62.0464) / 62.0464).abs());
    let s_nm = field(|d| ((d.s_nm_ev - 0.016) / 0.016).abs());
    let on_singularity = design.clone().and_then(|d| {
        let e = d.spec(medium)?.effective_problem(d.omega_nm_ev)?;
        Ok(e.transfer_matrix()?.m22.norm())
    });
    let peak = WaveguideSpec::new(1004.17, 62.0464, 1, medium).map(|g| {
        let rows = g.frequency_scan(0.99, 1.01, 2001, 5.0);
        rows.iter()
            .filter_map(|r| r.t2().map(|t| (t, r.omega_ratio)))
            .fold(
                (0.0, f64::NAN),
                |best, x| if x.0 > best.0 { x } else { best },
            )
            .1
    });
    vec![
        Check::at_most("design alpha within 0.1% of 1004.17 nm", alpha, 1e-3),
        Check::at_most("design beta within 0.1% of 62.0464 nm", beta, 1e-3),
        Check::at_most(
            "gain strength consistent with 0.016 eV within 0.1%",
            s_nm,
            1e-3,
        ),
        Check::at_most("|M22| at designed frequency < 1e-9", on_singularity, 1e-9),
        Check::at_most(
            "transmission peak within 1e-2 of the reference frequency",
            peak.map(|r| (r - 1.0).abs()),
            1e-2,
        ),
    ]
}
