//! The `sst` command line: argument parsing, CSV/JSON rendering and exit
//! codes.
//!
//! Exit codes: 0 success, 1 failed verification or I/O error, 2 usage or
//! domain error, 3 physics-domain error (mode below cutoff), 4 solver
//! non-convergence.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::barrier::BarrierParams;
use crate::scattering::{linspace, scan, Sample, MIN_WAVENUMBER};
use crate::singularity::{record_for_index, solve_window, SingularityRecord};
use crate::verify::{self, Suite};
use crate::waveguide::{singular_design, DesignTarget, GainMedium, ScanState, WaveguideSpec};
use crate::Error;

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "sst-1";

#[derive(Debug, Parser)]
#[command(
    name = "sst",
    version,
    about = "Transfer matrices and spectral singularities of 1-D complex potentials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral singularities of the gain/loss barrier, one row per window index.
    Table1(Table1Args),
    /// Scattering amplitudes of the barrier on a uniform k grid (CSV).
    Scan(ScanArgs),
    /// TE waveguide design and frequency scans.
    #[command(subcommand)]
    Waveguide(WaveguideCommand),
    /// Runs built-in self-checks and prints a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    /// Aligned columns with nine significant digits.
    Text,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    /// Comma-separated window indices; negative values use the mirror rule.
    #[arg(long, default_value = "0,1,2,10,100", allow_hyphen_values = true)]
    pub n: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Half-width of the barrier.
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    /// Barrier strength (nonzero).
    #[arg(long, allow_hyphen_values = true)]
    pub z: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub kmin: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub kmax: f64,
    #[arg(long)]
    pub points: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum WaveguideCommand {
    /// Geometry placing singularity n of mode m at a real frequency (JSON).
    Design(DesignArgs),
    /// |T|², |Rˡ|², |Rʳ|² against ω/ω_ref (CSV).
    Scan(WaveguideScanArgs),
}

#[derive(Debug, Args)]
pub struct DesignArgs {
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Target photon energy ħω in eV.
    #[arg(
        long,
        required_unless_present = "alpha_nm",
        conflicts_with = "alpha_nm"
    )]
    pub homega_ev: Option<f64>,
    /// Fix the gain/loss half-length instead of the frequency.
    #[arg(long)]
    pub alpha_nm: Option<f64>,
    /// Plasma energy ħω_p in eV.
    #[arg(long)]
    pub homegap_ev: f64,
    /// Damping ħδ in eV.
    #[arg(long)]
    pub hdelta_ev: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WaveguideScanArgs {
    #[arg(long)]
    pub alpha_nm: f64,
    #[arg(long)]
    pub beta_nm: f64,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long)]
    pub homegap_ev: f64,
    #[arg(long)]
    pub hdelta_ev: f64,
    #[arg(long)]
    pub ratio_min: f64,
    #[arg(long)]
    pub ratio_max: f64,
    #[arg(long)]
    pub points: usize,
    /// Reference ħω in eV; defaults to ω_{0,m} of this geometry.
    #[arg(long)]
    pub homega_ref_ev: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure of a subcommand, mapped onto an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Library(Error),
    Io(std::io::Error),
    VerifyFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::VerifyFailed => 1,
            CliError::Library(e) => match e {
                Error::BelowCutoff { .. } | Error::NoPropagatingMode(_) => 3,
                Error::NoRoot { .. }
                | Error::MultipleRoots { .. }
                | Error::NoSingularityFound { .. }
                | Error::LeftDomain(_)
                | Error::DegenerateBasis(_) => 4,
                _ => 2,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Library(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::VerifyFailed => write!(f, "verification failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Library(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    match execute(&cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "sst: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cmd: &Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Table1(a) => emit(stdout, a.out.as_ref(), &table1(a)?),
        Command::Scan(a) => emit(stdout, a.out.as_ref(), &barrier_scan(a)?),
        Command::Waveguide(WaveguideCommand::Design(a)) => {
            emit(stdout, a.out.as_ref(), &waveguide_design(a)?)
        }
        Command::Waveguide(WaveguideCommand::Scan(a)) => {
            emit(stdout, a.out.as_ref(), &waveguide_scan(a)?)
        }
        Command::Verify(a) => {
            let report = verify::run(a.suite);
            emit(stdout, a.out.as_ref(), &to_json(&report))?;
            if report.pass {
                Ok(())
            } else {
                Err(CliError::VerifyFailed)
            }
        }
    }
}

fn emit(stdout: &mut dyn Write, out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// 17 significant digits, which round-trips every `f64`.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

/// `x` with nine significant digits in positional notation.
pub fn fmt_sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn opt_num(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

/// Comma-separated integers; blank entries are ignored.
pub fn parse_index_list(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Usage(format!("invalid index {t:?} in --n")))
        })
        .collect()
}

fn table1(args: &Table1Args) -> Result<String, CliError> {
    let ns = parse_index_list(&args.n)?;
    let rows = ns
        .iter()
        .map(|&n| record_for_index(n))
        .collect::<Result<Vec<SingularityRecord>, _>>()?;
    Ok(match args.format {
        Format::Csv => {
            let mut s = String::from("n,r,y,ak,a2z,residual\n");
            for r in &rows {
                let cols = [r.r, r.y, r.ak, r.a2z, r.residual].map(fmt_num);
                writeln!(s, "{},{}", r.n, cols.join(",")).unwrap();
            }
            s
        }
        Format::Json => to_json(&json!({ "schema": SCHEMA, "command": "table1", "rows": rows })),
        Format::Text => {
            let mut s = format!(
                "{:>5} {:>14} {:>14} {:>14} {:>14} {:>10}\n",
                "n", "r_n", "y_n", "ak_n", "a2z_n", "|M22|"
            );
            for r in &rows {
                writeln!(
                    s,
                    "{:>5} {:>14} {:>14} {:>14} {:>14} {:>10.2e}",
                    r.n,
                    fmt_sig9(r.r),
                    fmt_sig9(r.y),
                    fmt_sig9(r.ak),
                    fmt_sig9(r.a2z),
                    r.residual
                )
                .unwrap();
            }
            s
        }
    })
}

fn check_grid(lo: f64, hi: f64, points: usize, what: &str) -> Result<(), CliError> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(CliError::Usage(format!(
            "{what} range must satisfy min < max, got [{lo}, {hi}]"
        )));
    }
    if points < 2 {
        return Err(CliError::Usage(format!(
            "--points must be >= 2, got {points}"
        )));
    }
    Ok(())
}

fn barrier_scan(args: &ScanArgs) -> Result<String, CliError> {
    check_grid(args.kmin, args.kmax, args.points, "k")?;
    if args.kmin < MIN_WAVENUMBER {
        return Err(CliError::Usage(format!(
            "--kmin must be positive, got {}",
            args.kmin
        )));
    }
    let barrier = BarrierParams::new(args.a, args.z)?;
    let ks = linspace(args.kmin, args.kmax, args.points);
    let samples = scan(&barrier.profile(), &ks)?;

    let mut s = String::from("k,reT,imT,T2,Rl2,Rr2,log10T2,log10Rl2,log10Rr2,diverged_flag\n");
    for sample in samples {
        match sample {
            Sample::Finite(a) => {
                let mags = [a.transmission(), a.reflection_left(), a.reflection_right()];
                let cols = [
                    a.t.re,
                    a.t.im,
                    mags[0],
                    mags[1],
                    mags[2],
                    mags[0].log10(),
                    mags[1].log10(),
                    mags[2].log10(),
                ];
                writeln!(s, "{},{},0", fmt_num(a.k), cols.map(fmt_num).join(",")).unwrap();
            }
            Sample::Diverged { k, .. } => writeln!(s, "{},,,,,,,,,1", fmt_num(k)).unwrap(),
        }
    }
    Ok(s)
}

fn medium(homegap_ev: f64, hdelta_ev: f64) -> Result<GainMedium, CliError> {
    GainMedium::new(homegap_ev, hdelta_ev).map_err(|e| CliError::Usage(e.to_string()))
}

fn waveguide_design(args: &DesignArgs) -> Result<String, CliError> {
    let medium = medium(args.homegap_ev, args.hdelta_ev)?;
    let target = match (args.homega_ev, args.alpha_nm) {
        (Some(w), None) => DesignTarget::Frequency(w),
        (None, Some(a)) => DesignTarget::Alpha(a),
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --homega-ev, --alpha-nm".into(),
            ))
        }
    };
    let design = singular_design(args.n, args.m, medium, target)?;
    Ok(to_json(&json!({
        "schema": SCHEMA,
        "command": "waveguide design",
        "design": design,
        "medium": {
            "homegap_ev": medium.homega_p_ev(),
            "hdelta_ev": medium.hdelta_ev(),
            "s_ev": medium.s_ev(),
        },
    })))
}

fn waveguide_scan(args: &WaveguideScanArgs) -> Result<String, CliError> {
    check_grid(args.ratio_min, args.ratio_max, args.points, "ratio")?;
    if args.ratio_min <= 0.0 {
        return Err(CliError::Usage(format!(
            "--ratio-min must be positive, got {}",
            args.ratio_min
        )));
    }
    let medium = medium(args.homegap_ev, args.hdelta_ev)?;
    let spec = WaveguideSpec::new(args.alpha_nm, args.beta_nm, args.m, medium)?;
    let omega_ref = match args.homega_ref_ev {
        Some(w) if w.is_finite() && w > 0.0 => w,
        Some(w) => {
            return Err(CliError::Usage(format!(
                "--homega-ref-ev must be positive, got {w}"
            )))
        }
        None => spec.reference_omega(&solve_window(0)?),
    };
    let rows = spec.frequency_scan(args.ratio_min, args.ratio_max, args.points, omega_ref);
    if rows.iter().all(|r| r.state == ScanState::BelowCutoff) {
        return Err(Error::BelowCutoff {
            omega_ev: args.ratio_max * omega_ref,
            cutoff_ev: spec.cutoff_ev(),
        }
        .into());
    }

    let mut s = String::from(
        "omega_ratio,T2,Rl2,Rr2,log10T2,log10Rl2,log10Rr2,diverged_flag,below_cutoff_flag\n",
    );
    for row in rows {
        let (mags, diverged, below) = match row.state {
            ScanState::Finite { t2, rl2, rr2 } => (Some([t2, rl2, rr2]), 0, 0),
            ScanState::Diverged { .. } => (None, 1, 0),
            ScanState::BelowCutoff => (None, 0, 1),
        };
        let lin = [0, 1, 2].map(|i| opt_num(mags.map(|m| m[i])));
        let log = [0, 1, 2].map(|i| opt_num(mags.map(|m| m[i].log10())));
        writeln!(
            s,
            "{},{},{},{diverged},{below}",
            fmt_num(row.omega_ratio),
            lin.join(","),
            log.join(",")
        )
        .unwrap();
    }
    Ok(s)
}
