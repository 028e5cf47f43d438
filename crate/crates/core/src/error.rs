use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("layer width must be positive and finite, got {0}")]
    InvalidWidth(f64),

    #[error("invalid wavenumber k = {0} (must be finite and > 1e-12)")]
    InvalidWavenumber(f64),

    #[error("amplitudes diverge at k = {k}: |M22| = {m22_abs:e}")]
    AtSingularity { k: f64, m22_abs: f64 },

    #[error("invalid barrier parameters: {0}")]
    InvalidBarrier(String),

    #[error("r = {r} outside the admissible domain: {reason}")]
    Domain { r: f64, reason: &'static str },

    #[error("no root of q_-(r) - q~_-(r) in window n = {n}")]
    NoRoot { n: u32 },

    #[error("expected exactly one root in window n = {n}, found {count}")]
    MultipleRoots { n: u32, count: usize },

    #[error("negative extension needs a record with n >= 2, got n = {0}")]
    InvalidExtension(i64),

    #[error("no spectral singularity found after {iterations} iterations (|M22| = {m22_abs:e})")]
    NoSingularityFound { iterations: usize, m22_abs: f64 },

    #[error("Newton iterate left the domain k > 0 (k = {0})")]
    LeftDomain(f64),

    #[error("degenerate plane-wave basis: condition number {0:e}")]
    DegenerateBasis(f64),

    #[error("below cutoff: hbar*omega = {omega_ev} eV <= cutoff {cutoff_ev} eV")]
    BelowCutoff { omega_ev: f64, cutoff_ev: f64 },

    #[error("no propagating mode for the requested design: {0}")]
    NoPropagatingMode(String),

    #[error("invalid waveguide parameters: {0}")]
    InvalidWaveguide(String),
}
