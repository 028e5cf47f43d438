//! Transfer matrices, scattering amplitudes and spectral singularities of
//! one-dimensional complex scattering potentials.
//!
//! The crate is organized bottom-up:
//!
//! - [`potential`]: piecewise-constant complex potentials of compact support.
//! - [`scattering`]: transfer matrix `M(k)`, reflection/transmission
//!   amplitudes, S-matrix eigenvalues, Jost solutions and their Wronskian.
//! - [`barrier`]: closed forms for the PT-symmetric imaginary barrier
//!   `v(x) = i z` on `(-a, 0)`, `-i z` on `(0, a)`.
//! - [`singularity`]: locating spectral singularities, both through the
//!   transcendental `(r, q, y)` reduction for the barrier and through a
//!   generic two-parameter Newton search on `M22 = 0`.
//! - [`oracle`]: an independent RK4 integrator that rebuilds `M(k)` from
//!   the Schrödinger equation, used to cross-check everything above.
//! - [`waveguide`]: the gain/loss TE waveguide mapped onto the barrier
//!   problem, with singularity design and frequency scans.
//! - [`cli`] and [`verify`]: the `sst` command-line front end.
//!
//! Units follow `H = -d²/dx² + v(x)` (ħ = 2m = 1) for the core modules and
//! eV / nm for the waveguide.
//!
//! ```
//! use sst::barrier::BarrierParams;
//! use sst::scattering::{amplitudes, transfer_matrix};
//!
//! let barrier = BarrierParams::new(1.0, 1.0).unwrap();
//! let m = transfer_matrix(&barrier.profile(), 2.0).unwrap();
//! assert!((m.det() - 1.0).norm() < 1e-12);
//! let amps = amplitudes(&m).unwrap();
//! assert!(amps.transmission() > 0.0);
//! ```

pub mod barrier;
mod brent;
pub mod cli;
mod error;
pub mod oracle;
pub mod potential;
pub mod sampling;
pub mod scattering;
pub mod singularity;
pub mod verify;
pub mod waveguide;

pub use error::{Error, Result};
pub use num_complex::Complex64;
