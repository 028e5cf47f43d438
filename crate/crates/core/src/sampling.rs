//! Seeded random potentials for property checks.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::potential::{Layer, PiecewisePotential};

/// Draws piecewise-constant potentials with at most `max_layers` layers,
/// `|v| ≤ max_abs_v` and total support at most `max_support`.
#[derive(Debug, Clone)]
pub struct PotentialSampler {
    rng: ChaCha8Rng,
    pub max_layers: usize,
    pub max_abs_v: f64,
    pub max_support: f64,
}

impl PotentialSampler {
    /// Defaults: 5 layers, `|v| ≤ 10`, support ≤ 5.
    pub fn new(seed: u64) -> Self {
        PotentialSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_layers: 5,
            max_abs_v: 10.0,
            max_support: 5.0,
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    fn widths(&mut self) -> Vec<f64> {
        let n = self.rng.random_range(1..=self.max_layers);
        let weights: Vec<f64> = (0..n).map(|_| self.uniform(0.05, 1.0)).collect();
        let total: f64 = weights.iter().sum();
        let support = self.uniform(0.05 * self.max_support, self.max_support);
        weights.iter().map(|w| w / total * support).collect()
    }

    fn build(&mut self, values: impl Fn(&mut Self) -> Complex64) -> PiecewisePotential {
        let widths = self.widths();
        let left = self.uniform(-self.max_support, 0.0);
        let layers = widths
            .into_iter()
            .map(|width| Layer {
                width,
                value: values(self),
            })
            .collect();
        PiecewisePotential::new(left, layers).expect("positive widths")
    }

    /// Complex layer values, uniform over the disk `|v| ≤ max_abs_v`.
    pub fn complex_potential(&mut self) -> PiecewisePotential {
        self.build(|s| {
            let rho = s.max_abs_v * s.uniform(0.0, 1.0).sqrt();
            Complex64::from_polar(rho, s.uniform(0.0, TAU))
        })
    }

    /// Real layer values in `[-max_abs_v, max_abs_v)`.
    pub fn real_potential(&mut self) -> PiecewisePotential {
        self.build(|s| Complex64::new(s.uniform(-s.max_abs_v, s.max_abs_v), 0.0))
    }
}
