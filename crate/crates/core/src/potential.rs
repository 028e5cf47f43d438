//! Piecewise-constant complex potentials of compact support.

use num_complex::Complex64;

use crate::{Error, Result};

/// One constant slab of a [`PiecewisePotential`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    pub width: f64,
    pub value: Complex64,
}

impl Layer {
    pub fn new(width: f64, value: Complex64) -> Result<Self> {
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::InvalidWidth(width));
        }
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::NonFinite("layer value"));
        }
        Ok(Layer { width, value })
    }
}

/// A potential made of consecutive constant layers starting at `left_edge`.
///
/// Outside `[left_edge, right_edge]` the potential vanishes identically.
/// Zero-width layers are rejected rather than dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePotential {
    left_edge: f64,
    layers: Vec<Layer>,
}

impl PiecewisePotential {
    pub fn new(left_edge: f64, layers: Vec<Layer>) -> Result<Self> {
        if !left_edge.is_finite() {
            return Err(Error::NonFinite("left edge"));
        }
        for layer in &layers {
            Layer::new(layer.width, layer.value)?;
        }
        Ok(PiecewisePotential { left_edge, layers })
    }

    /// Builds a potential from `(width, value)` pairs.
    pub fn from_pairs<I>(left_edge: f64, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, Complex64)>,
    {
        let layers = pairs
            .into_iter()
            .map(|(w, v)| Layer::new(w, v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(left_edge, layers)
    }

    /// The zero potential (no layers).
    pub fn free(left_edge: f64) -> Self {
        PiecewisePotential {
            left_edge,
            layers: Vec::new(),
        }
    }

    pub fn left_edge(&self) -> f64 {
        self.left_edge
    }

    pub fn right_edge(&self) -> f64 {
        self.left_edge + self.support_width()
    }

    pub fn support_width(&self) -> f64 {
        self.layers.iter().map(|l| l.width).sum()
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// True when every layer value has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.layers.iter().all(|l| l.value.im == 0.0)
    }

    /// Layer boundaries from the left edge to the right edge, inclusive.
    pub fn interfaces(&self) -> Vec<f64> {
        let mut x = self.left_edge;
        let mut out = Vec::with_capacity(self.layers.len() + 1);
        out.push(x);
        for layer in &self.layers {
            x += layer.width;
            out.push(x);
        }
        out
    }

    /// Potential value at `x`. Layers are half-open `[start, end)`.
    pub fn value_at(&self, x: f64) -> Complex64 {
        let mut start = self.left_edge;
        for layer in &self.layers {
            let end = start + layer.width;
            if x >= start && x < end {
                return layer.value;
            }
            start = end;
        }
        Complex64::new(0.0, 0.0)
    }

    /// Splits layer `index` into two sub-layers at fraction `frac` of its width.
    ///
    /// The result describes the same function of `x`.
    pub fn split_layer(&self, index: usize, frac: f64) -> Result<Self> {
        let layer = self.layers.get(index).ok_or(Error::InvalidWidth(0.0))?;
        let first = Layer::new(layer.width * frac, layer.value)?;
        let second = Layer::new(layer.width - first.width, layer.value)?;
        let mut layers = self.layers.clone();
        layers.splice(index..=index, [first, second]);
        Ok(PiecewisePotential {
            left_edge: self.left_edge,
            layers,
        })
    }

    /// The mirror image `x -> -x` with conjugated values.
    ///
    /// PT-symmetric potentials are fixed points of this map.
    pub fn pt_transform(&self) -> Self {
        let layers = self
            .layers
            .iter()
            .rev()
            .map(|l| Layer {
                width: l.width,
                value: l.value.conj(),
            })
            .collect();
        PiecewisePotential {
            left_edge: -self.right_edge(),
            layers,
        }
    }
}
