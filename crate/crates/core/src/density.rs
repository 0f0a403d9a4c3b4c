//! Discrete densities over the certainty factor `x ∈ [0, 1]`.
//!
//! A [`DensityGrid`] stores density heights at the midpoints
//! `x_i = (i + 0.5) / M` of `M` uniform cells. Integrals (mass, entropy,
//! KL divergence, moments) are midpoint-rule sums with cell width `1 / M`.
//! All logarithms are natural, so entropies and divergences are in nats.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default number of cells.
pub const DEFAULT_RESOLUTION: usize = 1000;

/// Default smoothing quantity used to repair zero support before dividing.
pub const DEFAULT_SMOOTHING: f64 = 1e-9;

const UNIT_MASS_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    heights: Vec<f64>,
}

impl DensityGrid {
    /// Wraps raw heights. The result is not normalized; call
    /// [`DensityGrid::normalize`] when unit mass is required.
    pub fn from_heights(heights: Vec<f64>) -> Result<Self> {
        if heights.len() < 2 {
            return Err(Error::ResolutionTooSmall(heights.len()));
        }
        if let Some((index, &value)) = heights
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0)
        {
            return Err(Error::InvalidHeight { index, value });
        }
        Ok(Self { heights })
    }

    pub fn uniform(resolution: usize) -> Result<Self> {
        Self::from_heights(alloc::vec![1.0; resolution])
    }

    pub fn resolution(&self) -> usize {
        self.heights.len()
    }

    pub fn cell_width(&self) -> f64 {
        1.0 / self.heights.len() as f64
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    pub fn into_heights(self) -> Vec<f64> {
        self.heights
    }

    pub fn midpoint(&self, index: usize) -> f64 {
        (index as f64 + 0.5) / self.heights.len() as f64
    }

    pub fn midpoints(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.heights.len()).map(move |i| self.midpoint(i))
    }

    /// `Σ v_i · Δx`.
    pub fn mass(&self) -> f64 {
        self.heights.iter().sum::<f64>() * self.cell_width()
    }

    pub fn is_normalized(&self) -> bool {
        (self.mass() - 1.0).abs() <= UNIT_MASS_TOLERANCE
    }

    /// First moment of the grid, `Σ x_i · v_i · Δx`.
    pub fn mean(&self) -> f64 {
        self.midpoints()
            .zip(&self.heights)
            .map(|(x, v)| x * v)
            .sum::<f64>()
            * self.cell_width()
    }

    /// Rescales to unit mass. Fails on an all-zero grid.
    pub fn normalize(&self) -> Result<Self> {
        let mass = self.mass();
        if !mass.is_finite() || mass <= 0.0 {
            return Err(Error::DegenerateDensity);
        }
        Ok(Self {
            heights: self.heights.iter().map(|v| v / mass).collect(),
        })
    }

    /// Mixes the normalized grid with the uniform density at weight `eps`,
    /// so that every height is at least `eps` and the mass stays one. An
    /// all-zero grid smooths to the uniform density.
    pub fn smooth(&self, eps: f64) -> Result<Self> {
        if eps.is_nan() || eps <= 0.0 || eps >= 1.0 {
            return Err(Error::NonPositiveSmoothing(eps));
        }
        let base = match self.normalize() {
            Ok(g) => g,
            Err(Error::DegenerateDensity) => return Self::uniform(self.resolution()),
            Err(e) => return Err(e),
        };
        Ok(Self {
            heights: base.heights.iter().map(|v| eps + (1.0 - eps) * v).collect(),
        })
    }

    /// Differential entropy `-Σ v_i ln v_i Δx` with `0 ln 0 = 0`. Can be
    /// negative for densities sharper than the uniform one.
    pub fn entropy(&self) -> f64 {
        -self
            .heights
            .iter()
            .filter(|&&v| v > 0.0)
            .map(|&v| v * libm::log(v))
            .sum::<f64>()
            * self.cell_width()
    }

    /// Pointwise product, not normalized.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_resolution(other)?;
        Ok(Self {
            heights: self
                .heights
                .iter()
                .zip(&other.heights)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    /// Largest absolute height difference between two grids.
    pub fn sup_distance(&self, other: &Self) -> Result<f64> {
        self.check_resolution(other)?;
        Ok(self
            .heights
            .iter()
            .zip(&other.heights)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    pub(crate) fn check_resolution(&self, other: &Self) -> Result<()> {
        if self.resolution() != other.resolution() {
            return Err(Error::ResolutionMismatch {
                left: self.resolution(),
                right: other.resolution(),
            });
        }
        Ok(())
    }
}

/// Entropy of `grid` in nats. Free-function form of [`DensityGrid::entropy`].
pub fn entropy(grid: &DensityGrid) -> f64 {
    grid.entropy()
}

/// `KL(p || q)` with the default smoothing applied to `q`.
pub fn kl(p: &DensityGrid, q: &DensityGrid) -> Result<f64> {
    kl_smoothed(p, q, DEFAULT_SMOOTHING)
}

/// `KL(p || q) = Σ p_i ln(p_i / q_i) Δx` over the cells where `p_i > 0`.
///
/// `q` is smoothed with `eps` first so the ratio is always finite; `p` is
/// used as given.
pub fn kl_smoothed(p: &DensityGrid, q: &DensityGrid, eps: f64) -> Result<f64> {
    p.check_resolution(q)?;
    let q = q.smooth(eps)?;
    let sum: f64 = p
        .heights
        .iter()
        .zip(&q.heights)
        .filter(|(pi, _)| **pi > 0.0)
        .map(|(pi, qi)| pi * libm::log(pi / qi))
        .sum();
    Ok(sum * p.cell_width())
}

/// Maps a divergence onto `[0, 1)` with `1 - exp(-d)`.
pub fn squash_kl(divergence: f64) -> Result<f64> {
    if divergence.is_nan() || divergence < 0.0 {
        return Err(Error::NegativeDivergence(divergence));
    }
    Ok(-libm::expm1(-divergence))
}

/// Rescales an entropy to `[0, 1]` relative to the lexicon's entropy range,
/// clamping values outside it.
pub fn normalize_entropy(h: f64, h_min: f64, h_max: f64) -> Result<f64> {
    if h_max.is_nan() || h_min.is_nan() || h_max <= h_min {
        return Err(Error::DegenerateEntropyRange);
    }
    Ok(((h - h_min) / (h_max - h_min)).clamp(0.0, 1.0))
}

/// Beta(a, b) density sampled at the cell midpoints and renormalized.
///
/// The kernel is evaluated in log space relative to its largest value, so
/// no Beta function is needed and sharp shapes do not overflow.
pub fn beta_pdf_grid(a: f64, b: f64, resolution: usize) -> Result<DensityGrid> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidShape { a, b });
    }
    if resolution < 2 {
        return Err(Error::ResolutionTooSmall(resolution));
    }
    let m = resolution as f64;
    let log_kernel: Vec<f64> = (0..resolution)
        .map(|i| {
            let x = (i as f64 + 0.5) / m;
            (a - 1.0) * libm::log(x) + (b - 1.0) * libm::log1p(-x)
        })
        .collect();
    let peak = log_kernel.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let heights = log_kernel.iter().map(|l| libm::exp(l - peak)).collect();
    DensityGrid::from_heights(heights)?.normalize()
}
