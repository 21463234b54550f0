use rayon::prelude::*;
use serde::Serialize;

use super::catalog::{CatalogSource, ZeroCatalog};
use crate::error::{Error, Result};
use crate::roots;
use crate::specfun::{hardy_z, VALIDATED_MAX_HEIGHT};

/// Grid scan settings for [`find_zeros`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub grid_step: f64,
    pub refine_tolerance: f64,
    pub max_refinements: usize,
}

impl Default for ScanConfig {
    /// [0, 100] at step 0.05, bisected to 1e−9.
    fn default() -> Self {
        ScanConfig {
            t_min: 0.0,
            t_max: 100.0,
            grid_step: 0.05,
            refine_tolerance: 1e-9,
            max_refinements: 100,
        }
    }
}

impl ScanConfig {
    pub fn with_range(t_min: f64, t_max: f64) -> Self {
        ScanConfig {
            t_min,
            t_max,
            ..ScanConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name, reason: String| Err(Error::InvalidParameter { name, reason });
        if !(self.t_min >= 0.0) {
            return bad("t_min", format!("{} must be >= 0", self.t_min));
        }
        if !(self.t_max > self.t_min) {
            return bad("t_max", format!("{} must exceed t_min = {}", self.t_max, self.t_min));
        }
        if self.t_max > VALIDATED_MAX_HEIGHT {
            return bad("t_max", format!("{} exceeds the validated limit {VALIDATED_MAX_HEIGHT}", self.t_max));
        }
        if !(self.grid_step > 0.0) {
            return bad("grid_step", format!("{} must be > 0", self.grid_step));
        }
        if !(self.refine_tolerance > 0.0 && self.refine_tolerance < self.grid_step) {
            return bad(
                "refine_tolerance",
                format!("{} must lie in (0, grid_step)", self.refine_tolerance),
            );
        }
        if self.max_refinements < 1 {
            return bad("max_refinements", "must be at least 1".into());
        }
        Ok(())
    }

    fn intervals(&self) -> usize {
        ((self.t_max - self.t_min) / self.grid_step).ceil() as usize
    }

    /// Grid node `i`; computed from the index so every partition sees the same nodes.
    fn node(&self, i: usize) -> f64 {
        (self.t_min + i as f64 * self.grid_step).min(self.t_max)
    }
}

/// Locates zeros of Hardy's Z on `[t_min, t_max]` by sign changes on the
/// grid, each refined by bisection.
///
/// Grid intervals are split into partitions scanned in parallel and merged
/// in order; the result does not depend on how many partitions are used.
pub fn find_zeros(config: &ScanConfig) -> Result<ZeroCatalog> {
    let parts = rayon::current_num_threads().max(1) * 4;
    find_zeros_partitioned(config, parts)
}

/// [`find_zeros`] with an explicit partition count.
pub fn find_zeros_partitioned(config: &ScanConfig, parts: usize) -> Result<ZeroCatalog> {
    config.validate()?;
    let n = config.intervals();
    let parts = parts.clamp(1, n.max(1));
    let chunk = n.div_ceil(parts);
    let pieces: Vec<Vec<f64>> = (0..parts)
        .into_par_iter()
        .map(|p| scan_intervals(config, p * chunk, ((p + 1) * chunk).min(n)))
        .collect::<Result<_>>()?;
    let heights: Vec<f64> = pieces.into_iter().flatten().collect();
    ZeroCatalog::new(heights, CatalogSource::Computed, config.t_max)
}

/// Zeros in grid intervals `[start, end)`; interval `i` spans nodes `i` and `i + 1`.
fn scan_intervals(config: &ScanConfig, start: usize, end: usize) -> Result<Vec<f64>> {
    let mut zeros = Vec::new();
    if start >= end {
        return Ok(zeros);
    }
    let mut t_lo = config.node(start);
    let mut z_lo = hardy_z(t_lo)?;
    for i in start..end {
        let t_hi = config.node(i + 1);
        let z_hi = hardy_z(t_hi)?;
        // a node that is exactly zero belongs to the interval on its right
        if z_lo == 0.0 {
            if t_lo > 0.0 {
                zeros.push(t_lo);
            }
        } else if z_hi != 0.0 && (z_lo > 0.0) != (z_hi > 0.0) {
            let root = roots::bisect_with_sign(
                |t| hardy_z(t).unwrap_or(f64::NAN),
                t_lo,
                t_hi,
                z_lo > 0.0,
                config.refine_tolerance,
                config.max_refinements,
                "zero refinement",
            )?;
            zeros.push(root);
        }
        t_lo = t_hi;
        z_lo = z_hi;
    }
    // the last node of the whole scan has no interval to its right
    if end == config.intervals() && z_lo == 0.0 {
        zeros.push(t_lo);
    }
    Ok(zeros)
}

/// Zero counts of a scan and of the same scan at half the grid step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RefinementCheck {
    pub count: usize,
    pub count_half_step: usize,
}

impl RefinementCheck {
    pub fn is_stable(&self) -> bool {
        self.count == self.count_half_step
    }
}

/// Re-runs a scan at half the grid step and reports both zero counts.
pub fn check_refinement(config: &ScanConfig) -> Result<RefinementCheck> {
    let coarse = find_zeros(config)?;
    let fine = find_zeros(&ScanConfig {
        grid_step: 0.5 * config.grid_step,
        refine_tolerance: config.refine_tolerance.min(0.25 * config.grid_step),
        ..*config
    })?;
    Ok(RefinementCheck {
        count: coarse.len(),
        count_half_step: fine.len(),
    })
}
