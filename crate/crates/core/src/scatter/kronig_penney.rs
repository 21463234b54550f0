use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots;

/// Distance from cos(ka) = cos(αa) inside which the determinant is refused.
pub const POLE_TOLERANCE: f64 = 1e-12;
/// Distance from |cos u + P sin u/u| = 1 inside which the DOS is refused.
pub const BAND_EDGE_TOLERANCE: f64 = 1e-12;

/// A delta-comb chain: spacing `a`, dimensionless strength `p` with
/// tan ϑ = −P/(αa), and the crystal momenta to sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KronigPenneyParams {
    pub a: f64,
    pub p: f64,
    pub k_grid: Vec<f64>,
}

impl KronigPenneyParams {
    /// `points` momenta spread evenly over [0, π/a], both ends included.
    pub fn uniform(a: f64, p: f64, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::InvalidParameter {
                name: "k_points",
                reason: "need at least 2".into(),
            });
        }
        let zone = PI / a;
        let k_grid = (0..points)
            .map(|i| if i + 1 == points { zone } else { zone * i as f64 / (points - 1) as f64 })
            .collect();
        let params = KronigPenneyParams { a, p, k_grid };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::domain("lattice spacing", self.a, "a > 0"));
        }
        if !(self.p >= 0.0 && self.p.is_finite()) {
            return Err(Error::domain("strength", self.p, "P >= 0"));
        }
        let zone = PI / self.a;
        if let Some(&k) = self.k_grid.iter().find(|&&k| !(0.0..=zone).contains(&k)) {
            return Err(Error::domain("crystal momentum", k, format!("0 <= k <= {zone}")));
        }
        Ok(())
    }

    /// The single-site phase ϑ = atan(−P/(αa)).
    pub fn site_phase(&self, e: f64) -> f64 {
        (-self.p / (e.sqrt() * self.a)).atan()
    }

    /// cos u + P sin u / u at u = αa: half the trace of the cell transfer matrix.
    pub fn half_trace(&self, e: f64) -> f64 {
        half_trace_u(self.p, e.sqrt() * self.a)
    }
}

fn half_trace_u(p: f64, u: f64) -> f64 {
    if u == 0.0 {
        1.0 + p
    } else {
        u.cos() + p * u.sin() / u
    }
}

/// cot ϑ + sin(αa)/(cos ka − cos αa) with cot ϑ = −αa/P; for P = 0 the limit
/// form cos ka − cos αa.
///
/// ```
/// use zeta_kkr::scatter::{kp_det, KronigPenneyParams};
///
/// let free = KronigPenneyParams { a: 1.0, p: 0.0, k_grid: vec![] };
/// assert!(kp_det(0.25, 0.5, &free).unwrap().abs() < 1e-15);
/// ```
pub fn kp_det(e: f64, k: f64, params: &KronigPenneyParams) -> Result<f64> {
    params.validate()?;
    if !(e > 0.0 && e.is_finite()) {
        return Err(Error::domain("energy", e, "E > 0"));
    }
    let u = e.sqrt() * params.a;
    let denom = (k * params.a).cos() - u.cos();
    if params.p == 0.0 {
        return Ok(denom);
    }
    if denom.abs() < POLE_TOLERANCE {
        return Err(Error::NearPole {
            what: "Kronig-Penney determinant",
            distance: denom.abs(),
        });
    }
    Ok(det_u(params.p, u, denom))
}

fn det_u(p: f64, u: f64, denom: f64) -> f64 {
    -u / p + u.sin() / denom
}

/// Poles of the determinant in u = αa: ka, 2π − ka, 2π + ka, 4π − ka, ...
fn pole(ka: f64, index: usize) -> f64 {
    let j = (index / 2) as f64;
    if index % 2 == 1 {
        2.0 * PI * j + ka
    } else {
        2.0 * PI * j - ka
    }
}

/// u of band `band` (from 1) at `ka`, from the determinant.
///
/// Between consecutive poles the determinant falls from +∞ to −∞, so each
/// band has exactly one root there; when the two poles coincide (k = 0 or
/// k = π/a) the band edge sits on the pole itself.
fn det_band_u(p: f64, ka: f64, band: usize) -> Result<f64> {
    let (lo, hi) = (pole(ka, band), pole(ka, band + 1));
    if p == 0.0 || hi <= lo {
        return Ok(lo);
    }
    let c = ka.cos();
    roots::bisect_with_sign(
        |u| det_u(p, u, c - u.cos()),
        lo,
        hi,
        true,
        0.0,
        200,
        "Kronig-Penney band",
    )
}

/// Band energy from the transfer-matrix relation cos ka = cos u + P sin u/u,
/// bisected on [(b − 1)π, bπ].
pub fn transfer_matrix_band(params: &KronigPenneyParams, k: f64, band: usize) -> Result<f64> {
    params.validate()?;
    if band == 0 {
        return Err(Error::InvalidParameter {
            name: "band",
            reason: "bands are numbered from 1".into(),
        });
    }
    let c = (k * params.a).cos();
    let (lo, hi) = ((band - 1) as f64 * PI, band as f64 * PI);
    let u = roots::bisect_with_sign(
        |u| half_trace_u(params.p, u) - c,
        lo,
        hi,
        band % 2 == 1,
        0.0,
        200,
        "transfer-matrix band",
    )?;
    Ok((u / params.a).powi(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandPoint {
    pub k: f64,
    pub band_index: usize,
    #[serde(rename = "E")]
    pub e: f64,
}

/// Band energies ordered by k, then band.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandStructure {
    pub n_bands: usize,
    pub bands: Vec<BandPoint>,
}

/// The lowest `n_bands` zeros of [`kp_det`] in E at every k of the grid.
pub fn kp_bands(params: &KronigPenneyParams, n_bands: usize) -> Result<BandStructure> {
    params.validate()?;
    if n_bands == 0 {
        return Err(Error::InvalidParameter {
            name: "n_bands",
            reason: "must be at least 1".into(),
        });
    }
    let per_k: Vec<Vec<BandPoint>> = params
        .k_grid
        .par_iter()
        .map(|&k| {
            (1..=n_bands)
                .map(|b| {
                    let u = det_band_u(params.p, k * params.a, b).map_err(|e| match e {
                        Error::NonConvergence { .. } | Error::NonFinite(_) => Error::NoBracket {
                            what: format!("band {b} at k = {k}"),
                        },
                        other => other,
                    })?;
                    Ok(BandPoint {
                        k,
                        band_index: b,
                        e: (u / params.a).powi(2),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(BandStructure {
        n_bands,
        bands: per_k.into_iter().flatten().collect(),
    })
}

impl BandStructure {
    /// Largest |E_det − E_transfer| over all samples.
    pub fn transfer_matrix_deviation(&self, params: &KronigPenneyParams) -> Result<f64> {
        let deviations: Vec<f64> = self
            .bands
            .par_iter()
            .map(|pt| Ok((pt.e - transfer_matrix_band(params, pt.k, pt.band_index)?).abs()))
            .collect::<Result<_>>()?;
        Ok(deviations.into_iter().fold(0.0, f64::max))
    }

    /// Integrated states per cell by counting: Σ_b |{k : E_b(k) ≤ E}| / |grid|.
    pub fn counting_measure(&self, e: f64) -> f64 {
        let k_count = self.bands.len() / self.n_bands.max(1);
        let below = self.bands.iter().filter(|pt| pt.e <= e).count();
        below as f64 / k_count.max(1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LloydDos {
    /// Integrated states per cell.
    pub integrated: f64,
    /// a√E/π, the free count.
    pub free_count: f64,
    /// Δ = π(N − N₀).
    pub phase_shift: f64,
    /// atan(−P/(αa)), the single-site phase.
    pub site_phase: f64,
    pub band: usize,
    pub in_gap: bool,
}

/// Integrated density of states per cell from the phase of the KKR
/// determinant averaged over the zone.
///
/// With g(u) = cos u + P sin u/u, on [(b − 1)π, bπ] the count is
/// (b − 1) + arccos((−1)^{b−1} g)/π inside band b and b − 1 in the gap below
/// it. The free part a√E/π and the phase shift Δ are reported separately.
pub fn lloyd_integrated_dos(params: &KronigPenneyParams, e: f64) -> Result<LloydDos> {
    params.validate()?;
    if !(e > 0.0 && e.is_finite()) {
        return Err(Error::domain("energy", e, "E > 0"));
    }
    let u = e.sqrt() * params.a;
    let band = (u / PI).floor() as usize + 1;
    let g = half_trace_u(params.p, u);
    if (g.abs() - 1.0).abs() < BAND_EDGE_TOLERANCE && params.p != 0.0 {
        return Err(Error::NearPole {
            what: "band edge",
            distance: (g.abs() - 1.0).abs(),
        });
    }
    let signed = if band % 2 == 1 { g } else { -g };
    let in_gap = signed > 1.0;
    let integrated = if params.p == 0.0 {
        u / PI
    } else if in_gap {
        (band - 1) as f64
    } else {
        (band - 1) as f64 + signed.max(-1.0).acos() / PI
    };
    let free_count = u / PI;
    Ok(LloydDos {
        integrated,
        free_count,
        phase_shift: PI * (integrated - free_count),
        site_phase: params.site_phase(e),
        band,
        in_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: f64) -> KronigPenneyParams {
        KronigPenneyParams::uniform(1.0, p, 9).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(KronigPenneyParams::uniform(0.0, 1.0, 8).is_err());
        assert!(KronigPenneyParams::uniform(1.0, -1.0, 8).is_err());
        assert!(KronigPenneyParams::uniform(1.0, 1.0, 1).is_err());
        let bad = KronigPenneyParams {
            a: 1.0,
            p: 1.0,
            k_grid: vec![4.0],
        };
        assert!(kp_bands(&bad, 1).is_err());
    }

    #[test]
    fn grid_reaches_zone_edge() {
        let p = KronigPenneyParams::uniform(2.0, 1.0, 5).unwrap();
        assert_eq!(p.k_grid[0], 0.0);
        assert_eq!(*p.k_grid.last().unwrap(), PI / 2.0);
    }

    #[test]
    fn pole_proximity() {
        // cos(0.5) = cos(αa) at αa = 0.5
        let err = kp_det(0.25, 0.5, &params(3.0)).unwrap_err();
        assert!(matches!(err, Error::NearPole { .. }));
    }

    #[test]
    fn zone_edge_band_one_sits_on_pi() {
        let u = det_band_u(3.0, PI, 1).unwrap();
        assert_eq!(u, PI);
    }

    #[test]
    fn band_zero_rejected() {
        assert!(transfer_matrix_band(&params(1.0), 0.0, 0).is_err());
        assert!(kp_bands(&params(1.0), 0).is_err());
    }

    #[test]
    fn gap_count_is_an_integer() {
        // midgap between bands 1 and 2 at P = 3: u slightly above π
        let d = lloyd_integrated_dos(&params(3.0), (1.1 * PI).powi(2)).unwrap();
        assert!(d.in_gap);
        assert_eq!(d.integrated, 1.0);
    }
}
