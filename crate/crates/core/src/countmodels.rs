//! Smooth two-term counting models `f(ϑ) + G(E) = 0`, the zero estimates they
//! imply, and their comparison against a zero catalog.
//!
//! Each model is normalised so that its smooth count crosses `n − 1/2` at the
//! estimate of the n-th zero; in the two-term form this is the equation read
//! with `N = n − 1`.

use std::f64::consts::{E as EULER_E, PI};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots;
use crate::specfun::{gamma_phase_ratio, phase_turning_point, theta_exact, theta_turning_point};
use crate::zeroscan::ZeroCatalog;

const TWO_PI: f64 = 2.0 * PI;

/// Offset of the first bracket point above a model's domain boundary.
const BRACKET_OFFSET: f64 = 1e-6;

/// Tolerance on estimated zero heights.
pub const ESTIMATE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelId {
    RiemannSiegelSmooth,
    Polya,
    LeclairMussardo,
    Sierra,
    KkrGamma,
}

impl ModelId {
    pub const ALL: [ModelId; 5] = [
        ModelId::RiemannSiegelSmooth,
        ModelId::Polya,
        ModelId::LeclairMussardo,
        ModelId::Sierra,
        ModelId::KkrGamma,
    ];

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            ModelId::RiemannSiegelSmooth => "rs-smooth",
            ModelId::Polya => "polya",
            ModelId::LeclairMussardo => "leclair",
            ModelId::Sierra => "sierra",
            ModelId::KkrGamma => "kkr-gamma",
        }
    }

    /// ϑ used when none is given.
    pub fn default_theta(self) -> f64 {
        match self {
            ModelId::KkrGamma => 1.5 * PI,
            _ => 0.0,
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelId::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter {
                name: "method",
                reason: format!("unknown model `{s}`"),
            })
    }
}

/// One counting model with its phase parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountingModel {
    pub id: ModelId,
    /// ϑ in radians. Ignored by `rs-smooth` and `polya`.
    pub theta_param: f64,
    /// `kkr-gamma` only: exact gamma-ratio phase instead of its log asymptote.
    pub uses_exact_gamma: bool,
}

impl From<ModelId> for CountingModel {
    fn from(id: ModelId) -> Self {
        CountingModel::new(id)
    }
}

impl CountingModel {
    pub fn new(id: ModelId) -> Self {
        CountingModel {
            id,
            theta_param: id.default_theta(),
            uses_exact_gamma: true,
        }
    }

    pub fn with_theta(self, theta: f64) -> Self {
        CountingModel {
            theta_param: theta,
            ..self
        }
    }

    pub fn with_exact_gamma(self, exact: bool) -> Self {
        CountingModel {
            uses_exact_gamma: exact,
            ..self
        }
    }

    /// Lower end of the open interval on which the smooth count increases.
    pub fn domain_min(&self) -> f64 {
        match self.id {
            ModelId::RiemannSiegelSmooth => theta_turning_point(),
            ModelId::Polya | ModelId::LeclairMussardo | ModelId::Sierra => TWO_PI,
            ModelId::KkrGamma if self.uses_exact_gamma => 2.0 * phase_turning_point(),
            ModelId::KkrGamma => 2.0,
        }
    }

    fn check_domain(&self, e: f64) -> Result<()> {
        let min = self.domain_min();
        if e > min && e.is_finite() {
            Ok(())
        } else {
            Err(Error::domain(
                "smooth count height",
                e,
                format!("E > {min} for {}", self.id),
            ))
        }
    }

    /// Smooth count ⟨N(E)⟩.
    ///
    /// ```
    /// use zeta_kkr::countmodels::{CountingModel, ModelId};
    ///
    /// let polya = CountingModel::new(ModelId::Polya);
    /// let n = polya.smooth_count(100.0).unwrap();
    /// assert!((n - 29.0).abs() < 0.2);
    /// ```
    pub fn smooth_count(&self, e: f64) -> Result<f64> {
        self.check_domain(e)?;
        Ok(self.count_unchecked(e))
    }

    fn count_unchecked(&self, e: f64) -> f64 {
        let log_part = |scale: f64| e * (e / scale).ln();
        let th = self.theta_param;
        match self.id {
            ModelId::RiemannSiegelSmooth => 1.0 + theta_exact(e) / PI,
            ModelId::Polya => 0.875 + log_part(TWO_PI * EULER_E) / TWO_PI,
            ModelId::LeclairMussardo => th / PI + log_part(TWO_PI * EULER_E) / PI,
            ModelId::Sierra => -th / TWO_PI + log_part(TWO_PI * EULER_E) / TWO_PI,
            ModelId::KkrGamma => (th + 0.25 * PI + self.kkr_phase(e)) / TWO_PI,
        }
    }

    /// gamma_phase_ratio(E/2, 1/2), or its asymptote E ln(E/2e).
    fn kkr_phase(&self, e: f64) -> f64 {
        if self.uses_exact_gamma {
            gamma_phase_ratio(0.5 * e, 0.5)
        } else {
            e * (e / (2.0 * EULER_E)).ln()
        }
    }

    /// d⟨N⟩/dE.
    pub fn count_derivative(&self, e: f64) -> Result<f64> {
        self.check_domain(e)?;
        let lg = |scale: f64| (e / scale).ln();
        Ok(match self.id {
            ModelId::Polya | ModelId::Sierra => lg(TWO_PI) / TWO_PI,
            ModelId::LeclairMussardo => lg(TWO_PI) / PI,
            ModelId::KkrGamma if !self.uses_exact_gamma => lg(2.0) / TWO_PI,
            _ => {
                let h = 1e-5 * e.max(1.0);
                (self.count_unchecked(e + h) - self.count_unchecked(e - h)) / (2.0 * h)
            }
        })
    }

    /// ∂⟨N⟩/∂ϑ, zero for models without phase content.
    pub fn theta_sensitivity(&self) -> f64 {
        match self.id {
            ModelId::RiemannSiegelSmooth | ModelId::Polya => 0.0,
            ModelId::LeclairMussardo => 1.0 / PI,
            ModelId::Sierra => -1.0 / TWO_PI,
            ModelId::KkrGamma => 1.0 / TWO_PI,
        }
    }

    /// The phase term f(ϑ) of the two-term equation, evaluated at count `n_count`.
    pub fn f_term(&self, n_count: f64) -> f64 {
        let th = self.theta_param;
        match self.id {
            ModelId::RiemannSiegelSmooth => PI - (n_count + 0.5) * PI,
            ModelId::Polya => 0.875 * PI - (n_count + 0.5) * PI,
            ModelId::LeclairMussardo => th - (n_count + 0.5) * PI,
            ModelId::Sierra => -th - TWO_PI * (n_count + 0.5),
            ModelId::KkrGamma => th + 0.25 * PI - TWO_PI * (n_count + 0.5),
        }
    }

    /// The energy term G(E) of the two-term equation.
    pub fn g_term(&self, e: f64) -> Result<f64> {
        self.check_domain(e)?;
        let log_part = |scale: f64| e * (e / scale).ln();
        Ok(match self.id {
            ModelId::RiemannSiegelSmooth => theta_exact(e),
            ModelId::Polya => 0.5 * log_part(TWO_PI * EULER_E),
            ModelId::LeclairMussardo | ModelId::Sierra => log_part(TWO_PI * EULER_E),
            ModelId::KkrGamma => self.kkr_phase(e),
        })
    }

    /// f(ϑ) + G(E) with N = n − 1; zero at the n-th estimate.
    pub fn two_term_residual(&self, n: usize, e: f64) -> Result<f64> {
        Ok(self.f_term(n as f64 - 1.0) + self.g_term(e)?)
    }

    /// Estimate of the n-th zero: the root of ⟨N(E)⟩ = n − 1/2.
    ///
    /// ```
    /// use zeta_kkr::countmodels::{CountingModel, ModelId};
    ///
    /// let e1 = CountingModel::new(ModelId::Polya).estimate_zero(1).unwrap();
    /// assert!((e1 - 14.5).abs() < 0.1);
    /// ```
    pub fn estimate_zero(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: "zero index starts at 1".into(),
            });
        }
        let target = n as f64 - 0.5;
        let lo = self.domain_min() + BRACKET_OFFSET;
        let start = self.count_unchecked(lo);
        if start > target {
            return Err(Error::domain(
                "zero index",
                n as f64,
                format!("{} counts {start:.6} already at E = {lo}", self.id),
            ));
        }
        roots::solve_increasing(
            |e| self.count_unchecked(e),
            lo,
            2.0 * lo,
            target,
            ESTIMATE_TOLERANCE,
            "zero estimate",
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonEntry {
    pub n: usize,
    pub actual: f64,
    pub estimate: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub model: CountingModel,
    pub entries: Vec<ComparisonEntry>,
    /// Indices whose target count lies below the model's range; these have
    /// no estimate and are left out of the statistics.
    pub skipped: Vec<usize>,
    pub mae: f64,
    /// `None` when fewer than two zeros are compared.
    pub mean_spacing_actual: Option<f64>,
    pub mean_spacing_estimate: Option<f64>,
}

/// Estimates zeros 1..=n_max and compares them with the catalog.
pub fn compare_catalog(model: &CountingModel, catalog: &ZeroCatalog, n_max: usize) -> Result<ComparisonReport> {
    if n_max == 0 {
        return Err(Error::InvalidParameter {
            name: "n_max",
            reason: "must be at least 1".into(),
        });
    }
    if catalog.len() < n_max {
        return Err(Error::InsufficientCatalog {
            available: catalog.len(),
            required: n_max,
        });
    }
    let heights = catalog.heights();
    let results: Vec<Result<ComparisonEntry>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let estimate = model.estimate_zero(n)?;
            let actual = heights[n - 1];
            Ok(ComparisonEntry {
                n,
                actual,
                estimate,
                error: estimate - actual,
            })
        })
        .collect();
    let mut entries = Vec::with_capacity(n_max);
    let mut skipped = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(entry) => entries.push(entry),
            Err(Error::Domain { .. }) => skipped.push(i + 1),
            Err(e) => return Err(e),
        }
    }
    if entries.is_empty() {
        return Err(Error::domain(
            "n_max",
            n_max as f64,
            format!("{} has no estimate for any index up to n_max", model.id),
        ));
    }
    let count = entries.len();
    let mae = entries.iter().map(|e| e.error.abs()).sum::<f64>() / count as f64;
    let spacing = |pick: fn(&ComparisonEntry) -> f64| {
        let (first, last) = (&entries[0], &entries[count - 1]);
        (count > 1).then(|| (pick(last) - pick(first)) / (last.n - first.n) as f64)
    };
    let mean_spacing_actual = spacing(|e| e.actual);
    let mean_spacing_estimate = spacing(|e| e.estimate);
    Ok(ComparisonReport {
        model: *model,
        entries,
        skipped,
        mae,
        mean_spacing_actual,
        mean_spacing_estimate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioPoint {
    #[serde(rename = "E")]
    pub e: f64,
    pub ratio: f64,
}

/// ln(E/2πe) / ln(E/2e): the ratio of the Polya and `kkr-gamma` leading terms.
pub fn ratio_scan(energies: &[f64]) -> Result<Vec<RatioPoint>> {
    let min = TWO_PI * EULER_E;
    energies
        .iter()
        .map(|&e| {
            if !(e > min) || !e.is_finite() {
                return Err(Error::domain("ratio height", e, "E > 2πe"));
            }
            Ok(RatioPoint {
                e,
                ratio: (e / min).ln() / (e / (2.0 * EULER_E)).ln(),
            })
        })
        .collect()
}
