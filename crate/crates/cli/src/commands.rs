use std::f64::consts::{FRAC_PI_4, PI};
use std::path::Path;

use serde_json::{json, Value};
use zeta_kkr::countmodels::{compare_catalog, ratio_scan, CountingModel, ModelId};
use zeta_kkr::scatter::{
    default_window, fit_asymptotic, integrate_iho, kkr_det_roots, kp_bands, krein_quantization, lloyd_integrated_dos,
    verify_w_phase, InitialCondition, KronigPenneyParams, QuantizationProblem, MAX_E_HAT,
};
use zeta_kkr::specfun::gamma_phase_ratio;
use zeta_kkr::zeroscan::{find_zeros, load_catalog, ScanConfig, ZeroCatalog};

use crate::args::*;
use crate::error::CliError;
use crate::output::Table;

/// A finished command: its data plus the lines shown to the user.
pub struct Outcome {
    pub command: &'static str,
    pub params: Value,
    pub summary: Value,
    pub table: Table,
    pub messages: Vec<String>,
}

/// Range scanned when `predict` has no catalog file.
const FALLBACK_SCAN_MAX: f64 = 100.0;

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Zeros(a) => zeros(a),
        Command::Count(a) => count(a),
        Command::Predict(a) => predict(a),
        Command::Ratio(a) => ratio(a),
        Command::Kp(a) => kp(a),
        Command::Scatter(a) => scatter(a),
        Command::Kkr(a) => kkr(a),
    }
}

fn zeros(a: &ZerosArgs) -> Result<Outcome, CliError> {
    let cfg = ScanConfig {
        t_min: a.t_min,
        t_max: a.t_max,
        grid_step: a.step,
        refine_tolerance: a.tol,
        max_refinements: a.max_refinements,
    };
    let catalog = find_zeros(&cfg)?;
    let mut table = Table::new(&["n", "t"]);
    table.comments.push(("scanned_to".into(), catalog.max_height_scanned().to_string()));
    for (i, &h) in catalog.heights().iter().enumerate() {
        table.push(vec![(i + 1).into(), h.into()]);
    }
    Ok(Outcome {
        command: "zeros",
        params: json!(cfg),
        summary: json!({ "count": catalog.len() }),
        table,
        messages: vec![format!("{} zeros in [{}, {}]", catalog.len(), a.t_min, a.t_max)],
    })
}

fn model_from(id: ModelId, m: &ModelArgs) -> CountingModel {
    let mut model = CountingModel::new(id).with_exact_gamma(!m.asymptotic);
    if let Some(theta) = m.theta {
        model = model.with_theta(theta);
    }
    model
}

fn require_catalog(path: Option<&Path>) -> Result<ZeroCatalog, CliError> {
    match path {
        Some(p) => Ok(load_catalog(p)?),
        None => Err(CliError::Io(format!(
            "a zero catalog is required: pass --zeros-file or set {ZEROS_ENV}"
        ))),
    }
}

fn count(a: &CountArgs) -> Result<Outcome, CliError> {
    let (name, value) = match a.method {
        CountMethod::Exact => {
            let catalog = require_catalog(a.zeros_file.as_deref())?;
            ("exact", catalog.exact_count(a.e)? as f64)
        }
        other => {
            let id = match other {
                CountMethod::RsSmooth => ModelId::RiemannSiegelSmooth,
                CountMethod::Polya => ModelId::Polya,
                CountMethod::Leclair => ModelId::LeclairMussardo,
                CountMethod::Sierra => ModelId::Sierra,
                _ => ModelId::KkrGamma,
            };
            (id.name(), model_from(id, &a.model).smooth_count(a.e)?)
        }
    };
    let mut table = Table::new(&["method", "E", "count"]);
    table.push(vec![name.into(), a.e.into(), value.into()]);
    Ok(Outcome {
        command: "count",
        params: json!({ "method": name, "E": a.e, "theta": a.model.theta, "asymptotic": a.model.asymptotic }),
        summary: Value::Null,
        table,
        messages: vec![format!("N({}) = {value}", a.e)],
    })
}

fn predict(a: &PredictArgs) -> Result<Outcome, CliError> {
    let id: ModelId = a.method.parse().map_err(|e: zeta_kkr::Error| CliError::Usage(e.to_string()))?;
    let model = model_from(id, &a.model);
    let catalog = match &a.zeros_file {
        Some(p) => load_catalog(p)?,
        None => find_zeros(&ScanConfig::with_range(0.0, FALLBACK_SCAN_MAX))?,
    };
    let report = compare_catalog(&model, &catalog, a.n_max)?;
    let mut table = Table::new(&["n", "actual", "estimate", "error"]);
    for e in &report.entries {
        table.push(vec![e.n.into(), e.actual.into(), e.estimate.into(), e.error.into()]);
    }
    let mut messages = vec![format!("MAE = {:.9} over {} zeros", report.mae, report.entries.len())];
    if !report.skipped.is_empty() {
        messages.push(format!("no estimate below the model's range for n = {:?}", report.skipped));
    }
    Ok(Outcome {
        command: "predict",
        params: json!({
            "method": id.name(),
            "n_max": a.n_max,
            "theta": model.theta_param,
            "catalog": if a.zeros_file.is_some() { "file" } else { "scan" },
        }),
        summary: json!({
            "mae": report.mae,
            "mean_spacing_actual": report.mean_spacing_actual,
            "mean_spacing_estimate": report.mean_spacing_estimate,
            "skipped": report.skipped,
        }),
        table,
        messages,
    })
}

fn ratio(a: &RatioArgs) -> Result<Outcome, CliError> {
    let points = ratio_scan(&a.e)?;
    let mut table = Table::new(&["E", "ratio"]);
    for p in &points {
        table.push(vec![p.e.into(), p.ratio.into()]);
    }
    Ok(Outcome {
        command: "ratio",
        params: json!({ "E": a.e }),
        summary: Value::Null,
        table,
        messages: Vec::new(),
    })
}

fn kp(a: &KpArgs) -> Result<Outcome, CliError> {
    let params = KronigPenneyParams::uniform(a.a, a.strength, a.k_points)?;
    let mut n_bands = a.bands;
    if let Some(e) = a.dos {
        // enough bands to cover E for the counting comparison
        let needed = (e.max(0.0).sqrt() * a.a / PI).floor() as usize + 2;
        n_bands = n_bands.max(needed);
    }
    let structure = kp_bands(&params, n_bands)?;
    let deviation = structure.transfer_matrix_deviation(&params)?;
    let mut table = Table::new(&["k", "band_index", "E"]);
    for pt in structure.bands.iter().filter(|pt| pt.band_index <= a.bands) {
        table.push(vec![pt.k.into(), pt.band_index.into(), pt.e.into()]);
    }
    let mut messages = vec![format!("max deviation from transfer matrix: {deviation:.3e}")];
    let mut summary = json!({ "max_transfer_matrix_deviation": deviation });
    if let Some(e) = a.dos {
        let lloyd = lloyd_integrated_dos(&params, e)?;
        let counted = structure.counting_measure(e);
        let gap = (lloyd.integrated - counted).abs();
        messages.push(format!(
            "integrated DOS at E = {e}: Lloyd {:.9}, band count {counted:.9}, gap {gap:.3e} (resolution {:.3e})",
            lloyd.integrated,
            2.0 / a.k_points as f64
        ));
        summary["dos"] = json!({
            "E": e,
            "lloyd": lloyd.integrated,
            "band_count": counted,
            "gap": gap,
            "free_count": lloyd.free_count,
            "phase_shift": lloyd.phase_shift,
            "site_phase": lloyd.site_phase,
        });
    }
    Ok(Outcome {
        command: "kp",
        params: json!({ "strength": a.strength, "a": a.a, "k_points": a.k_points, "bands": a.bands, "dos": a.dos }),
        summary,
        table,
        messages,
    })
}

fn scatter(a: &ScatterArgs) -> Result<Outcome, CliError> {
    let mut table = Table::new(&["key", "value"]);
    let mut add = |k: &str, v: f64| table.push(vec![k.into(), v.into()]);
    let (fit, gap) = match a.ic {
        IcKind::W => {
            let r = verify_w_phase(a.e_hat, a.xi_max)?;
            (r.fit, Some((r.measured_offset, r.predicted_offset, r.gap)))
        }
        kind => {
            if !(0.0..=MAX_E_HAT).contains(&a.e_hat) {
                return Err(CliError::Usage(format!("e_hat {} outside [0, {MAX_E_HAT}]", a.e_hat)));
            }
            let ic = if kind == IcKind::Even { InitialCondition::Even } else { InitialCondition::Odd };
            let sol = integrate_iho(a.e_hat, a.xi_max, ic)?;
            (fit_asymptotic(&sol, default_window(a.xi_max))?, None)
        }
    };
    add("e_hat", a.e_hat);
    add("c1_re", fit.c1.re);
    add("c1_im", fit.c1.im);
    add("c2_re", fit.c2.re);
    add("c2_im", fit.c2.im);
    add("residual_rms", fit.residual_rms);
    add("conjugacy_defect", fit.conjugacy_defect());
    add("ratio_phase", fit.ratio_phase());
    let mut messages = vec![format!("fit residual {:.3e} on [{}, {}]", fit.residual_rms, fit.window.0, fit.window.1)];
    if let Some((measured, predicted, gap)) = gap {
        add("measured_offset", measured);
        add("predicted_offset", predicted);
        add("phase_gap", gap);
        messages.push(format!("phase gap {gap:.3e} rad"));
    }
    Ok(Outcome {
        command: "scatter",
        params: json!({ "e_hat": a.e_hat, "xi_max": a.xi_max, "ic": format!("{:?}", a.ic).to_lowercase() }),
        summary: Value::Null,
        table,
        messages,
    })
}

fn kkr(a: &KkrArgs) -> Result<Outcome, CliError> {
    let mut table = Table::new(&["n", "e_hat"]);
    let mut messages = Vec::new();
    if a.quantize {
        let Some(n_max) = a.n_max else {
            return Err(CliError::Usage("--quantize needs --n-max".into()));
        };
        if n_max < a.n_min {
            return Err(CliError::Usage(format!("--n-max {n_max} is below --n-min {}", a.n_min)));
        }
        let q = krein_quantization(&QuantizationProblem {
            m: a.m,
            theta: a.theta,
            n_range: a.n_min..=n_max,
        })?;
        for l in &q.levels {
            table.push(vec![l.n.into(), l.e_hat.into()]);
        }
        if !q.below_domain.is_empty() {
            messages.push(format!("no root above the phase turning point for n = {:?}", q.below_domain));
        }
    } else {
        for e in kkr_det_roots(0.0, a.e_max, a.theta)? {
            let n = ((a.theta + FRAC_PI_4 + gamma_phase_ratio(e, 0.5)) / (2.0 * PI)).round() as i64;
            table.push(vec![n.into(), e.into()]);
        }
    }
    messages.push(format!("{} roots", table.rows.len()));
    Ok(Outcome {
        command: "kkr",
        params: json!({
            "theta": a.theta,
            "e_max": a.e_max,
            "quantize": a.quantize,
            "m": a.m,
            "n_min": a.n_min,
            "n_max": a.n_max,
        }),
        summary: Value::Null,
        table,
        messages,
    })
}
