//! Flat `key = value` run configurations.
//!
//! Frequencies are accepted either as `omega*_over_2pi` (1/ps, the form
//! experiments quote) or as `omega*` (rad/ps) — exactly one of the two
//! per frequency, to keep factor-of-2π mistakes loud. `#` starts a
//! comment; blank lines are ignored; unknown or duplicate keys are
//! errors.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::analysis::{SweepAxis, DEFAULT_REL_FLATNESS};
use crate::error::{Error, Result};
use crate::models::ModelKind;
use crate::system::SystemParams;

pub const DEFAULT_STEPS_PER_DELAY: usize = 64;
pub const DEFAULT_N_MODES: usize = 2001;

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct OracleOptions {
    pub n_modes: usize,
    /// Band half-width in rad/ps; None means 200·(2π/τ).
    pub half_width: Option<f64>,
    /// Mode-integration step in ps; None means 0.1/half_width.
    pub dt: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: ModelKind,
    pub params: SystemParams,
    pub t_end: f64,
    pub steps_per_delay: usize,
    pub plateau_flatness: f64,
    pub sweep: Option<SweepSpec>,
    pub oracle: OracleOptions,
}

const KNOWN_KEYS: &[&str] = &[
    "model",
    "omega2",
    "omega2_over_2pi",
    "omega3",
    "omega3_over_2pi",
    "rabi",
    "rabi_over_2pi",
    "gamma",
    "tau",
    "t_end",
    "steps_per_delay",
    "plateau_flatness",
    "sweep_axis",
    "sweep_values",
    "n_modes",
    "half_width",
    "oracle_dt",
];

fn parse_f64(key: &str, raw: &str) -> Result<f64> {
    raw.parse::<f64>()
        .map_err(|_| Error::config(format!("key '{key}': cannot parse '{raw}' as a number")))
}

fn parse_usize(key: &str, raw: &str) -> Result<usize> {
    raw.parse::<usize>()
        .map_err(|_| Error::config(format!("key '{key}': cannot parse '{raw}' as an integer")))
}

/// Resolve a frequency given in exactly one of its two spellings.
fn resolve_frequency(
    map: &BTreeMap<String, String>,
    plain: &str,
    over_2pi: &str,
    default: Option<f64>,
) -> Result<f64> {
    match (map.get(plain), map.get(over_2pi)) {
        (Some(_), Some(_)) => Err(Error::config(format!(
            "give either '{plain}' or '{over_2pi}', not both"
        ))),
        (Some(raw), None) => parse_f64(plain, raw),
        (None, Some(raw)) => Ok(TAU * parse_f64(over_2pi, raw)?),
        (None, None) => {
            default.ok_or_else(|| Error::config(format!("missing '{plain}' (or '{over_2pi}')")))
        }
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut map: BTreeMap<String, String> = BTreeMap::new();
    for (lineno, raw_line) in text.lines().enumerate() {
        let line = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::config(format!("line {}: expected 'key = value'", lineno + 1))
        })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(Error::config(format!("line {}: unknown key '{key}'", lineno + 1)));
        }
        if map.insert(key.clone(), value).is_some() {
            return Err(Error::config(format!("line {}: duplicate key '{key}'", lineno + 1)));
        }
    }

    let model = match map.get("model") {
        Some(raw) => raw.parse::<ModelKind>().map_err(Error::Config)?,
        None => ModelKind::PumpedLambda,
    };
    let omega2 = resolve_frequency(&map, "omega2", "omega2_over_2pi", None)?;
    let omega3 = resolve_frequency(&map, "omega3", "omega3_over_2pi", None)?;
    let rabi = resolve_frequency(&map, "rabi", "rabi_over_2pi", Some(0.0))?;
    let gamma = parse_f64("gamma", map.get("gamma").ok_or_else(|| Error::config("missing 'gamma'"))?)?;
    let tau = parse_f64("tau", map.get("tau").ok_or_else(|| Error::config("missing 'tau'"))?)?;
    let params = SystemParams::new(omega2, omega3, gamma, tau, rabi)?;

    let t_end = match map.get("t_end") {
        Some(raw) => parse_f64("t_end", raw)?,
        None => 30.0 * tau,
    };
    let steps_per_delay = match map.get("steps_per_delay") {
        Some(raw) => parse_usize("steps_per_delay", raw)?,
        None => DEFAULT_STEPS_PER_DELAY,
    };
    let plateau_flatness = match map.get("plateau_flatness") {
        Some(raw) => parse_f64("plateau_flatness", raw)?,
        None => DEFAULT_REL_FLATNESS,
    };

    let sweep = match (map.get("sweep_axis"), map.get("sweep_values")) {
        (None, None) => None,
        (Some(_), None) => return Err(Error::config("sweep_axis given without sweep_values")),
        (None, Some(_)) => return Err(Error::config("sweep_values given without sweep_axis")),
        (Some(axis_raw), Some(values_raw)) => {
            let axis = axis_raw.parse::<SweepAxis>().map_err(Error::Config)?;
            let values = values_raw
                .split(',')
                .map(|s| parse_f64("sweep_values", s.trim()))
                .collect::<Result<Vec<f64>>>()?;
            if values.is_empty() {
                return Err(Error::config("sweep_values must not be empty"));
            }
            Some(SweepSpec { axis, values })
        }
    };

    let oracle = OracleOptions {
        n_modes: match map.get("n_modes") {
            Some(raw) => parse_usize("n_modes", raw)?,
            None => DEFAULT_N_MODES,
        },
        half_width: map.get("half_width").map(|raw| parse_f64("half_width", raw)).transpose()?,
        dt: map.get("oracle_dt").map(|raw| parse_f64("oracle_dt", raw)).transpose()?,
    };

    Ok(RunConfig { model, params, t_end, steps_per_delay, plateau_flatness, sweep, oracle })
}

/// Serialize the fully resolved configuration. Floats use the shortest
/// representation that parses back to the same bits, so re-running the
/// written file reproduces the run exactly.
pub fn write_effective_config(cfg: &RunConfig) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "model = {}", cfg.model.name());
    let _ = writeln!(s, "omega2 = {}", cfg.params.omega2);
    let _ = writeln!(s, "omega3 = {}", cfg.params.omega3);
    let _ = writeln!(s, "gamma = {}", cfg.params.gamma);
    let _ = writeln!(s, "tau = {}", cfg.params.tau);
    let _ = writeln!(s, "rabi = {}", cfg.params.rabi);
    let _ = writeln!(s, "t_end = {}", cfg.t_end);
    let _ = writeln!(s, "steps_per_delay = {}", cfg.steps_per_delay);
    let _ = writeln!(s, "plateau_flatness = {}", cfg.plateau_flatness);
    if let Some(sweep) = &cfg.sweep {
        let _ = writeln!(s, "sweep_axis = {}", sweep.axis.name());
        let values: Vec<String> = sweep.values.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "sweep_values = {}", values.join(", "));
    }
    let _ = writeln!(s, "n_modes = {}", cfg.oracle.n_modes);
    if let Some(w) = cfg.oracle.half_width {
        let _ = writeln!(s, "half_width = {w}");
    }
    if let Some(dt) = cfg.oracle.dt {
        let _ = writeln!(s, "oracle_dt = {dt}");
    }
    s
}
