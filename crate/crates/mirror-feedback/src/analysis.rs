//! Stabilization conditions, plateau extraction, transient timing, and
//! parameter sweeps.

use rayon::prelude::*;
use std::f64::consts::PI;

use crate::dde::{integrate_dde, Trajectory};
use crate::error::{Error, Result};
use crate::models::rhs_pumped;
use crate::system::{circle_distance, compute_phases, PhaseSet, SystemParams};

pub const DEFAULT_PHASE_TOL: f64 = 1e-6;
pub const DEFAULT_REL_FLATNESS: f64 = 1e-3;
pub const DEFAULT_TRANSIENT_BAND: f64 = 0.01;
/// Plateaus below this are treated as full decay, not trapping.
pub const PLATEAU_FLOOR: f64 = 1e-9;

/// Which closed-form condition predicts excitation trapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mechanism {
    /// ω₂τ ≡ 0, ω₃τ ≡ 0 (mod 2π) with the pump term inactive.
    UnpumpedTrapping,
    /// ω₂τ ≡ 0, ω₃τ ≡ π (mod 2π), Ωτ/2 ≡ π (mod 2π).
    PumpedTrapping,
}

impl Mechanism {
    pub fn name(&self) -> &'static str {
        match self {
            Mechanism::UnpumpedTrapping => "unpumped-trapping",
            Mechanism::PumpedTrapping => "pumped-trapping",
        }
    }
}

/// Distances of the three round-trip phases from one condition's
/// required values, in rad.
#[derive(Debug, Clone, Copy)]
pub struct ConditionResiduals {
    pub ground_phase: f64,
    pub excited_phase: f64,
    pub pump_phase: f64,
}

impl ConditionResiduals {
    pub fn max(&self) -> f64 {
        self.ground_phase.max(self.excited_phase).max(self.pump_phase)
    }
}

/// Verdict of the phase-condition check with full diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct StabilizationReport {
    pub stabilized: bool,
    pub mechanism: Option<Mechanism>,
    pub phases: PhaseSet,
    /// Residuals against the unpumped condition (0, 0, 0).
    pub unpumped: ConditionResiduals,
    /// Residuals against the pumped condition (0, π, π).
    pub pumped: ConditionResiduals,
}

/// Check the two trapping conditions at tolerance `phase_tol` (rad).
pub fn check_stabilization(params: &SystemParams, phase_tol: f64) -> StabilizationReport {
    let phases = compute_phases(params);
    let unpumped = ConditionResiduals {
        ground_phase: circle_distance(phases.phi2, 0.0),
        excited_phase: circle_distance(phases.phi3, 0.0),
        pump_phase: circle_distance(phases.phi_pump, 0.0),
    };
    let pumped = ConditionResiduals {
        ground_phase: circle_distance(phases.phi2, 0.0),
        excited_phase: circle_distance(phases.phi3, PI),
        pump_phase: circle_distance(phases.phi_pump, PI),
    };
    let mechanism = if unpumped.max() < phase_tol {
        Some(Mechanism::UnpumpedTrapping)
    } else if pumped.max() < phase_tol {
        Some(Mechanism::PumpedTrapping)
    } else {
        None
    };
    StabilizationReport { stabilized: mechanism.is_some(), mechanism, phases, unpumped, pumped }
}

fn final_window(traj: &Trajectory, tau: f64) -> Result<&[f64]> {
    let span = traj.final_time();
    if span < 5.0 * tau * (1.0 - 1e-9) {
        return Err(Error::TooShort { span, required: 5.0 * tau });
    }
    let start = traj.index_at(span - tau);
    Ok(&traj.populations[start..])
}

/// Mean of |c₃|² over the final delay interval, if that interval is
/// flat: (max − min)/mean < `rel_flatness`. Returns `None` when the
/// trajectory has not settled (or has fully decayed).
///
/// A decay slower than `rel_flatness`/τ per ps is indistinguishable
/// from a plateau by this detector; tighten `rel_flatness` or extend
/// the horizon when that matters.
pub fn trapped_value(traj: &Trajectory, tau: f64, rel_flatness: f64) -> Result<Option<f64>> {
    let window = final_window(traj, tau)?;
    let mean = window.iter().sum::<f64>() / window.len() as f64;
    if !(mean > PLATEAU_FLOOR) {
        return Ok(None);
    }
    let max = window.iter().cloned().fold(f64::MIN, f64::max);
    let min = window.iter().cloned().fold(f64::MAX, f64::min);
    if (max - min) / mean < rel_flatness {
        Ok(Some(mean))
    } else {
        Ok(None)
    }
}

/// Earliest time after which |c₃|² stays within ±`band`·plateau of the
/// plateau for the rest of the trajectory. The plateau is the mean over
/// the final delay interval; if even that interval strays outside the
/// band the trajectory has not settled and `NotStabilized` is returned.
pub fn transient_time(traj: &Trajectory, tau: f64, band: f64) -> Result<f64> {
    let window = final_window(traj, tau)?;
    let plateau = window.iter().sum::<f64>() / window.len() as f64;
    if !(plateau > PLATEAU_FLOOR) {
        return Err(Error::NotStabilized);
    }
    let tol = band * plateau;
    if window.iter().any(|&p| (p - plateau).abs() > tol) {
        return Err(Error::NotStabilized);
    }
    let mut last_violation: Option<usize> = None;
    for (i, &p) in traj.populations.iter().enumerate() {
        if (p - plateau).abs() > tol {
            last_violation = Some(i);
        }
    }
    Ok(match last_violation {
        None => 0.0,
        Some(i) => traj.times[i + 1],
    })
}

/// Parameter axis of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Tau,
    Rabi,
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::Tau => "tau",
            SweepAxis::Rabi => "rabi",
        }
    }
}

impl std::str::FromStr for SweepAxis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "tau" => Ok(SweepAxis::Tau),
            "rabi" => Ok(SweepAxis::Rabi),
            other => Err(format!("unknown sweep axis '{other}' (expected tau or rabi)")),
        }
    }
}

/// One sweep point: the run, its plateau (None = not stabilized), the
/// transient time where defined, or the error that stopped it.
#[derive(Debug)]
pub struct SweepPoint {
    pub value: f64,
    pub trajectory: Option<Trajectory>,
    pub plateau: Option<f64>,
    pub transient: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug)]
pub struct SweepResult {
    pub axis: SweepAxis,
    pub points: Vec<SweepPoint>,
}

/// Integrate the pumped model once per axis value (the pumped equation
/// subsumes the other two) and extract plateaus. Per-point failures are
/// recorded without aborting the sweep; points run in parallel but the
/// result keeps the axis order.
pub fn sweep(
    params: &SystemParams,
    axis: SweepAxis,
    values: &[f64],
    t_end: f64,
    steps_per_delay: usize,
    rel_flatness: f64,
) -> Result<SweepResult> {
    if values.is_empty() {
        return Err(Error::config("sweep values must not be empty"));
    }
    let points: Vec<SweepPoint> = values
        .par_iter()
        .map(|&value| run_sweep_point(params, axis, value, t_end, steps_per_delay, rel_flatness))
        .collect();
    Ok(SweepResult { axis, points })
}

fn run_sweep_point(
    base: &SystemParams,
    axis: SweepAxis,
    value: f64,
    t_end: f64,
    steps_per_delay: usize,
    rel_flatness: f64,
) -> SweepPoint {
    let built = match axis {
        SweepAxis::Tau => base.with_tau(value),
        SweepAxis::Rabi => base.with_rabi(value),
    };
    let params = match built {
        Ok(p) => p,
        Err(e) => {
            return SweepPoint {
                value,
                trajectory: None,
                plateau: None,
                transient: None,
                error: Some(e.to_string()),
            }
        }
    };
    let traj = match integrate_dde(
        |t, c, cd| rhs_pumped(t, c, cd, &params),
        &params,
        t_end,
        steps_per_delay,
    ) {
        Ok(t) => t,
        Err(e) => {
            return SweepPoint {
                value,
                trajectory: None,
                plateau: None,
                transient: None,
                error: Some(e.to_string()),
            }
        }
    };
    let plateau = trapped_value(&traj, params.tau, rel_flatness).unwrap_or(None);
    let transient = plateau
        .and_then(|_| transient_time(&traj, params.tau, DEFAULT_TRANSIENT_BAND).ok());
    SweepPoint { value, trajectory: Some(traj), plateau, transient, error: None }
}
