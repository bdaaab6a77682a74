//! Command implementations behind the `mirror-feedback` binary.
//!
//! Exit-code contract: 0 when the command succeeded (and, for `check`
//! and `oracle-compare`, the condition holds), 1 when it ran but the
//! condition does not hold, 2 and above for errors.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::analysis::{
    check_stabilization, sweep, trapped_value, transient_time, DEFAULT_PHASE_TOL,
    DEFAULT_TRANSIENT_BAND,
};
use crate::config::{write_effective_config, RunConfig};
use crate::dde::{integrate_dde, Trajectory};
use crate::error::Result;
use crate::oracle::{build_mode_grid, default_half_width, default_mode_dt, oracle_integrate};
use crate::system::{classify_parity, ParityVerdict, DEFAULT_MAX_DENOMINATOR, DEFAULT_PARITY_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONDITION_NOT_MET: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

const ORACLE_DEVIATION_GATE: f64 = 1e-2;
const ORACLE_DRIFT_GATE: f64 = 1e-4;

/// 18 significant digits: parses back to the same f64, satisfies the
/// CSV schema's precision floor.
fn fmt(x: f64) -> String {
    format!("{x:.17e}")
}

fn write_config_sidecar(cfg: &RunConfig, out: &Path) -> Result<()> {
    let mut side = out.as_os_str().to_owned();
    side.push(".config");
    fs::write(PathBuf::from(side), write_effective_config(cfg))?;
    Ok(())
}

fn run_model(cfg: &RunConfig) -> Result<Trajectory> {
    let params = cfg.params;
    let model = cfg.model;
    integrate_dde(
        move |t, c, cd| model.rhs(t, c, cd, &params),
        &cfg.params,
        cfg.t_end,
        cfg.steps_per_delay,
    )
}

/// Integrate the configured model and write `t,re_c3,im_c3,pop`.
pub fn cmd_simulate(cfg: &RunConfig, out: &Path) -> Result<i32> {
    let traj = run_model(cfg)?;

    let mut w = BufWriter::new(fs::File::create(out)?);
    writeln!(w, "t,re_c3,im_c3,pop")?;
    for i in 0..traj.len() {
        writeln!(
            w,
            "{},{},{},{}",
            fmt(traj.times[i]),
            fmt(traj.amplitudes[i].re),
            fmt(traj.amplitudes[i].im),
            fmt(traj.populations[i])
        )?;
    }
    w.flush()?;
    write_config_sidecar(cfg, out)?;

    match trapped_value(&traj, cfg.params.tau, cfg.plateau_flatness) {
        Ok(Some(plateau)) => {
            let transient = transient_time(&traj, cfg.params.tau, DEFAULT_TRANSIENT_BAND)
                .map(|t| format!("{t:.3}"))
                .unwrap_or_else(|_| "n/a".into());
            println!("plateau = {plateau:.6e}  transient = {transient} ps");
        }
        Ok(None) => println!("not stabilized (final pop = {:.6e})", traj.final_population()),
        Err(e) => println!("plateau not evaluated: {e}"),
    }
    println!("wrote {}", out.display());
    Ok(EXIT_OK)
}

/// Print the phase-condition report and the frequency-parity verdict.
pub fn cmd_check(cfg: &RunConfig) -> Result<i32> {
    let report = check_stabilization(&cfg.params, DEFAULT_PHASE_TOL);
    println!("phi2 = {:.12} rad", report.phases.phi2);
    println!("phi3 = {:.12} rad", report.phases.phi3);
    println!("phi_pump = {:.12} rad", report.phases.phi_pump);
    println!(
        "unpumped residuals: ground = {:.3e}, excited = {:.3e}, pump = {:.3e}",
        report.unpumped.ground_phase, report.unpumped.excited_phase, report.unpumped.pump_phase
    );
    println!(
        "pumped residuals:   ground = {:.3e}, excited = {:.3e}, pump = {:.3e}",
        report.pumped.ground_phase, report.pumped.excited_phase, report.pumped.pump_phase
    );
    match report.mechanism {
        Some(m) => println!("mechanism: {}", m.name()),
        None => println!("mechanism: none"),
    }
    match classify_parity(
        cfg.params.omega2,
        cfg.params.omega3,
        DEFAULT_PARITY_TOL,
        DEFAULT_MAX_DENOMINATOR,
    ) {
        ParityVerdict::PumpAssistedFirst { n, n_prime } => {
            println!("parity: n = {n}, n' = {n_prime} -> pump-assisted trapping at the shortest delay");
        }
        ParityVerdict::UnpumpedFirst { n, n_prime } => {
            println!("parity: n = {n}, n' = {n_prime} -> unpumped trapping at the shortest delay");
        }
        ParityVerdict::NotCommensurate => println!("parity: frequencies not commensurate"),
    }
    Ok(if report.stabilized { EXIT_OK } else { EXIT_CONDITION_NOT_MET })
}

fn summary_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("sweep");
    let name = match out.extension().and_then(|s| s.to_str()) {
        Some(ext) => format!("{stem}_summary.{ext}"),
        None => format!("{stem}_summary"),
    };
    out.with_file_name(name)
}

/// Run the configured sweep; write the long table and a plateau summary.
pub fn cmd_sweep(cfg: &RunConfig, out: &Path) -> Result<i32> {
    let spec = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| crate::error::Error::config("config has no sweep_axis/sweep_values"))?;
    let result = sweep(
        &cfg.params,
        spec.axis,
        &spec.values,
        cfg.t_end,
        cfg.steps_per_delay,
        cfg.plateau_flatness,
    )?;

    let mut w = BufWriter::new(fs::File::create(out)?);
    writeln!(w, "axis_value,t,pop")?;
    for point in &result.points {
        if let Some(traj) = &point.trajectory {
            for i in 0..traj.len() {
                writeln!(w, "{},{},{}", fmt(point.value), fmt(traj.times[i]), fmt(traj.populations[i]))?;
            }
        }
    }
    w.flush()?;

    let sum_path = summary_path(out);
    let mut w = BufWriter::new(fs::File::create(&sum_path)?);
    writeln!(w, "axis_value,plateau,transient_ps")?;
    let mut succeeded = 0usize;
    for point in &result.points {
        let plateau = point.plateau.unwrap_or(f64::NAN);
        let transient = point.transient.unwrap_or(f64::NAN);
        writeln!(w, "{},{},{}", fmt(point.value), fmt(plateau), fmt(transient))?;
        match &point.error {
            Some(msg) => eprintln!("{} = {}: {msg}", result.axis.name(), point.value),
            None => succeeded += 1,
        }
    }
    w.flush()?;
    write_config_sidecar(cfg, out)?;

    for point in &result.points {
        match point.plateau {
            Some(p) => println!("{} = {}: plateau {:.6e}", result.axis.name(), point.value, p),
            None => println!("{} = {}: not stabilized", result.axis.name(), point.value),
        }
    }
    println!("wrote {} and {}", out.display(), sum_path.display());
    Ok(if succeeded > 0 { EXIT_OK } else { EXIT_ERROR })
}

/// Integrate both the delay equation and the discretized-reservoir
/// model to min(t_end, 3τ) and compare the populations.
pub fn cmd_oracle_compare(cfg: &RunConfig, out: Option<&Path>) -> Result<i32> {
    let horizon = cfg.t_end.min(3.0 * cfg.params.tau);
    let dde = {
        let params = cfg.params;
        let model = cfg.model;
        integrate_dde(
            move |t, c, cd| model.rhs(t, c, cd, &params),
            &cfg.params,
            horizon,
            cfg.steps_per_delay,
        )?
    };
    let half_width = cfg.oracle.half_width.unwrap_or_else(|| default_half_width(&cfg.params));
    let dt = cfg.oracle.dt.unwrap_or_else(|| default_mode_dt(half_width));
    let grid = build_mode_grid(&cfg.params, half_width, cfg.oracle.n_modes)?;
    let run = oracle_integrate(&cfg.params, &grid, horizon, dt)?;

    let mut deviation: f64 = 0.0;
    for (i, &t) in dde.times.iter().enumerate() {
        if t > horizon + 1e-9 {
            break;
        }
        deviation = deviation.max((dde.populations[i] - run.trajectory.population_at(t)).abs());
    }
    let drift = run
        .norms
        .iter()
        .map(|n| (n - 1.0).abs())
        .fold(0.0, f64::max);

    if let Some(path) = out {
        let mut w = BufWriter::new(fs::File::create(path)?);
        writeln!(w, "t,pop_dde,pop_oracle")?;
        for (i, &t) in dde.times.iter().enumerate() {
            writeln!(
                w,
                "{},{},{}",
                fmt(t),
                fmt(dde.populations[i]),
                fmt(run.trajectory.population_at(t))
            )?;
        }
        w.flush()?;
    }

    println!("modes = {}, half_width = {:.6} rad/ps, dt = {:.3e} ps", grid.k_values.len(), half_width, dt);
    println!("max |pop_dde - pop_oracle| = {deviation:.6e}");
    println!("max |norm - 1| = {drift:.6e}");
    println!(
        "max norm change per delay interval = {:.6e}",
        run.max_norm_drift_per_delay(cfg.params.tau)
    );
    Ok(if deviation < ORACLE_DEVIATION_GATE && drift < ORACLE_DRIFT_GATE {
        EXIT_OK
    } else {
        EXIT_CONDITION_NOT_MET
    })
}
