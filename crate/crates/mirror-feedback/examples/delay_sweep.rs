//! Sweep the mirror distance and tabulate which delays trap.
//!
//! Writes sweep.csv (axis_value,t,pop) and sweep_summary.csv next to it
//! so the curves can be plotted with any CSV tool.
//!
//! Run with: cargo run --example delay_sweep

use std::f64::consts::TAU;
use std::fs::File;
use std::io::{BufWriter, Write};

use mirror_feedback::{sweep, SweepAxis, SystemParams};

fn main() -> mirror_feedback::Result<()> {
    let base = SystemParams::new(TAU * 0.8, TAU * 239.3, 0.37037, 10.0, 0.0)?;
    let delays = [5.0, 10.0, 15.0, 20.0, 30.0];
    // Long horizon: larger gamma*tau rings longer before flattening;
    // the tau = 30 ps case only settles around t = 6000 ps.
    let result = sweep(&base, SweepAxis::Tau, &delays, 6000.0, 64, 0.02)?;

    let mut long = BufWriter::new(File::create("sweep.csv")?);
    writeln!(long, "axis_value,t,pop")?;
    let mut summary = BufWriter::new(File::create("sweep_summary.csv")?);
    writeln!(summary, "axis_value,plateau,transient_ps")?;

    println!("{:>8} {:>12} {:>14}", "tau/ps", "plateau", "transient/ps");
    for point in &result.points {
        if let Some(traj) = &point.trajectory {
            for i in 0..traj.len() {
                writeln!(long, "{},{},{}", point.value, traj.times[i], traj.populations[i])?;
            }
        }
        writeln!(
            summary,
            "{},{},{}",
            point.value,
            point.plateau.unwrap_or(f64::NAN),
            point.transient.unwrap_or(f64::NAN)
        )?;
        match point.plateau {
            Some(p) => println!(
                "{:>8} {:>12.5} {:>14.0}",
                point.value,
                p,
                point.transient.unwrap_or(f64::NAN)
            ),
            None => println!("{:>8} {:>12} {:>14}", point.value, "-", "-"),
        }
    }
    println!("\nwrote sweep.csv and sweep_summary.csv");
    Ok(())
}
