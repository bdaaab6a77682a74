//! Verify the delay equation against brute force.
//!
//! The delay equation is a reduction of the full emitter-plus-reservoir
//! Schrödinger dynamics. Integrating the discretized reservoir directly
//! (one amplitude per photon mode and decay channel) knows nothing
//! about delays; the echo at t = τ has to come out of the mode sum.
//! Agreement of the two curves validates the reduction, including the
//! pumped, explicitly time-dependent case.
//!
//! Run with: cargo run --release --example oracle_comparison

use std::f64::consts::{PI, TAU};

use mirror_feedback::oracle::{build_mode_grid, default_mode_dt, oracle_integrate};
use mirror_feedback::{integrate_dde, models, SystemParams};

fn compare(label: &str, params: &SystemParams, half_width: f64, n_modes: usize) {
    let horizon = 3.0 * params.tau;
    let dde = integrate_dde(
        |t, c, cd| models::rhs_pumped(t, c, cd, params),
        params,
        horizon,
        128,
    )
    .unwrap();
    let grid = build_mode_grid(params, half_width, n_modes).unwrap();
    let dt = default_mode_dt(half_width);
    let run = oracle_integrate(params, &grid, horizon, dt).unwrap();

    let deviation = dde
        .times
        .iter()
        .enumerate()
        .map(|(i, &t)| (dde.populations[i] - run.trajectory.population_at(t)).abs())
        .fold(0.0, f64::max);
    println!("{label}");
    println!("  modes = {n_modes}, band half-width = {half_width:.2} rad/ps, dt = {dt:.2e} ps");
    println!("  max |pop_dde - pop_modes| on [0, {horizon} ps] = {deviation:.3e}");
    println!(
        "  norm drift per delay interval = {:.3e}",
        run.max_norm_drift_per_delay(params.tau)
    );
}

fn main() {
    let unpumped = SystemParams::new(TAU * 0.8, TAU * 239.3, 0.01935, 10.0, 0.0).unwrap();
    for (w_factor, n_modes) in [(60.0, 1001), (120.0, 2001)] {
        compare(
            "unpumped, trapping delay",
            &unpumped,
            w_factor * TAU / unpumped.tau,
            n_modes,
        );
    }

    // Pump at a quarter turn: the feedback coefficient oscillates in
    // time, the hardest case for the reduction.
    let pumped = SystemParams::new(TAU * 0.8, TAU * 239.3, 0.01935, 5.0, PI / 5.0).unwrap();
    compare(
        "pumped, rotating feedback coefficient",
        &pumped,
        60.0 * TAU / pumped.tau,
        1001,
    );
}
