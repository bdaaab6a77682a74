//! Step-size study of the integrator.
//!
//! Against the free-decay closed form the classic 4th order shows
//! directly; against a delayed reference solution the grid-aligned
//! history handling has to hold that order through the derivative
//! breaks at multiples of τ.
//!
//! Run with: cargo run --example convergence_order

use mirror_feedback::{integrate_dde, models, refine_until_converged, SystemParams};

fn main() {
    // Free decay: t_end < tau keeps the mirror out of the picture.
    let p = SystemParams::new(0.0, 5.0, 0.3, 5.0, 0.0).unwrap();
    println!("free decay vs e^(-4*gamma*t):");
    println!("{:>6} {:>12} {:>8}", "spd", "max err", "order");
    let mut prev: Option<f64> = None;
    for spd in [16usize, 32, 64, 128, 256] {
        let traj = integrate_dde(
            |t, c, cd| models::rhs_two_level(t, c, cd, &p),
            &p,
            4.5,
            spd,
        )
        .unwrap();
        let err = traj
            .times
            .iter()
            .enumerate()
            .map(|(i, &t)| (traj.populations[i] - (-4.0 * p.gamma * t).exp()).abs())
            .fold(0.0, f64::max);
        match prev {
            Some(e) => println!("{spd:>6} {err:>12.3e} {:>8.2}", (e / err).log2()),
            None => println!("{spd:>6} {err:>12.3e} {:>8}", "-"),
        }
        prev = Some(err);
    }

    // With feedback active: successive refinements stand in for the
    // exact solution.
    let p = SystemParams::new(1.3, 7.9, 0.31, 3.7, 0.0).unwrap();
    let t_end = 8.0 * p.tau;
    let reference = integrate_dde(
        |t, c, cd| models::rhs_unpumped(t, c, cd, &p),
        &p,
        t_end,
        2048,
    )
    .unwrap();
    println!("\ndelayed feedback vs spd = 2048 reference:");
    println!("{:>6} {:>12} {:>8}", "spd", "end err", "order");
    let mut prev: Option<f64> = None;
    for spd in [16usize, 32, 64, 128] {
        let traj = integrate_dde(
            |t, c, cd| models::rhs_unpumped(t, c, cd, &p),
            &p,
            t_end,
            spd,
        )
        .unwrap();
        let err = (traj.amplitudes.last().unwrap() - reference.amplitudes.last().unwrap()).norm();
        match prev {
            Some(e) => println!("{spd:>6} {err:>12.3e} {:>8.2}", (e / err).log2()),
            None => println!("{spd:>6} {err:>12.3e} {:>8}", "-"),
        }
        prev = Some(err);
    }

    let traj = refine_until_converged(
        |t, c, cd| models::rhs_unpumped(t, c, cd, &p),
        &p,
        t_end,
        1e-9,
    )
    .unwrap();
    println!(
        "\nrefine_until_converged(1e-9): {} samples, final |c3|^2 = {:.9}",
        traj.len(),
        traj.final_population()
    );
}
