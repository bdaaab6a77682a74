//! Shared test support: reference solutions computed independently of
//! the integrator under test.
#![allow(dead_code)]

use mirror_feedback::{SystemParams, C64};
use std::f64::consts::TAU;

/// Method-of-steps closed form for ċ(t) = −2Γ c(t) + b·c(t−τ)Θ(t−τ),
/// c(0) = 1, with constant complex b:
///
///   c(t) = Σ_{k=0}^{⌊t/τ⌋} bᵏ (t−kτ)ᵏ e^{−2Γ(t−kτ)} / k!
///
/// evaluated in log space so late times cannot overflow. This is a
/// direct summation, sharing no code with the Runge-Kutta path.
pub fn delayed_series(b: C64, gamma: f64, tau: f64, t: f64) -> C64 {
    let radius = b.norm();
    let angle = b.arg();
    let mut total = C64::new(0.0, 0.0);
    let mut k = 0usize;
    loop {
        let u = t - k as f64 * tau;
        if u < 0.0 {
            break;
        }
        if k == 0 {
            total += C64::new((-2.0 * gamma * u).exp(), 0.0);
        } else if u > 0.0 && radius > 0.0 {
            let ln_mag =
                k as f64 * (radius.ln() + u.ln()) - 2.0 * gamma * u - ln_factorial(k);
            total += ln_mag.exp() * C64::cis(k as f64 * angle);
        }
        k += 1;
    }
    total
}

fn ln_factorial(k: usize) -> f64 {
    (1..=k).map(|i| (i as f64).ln()).sum()
}

/// Delayed-term coefficient of the unpumped model at these parameters.
pub fn unpumped_feedback_coefficient(p: &SystemParams) -> C64 {
    p.gamma * C64::cis(p.omega3 * p.tau) * (C64::new(1.0, 0.0) + C64::cis(-(p.omega2 * p.tau)))
}

/// Strong-decay configuration (Γτ ≫ 1 at τ = 10 ps).
pub fn strong_decay_params(tau: f64, rabi: f64) -> SystemParams {
    SystemParams::new(TAU * 0.8, TAU * 239.3, 0.37037, tau, rabi).unwrap()
}

/// Weak-decay configuration of the same emitter.
pub fn weak_decay_params(tau: f64, rabi: f64) -> SystemParams {
    SystemParams::new(TAU * 0.8, TAU * 239.3, 0.01935, tau, rabi).unwrap()
}
