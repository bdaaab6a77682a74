//! Physical parameters, feedback phases, and commensurability analysis.
//!
//! Units follow ħ = c = 1 with times in picoseconds; every angular
//! frequency (`omega2`, `omega3`, `rabi`) is in rad/ps and the decay
//! rate `gamma` in 1/ps.

use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Full physical configuration of the emitter-mirror system.
///
/// `omega2`/`omega3` are the transition frequencies of the two upper
/// levels relative to the lowest ground state, `gamma` the radiative
/// decay rate into the waveguide, `tau` the mirror round-trip delay and
/// `rabi` the strength of the continuous-wave ground-state pump
/// (0 means unpumped).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub omega2: f64,
    pub omega3: f64,
    pub gamma: f64,
    pub tau: f64,
    pub rabi: f64,
}

impl SystemParams {
    pub fn new(omega2: f64, omega3: f64, gamma: f64, tau: f64, rabi: f64) -> Result<Self> {
        let p = SystemParams { omega2, omega3, gamma, tau, rabi };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let fields = [
            ("omega2", self.omega2),
            ("omega3", self.omega3),
            ("gamma", self.gamma),
            ("tau", self.tau),
            ("rabi", self.rabi),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::config(format!("{name} must be finite, got {v}")));
            }
        }
        if self.omega2 < 0.0 {
            return Err(Error::config("omega2 must be >= 0"));
        }
        if self.omega3 <= self.omega2 {
            return Err(Error::config(format!(
                "omega3 ({}) must exceed omega2 ({})",
                self.omega3, self.omega2
            )));
        }
        if self.gamma < 0.0 {
            return Err(Error::config("gamma must be >= 0"));
        }
        if self.tau <= 0.0 {
            return Err(Error::config("tau must be > 0"));
        }
        if self.rabi < 0.0 {
            return Err(Error::config("rabi must be >= 0"));
        }
        Ok(())
    }

    /// Same system at a different delay.
    pub fn with_tau(&self, tau: f64) -> Result<Self> {
        Self::new(self.omega2, self.omega3, self.gamma, tau, self.rabi)
    }

    /// Same system at a different pump strength.
    pub fn with_rabi(&self, rabi: f64) -> Result<Self> {
        Self::new(self.omega2, self.omega3, self.gamma, self.tau, rabi)
    }
}

/// Round-trip phases reduced into [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSet {
    /// ω₂τ mod 2π.
    pub phi2: f64,
    /// ω₃τ mod 2π.
    pub phi3: f64,
    /// Ωτ/2 mod 2π.
    pub phi_pump: f64,
}

/// Reduce an accumulated phase into [0, 2π), snapping values within
/// 1e-12 of either boundary to exactly 0 so that condition checks and
/// printed reports are stable against last-ulp noise.
pub fn reduce_phase(phase: f64) -> f64 {
    let r = phase.rem_euclid(TAU);
    if r < 1e-12 || TAU - r < 1e-12 {
        0.0
    } else {
        r
    }
}

/// Distance between two phases on the circle, in [0, π].
pub fn circle_distance(phase: f64, target: f64) -> f64 {
    let d = (phase - target).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Round-trip phases of the configuration: (ω₂τ, ω₃τ, Ωτ/2), each mod 2π.
pub fn compute_phases(params: &SystemParams) -> PhaseSet {
    PhaseSet {
        phi2: reduce_phase(params.omega2 * params.tau),
        phi3: reduce_phase(params.omega3 * params.tau),
        phi_pump: reduce_phase(0.5 * params.rabi * params.tau),
    }
}

pub const DEFAULT_PARITY_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_DENOMINATOR: u64 = 100_000;

/// Outcome of the frequency-ratio parity classification.
///
/// When ω₂/ω₃ is (approximately) a reduced fraction n/n′, the parity of
/// n decides which trapping route reaches the shortest usable delay: an
/// even n needs the pump-assisted route, an odd n traps without a pump.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityVerdict {
    PumpAssistedFirst { n: u64, n_prime: u64 },
    UnpumpedFirst { n: u64, n_prime: u64 },
    NotCommensurate,
}

impl ParityVerdict {
    pub fn fraction(&self) -> Option<(u64, u64)> {
        match *self {
            ParityVerdict::PumpAssistedFirst { n, n_prime }
            | ParityVerdict::UnpumpedFirst { n, n_prime } => Some((n, n_prime)),
            ParityVerdict::NotCommensurate => None,
        }
    }
}

/// Classify ω₂/ω₃ by the best rational approximation n/n′ with
/// n′ ≤ `max_denominator` and relative error ≤ `tol`, found by
/// continued-fraction expansion. Convergents are already irreducible.
pub fn classify_parity(omega2: f64, omega3: f64, tol: f64, max_denominator: u64) -> ParityVerdict {
    if !(omega2 > 0.0) || !(omega3 > 0.0) || !omega2.is_finite() || !omega3.is_finite() {
        return ParityVerdict::NotCommensurate;
    }
    let x = omega2 / omega3;

    // Convergent recurrence h_k = a_k h_{k-1} + h_{k-2} on (num, den),
    // seeded with h_{-2} = 0/1 and h_{-1} = 1/0.
    let (mut h_prev, mut h) = ((0u64, 1u64), (1u64, 0u64));
    let mut rest = x;
    for _ in 0..64 {
        let a_f = rest.floor();
        if a_f > u64::MAX as f64 {
            break;
        }
        let a = a_f as u64;
        let num = match a.checked_mul(h.0).and_then(|v| v.checked_add(h_prev.0)) {
            Some(v) => v,
            None => break,
        };
        let den = match a.checked_mul(h.1).and_then(|v| v.checked_add(h_prev.1)) {
            Some(v) => v,
            None => break,
        };
        if den > max_denominator {
            break;
        }
        h_prev = h;
        h = (num, den);
        if num > 0 {
            let approx = num as f64 / den as f64;
            if (x - approx).abs() <= tol * x {
                return if num % 2 == 0 {
                    ParityVerdict::PumpAssistedFirst { n: num, n_prime: den }
                } else {
                    ParityVerdict::UnpumpedFirst { n: num, n_prime: den }
                };
            }
        }
        let frac = rest - a_f;
        if frac.abs() < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    ParityVerdict::NotCommensurate
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params_fig_large_gamma(tau: f64) -> SystemParams {
        SystemParams::new(TAU * 0.8, TAU * 239.3, 0.37037, tau, 0.0).unwrap()
    }

    #[test]
    fn phases_commensurate_delay_gives_zero_ground_phase() {
        // omega2/(2pi) = 0.8 1/ps at tau = 10 ps: 8 full turns.
        let phases = compute_phases(&params_fig_large_gamma(10.0));
        assert_eq!(phases.phi2, 0.0);
        assert_eq!(phases.phi3, 0.0); // 2393 full turns
    }

    #[test]
    fn phases_half_turn_excited_phase() {
        // omega3/(2pi) = 239.3 1/ps at tau = 5 ps: 2393 half turns.
        let phases = compute_phases(&params_fig_large_gamma(5.0));
        assert!(circle_distance(phases.phi3, std::f64::consts::PI) < 1e-9);
        assert_eq!(phases.phi2, 0.0); // 4 full turns
    }

    #[test]
    fn phases_zero_pump() {
        let phases = compute_phases(&params_fig_large_gamma(7.3));
        assert_eq!(phases.phi_pump, 0.0);
    }

    #[test]
    fn phase_reduction_snaps_near_boundary() {
        assert_eq!(reduce_phase(TAU - 1e-13), 0.0);
        assert_eq!(reduce_phase(5e-13), 0.0);
        assert!(reduce_phase(3.0) == 3.0);
        assert!((0.0..TAU).contains(&reduce_phase(1234.5678)));
    }

    #[test]
    fn params_validation() {
        assert!(SystemParams::new(1.0, 2.0, 0.1, 1.0, 0.0).is_ok());
        // gamma = 0 is a valid limit (no coupling to the waveguide).
        assert!(SystemParams::new(1.0, 2.0, 0.0, 1.0, 0.0).is_ok());
        assert!(SystemParams::new(-1.0, 2.0, 0.1, 1.0, 0.0).is_err());
        assert!(SystemParams::new(2.0, 1.0, 0.1, 1.0, 0.0).is_err());
        assert!(SystemParams::new(1.0, 2.0, -0.1, 1.0, 0.0).is_err());
        assert!(SystemParams::new(1.0, 2.0, 0.1, 0.0, 0.0).is_err());
        assert!(SystemParams::new(1.0, 2.0, 0.1, 1.0, -1.0).is_err());
        assert!(SystemParams::new(1.0, f64::NAN, 0.1, 1.0, 0.0).is_err());
    }

    #[test]
    fn parity_paper_ratio() {
        let v = classify_parity(TAU * 0.8, TAU * 239.3, DEFAULT_PARITY_TOL, DEFAULT_MAX_DENOMINATOR);
        assert_eq!(v, ParityVerdict::PumpAssistedFirst { n: 8, n_prime: 2393 });
    }

    #[test]
    fn parity_odd_numerator() {
        let v = classify_parity(TAU, TAU * 3.0, DEFAULT_PARITY_TOL, DEFAULT_MAX_DENOMINATOR);
        assert_eq!(v, ParityVerdict::UnpumpedFirst { n: 1, n_prime: 3 });
    }

    #[test]
    fn parity_irrational_ratio() {
        let v = classify_parity(TAU, TAU * std::f64::consts::SQRT_2, 1e-12, 1_000_000);
        assert_eq!(v, ParityVerdict::NotCommensurate);
    }

    #[test]
    fn parity_rejects_bad_input() {
        assert_eq!(classify_parity(0.0, 1.0, 1e-9, 100), ParityVerdict::NotCommensurate);
        assert_eq!(classify_parity(1.0, f64::NAN, 1e-9, 100), ParityVerdict::NotCommensurate);
    }

    proptest! {
        #[test]
        fn phi3_invariant_under_full_turns(omega3_over_2pi in 0.1f64..50.0, tau in 0.5f64..20.0, k in 1u32..20) {
            let base = SystemParams::new(0.0, TAU * omega3_over_2pi, 0.1, tau, 0.0).unwrap();
            let shifted = SystemParams::new(
                0.0,
                TAU * omega3_over_2pi + TAU * f64::from(k) / tau,
                0.1,
                tau,
                0.0,
            ).unwrap();
            let a = compute_phases(&base).phi3;
            let b = compute_phases(&shifted).phi3;
            prop_assert!(circle_distance(a, b) < 1e-8, "phi3 {} vs {}", a, b);
        }

        #[test]
        fn parity_scale_invariant(n in 1u64..40, np in 1u64..40, scale in 0.01f64..100.0) {
            prop_assume!(n < np);
            let base = classify_parity(n as f64, np as f64, DEFAULT_PARITY_TOL, DEFAULT_MAX_DENOMINATOR);
            let scaled = classify_parity(scale * n as f64, scale * np as f64, DEFAULT_PARITY_TOL, DEFAULT_MAX_DENOMINATOR);
            prop_assert_eq!(base, scaled);
        }

        #[test]
        fn parity_recovers_exact_small_ratios(n in 1u64..50, np in 1u64..50) {
            prop_assume!(n < np);
            let g = gcd(n, np);
            let (rn, rnp) = (n / g, np / g);
            let v = classify_parity(n as f64, np as f64, DEFAULT_PARITY_TOL, DEFAULT_MAX_DENOMINATOR);
            prop_assert_eq!(v.fraction(), Some((rn, rnp)));
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
}
