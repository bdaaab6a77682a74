//! Right-hand sides of the delay equations for the excited-state amplitude.
//!
//! All three models share the structure
//! ċ₃(t) = −2Γ c₃(t) + Γ (feedback coefficient) · c₃(t−τ),
//! where the engine supplies c₃(t−τ) = 0 while the mirror signal is
//! still in flight. The pumped coefficient is time dependent, so the
//! engine evaluates it at the exact Runge-Kutta stage times.

use num_complex::Complex64 as C64;

use crate::system::SystemParams;

/// Which delay equation drives the amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// Effective two-level emitter; ignores `omega2` and `rabi`.
    TwoLevel,
    /// Three-level emitter without pump; ignores `rabi`.
    UnpumpedLambda,
    /// Three-level emitter with a continuous-wave pump.
    PumpedLambda,
}

impl ModelKind {
    pub fn rhs(&self, t: f64, c: C64, c_delayed: C64, params: &SystemParams) -> C64 {
        match self {
            ModelKind::TwoLevel => rhs_two_level(t, c, c_delayed, params),
            ModelKind::UnpumpedLambda => rhs_unpumped(t, c, c_delayed, params),
            ModelKind::PumpedLambda => rhs_pumped(t, c, c_delayed, params),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::TwoLevel => "two-level",
            ModelKind::UnpumpedLambda => "unpumped",
            ModelKind::PumpedLambda => "pumped",
        }
    }
}

impl std::str::FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "two-level" | "two_level" | "2ls" => Ok(ModelKind::TwoLevel),
            "unpumped" => Ok(ModelKind::UnpumpedLambda),
            "pumped" => Ok(ModelKind::PumpedLambda),
            other => Err(format!(
                "unknown model '{other}' (expected two-level, unpumped, or pumped)"
            )),
        }
    }
}

/// Two-level feedback: ċ₃ = −2Γ[c₃ − e^{iω₃τ} c₃(t−τ)].
///
/// e^{iω₃τ} = 1 freezes the decay once c₃(t) = c₃(t−τ);
/// e^{iω₃τ} = −1 doubles it.
pub fn rhs_two_level(_t: f64, c: C64, c_delayed: C64, p: &SystemParams) -> C64 {
    let phase3 = C64::cis(p.omega3 * p.tau);
    (-2.0 * p.gamma) * c + ((2.0 * p.gamma) * phase3) * c_delayed
}

/// Unpumped three-level feedback:
/// ċ₃ = −2Γ c₃ + Γ e^{iω₃τ}(1 + e^{−iω₂τ}) c₃(t−τ).
///
/// The ground-state splitting enters only through ω₂τ: at ω₂τ = 2πn the
/// two return paths interfere constructively and the two-level equation
/// is recovered; at ω₂τ = (2n+1)π the feedback cancels entirely.
pub fn rhs_unpumped(_t: f64, c: C64, c_delayed: C64, p: &SystemParams) -> C64 {
    let phase3 = C64::cis(p.omega3 * p.tau);
    let bracket = C64::new(1.0, 0.0) + C64::cis(-(p.omega2 * p.tau));
    (-2.0 * p.gamma) * c + (p.gamma * (phase3 * bracket)) * c_delayed
}

/// Pumped three-level feedback:
/// ċ₃ = −2Γ c₃ + Γ e^{iω₃τ}[cos(Ωτ/2)(1 + e^{−iω₂τ})
///      − i sin(Ωτ/2)(e^{−iω₂t} + e^{iω₂(t−τ)})] c₃(t−τ).
///
/// Non-autonomous: the sine branch rotates at ω₂, so `t` must be the
/// exact stage time, not a per-step constant.
pub fn rhs_pumped(t: f64, c: C64, c_delayed: C64, p: &SystemParams) -> C64 {
    let phase3 = C64::cis(p.omega3 * p.tau);
    let half_pulse = 0.5 * p.rabi * p.tau;
    let (sin_half, cos_half) = half_pulse.sin_cos();
    let drive = C64::cis(-(p.omega2 * t)) + C64::cis(p.omega2 * (t - p.tau));
    let bracket = (C64::new(1.0, 0.0) + C64::cis(-(p.omega2 * p.tau))) * cos_half
        - C64::new(0.0, sin_half) * drive;
    (-2.0 * p.gamma) * c + (p.gamma * (phase3 * bracket)) * c_delayed
}

/// Magnitude of the bracket multiplying Γ c₃(t−τ), divided out of the
/// e^{iω₃τ} prefactor. Bounded by 2 for every parameter set.
pub fn feedback_bracket_magnitude(t: f64, p: &SystemParams) -> f64 {
    let half_pulse = 0.5 * p.rabi * p.tau;
    let (sin_half, cos_half) = half_pulse.sin_cos();
    let drive = C64::cis(-(p.omega2 * t)) + C64::cis(p.omega2 * (t - p.tau));
    let bracket = (C64::new(1.0, 0.0) + C64::cis(-(p.omega2 * p.tau))) * cos_half
        - C64::new(0.0, sin_half) * drive;
    bracket.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{PI, TAU};

    fn random_inputs(rng: &mut ChaCha8Rng) -> (f64, C64, C64) {
        let t = rng.gen_range(0.0..50.0);
        let c = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let cd = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        (t, c, cd)
    }

    fn random_params(rng: &mut ChaCha8Rng, rabi: f64, omega2: Option<f64>) -> SystemParams {
        let omega2 = omega2.unwrap_or_else(|| rng.gen_range(0.0..20.0));
        SystemParams::new(
            omega2,
            omega2 + rng.gen_range(0.1..2000.0),
            rng.gen_range(0.0..2.0),
            rng.gen_range(0.1..20.0),
            rabi,
        )
        .unwrap()
    }

    #[test]
    fn two_level_trivial_values() {
        // Constructive phase, c = c_delayed: stabilized fixed point.
        let p = SystemParams::new(0.0, TAU * 3.0, 0.25, 1.0, 0.0).unwrap();
        let c = C64::new(0.3, -0.4);
        assert!(rhs_two_level(0.0, c, c, &p).norm() < 1e-12);

        // Destructive phase, c = c_delayed = 1: fastest decay -4 gamma.
        let p = SystemParams::new(0.0, 3.0 * PI, 0.25, 1.0, 0.0).unwrap();
        let one = C64::new(1.0, 0.0);
        let v = rhs_two_level(0.0, one, one, &p);
        assert!((v - C64::new(-4.0 * p.gamma, 0.0)).norm() < 1e-12);

        // Before the mirror signal returns: free decay term only.
        let v = rhs_two_level(0.0, one, C64::new(0.0, 0.0), &p);
        assert!((v - C64::new(-2.0 * p.gamma, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn unpumped_trivial_values() {
        // omega2*tau = (2n+1)pi kills the delayed term.
        let p = SystemParams::new(PI, PI + 123.0, 0.4, 1.0, 0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let (t, c, cd) = random_inputs(&mut rng);
            let v = rhs_unpumped(t, c, cd, &p);
            assert!((v - (-2.0 * p.gamma) * c).norm() < 1e-12 * (1.0 + c.norm() + cd.norm()));
        }

        // Both phases full turns and c = c_delayed: trapping fixed point.
        let p = SystemParams::new(TAU, TAU * 5.0, 0.4, 1.0, 0.0).unwrap();
        let c = C64::new(0.11, 0.37);
        assert!(rhs_unpumped(0.0, c, c, &p).norm() < 1e-11);
    }

    #[test]
    fn pumped_trivial_values() {
        // Half-turn pump at omega2*tau = 2pi n, omega3*tau odd multiple of
        // pi: delayed coefficient becomes +2 gamma, so c = c_delayed is a
        // fixed point.
        let tau = 1.0;
        let p = SystemParams::new(TAU, 5.0 * PI, 0.4, tau, TAU / tau).unwrap();
        let c = C64::new(-0.2, 0.6);
        for t in [0.0, 0.3, 1.7, 12.9] {
            assert!(rhs_pumped(t, c, c, &p).norm() < 1e-10);
        }

        // Theta-gated region: engine passes c_delayed = 0.
        let one = C64::new(1.0, 0.0);
        let v = rhs_pumped(0.5, one, C64::new(0.0, 0.0), &p);
        assert!((v - C64::new(-2.0 * p.gamma, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn pumped_reduces_exactly_to_unpumped_at_zero_rabi() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10_000 {
            let p = random_params(&mut rng, 0.0, None);
            let (t, c, cd) = random_inputs(&mut rng);
            assert_eq!(rhs_pumped(t, c, cd, &p), rhs_unpumped(t, c, cd, &p));
        }
    }

    #[test]
    fn unpumped_reduces_exactly_to_two_level_at_zero_ground_splitting() {
        // omega2 = 0 is the exactly representable member of the
        // omega2*tau = 2*pi*n class.
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..10_000 {
            let p = random_params(&mut rng, 0.0, Some(0.0));
            let (t, c, cd) = random_inputs(&mut rng);
            assert_eq!(rhs_unpumped(t, c, cd, &p), rhs_two_level(t, c, cd, &p));
        }
    }

    #[test]
    fn unpumped_matches_two_level_at_full_turn_ground_phase() {
        // Finite omega2 with omega2*tau = 2*pi*n carries last-ulp phase
        // noise; agreement is to rounding, not bitwise.
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..1000 {
            let tau = rng.gen_range(0.5..10.0);
            let n = rng.gen_range(1u32..50);
            let omega2 = TAU * f64::from(n) / tau;
            let p = SystemParams::new(omega2, omega2 + 100.0, rng.gen_range(0.0..2.0), tau, 0.0)
                .unwrap();
            let (t, c, cd) = random_inputs(&mut rng);
            let a = rhs_unpumped(t, c, cd, &p);
            let b = rhs_two_level(t, c, cd, &p);
            assert!((a - b).norm() < 1e-11 * (1.0 + a.norm()), "{a} vs {b}");
        }
    }

    proptest! {
        #[test]
        fn bracket_magnitude_bounded_by_two(
            omega2 in 0.0f64..50.0,
            gap in 0.1f64..500.0,
            gamma in 0.0f64..3.0,
            tau in 0.1f64..30.0,
            rabi in 0.0f64..20.0,
            t in 0.0f64..100.0,
        ) {
            let p = SystemParams::new(omega2, omega2 + gap, gamma, tau, rabi).unwrap();
            prop_assert!(feedback_bracket_magnitude(t, &p) <= 2.0 + 1e-12);
        }
    }
}
