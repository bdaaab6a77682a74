//! Brute-force verification path: single-excitation Schrödinger
//! dynamics of the emitter coupled to a discretized photonic reservoir.
//!
//! Nothing here knows about the delay equation. The mirror enters only
//! through the sinusoidal coupling g_k = g₀ sin(kL) with L = τ/2; the
//! feedback revival at t = τ has to emerge from the mode sum on its
//! own, which is what makes this integration an independent check of
//! the reduced model.

use num_complex::Complex64 as C64;
use std::f64::consts::{PI, TAU};

use crate::dde::Trajectory;
use crate::error::{Error, Result};
use crate::system::SystemParams;

/// Discretized reservoir band with trapezoidal quadrature weights.
#[derive(Debug, Clone)]
pub struct ModeGrid {
    /// Wavenumbers, rad/ps (c = 1, so ω_k = k).
    pub k_values: Vec<f64>,
    /// g₀ sin(k τ/2) per mode.
    pub couplings: Vec<f64>,
    pub dk: f64,
    pub weights: Vec<f64>,
}

/// g₀ from the decay rate, inverting Γ = g₀²π/2 (ħ = c = 1).
pub fn coupling_strength(gamma: f64) -> f64 {
    (2.0 * gamma / PI).sqrt()
}

/// Default band half-width: 200 free spectral ranges.
pub fn default_half_width(params: &SystemParams) -> f64 {
    200.0 * TAU / params.tau
}

/// Default mode-integration step for a band of half-width `w`.
pub fn default_mode_dt(half_width: f64) -> f64 {
    0.1 / half_width
}

/// Uniform grid of `n_modes` wavenumbers on [ω₃ − W, ω₃ + W].
pub fn build_mode_grid(params: &SystemParams, half_width: f64, n_modes: usize) -> Result<ModeGrid> {
    if n_modes < 2 {
        return Err(Error::config(format!("n_modes must be at least 2, got {n_modes}")));
    }
    if !(half_width > 0.0) || !half_width.is_finite() {
        return Err(Error::config(format!("half_width must be positive, got {half_width}")));
    }
    if params.omega3 - half_width <= 0.0 {
        return Err(Error::config(format!(
            "band [{}, {}] extends to nonpositive wavenumbers",
            params.omega3 - half_width,
            params.omega3 + half_width
        )));
    }
    let g0 = coupling_strength(params.gamma);
    let half_length = 0.5 * params.tau; // L = τ/2 with c = 1
    let dk = 2.0 * half_width / (n_modes - 1) as f64;
    let k0 = params.omega3 - half_width;
    let mut k_values = Vec::with_capacity(n_modes);
    let mut couplings = Vec::with_capacity(n_modes);
    let mut weights = Vec::with_capacity(n_modes);
    for i in 0..n_modes {
        let k = k0 + i as f64 * dk;
        k_values.push(k);
        couplings.push(g0 * (k * half_length).sin());
        weights.push(if i == 0 || i == n_modes - 1 { 0.5 * dk } else { dk });
    }
    Ok(ModeGrid { k_values, couplings, dk, weights })
}

/// Emitter amplitude plus one photon amplitude per mode and channel.
#[derive(Debug, Clone)]
pub struct OracleState {
    pub c3: C64,
    /// Photon in mode k with the emitter in the lowest ground state.
    pub c1: Vec<C64>,
    /// Photon in mode k with the emitter in the pumped ground state.
    pub c2: Vec<C64>,
}

impl OracleState {
    fn zeros(n: usize) -> Self {
        OracleState {
            c3: C64::new(0.0, 0.0),
            c1: vec![C64::new(0.0, 0.0); n],
            c2: vec![C64::new(0.0, 0.0); n],
        }
    }

    fn initial(n: usize) -> Self {
        let mut s = Self::zeros(n);
        s.c3 = C64::new(1.0, 0.0);
        s
    }

    /// Quadrature-weighted total probability.
    pub fn norm(&self, grid: &ModeGrid) -> f64 {
        let mut acc = self.c3.norm_sqr();
        for i in 0..self.c1.len() {
            acc += grid.weights[i] * (self.c1[i].norm_sqr() + self.c2[i].norm_sqr());
        }
        acc
    }
}

/// Trajectory of |c₃|² together with the total norm at every step.
#[derive(Debug, Clone)]
pub struct OracleRun {
    pub trajectory: Trajectory,
    pub norms: Vec<f64>,
}

impl OracleRun {
    /// Largest |Δ norm| over any single delay interval.
    pub fn max_norm_drift_per_delay(&self, tau: f64) -> f64 {
        let times = &self.trajectory.times;
        let mut worst: f64 = 0.0;
        let mut k = 0usize;
        let mut anchor = self.norms[0];
        for (i, &t) in times.iter().enumerate() {
            if t >= (k + 1) as f64 * tau - 1e-12 {
                worst = worst.max((self.norms[i] - anchor).abs());
                anchor = self.norms[i];
                k += 1;
            }
        }
        // Partial final interval counts too.
        if let Some(last) = self.norms.last() {
            worst = worst.max((last - anchor).abs());
        }
        worst
    }
}

const NORM_DRIFT_LIMIT: f64 = 1e-4;

struct Derivative {
    c3: C64,
    c1: Vec<C64>,
    c2: Vec<C64>,
}

impl Derivative {
    fn zeros(n: usize) -> Self {
        Derivative {
            c3: C64::new(0.0, 0.0),
            c1: vec![C64::new(0.0, 0.0); n],
            c2: vec![C64::new(0.0, 0.0); n],
        }
    }
}

/// Evaluate the coupled equations of motion at time `t`.
///
/// Per mode, with Δ_k = ω_k − ω₃ and φ_k = e^{iΔ_k t}:
///   ċ₃  = −i Σ_k w_k g_k φ_k* (b₂ c₂ᵏ + b₁ c₁ᵏ)
///   ċ₂ᵏ = −i g_k φ_k b₂* c₃
///   ċ₁ᵏ = −i g_k φ_k b₁* c₃
/// where b₂ = cos(Ωt/2) e^{−iω₂t} − i sin(Ωt/2) and
/// b₁ = cos(Ωt/2) − i sin(Ωt/2) e^{−iω₂t} carry the pump rotation.
fn eval_rhs(t: f64, state: &OracleState, grid: &ModeGrid, params: &SystemParams, out: &mut Derivative) {
    let (sin_half, cos_half) = (0.5 * params.rabi * t).sin_cos();
    let e2_conj = C64::cis(-(params.omega2 * t));
    let b2 = cos_half * e2_conj - C64::new(0.0, sin_half);
    let b1 = C64::new(cos_half, 0.0) - C64::new(0.0, sin_half) * e2_conj;
    let b1_conj = b1.conj();
    let b2_conj = b2.conj();

    // φ_k by phase recurrence across the uniform band: one cis pair per
    // call instead of one per mode.
    let half_width = 0.5 * grid.dk * (grid.k_values.len() - 1) as f64;
    let mut phase = C64::cis(-half_width * t);
    let rot = C64::cis(grid.dk * t);

    let minus_i = C64::new(0.0, -1.0);
    let mut acc = C64::new(0.0, 0.0);
    let n = grid.k_values.len();
    for i in 0..n {
        let g = grid.couplings[i];
        let drive = minus_i * (g * phase) * state.c3;
        out.c2[i] = drive * b2_conj;
        out.c1[i] = drive * b1_conj;
        acc += (grid.weights[i] * g) * phase.conj() * (b2 * state.c2[i] + b1 * state.c1[i]);
        phase *= rot;
    }
    out.c3 = minus_i * acc;
}

fn axpy(base: &OracleState, scale: f64, d: &Derivative, out: &mut OracleState) {
    out.c3 = base.c3 + scale * d.c3;
    for i in 0..base.c1.len() {
        out.c1[i] = base.c1[i] + scale * d.c1[i];
        out.c2[i] = base.c2[i] + scale * d.c2[i];
    }
}

/// Integrate the mode model from c₃(0) = 1, photon vacuum, with classic
/// 4th-order steps, recording |c₃|² and the norm on the way.
pub fn oracle_integrate(
    params: &SystemParams,
    grid: &ModeGrid,
    t_end: f64,
    dt: f64,
) -> Result<OracleRun> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::config(format!("oracle dt must be positive, got {dt}")));
    }
    if !(t_end > 0.0) {
        return Err(Error::config(format!("t_end must be positive, got {t_end}")));
    }
    let half_width = 0.5 * grid.dk * (grid.k_values.len() - 1) as f64;
    if dt * half_width >= 0.5 {
        return Err(Error::config(format!(
            "oracle dt {dt} too coarse for band half-width {half_width} (need dt*W < 0.5)"
        )));
    }
    let n_steps = (t_end / dt).ceil() as usize;
    let dt = t_end / n_steps as f64;
    let n = grid.k_values.len();

    let mut state = OracleState::initial(n);
    let mut stage = OracleState::zeros(n);
    let mut k1 = Derivative::zeros(n);
    let mut k2 = Derivative::zeros(n);
    let mut k3 = Derivative::zeros(n);
    let mut k4 = Derivative::zeros(n);

    let mut times = Vec::with_capacity(n_steps + 1);
    let mut amplitudes = Vec::with_capacity(n_steps + 1);
    let mut populations = Vec::with_capacity(n_steps + 1);
    let mut norms = Vec::with_capacity(n_steps + 1);
    times.push(0.0);
    amplitudes.push(state.c3);
    populations.push(1.0);
    norms.push(state.norm(grid));

    for step in 0..n_steps {
        let t = step as f64 * dt;
        eval_rhs(t, &state, grid, params, &mut k1);
        axpy(&state, 0.5 * dt, &k1, &mut stage);
        eval_rhs(t + 0.5 * dt, &stage, grid, params, &mut k2);
        axpy(&state, 0.5 * dt, &k2, &mut stage);
        eval_rhs(t + 0.5 * dt, &stage, grid, params, &mut k3);
        axpy(&state, dt, &k3, &mut stage);
        eval_rhs(t + dt, &stage, grid, params, &mut k4);

        let w = dt / 6.0;
        state.c3 += w * (k1.c3 + 2.0 * k2.c3 + 2.0 * k3.c3 + k4.c3);
        for i in 0..n {
            state.c1[i] += w * (k1.c1[i] + 2.0 * k2.c1[i] + 2.0 * k3.c1[i] + k4.c1[i]);
            state.c2[i] += w * (k1.c2[i] + 2.0 * k2.c2[i] + 2.0 * k3.c2[i] + k4.c2[i]);
        }

        let t_next = (step + 1) as f64 * dt;
        if !state.c3.re.is_finite() || !state.c3.im.is_finite() {
            return Err(Error::NonFiniteValue { t: t_next });
        }
        let norm = state.norm(grid);
        if (norm - 1.0).abs() > NORM_DRIFT_LIMIT {
            return Err(Error::NormDrift {
                t: t_next,
                drift: (norm - 1.0).abs(),
                limit: NORM_DRIFT_LIMIT,
            });
        }
        times.push(t_next);
        amplitudes.push(state.c3);
        populations.push(state.c3.norm_sqr());
        norms.push(norm);
    }

    Ok(OracleRun {
        trajectory: Trajectory { times, amplitudes, populations },
        norms,
    })
}
