//! Fixed-step 4th-order Runge-Kutta integration of a complex scalar
//! delay differential equation with one constant delay.
//!
//! The step size divides the delay exactly, so the delayed argument at
//! step boundaries is read straight from stored samples and only the
//! half-step stage times need interpolation (cubic Hermite from stored
//! values and one-sided derivatives). Keeping the grid aligned also
//! pins the derivative discontinuities the Θ(t−τ) gate produces at
//! t = kτ onto nodes, where they cannot degrade the order.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::system::SystemParams;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Stored node of the running solution.
///
/// `d_in` is the derivative on arrival (limit from the left), `d_out`
/// the derivative on departure (limit from the right). They differ only
/// at t = τ, where the delayed term switches on and ċ₃ jumps; Hermite
/// interpolation on [τ−dt, τ] needs the left value and on [τ, τ+dt] the
/// right one to stay 4th-order accurate.
#[derive(Debug, Clone, Copy)]
pub struct HistorySample {
    pub value: C64,
    pub d_in: C64,
    pub d_out: C64,
}

/// Uniform-grid history of the amplitude with per-node derivatives.
#[derive(Debug, Clone)]
pub struct HistoryBuffer {
    dt: f64,
    samples: Vec<HistorySample>,
}

impl HistoryBuffer {
    fn with_capacity(dt: f64, n: usize) -> Self {
        HistoryBuffer { dt, samples: Vec::with_capacity(n) }
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time(&self, node: usize) -> f64 {
        node as f64 * self.dt
    }

    pub fn value(&self, node: usize) -> C64 {
        self.samples[node].value
    }

    /// Cubic Hermite value at the midpoint of [node, node + 1].
    fn midpoint(&self, node: usize) -> C64 {
        let a = &self.samples[node];
        let b = &self.samples[node + 1];
        0.5 * (a.value + b.value) + (0.125 * self.dt) * (a.d_out - b.d_in)
    }
}

/// Time grid plus amplitude samples of one integration.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub amplitudes: Vec<C64>,
    pub populations: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("empty trajectory")
    }

    pub fn final_population(&self) -> f64 {
        *self.populations.last().expect("empty trajectory")
    }

    /// Index of the first sample at or after `t` (within grid rounding).
    pub fn index_at(&self, t: f64) -> usize {
        let eps = 1e-9 * self.final_time().max(1.0);
        self.times.partition_point(|&x| x < t - eps)
    }

    /// Population linearly interpolated at time `t`.
    pub fn population_at(&self, t: f64) -> f64 {
        let i = self.index_at(t);
        if i == 0 {
            return self.populations[0];
        }
        if i >= self.len() {
            return self.final_population();
        }
        let (t0, t1) = (self.times[i - 1], self.times[i]);
        let w = (t - t0) / (t1 - t0);
        self.populations[i - 1] * (1.0 - w) + self.populations[i] * w
    }
}

fn step_count(t_end: f64, dt: f64) -> usize {
    let raw = t_end / dt;
    let rounded = raw.round();
    if (raw - rounded).abs() < 1e-9 * raw.max(1.0) {
        rounded as usize
    } else {
        raw.ceil() as usize
    }
}

/// Integrate ċ₃(t) = rhs(t, c₃(t), c₃(t−τ)) from c₃(0) = 1.
///
/// The delayed argument passed to `rhs` is 0 while t < τ; the step
/// starting exactly at t = τ already sees the stored initial value
/// (Θ(0) = 1). `steps_per_delay` sets dt = τ / steps_per_delay.
pub fn integrate_dde<F>(
    rhs: F,
    params: &SystemParams,
    t_end: f64,
    steps_per_delay: usize,
) -> Result<Trajectory>
where
    F: Fn(f64, C64, C64) -> C64,
{
    let history = integrate_history(&rhs, params, t_end, steps_per_delay)?;
    Ok(history_to_trajectory(&history))
}

fn history_to_trajectory(history: &HistoryBuffer) -> Trajectory {
    let n = history.len();
    let mut times = Vec::with_capacity(n);
    let mut amplitudes = Vec::with_capacity(n);
    let mut populations = Vec::with_capacity(n);
    for (j, s) in history.samples.iter().enumerate() {
        times.push(j as f64 * history.dt);
        amplitudes.push(s.value);
        populations.push(s.value.norm_sqr());
    }
    Trajectory { times, amplitudes, populations }
}

fn integrate_history<F>(
    rhs: &F,
    params: &SystemParams,
    t_end: f64,
    steps_per_delay: usize,
) -> Result<HistoryBuffer>
where
    F: Fn(f64, C64, C64) -> C64,
{
    if steps_per_delay < 8 {
        return Err(Error::config(format!(
            "steps_per_delay must be at least 8, got {steps_per_delay}"
        )));
    }
    if !(t_end > 0.0) {
        return Err(Error::config(format!("t_end must be positive, got {t_end}")));
    }
    let m = steps_per_delay;
    let dt = params.tau / m as f64;
    if t_end < dt {
        return Err(Error::config(format!(
            "t_end ({t_end} ps) is shorter than one step ({dt} ps)"
        )));
    }
    let n_steps = step_count(t_end, dt);

    let mut history = HistoryBuffer::with_capacity(dt, n_steps + 1);
    let c0 = C64::new(1.0, 0.0);
    history.samples.push(HistorySample { value: c0, d_in: ZERO, d_out: ZERO });

    for j in 0..n_steps {
        let t = j as f64 * dt;
        let y = history.samples[j].value;

        // Delayed inputs for this step. The delayed term is a different
        // smooth function on each side of t = τ, so the whole step uses
        // the branch its interval lies on: inactive for j < m, active
        // (including the arrival stage) for j >= m.
        let (d_node, d_mid, d_next) = if j >= m {
            (history.value(j - m), history.midpoint(j - m), history.value(j + 1 - m))
        } else {
            (ZERO, ZERO, ZERO)
        };

        let k1 = rhs(t, y, d_node);
        // k1 is the departure derivative of node j; the arrival
        // derivative matches it everywhere except at the delay onset.
        history.samples[j].d_out = k1;
        history.samples[j].d_in = if j == m { rhs(t, y, ZERO) } else { k1 };

        let half = 0.5 * dt;
        let k2 = rhs(t + half, y + half * k1, d_mid);
        let k3 = rhs(t + half, y + half * k2, d_mid);
        let k4 = rhs(t + dt, y + dt * k3, d_next);
        let y_next = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if !y_next.re.is_finite() || !y_next.im.is_finite() {
            return Err(Error::NonFiniteValue { t: (j + 1) as f64 * dt });
        }
        history.samples.push(HistorySample { value: y_next, d_in: ZERO, d_out: ZERO });
    }

    // Arrival derivative of the final node, for interpolation consumers.
    let last = history.len() - 1;
    let y_last = history.samples[last].value;
    let cd = if last > m { history.value(last - m) } else { ZERO };
    let d = rhs(last as f64 * dt, y_last, cd);
    history.samples[last].d_in = d;
    history.samples[last].d_out = d;

    Ok(history)
}

pub const REFINE_INITIAL_STEPS: usize = 16;
pub const REFINE_MAX_DOUBLINGS: usize = 12;

/// Re-integrate with doubled resolution until the populations of two
/// successive refinements agree pointwise within `rel_tol`, starting
/// from 16 steps per delay. Returns the finer trajectory.
pub fn refine_until_converged<F>(
    rhs: F,
    params: &SystemParams,
    t_end: f64,
    rel_tol: f64,
) -> Result<Trajectory>
where
    F: Fn(f64, C64, C64) -> C64,
{
    if !(rel_tol > 1e-12 && rel_tol < 1e-2) {
        return Err(Error::config(format!(
            "rel_tol must lie in (1e-12, 1e-2), got {rel_tol}"
        )));
    }
    let mut coarse = integrate_dde(&rhs, params, t_end, REFINE_INITIAL_STEPS)?;
    let mut last_change = f64::INFINITY;
    for doubling in 1..=REFINE_MAX_DOUBLINGS {
        let fine = integrate_dde(&rhs, params, t_end, REFINE_INITIAL_STEPS << doubling)?;
        last_change = coarse
            .populations
            .iter()
            .enumerate()
            .map(|(i, &p)| (fine.populations[2 * i] - p).abs())
            .fold(0.0, f64::max);
        if last_change < rel_tol {
            return Ok(fine);
        }
        coarse = fine;
    }
    Err(Error::NoConvergence { doublings: REFINE_MAX_DOUBLINGS, last_change })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    fn base_params(tau: f64) -> SystemParams {
        SystemParams::new(0.0, 1.0, 0.25, tau, 0.0).unwrap()
    }

    #[test]
    fn zero_rhs_keeps_initial_value() {
        let traj = integrate_dde(|_, _, _| ZERO, &base_params(2.0), 10.0, 16).unwrap();
        assert!(traj.amplitudes.iter().all(|c| *c == C64::new(1.0, 0.0)));
        assert!(traj.populations.iter().all(|p| *p == 1.0));
    }

    #[test]
    fn pure_decay_matches_closed_form() {
        let gamma = 0.25;
        let p = base_params(5.0);
        let traj =
            integrate_dde(|_, c, _| (-2.0 * gamma) * c, &p, 4.5, 256).unwrap();
        for (t, pop) in traj.times.iter().zip(&traj.populations) {
            let exact = (-4.0 * gamma * t).exp();
            assert!((pop - exact).abs() <= 1e-8 * exact, "t={t} pop={pop} exact={exact}");
        }
    }

    /// rhs = c₃(t−τ) with Γ = 0 makes the solution piecewise polynomial
    /// of degree k on [kτ, (k+1)τ]; the scheme must reproduce it to
    /// rounding while the degree stays ≤ 4. This pins down the Θ-gate
    /// convention, the grid-aligned delayed reads and the one-sided
    /// Hermite derivatives all at once.
    #[test]
    fn delayed_identity_rhs_is_exact_on_polynomial_segments() {
        let tau = 2.0;
        let p = base_params(tau);
        let traj = integrate_dde(|_, _, cd| cd, &p, 5.0 * tau, 16).unwrap();
        let exact = |t: f64| -> f64 {
            let mut total = 0.0;
            let mut k = 0usize;
            let mut kfac = 1.0;
            while k as f64 * tau <= t {
                if k > 0 {
                    kfac *= k as f64;
                }
                total += (t - k as f64 * tau).powi(k as i32) / kfac;
                k += 1;
            }
            total
        };
        for (i, t) in traj.times.iter().enumerate() {
            let e = exact(*t);
            assert!(
                (traj.amplitudes[i].re - e).abs() < 1e-10 * e.max(1.0),
                "t={t} got={} exact={e}",
                traj.amplitudes[i].re
            );
            assert!(traj.amplitudes[i].im.abs() < 1e-12);
        }
    }

    #[test]
    fn grid_hits_t_end_exactly() {
        let p = base_params(2.0);
        let traj = integrate_dde(|_, _, _| ZERO, &p, 9.0, 16).unwrap();
        assert!((traj.final_time() - 9.0).abs() < 1e-9);
        // Non-multiple horizon rounds up to the enclosing node.
        let traj = integrate_dde(|_, _, _| ZERO, &p, 8.9, 16).unwrap();
        assert!(traj.final_time() >= 8.9);
    }

    #[test]
    fn rejects_bad_configuration() {
        let p = base_params(2.0);
        assert!(matches!(
            integrate_dde(|_, _, _| ZERO, &p, 10.0, 4),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            integrate_dde(|_, _, _| ZERO, &p, 0.01, 16),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn detects_non_finite_blowup() {
        let p = base_params(2.0);
        let r = integrate_dde(|_, c, _| 1e300 * c, &p, 10.0, 16);
        assert!(matches!(r, Err(Error::NonFiniteValue { .. })));
    }

    #[test]
    fn unitarity_bound_on_physical_models() {
        for (tau, rabi) in [(10.0, 0.0), (5.0, std::f64::consts::TAU / 5.0), (7.0, 0.4)] {
            let p = SystemParams::new(
                std::f64::consts::TAU * 0.8,
                std::f64::consts::TAU * 239.3,
                0.37037,
                tau,
                rabi,
            )
            .unwrap();
            let traj =
                integrate_dde(|t, c, cd| models::rhs_pumped(t, c, cd, &p), &p, 20.0 * tau, 32)
                    .unwrap();
            assert!(traj.populations.iter().all(|pop| *pop <= 1.0 + 1e-6));
            for (i, pop) in traj.populations.iter().enumerate() {
                assert_eq!(*pop, traj.amplitudes[i].norm_sqr());
            }
        }
    }

    #[test]
    fn deterministic_repeat() {
        let p = base_params(3.0);
        let f = |t: f64, c: C64, cd: C64| models::rhs_unpumped(t, c, cd, &p);
        let a = integrate_dde(f, &p, 30.0, 32).unwrap();
        let b = integrate_dde(f, &p, 30.0, 32).unwrap();
        assert_eq!(a.amplitudes, b.amplitudes);
        assert_eq!(a.times, b.times);
    }

    #[test]
    fn refine_converges_immediately_for_constant_solution() {
        let p = base_params(2.0);
        let traj = refine_until_converged(|_, _, _| ZERO, &p, 8.0, 1e-10).unwrap();
        assert!(traj.populations.iter().all(|pop| *pop == 1.0));
    }

    #[test]
    fn refine_matches_closed_form_decay() {
        let gamma = 0.35;
        let p = base_params(4.0);
        let rel_tol = 1e-9;
        let traj =
            refine_until_converged(|_, c, _| (-2.0 * gamma) * c, &p, 3.5, rel_tol).unwrap();
        for (t, pop) in traj.times.iter().zip(&traj.populations) {
            assert!((pop - (-4.0 * gamma * t).exp()).abs() < rel_tol);
        }
    }

    #[test]
    fn refine_rejects_out_of_range_tolerance() {
        let p = base_params(2.0);
        assert!(matches!(
            refine_until_converged(|_, _, _| ZERO, &p, 8.0, 1e-13),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            refine_until_converged(|_, _, _| ZERO, &p, 8.0, 0.5),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn refine_gives_up_on_grid_noise() {
        // An RHS that looks like noise on every grid never agrees
        // between refinements.
        let p = base_params(1.0);
        let r = refine_until_converged(
            |t, _, _| C64::new(100.0 * (1e9 * t).sin(), 0.0),
            &p,
            2.0,
            1e-6,
        );
        assert!(matches!(r, Err(Error::NoConvergence { .. })));
    }
}
