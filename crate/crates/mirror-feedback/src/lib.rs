//! Simulation toolkit for a Λ-type three-level emitter radiating into a
//! semi-infinite waveguide, where the mirror feeds every emitted signal
//! back after one round trip.
//!
//! The emitter amplitude obeys a delay differential equation whose
//! feedback term carries the round-trip phases ω₂τ and ω₃τ; a resonant
//! continuous-wave pump between the two ground states adds Ωτ/2 as an
//! independently tunable phase knob. Depending on those phases the
//! excited-state population either decays or freezes at a finite value
//! (excitation trapping).
//!
//! What lives where:
//!
//! - [`system`]: parameter set, round-trip phases, and the
//!   frequency-ratio parity rule that decides whether the shortest
//!   trapping delay needs a pump.
//! - [`models`]: the two-level, unpumped, and pumped right-hand sides.
//! - [`dde`]: grid-aligned fixed-step RK4 integration with cubic
//!   Hermite history interpolation, plus self-convergent refinement.
//! - [`oracle`]: brute-force single-excitation Schrödinger integration
//!   over a discretized reservoir, used to verify the delay equation
//!   from first principles.
//! - [`analysis`]: trapping-condition checks, plateau and transient
//!   extraction, parameter sweeps.
//! - [`config`], [`cli`]: `key = value` run files and the command-line
//!   front end built on them.
//!
//! The `examples/` directory holds one runnable program per capability;
//! start with `unpumped_trapping` and `pumped_trapping`.

pub mod analysis;
pub mod cli;
pub mod config;
pub mod dde;
pub mod error;
pub mod models;
pub mod oracle;
pub mod system;

pub use analysis::{
    check_stabilization, sweep, transient_time, trapped_value, Mechanism, StabilizationReport,
    SweepAxis, SweepResult,
};
pub use dde::{integrate_dde, refine_until_converged, HistoryBuffer, Trajectory};
pub use error::{Error, Result};
pub use models::{rhs_pumped, rhs_two_level, rhs_unpumped, ModelKind};
pub use oracle::{build_mode_grid, oracle_integrate, ModeGrid, OracleRun, OracleState};
pub use system::{classify_parity, compute_phases, ParityVerdict, PhaseSet, SystemParams};

/// Complex amplitude type used throughout.
pub type C64 = num_complex::Complex64;
