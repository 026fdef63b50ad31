//! Subgradient method on Hadamard model spaces.
//!
//! The crate runs the Riemannian subgradient method on the Poincaré disk,
//! its curvature-scaled variants and the Euclidean plane, and turns the
//! comparison inequalities behind its convergence analysis into randomized
//! margin checks.
//!
//! - [`geometry`]: points, tangents, distance, exp/log, Möbius isometries.
//! - [`oracles`]: Busemann functions, hinge and distance objectives.
//! - [`schedule`]: step-size sequences and their analytic class.
//! - [`solver`]: the iteration, run traces and rate diagnostics.
//! - [`verify`]: inequality margins and the seeded fuzz harness.
//! - [`exec`]: sequential / rayon execution of sample batches.
//!
//! ```
//! use hypersub::{run, Manifold, OracleSpec, Point, SolveConfig, StepSchedule, Termination};
//!
//! let cfg = SolveConfig::new(
//!     Manifold::PoincareDisk,
//!     OracleSpec::BallHinge { center: Point::ORIGIN, radius: 0.3 },
//!     StepSchedule::harmonic(1.0).unwrap(),
//!     Point::new(1.5f64.tanh(), 0.0).unwrap(), // hyperbolic distance 3 from the center
//! )
//! .max_iters(10_000);
//! let trace = run(&cfg).unwrap();
//! assert_eq!(trace.termination, Termination::SubgradientZero { k: 8 });
//! ```

pub mod error;
pub mod exec;
pub mod geometry;
pub mod oracles;
pub mod schedule;
pub mod solver;
pub mod trace_io;
pub mod verify;

pub use error::{GeometryError, OracleError, ScheduleError, SolveError, VerifyError};
pub use exec::Exec;
pub use geometry::{Manifold, Mobius, Point, Tangent};
pub use oracles::{OracleSpec, SharedOracle, SolutionSet, SubgradientOracle};
pub use schedule::StepSchedule;
pub use solver::{run, run_with, RunTrace, SolveConfig, Termination};
pub use verify::InequalityReport;
