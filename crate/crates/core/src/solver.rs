//! The Riemannian subgradient method
//!
//! ```text
//! x⁰ given;  s^k = −g^k/‖g^k‖,  x^{k+1} = exp_{x^k}(λ_k s^k),  g^k ∈ ∂f(x^k)
//! ```
//!
//! stopping when `g^k = 0` (to within `stop_grad_tol`).

use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::exec::Exec;
use crate::geometry::{Manifold, Point};
use crate::oracles::{OracleSpec, SolutionSet, SubgradientOracle};
use crate::schedule::StepSchedule;

pub const DEFAULT_STOP_GRAD_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub manifold: Manifold,
    pub oracle: OracleSpec,
    pub schedule: StepSchedule,
    pub x0: Point,
    pub max_iters: usize,
    pub stop_grad_tol: f64,
    pub record_every: usize,
    pub seed: u64,
}

impl SolveConfig {
    pub fn new(manifold: Manifold, oracle: OracleSpec, schedule: StepSchedule, x0: Point) -> Self {
        SolveConfig {
            manifold,
            oracle,
            schedule,
            x0,
            max_iters: 1000,
            stop_grad_tol: DEFAULT_STOP_GRAD_TOL,
            record_every: 1,
            seed: 0,
        }
    }

    pub fn max_iters(mut self, n: usize) -> Self {
        self.max_iters = n;
        self
    }

    pub fn record_every(mut self, n: usize) -> Self {
        self.record_every = n;
        self
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        if self.max_iters == 0 {
            return Err(SolveError::NoIterations);
        }
        if self.record_every == 0 {
            return Err(SolveError::ZeroRecordEvery);
        }
        if !(self.stop_grad_tol.is_finite() && self.stop_grad_tol >= 0.0) {
            return Err(SolveError::BadStopTolerance(self.stop_grad_tol));
        }
        self.manifold.point(self.x0.x, self.x0.y)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub k: usize,
    pub point: Point,
    pub f_value: f64,
    pub grad_norm: f64,
    pub lambda_k: f64,
    pub dist_to_s: Option<f64>,
    /// `point` was produced by an exp step that had to be clamped.
    pub drift_event: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Termination {
    SubgradientZero { k: usize },
    MaxIters,
    NumericalFailure { k: usize, reason: String },
}

impl Termination {
    pub fn kind(&self) -> &'static str {
        match self {
            Termination::SubgradientZero { .. } => "SubgradientZero",
            Termination::MaxIters => "MaxIters",
            Termination::NumericalFailure { .. } => "NumericalFailure",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub termination: String,
    /// Number of exp steps taken.
    pub steps: usize,
    pub best_value: f64,
    pub best_gap: Option<f64>,
    /// Running minimum of `f(x^j) − f*` at each recorded `k`.
    pub min_gap: Option<Vec<(usize, f64)>>,
    pub final_dist_to_s: Option<f64>,
    pub sum_lambda: f64,
    pub sum_lambda_sq: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub config: SolveConfig,
    pub known_min: Option<f64>,
    pub solution_set: SolutionSet,
    pub records: Vec<IterationRecord>,
    pub termination: Termination,
    pub summary: Summary,
}

impl RunTrace {
    /// Rebuilds the summary from the stored records and configuration.
    pub fn recompute_summary(&self) -> Summary {
        summarize(
            &self.config,
            self.known_min,
            &self.records,
            &self.termination,
            steps_taken(&self.config, &self.termination),
        )
    }

    pub fn last(&self) -> Option<&IterationRecord> {
        self.records.last()
    }
}

/// One step of the method from `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub next: Point,
    pub drift: bool,
    pub f_value: f64,
    pub grad_norm: f64,
}

/// `exp_x(λ s)` with `s = −g/‖g‖`.
pub fn sm_step(
    m: &Manifold,
    oracle: &dyn SubgradientOracle,
    x: Point,
    lambda: f64,
    stop_grad_tol: f64,
) -> Result<Step, SolveError> {
    let e = oracle.eval(m, x);
    let grad_norm = m.norm(&e.subgradient);
    if grad_norm <= stop_grad_tol {
        return Err(SolveError::ZeroSubgradient);
    }
    let (next, drift) = m.exp_traced(&e.subgradient.scale(-lambda / grad_norm));
    Ok(Step {
        next,
        drift,
        f_value: e.value,
        grad_norm,
    })
}

/// Runs the bundled oracle named in `cfg`.
pub fn run(cfg: &SolveConfig) -> Result<RunTrace, SolveError> {
    let oracle = cfg.oracle.build()?;
    run_with(cfg, oracle.as_ref())
}

/// Runs `oracle`; `cfg.oracle` is only echoed into the trace.
pub fn run_with(cfg: &SolveConfig, oracle: &dyn SubgradientOracle) -> Result<RunTrace, SolveError> {
    cfg.validate()?;
    let m = cfg.manifold;
    let solution_set = oracle.solution_set(&m);
    let known_min = oracle.known_min(&m);
    let mut records = Vec::with_capacity(cfg.max_iters / cfg.record_every + 2);
    let mut x = cfg.x0;
    let mut drift = false;
    let mut k = 0;
    let termination = loop {
        let e = oracle.eval(&m, x);
        let grad_norm = m.norm(&e.subgradient);
        if !e.value.is_finite() || !grad_norm.is_finite() {
            break Termination::NumericalFailure {
                k,
                reason: format!(
                    "non-finite oracle output (f = {}, |g| = {})",
                    e.value, grad_norm
                ),
            };
        }
        let lambda_k = cfg.schedule.step(k);
        let stop = grad_norm <= cfg.stop_grad_tol;
        let last = k == cfg.max_iters;
        if k % cfg.record_every == 0 || stop || last {
            records.push(IterationRecord {
                k,
                point: x,
                f_value: e.value,
                grad_norm,
                lambda_k,
                dist_to_s: solution_set.distance_to(&m, x),
                drift_event: drift,
            });
        }
        if stop {
            break Termination::SubgradientZero { k };
        }
        if last {
            break Termination::MaxIters;
        }
        let (next, d) = m.exp_traced(&e.subgradient.scale(-lambda_k / grad_norm));
        if !(next.x.is_finite() && next.y.is_finite()) {
            break Termination::NumericalFailure {
                k: k + 1,
                reason: "non-finite iterate".to_string(),
            };
        }
        x = next;
        drift = d;
        k += 1;
    };
    let steps = steps_taken(cfg, &termination);
    let summary = summarize(cfg, known_min, &records, &termination, steps);
    Ok(RunTrace {
        config: cfg.clone(),
        known_min,
        solution_set,
        records,
        termination,
        summary,
    })
}

/// Runs independent configurations, possibly concurrently.
pub fn run_batch(cfgs: &[SolveConfig], exec: Exec) -> Vec<Result<RunTrace, SolveError>> {
    exec.map(cfgs, run)
}

fn steps_taken(cfg: &SolveConfig, t: &Termination) -> usize {
    match t {
        Termination::SubgradientZero { k } | Termination::NumericalFailure { k, .. } => *k,
        Termination::MaxIters => cfg.max_iters,
    }
}

fn running_min_gap(records: &[IterationRecord], f_star: f64) -> Vec<(usize, f64)> {
    let mut best = f64::INFINITY;
    records
        .iter()
        .map(|r| {
            best = best.min(r.f_value - f_star);
            (r.k, best)
        })
        .collect()
}

fn summarize(
    cfg: &SolveConfig,
    known_min: Option<f64>,
    records: &[IterationRecord],
    termination: &Termination,
    steps: usize,
) -> Summary {
    let best_value = records
        .iter()
        .map(|r| r.f_value)
        .fold(f64::INFINITY, f64::min);
    let (sum_lambda, sum_lambda_sq) = if steps == 0 {
        (0.0, 0.0)
    } else {
        cfg.schedule.partial_sums(steps - 1)
    };
    Summary {
        termination: termination.kind().to_string(),
        steps,
        best_value,
        best_gap: known_min.map(|f| best_value - f),
        min_gap: known_min.map(|f| running_min_gap(records, f)),
        final_dist_to_s: records.last().and_then(|r| r.dist_to_s),
        sum_lambda,
        sum_lambda_sq,
    }
}

/// `(k, min_{j≤k} f(x^j) − f*)` over the recorded iterates.
pub fn min_gap_series(trace: &RunTrace) -> Result<Vec<(usize, f64)>, SolveError> {
    let f_star = trace.known_min.ok_or(SolveError::MissingFStar)?;
    Ok(running_min_gap(&trace.records, f_star))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub n: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityReport {
    pub kappa: f64,
    pub a: f64,
    pub b: f64,
    pub solution_point: Point,
    pub initial_distance: f64,
    pub rows: Vec<BoundRow>,
    pub all_satisfied: bool,
    /// Smallest `A + B` on the constant grid for which every row holds.
    pub fitted: Option<(f64, f64)>,
}

/// Log-spaced grid `10^{-4}, 10^{-3.75}, …, 10^{6}` for the fitted constants.
pub fn constant_grid() -> Vec<f64> {
    (-16..=24).map(|e| 10f64.powf(e as f64 / 4.0)).collect()
}

/// Compares the running minimum gap against
/// `(κ A Σλ_k² + B d²(x*, x⁰)) / Σλ_k` at every recorded `N`, with `x*`
/// the projection of `x⁰` onto the solution set.
pub fn complexity_bound_report(
    trace: &RunTrace,
    a: f64,
    b: f64,
) -> Result<ComplexityReport, SolveError> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(SolveError::BadConstants { a, b });
    }
    let gaps = min_gap_series(trace)?;
    let m = trace.config.manifold;
    let x_star = trace
        .solution_set
        .project(&m, trace.config.x0)
        .ok_or(SolveError::MissingSolutionPoint)?;
    let d0 = m.distance(x_star, trace.config.x0);
    let kappa = m.curvature_bound();
    let last_k = gaps.last().map_or(0, |g| g.0);
    let sums = trace.config.schedule.cumulative_sums(last_k);
    // (lhs, Σλ, Σλ²) per recorded N
    let cols: Vec<(usize, f64, f64, f64)> = gaps
        .iter()
        .map(|&(n, lhs)| (n, lhs, sums[n].0, sums[n].1))
        .collect();
    let rhs = |a: f64, b: f64, s1: f64, s2: f64| (kappa * a * s2 + b * d0 * d0) / s1;
    let holds = |a: f64, b: f64| cols.iter().all(|&(_, l, s1, s2)| l <= rhs(a, b, s1, s2));

    let rows: Vec<BoundRow> = cols
        .iter()
        .map(|&(n, lhs, s1, s2)| {
            let r = rhs(a, b, s1, s2);
            BoundRow {
                n,
                lhs,
                rhs: r,
                satisfied: lhs <= r,
            }
        })
        .collect();
    let grid = constant_grid();
    let mut fitted: Option<(f64, f64)> = None;
    for &ga in &grid {
        if let Some(&gb) = grid.iter().find(|&&gb| holds(ga, gb)) {
            if fitted.is_none_or(|(fa, fb)| ga + gb < fa + fb) {
                fitted = Some((ga, gb));
            }
        }
    }
    Ok(ComplexityReport {
        kappa,
        a,
        b,
        solution_point: x_star,
        initial_distance: d0,
        all_satisfied: rows.iter().all(|r| r.satisfied),
        rows,
        fitted,
    })
}
