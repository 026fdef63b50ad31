//! The two-Busemann example started on the imaginary axis.

use std::fmt::Write as _;

use hypersub::solver::RunTrace;
use hypersub::{run, Manifold, OracleSpec, Point, SolveConfig, SolveError, StepSchedule};

const DISK: Manifold = Manifold::PoincareDisk;

#[derive(Debug, Clone)]
pub struct Reproduction {
    pub trace: RunTrace,
    pub on_axis: Result<(), String>,
    pub per_step: Result<(), String>,
    pub final_distance: Result<(), String>,
}

impl Reproduction {
    pub fn passed(&self) -> bool {
        self.on_axis.is_ok() && self.per_step.is_ok() && self.final_distance.is_ok()
    }

    pub fn report(&self) -> String {
        let t = &self.trace;
        let mut out = String::new();
        let _ = writeln!(out, "two-Busemann reproduction");
        let _ = writeln!(out, "=========================");
        let _ = writeln!(out, "x0           {} + {}i", t.config.x0.x, t.config.x0.y);
        let _ = writeln!(out, "schedule     {}", t.config.schedule);
        let _ = writeln!(out, "max steps    {}", t.config.max_iters);
        let _ = writeln!(out, "termination  {:?}", t.termination);
        let _ = writeln!(out, "steps taken  {}", t.summary.steps);
        let _ = writeln!(out, "best f       {:e}", t.summary.best_value);
        if let Some(d) = t.summary.final_dist_to_s {
            let _ = writeln!(out, "d(x^N, S)    {d:e}");
        }
        if let Some(k) = t
            .records
            .iter()
            .find(|r| r.dist_to_s.is_some_and(|d| d < 1e-3))
        {
            let _ = writeln!(out, "first k with d(x^k, S) < 1e-3: {}", k.k);
        }
        let _ = writeln!(out);
        for (label, r) in [
            (
                "(i)   iterates stay on the imaginary axis, |Re x^k| < 1e-10",
                &self.on_axis,
            ),
            (
                "(ii)  d(x^{k+1}, 0) <= max(lambda_k, d(x^k, 0)) + 1e-12",
                &self.per_step,
            ),
            (
                "(iii) d(x^N, S) <= max lambda over the last 10% of steps",
                &self.final_distance,
            ),
        ] {
            match r {
                Ok(()) => {
                    let _ = writeln!(out, "PASS {label}");
                }
                Err(why) => {
                    let _ = writeln!(out, "FAIL {label}: {why}");
                }
            }
        }
        out
    }
}

pub fn reproduce(x0: Point, steps: usize) -> Result<Reproduction, SolveError> {
    let cfg = SolveConfig::new(
        DISK,
        OracleSpec::TwoBusemann,
        StepSchedule::harmonic(1.0).expect("positive coefficient"),
        x0,
    )
    .max_iters(steps);
    let trace = run(&cfg)?;

    let on_axis = match trace.records.iter().find(|r| r.point.x.abs() >= 1e-10) {
        None => Ok(()),
        Some(r) => Err(format!("Re x^{} = {:e}", r.k, r.point.x)),
    };
    let per_step = trace
        .records
        .windows(2)
        .find_map(|w| {
            let d0 = DISK.distance(w[0].point, Point::ORIGIN);
            let d1 = DISK.distance(w[1].point, Point::ORIGIN);
            (d1 > w[0].lambda_k.max(d0) + 1e-12)
                .then(|| format!("k = {}: {d1:e} > max({:e}, {d0:e})", w[0].k, w[0].lambda_k))
        })
        .map_or(Ok(()), Err);
    let taken = trace.summary.steps;
    let tail = taken.div_ceil(10);
    let final_distance = match (taken, trace.summary.final_dist_to_s) {
        (0, _) => Ok(()),
        (_, None) => Err("distance to S unavailable".to_string()),
        (_, Some(d)) => {
            let bound = (taken - tail..taken)
                .map(|k| cfg.schedule.step(k))
                .fold(0.0, f64::max);
            if d <= bound {
                Ok(())
            } else {
                Err(format!("{d:e} > {bound:e}"))
            }
        }
    };
    Ok(Reproduction {
        trace,
        on_axis,
        per_step,
        final_distance,
    })
}
