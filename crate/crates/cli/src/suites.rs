//! Named verification suites behind `hypersub verify`.

use hypersub::exec::Exec;
use hypersub::oracles::{ball_hinge, busemann_gradient, distance_oracle, Busemann, TwoBusemann};
use hypersub::verify::{
    finite_difference_error, fuzz, harvest_per_step, law_of_cosines_margin, random_key_distance,
    random_key_two_busemann, sample_point, sample_rng, sublevel_boundedness_check, HypothesisMode,
    InequalityReport, Sample, TriangleSample, DEFAULT_NET, DEFAULT_RADIUS_CAP, IDENTITY_TOL,
    MARGIN_TOL,
};
use hypersub::{run, Manifold, OracleSpec, Point, SolveConfig, StepSchedule, SubgradientOracle};
use hypersub::{SolveError, VerifyError};
use num_complex::Complex64;
use rand::Rng;

pub const SUITES: [&str; 6] = [
    "law-of-cosines",
    "key-theorem",
    "per-step",
    "sublevel",
    "gradcheck",
    "all",
];

const DISK: Manifold = Manifold::PoincareDisk;

#[derive(Debug, Clone, Copy)]
pub struct Options {
    /// Overrides each suite's default sample count.
    pub n: Option<usize>,
    pub seed: u64,
    /// Overrides each check's default tolerance.
    pub tol: Option<f64>,
    pub exec: Exec,
}

impl Options {
    fn n(&self, default: usize) -> usize {
        self.n.unwrap_or(default)
    }

    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}` (known: {list})", list = SUITES.join(", "))]
    Unknown(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

pub fn run_suite(name: &str, opts: &Options) -> Result<Vec<InequalityReport>, SuiteError> {
    match name {
        "law-of-cosines" => law_of_cosines(opts),
        "key-theorem" => key_theorem(opts),
        "per-step" => per_step(opts),
        "sublevel" => sublevel(opts),
        "gradcheck" => gradcheck(opts),
        "all" => {
            let mut out = Vec::new();
            for s in &SUITES[..SUITES.len() - 1] {
                out.extend(run_suite(s, opts)?);
            }
            Ok(out)
        }
        other => Err(SuiteError::Unknown(other.to_string())),
    }
}

fn law_of_cosines(o: &Options) -> Result<Vec<InequalityReport>, SuiteError> {
    let n = o.n(100_000);
    let triangle = |rng: &mut rand_chacha::ChaCha8Rng| {
        TriangleSample::sample(rng, &DISK, DEFAULT_RADIUS_CAP, 1e-3)
    };
    // true curvature: both directions are tight, so −|margin| is recorded
    let equality = fuzz(
        "law-of-cosines-equality",
        n,
        o.seed,
        o.tol(IDENTITY_TOL),
        HypothesisMode::None,
        o.exec,
        |rng| {
            Sample::Margin(
                -law_of_cosines_margin(1.0, &triangle(rng))
                    .expect("sides ≥ 1e-3")
                    .abs(),
            )
        },
    )?;
    let lower = fuzz(
        "law-of-cosines-lower",
        n,
        o.seed,
        o.tol(1e-12),
        HypothesisMode::None,
        o.exec,
        |rng| Sample::Margin(law_of_cosines_margin(2.0, &triangle(rng)).expect("sides ≥ 1e-3")),
    )?;
    Ok(vec![equality, lower])
}

fn key_theorem(o: &Options) -> Result<Vec<InequalityReport>, SuiteError> {
    let n = o.n(10_000);
    let tol = o.tol(MARGIN_TOL);
    let dist = fuzz(
        "key-theorem-distance",
        n,
        o.seed,
        tol,
        HypothesisMode::Analytic,
        o.exec,
        |rng| random_key_distance(rng, &DISK),
    )?;
    let busemann = fuzz(
        "key-theorem-two-busemann",
        n,
        o.seed,
        tol,
        HypothesisMode::NetChecked,
        o.exec,
        |rng| random_key_two_busemann(rng, &DISK, DEFAULT_NET),
    )?;
    Ok(vec![dist, busemann])
}

/// Two-Busemann runs from random starts; every step whose hypotheses hold
/// on the net around the projection of `x⁰` contributes both margins.
fn per_step(o: &Options) -> Result<Vec<InequalityReport>, SuiteError> {
    let runs = o.n(200);
    if runs == 0 {
        return Err(VerifyError::NoSamples.into());
    }
    let identity = InequalityReport::empty(
        "per-step",
        o.tol(MARGIN_TOL),
        o.seed,
        HypothesisMode::NetChecked,
    );
    let report = o.exec.map_reduce(
        runs,
        Ok(identity.clone()),
        |i| -> Result<InequalityReport, SolveError> {
            let mut rng = sample_rng(o.seed, i);
            let x0 = sample_point(&mut rng, &DISK, Point::ORIGIN, 3.0);
            let schedule = if i % 2 == 0 {
                StepSchedule::harmonic(1.0)
            } else {
                StepSchedule::sqrt_harmonic(0.5)
            }
            .expect("positive coefficient");
            let cfg = SolveConfig::new(DISK, OracleSpec::TwoBusemann, schedule, x0).max_iters(100);
            let trace = run(&cfg)?;
            let x_bar = DISK.project_to_x_axis(x0);
            let mut r = identity.clone();
            for h in harvest_per_step(&trace, &TwoBusemann, x_bar, 0.05, DEFAULT_NET) {
                r.record(h.margin_contraction);
                r.record(h.margin_contraction_scaled);
            }
            Ok(r)
        },
        |a, b| Ok(a?.merge(b?)),
    )?;
    Ok(vec![report])
}

/// Witness radii against their closed forms, and the unbounded two-Busemann
/// sublevel set, which must be reported as such.
fn sublevel(o: &Options) -> Result<Vec<InequalityReport>, SuiteError> {
    let rays = o.n(360);
    let mut compact = InequalityReport::empty(
        "sublevel-compact",
        o.tol(IDENTITY_TOL),
        o.seed,
        HypothesisMode::None,
    );
    let cases: [(Box<dyn SubgradientOracle>, f64); 2] = [
        (Box::new(distance_oracle(Point::ORIGIN)), 1.0),
        (
            Box::new(ball_hinge(Point::ORIGIN, 0.3).expect("positive radius")),
            1.3,
        ),
    ];
    for (oracle, expected) in &cases {
        let report = sublevel_boundedness_check(&DISK, oracle.as_ref(), 1.0, rays)?;
        for w in report.witness_radii {
            compact.record(-(w - expected).abs());
        }
    }
    let mut unbounded =
        InequalityReport::empty("sublevel-unbounded", 0.0, o.seed, HypothesisMode::None);
    match sublevel_boundedness_check(&DISK, &TwoBusemann, 1.0, rays) {
        Err(VerifyError::WitnessNotFound { .. }) => unbounded.record(0.0),
        Ok(_) => unbounded.record(-1.0),
        Err(e) => return Err(e.into()),
    }
    Ok(vec![compact, unbounded])
}

/// Busemann and two-Busemann gradients against geodesic finite differences
/// (h = 1e-5) and the unit-norm property of Busemann gradients.
fn gradcheck(o: &Options) -> Result<Vec<InequalityReport>, SuiteError> {
    let n = o.n(10_000);
    let fd = fuzz(
        "gradcheck-fd",
        n,
        o.seed,
        o.tol(1e-4),
        HypothesisMode::None,
        o.exec,
        |rng| {
            let eta = Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU);
            let p = sample_point(rng, &DISK, Point::ORIGIN, 3.0);
            let dir = rng.random::<f64>() * std::f64::consts::TAU;
            let b = Busemann::new(eta).expect("unit direction");
            let err = finite_difference_error(&DISK, &b, p, dir, 1e-5)
                .max(finite_difference_error(&DISK, &TwoBusemann, p, dir, 1e-5));
            Sample::Margin(-err)
        },
    )?;
    let norm = fuzz(
        "gradcheck-unit-norm",
        n,
        o.seed,
        o.tol(MARGIN_TOL),
        HypothesisMode::None,
        o.exec,
        |rng| {
            let eta = Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU);
            let p = sample_point(rng, &DISK, Point::ORIGIN, 6.0);
            Sample::Margin(-(DISK.norm(&busemann_gradient(eta, p)) - 1.0).abs())
        },
    )?;
    Ok(vec![fd, norm])
}
