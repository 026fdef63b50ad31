//! Executable comparison inequalities and randomized certification.
//!
//! Every check produces a *margin* (right-hand side minus left-hand side);
//! a nonnegative margin certifies the inequality for that sample. Margins
//! are aggregated into an [`InequalityReport`] by [`fuzz`], which derives an
//! independent ChaCha stream for every sample index so sequential and
//! parallel runs produce identical reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::VerifyError;
use crate::exec::Exec;
use crate::geometry::{Manifold, Point};
use crate::oracles::SubgradientOracle;
use crate::solver::RunTrace;

/// Tolerance for closed-form identities.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Tolerance for inequality margins fed by exp/log chains.
pub const MARGIN_TOL: f64 = 1e-10;
/// Default number of net points used to check the δ-ball hypothesis.
pub const DEFAULT_NET: usize = 1000;
/// Default radius cap for sampled vertices.
pub const DEFAULT_RADIUS_CAP: f64 = 5.0;
/// How far along a ray the sublevel check searches.
pub const SUBLEVEL_RADIUS_CAP: f64 = 50.0;

/// Independent generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Point at distance `r ≤ cap` from `center`, uniform with respect to
/// area, in a uniformly random direction.
pub fn sample_point<R: Rng>(rng: &mut R, m: &Manifold, center: Point, cap: f64) -> Point {
    let u: f64 = rng.random();
    let phi = rng.random::<f64>() * std::f64::consts::TAU;
    let k = m.curvature_bound();
    let r = if m.is_disk() {
        (1.0 + u * ((k * cap).cosh() - 1.0)).acosh() / k
    } else {
        cap * u.sqrt()
    };
    m.geodesic(center, phi, r)
}

/// A geodesic triangle with its side lengths and the angle at `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleSample {
    pub p: Point,
    pub q: Point,
    pub r: Point,
    /// `d(q, r)`, opposite `p`
    pub a: f64,
    /// `d(p, r)`
    pub b: f64,
    /// `d(p, q)`
    pub c: f64,
    /// Angle at `p` between the sides toward `q` and `r`.
    pub alpha: f64,
}

impl TriangleSample {
    pub fn from_vertices(m: &Manifold, p: Point, q: Point, r: Point) -> Result<Self, VerifyError> {
        let alpha = m.angle(&m.log(p, q), &m.log(p, r))?;
        Ok(TriangleSample {
            p,
            q,
            r,
            a: m.distance(q, r),
            b: m.distance(p, r),
            c: m.distance(p, q),
            alpha,
        })
    }

    /// Vertices drawn area-uniformly within `cap` of the origin, redrawn
    /// until every side is at least `min_side`.
    pub fn sample<R: Rng>(rng: &mut R, m: &Manifold, cap: f64, min_side: f64) -> Self {
        loop {
            let p = sample_point(rng, m, Point::ORIGIN, cap);
            let q = sample_point(rng, m, Point::ORIGIN, cap);
            let r = sample_point(rng, m, Point::ORIGIN, cap);
            if let Ok(t) = TriangleSample::from_vertices(m, p, q, r) {
                if t.a.min(t.b).min(t.c) >= min_side {
                    return t;
                }
            }
        }
    }
}

/// `[cosh κb cosh κc − sinh κb sinh κc cos α] − cosh κa`.
///
/// Nonnegative when the curvature is at least `−κ²`, nonpositive when it is
/// at most `−κ²`. The bracket is evaluated as
/// `cosh κ(b−c) + 2 sinh κb sinh κc sin²(α/2)`, which has no cancellation.
pub fn law_of_cosines_margin(kappa: f64, t: &TriangleSample) -> Result<f64, VerifyError> {
    for side in [t.a, t.b, t.c] {
        if side < 1e-12 {
            return Err(VerifyError::DegenerateTriangle(side));
        }
    }
    let half = (t.alpha / 2.0).sin();
    let rhs = (kappa * (t.b - t.c)).cosh()
        + 2.0 * (kappa * t.b).sinh() * (kappa * t.c).sinh() * half * half;
    Ok(rhs - (kappa * t.a).cosh())
}

/// Inputs of the key contraction inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KeyConfig {
    pub x: Point,
    pub x_bar: Point,
    pub delta: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisMode {
    Analytic,
    NetChecked,
    None,
}

impl HypothesisMode {
    pub fn as_str(self) -> &'static str {
        match self {
            HypothesisMode::Analytic => "analytic",
            HypothesisMode::NetChecked => "net-checked",
            HypothesisMode::None => "none",
        }
    }
}

/// Largest value of `f` seen on `n` points of the sphere `∂B[center, δ]`
/// plus the centre, together with a Lipschitz bound on what the net can
/// miss. A convex function attains its maximum over a geodesic ball on
/// the boundary sphere.
pub fn net_sup(
    m: &Manifold,
    oracle: &dyn SubgradientOracle,
    center: Point,
    delta: f64,
    n: usize,
) -> (f64, f64) {
    let n = n.max(1);
    let mut sup = oracle.value(m, center);
    for j in 0..n {
        let theta = std::f64::consts::TAU * j as f64 / n as f64;
        sup = sup.max(oracle.value(m, m.geodesic(center, theta, delta)));
    }
    let k = m.curvature_bound();
    let circumference = if m.is_disk() {
        std::f64::consts::TAU * (k * delta).sinh() / k
    } else {
        std::f64::consts::TAU * delta
    };
    let slack = oracle
        .lipschitz(m)
        .map_or(0.0, |l| l * circumference / (2.0 * n as f64));
    (sup, slack)
}

/// Checks `d(x, x̄) ≥ 2δ` and `f(u) < f(x)` on `B[x̄, δ]`.
///
/// The ball condition is decided analytically when `analytic_sup` is
/// given and otherwise on an `n_net`-point net, padded by the oracle's
/// Lipschitz constant times the net spacing.
pub fn check_key_hypotheses(
    m: &Manifold,
    oracle: &dyn SubgradientOracle,
    cfg: &KeyConfig,
    analytic_sup: Option<f64>,
    n_net: usize,
) -> Result<HypothesisMode, VerifyError> {
    let d = m.distance(cfg.x, cfg.x_bar);
    if d < 2.0 * cfg.delta {
        return Err(VerifyError::TooClose {
            distance: d,
            delta: cfg.delta,
        });
    }
    let fx = oracle.value(m, cfg.x);
    let (sup, mode) = match analytic_sup {
        Some(s) => (s, HypothesisMode::Analytic),
        None => {
            let (s, slack) = net_sup(m, oracle, cfg.x_bar, cfg.delta, n_net);
            (s + slack, HypothesisMode::NetChecked)
        }
    };
    if sup < fx {
        Ok(mode)
    } else {
        Err(VerifyError::HypothesisUnverified)
    }
}

/// `sup_{B[x̄, δ]} d(·, anchor) = d(x̄, anchor) + δ`.
pub fn distance_sup_on_ball(m: &Manifold, anchor: Point, x_bar: Point, delta: f64) -> f64 {
    m.distance(x_bar, anchor) + delta
}

/// Result of one key-inequality evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyOutcome {
    pub margin: f64,
    pub z: Point,
    pub mode: HypothesisMode,
}

/// `cosh κd(x,x̄) cosh κd(z,x) − sinh κd(z,x) sinh(κδ/2) − cosh κd(z,x̄)`
/// for `z = exp_x(λ s)`, `s = −g/‖g‖`.
pub fn key_theorem_margin(
    kappa: f64,
    m: &Manifold,
    oracle: &dyn SubgradientOracle,
    cfg: &KeyConfig,
    analytic_sup: Option<f64>,
    n_net: usize,
) -> Result<KeyOutcome, VerifyError> {
    let mode = check_key_hypotheses(m, oracle, cfg, analytic_sup, n_net)?;
    let g = oracle.eval(m, cfg.x).subgradient;
    let gn = m.norm(&g);
    if gn == 0.0 {
        return Err(VerifyError::HypothesisUnverified);
    }
    let z = m.exp(&g.scale(-cfg.lambda / gn));
    let margin = key_margin_from_distances(
        kappa,
        m.distance(cfg.x, cfg.x_bar),
        m.distance(z, cfg.x),
        m.distance(z, cfg.x_bar),
        cfg.delta,
    );
    Ok(KeyOutcome { margin, z, mode })
}

/// The key inequality as a function of the three distances.
pub fn key_margin_from_distances(kappa: f64, d_x: f64, step: f64, d_z: f64, delta: f64) -> f64 {
    // cosh κD cosh κλ = cosh κ(D−λ) + sinh κD sinh κλ
    (kappa * (d_x - step)).cosh()
        + (kappa * step).sinh() * ((kappa * d_x).sinh() - (kappa * delta / 2.0).sinh())
        - (kappa * d_z).cosh()
}

/// Margins of the two per-step contraction inequalities
/// `cosh κd_{k+1} ≤ cosh κd_k cosh κλ_k − sinh κλ_k sinh(κδ/2)` and
/// `(cosh κd_{k+1} − cosh κd_k)/sinh κλ_k ≤ cosh κd_k tanh(κλ_k/2) − sinh(κδ/2)`.
pub fn per_step_margins(kappa: f64, d_k: f64, d_next: f64, lambda: f64, delta: f64) -> (f64, f64) {
    let first = key_margin_from_distances(kappa, d_k, lambda, d_next, delta);
    let ch_k = (kappa * d_k).cosh();
    let sh_l = (kappa * lambda).sinh();
    let second = ch_k * (kappa * lambda / 2.0).tanh()
        - (kappa * delta / 2.0).sinh()
        - ((kappa * d_next).cosh() - ch_k) / sh_l;
    (first, second)
}

/// One harvested step of a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarvestedStep {
    pub k: usize,
    pub d_k: f64,
    pub d_next: f64,
    pub lambda: f64,
    pub margin_contraction: f64,
    pub margin_contraction_scaled: f64,
}

/// Evaluates the per-step margins on every consecutive pair of records
/// whose key hypotheses (with the fixed `x̄`, `δ`) hold at `x^k`.
///
/// Records must be consecutive in `k` (`record_every = 1`); other pairs
/// are skipped.
pub fn harvest_per_step(
    trace: &RunTrace,
    oracle: &dyn SubgradientOracle,
    x_bar: Point,
    delta: f64,
    n_net: usize,
) -> Vec<HarvestedStep> {
    let m = trace.config.manifold;
    let kappa = m.curvature_bound();
    trace
        .records
        .windows(2)
        .filter(|w| w[1].k == w[0].k + 1)
        .filter_map(|w| {
            let cfg = KeyConfig {
                x: w[0].point,
                x_bar,
                delta,
                lambda: w[0].lambda_k,
            };
            check_key_hypotheses(&m, oracle, &cfg, None, n_net).ok()?;
            let d_k = m.distance(w[0].point, x_bar);
            let d_next = m.distance(w[1].point, x_bar);
            let (a, b) = per_step_margins(kappa, d_k, d_next, w[0].lambda_k, delta);
            Some(HarvestedStep {
                k: w[0].k,
                d_k,
                d_next,
                lambda: w[0].lambda_k,
                margin_contraction: a,
                margin_contraction_scaled: b,
            })
        })
        .collect()
}

/// `f(y) − f(x) − ⟨g, log_x y⟩` for the oracle's subgradient `g` at `x`.
pub fn subgradient_slack(m: &Manifold, oracle: &dyn SubgradientOracle, x: Point, y: Point) -> f64 {
    let e = oracle.eval(m, x);
    let ip = m
        .inner(&e.subgradient, &m.log(x, y))
        .expect("subgradient and log share the base point");
    oracle.value(m, y) - e.value - ip
}

/// `|(f(exp_p(h u)) − f(p))/h − ⟨grad f(p), u⟩|` for the unit direction at
/// Euclidean angle `direction`.
pub fn finite_difference_error(
    m: &Manifold,
    oracle: &dyn SubgradientOracle,
    p: Point,
    direction: f64,
    h: f64,
) -> f64 {
    let e = oracle.eval(m, p);
    let moved = m.geodesic(p, direction, h);
    let fd = (oracle.value(m, moved) - e.value) / h;
    let (s, c) = direction.sin_cos();
    let u = crate::geometry::Tangent {
        base: p,
        vx: c,
        vy: s,
    };
    let u = u.scale(1.0 / m.norm(&u));
    let exact = m.inner(&e.subgradient, &u).expect("same base");
    (fd - exact).abs()
}

/// Outcome of the compact-sublevel certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SublevelReport {
    pub level: f64,
    pub root: Point,
    /// First radius along each ray where `f` exceeds the level.
    pub witness_radii: Vec<f64>,
    pub max_witness_radius: f64,
}

/// Walks `n_rays` evenly spaced geodesic rays out of a solution point and
/// records where `f` first exceeds `level`. A ray that reaches
/// [`SUBLEVEL_RADIUS_CAP`] (or the last representable disk radius) without
/// exceeding it yields [`VerifyError::WitnessNotFound`].
pub fn sublevel_boundedness_check(
    m: &Manifold,
    oracle: &dyn SubgradientOracle,
    level: f64,
    n_rays: usize,
) -> Result<SublevelReport, VerifyError> {
    if n_rays == 0 {
        return Err(VerifyError::NoSamples);
    }
    let root = oracle
        .solution_set(m)
        .anchor()
        .ok_or(VerifyError::NoSolutionPoint)?;
    const STEP: f64 = 0.05;
    let mut witness_radii = Vec::with_capacity(n_rays);
    for ray in 0..n_rays {
        let angle = std::f64::consts::TAU * ray as f64 / n_rays as f64;
        let f_at = |t: f64| oracle.value(m, m.geodesic(root, angle, t));
        let mut lo = 0.0;
        let mut found = None;
        let mut t = STEP;
        while t <= SUBLEVEL_RADIUS_CAP + 1e-9 {
            let (s, c) = angle.sin_cos();
            let probe = crate::geometry::Tangent {
                base: root,
                vx: c,
                vy: s,
            };
            let probe = probe.scale(t / m.norm(&probe));
            let (pt, drift) = m.exp_traced(&probe);
            if drift {
                break;
            }
            if oracle.value(m, pt) > level {
                found = Some(t);
                break;
            }
            lo = t;
            t += STEP;
        }
        let Some(mut hi) = found else {
            return Err(VerifyError::WitnessNotFound { ray, angle });
        };
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if f_at(mid) > level {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        witness_radii.push(hi);
    }
    let max_witness_radius = witness_radii.iter().copied().fold(0.0, f64::max);
    Ok(SublevelReport {
        level,
        root,
        witness_radii,
        max_witness_radius,
    })
}

/// Fixed margin bins: `< −tol`, `[−tol, 0)`, `[0, 1e-12)`, `[1e-12, 1e-9)`,
/// `[1e-9, 1e-6)`, `[1e-6, 1e-3)`, `[1e-3, 1)`, `≥ 1`.
pub const HISTOGRAM_BINS: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub check: String,
    #[serde(rename = "n")]
    pub n_samples: usize,
    #[serde(rename = "violations")]
    pub n_violations: usize,
    pub worst_margin: Option<f64>,
    pub tolerance: f64,
    pub seed: u64,
    pub hypothesis_mode: HypothesisMode,
    /// Samples whose hypotheses could not be established.
    pub rejected: usize,
    pub histogram: [usize; HISTOGRAM_BINS],
}

impl InequalityReport {
    pub fn empty(check: &str, tolerance: f64, seed: u64, mode: HypothesisMode) -> Self {
        InequalityReport {
            check: check.to_string(),
            n_samples: 0,
            n_violations: 0,
            worst_margin: None,
            tolerance,
            seed,
            hypothesis_mode: mode,
            rejected: 0,
            histogram: [0; HISTOGRAM_BINS],
        }
    }

    fn bin(&self, margin: f64) -> usize {
        if margin < -self.tolerance {
            0
        } else if margin < 0.0 {
            1
        } else {
            let edges = [1e-12, 1e-9, 1e-6, 1e-3, 1.0];
            2 + edges.iter().take_while(|&&e| margin >= e).count()
        }
    }

    /// Adds one margin. NaN counts as a violation.
    pub fn record(&mut self, margin: f64) {
        self.n_samples += 1;
        if margin.is_nan() {
            self.n_violations += 1;
            self.histogram[0] += 1;
            self.worst_margin = Some(f64::NEG_INFINITY);
            return;
        }
        if margin < -self.tolerance {
            self.n_violations += 1;
        }
        let b = self.bin(margin);
        self.histogram[b] += 1;
        self.worst_margin = Some(self.worst_margin.map_or(margin, |w| w.min(margin)));
    }

    /// Associative, commutative merge of two reports of the same check.
    pub fn merge(mut self, other: InequalityReport) -> InequalityReport {
        self.n_samples += other.n_samples;
        self.n_violations += other.n_violations;
        self.rejected += other.rejected;
        for (a, b) in self.histogram.iter_mut().zip(other.histogram) {
            *a += b;
        }
        self.worst_margin = match (self.worst_margin, other.worst_margin) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.n_violations == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Random key-theorem configuration for `d(·, anchor)` with the analytic
/// hypothesis check; anchor, `x̄` and `x` lie within distance 6 of the origin.
pub fn random_key_distance<R: Rng>(rng: &mut R, m: &Manifold) -> Sample {
    let anchor = sample_point(rng, m, Point::ORIGIN, 2.0);
    let x_bar = sample_point(rng, m, anchor, 1.0);
    let x = sample_point(rng, m, x_bar, 3.0);
    let d = m.distance(x, x_bar);
    let cfg = KeyConfig {
        x,
        x_bar,
        delta: rng.random::<f64>() * d / 2.0,
        lambda: 3.0 * rng.random::<f64>(),
    };
    let sup = distance_sup_on_ball(m, anchor, x_bar, cfg.delta);
    let f = crate::oracles::distance_oracle(anchor);
    match key_theorem_margin(m.curvature_bound(), m, &f, &cfg, Some(sup), DEFAULT_NET) {
        Ok(o) => Sample::Margin(o.margin),
        Err(_) => Sample::Rejected,
    }
}

/// Random key-theorem configuration for the two-Busemann example with `x̄`
/// near the x-axis and the hypothesis checked on a net of `n_net` points.
pub fn random_key_two_busemann<R: Rng>(rng: &mut R, m: &Manifold, n_net: usize) -> Sample {
    let x_bar = m.geodesic(Point::ORIGIN, 0.0, 4.0 * rng.random::<f64>() - 2.0);
    let x_bar = m.geodesic(
        x_bar,
        std::f64::consts::FRAC_PI_2,
        0.3 * (rng.random::<f64>() - 0.5),
    );
    let x = sample_point(rng, m, x_bar, 3.0);
    let d = m.distance(x, x_bar);
    let cfg = KeyConfig {
        x,
        x_bar,
        delta: rng.random::<f64>() * d / 2.0,
        lambda: 2.0 * rng.random::<f64>(),
    };
    let f = crate::oracles::TwoBusemann;
    match key_theorem_margin(m.curvature_bound(), m, &f, &cfg, None, n_net) {
        Ok(o) => Sample::Margin(o.margin),
        Err(_) => Sample::Rejected,
    }
}

/// Result of evaluating one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sample {
    Margin(f64),
    /// The sample's hypotheses did not hold; it is counted but not judged.
    Rejected,
}

/// Evaluates `check` on `n` independently seeded samples and aggregates the
/// margins. Deterministic in `seed`, whatever the execution mode.
pub fn fuzz<F>(
    name: &str,
    n: usize,
    seed: u64,
    tolerance: f64,
    mode: HypothesisMode,
    exec: Exec,
    check: F,
) -> Result<InequalityReport, VerifyError>
where
    F: Fn(&mut ChaCha8Rng) -> Sample + Send + Sync,
{
    if n == 0 {
        return Err(VerifyError::NoSamples);
    }
    let identity = InequalityReport::empty(name, tolerance, seed, mode);
    Ok(exec.map_reduce(
        n,
        identity.clone(),
        |i| {
            let mut rng = sample_rng(seed, i);
            let mut r = identity.clone();
            match check(&mut rng) {
                Sample::Margin(m) => r.record(m),
                Sample::Rejected => r.rejected += 1,
            }
            r
        },
        InequalityReport::merge,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{ball_hinge, distance_oracle, TwoBusemann};
    use approx::assert_abs_diff_eq;

    const DISK: Manifold = Manifold::PoincareDisk;

    fn naive_law_of_cosines(kappa: f64, t: &TriangleSample) -> f64 {
        (kappa * t.b).cosh() * (kappa * t.c).cosh()
            - (kappa * t.b).sinh() * (kappa * t.c).sinh() * t.alpha.cos()
            - (kappa * t.a).cosh()
    }

    #[test]
    fn collinear_triangle_has_zero_margin() {
        let p = Point::ORIGIN;
        let q = DISK.geodesic(p, 0.3, 1.7);
        let r = DISK.geodesic(p, 0.3, 0.6);
        let t = TriangleSample::from_vertices(&DISK, p, q, r).unwrap();
        assert!(t.alpha < 1e-12);
        assert_abs_diff_eq!(t.a, (t.b - t.c).abs(), epsilon = 1e-12);
        assert_abs_diff_eq!(
            law_of_cosines_margin(1.0, &t).unwrap(),
            0.0,
            epsilon = 1e-11
        );
    }

    #[test]
    fn stable_form_matches_naive_form() {
        let mut rng = sample_rng(3, 0);
        for _ in 0..500 {
            let t = TriangleSample::sample(&mut rng, &DISK, 2.0, 1e-3);
            for kappa in [0.5, 1.0, 2.0] {
                let a = law_of_cosines_margin(kappa, &t).unwrap();
                let b = naive_law_of_cosines(kappa, &t);
                assert_abs_diff_eq!(a, b, epsilon = 1e-9 * (kappa * 4.0f64).cosh().powi(2));
            }
        }
    }

    #[test]
    fn degenerate_triangle_rejected() {
        let p = Point::new(0.1, 0.1).unwrap();
        let q = DISK.geodesic(p, 1.0, 0.5);
        let t = TriangleSample::from_vertices(&DISK, p, q, DISK.geodesic(p, 2.0, 0.5)).unwrap();
        let bad = TriangleSample { a: 1e-13, ..t };
        assert!(matches!(
            law_of_cosines_margin(1.0, &bad),
            Err(VerifyError::DegenerateTriangle(_))
        ));
    }

    #[test]
    fn margin_grows_with_kappa() {
        let mut rng = sample_rng(17, 1);
        for _ in 0..300 {
            let t = TriangleSample::sample(&mut rng, &DISK, 3.0, 1e-3);
            let mut prev = law_of_cosines_margin(1.0, &t).unwrap();
            for kappa in [1.25, 1.5, 2.0, 3.0] {
                let cur = law_of_cosines_margin(kappa, &t).unwrap();
                assert!(cur >= prev - 1e-9 * prev.abs().max(1.0));
                prev = cur;
            }
        }
    }

    #[test]
    fn per_step_consistency_and_limits() {
        for &(d, dn, l, delta) in &[
            (1.0, 0.8, 0.2, 0.3),
            (3.0, 2.5, 0.5, 1.0),
            (0.5, 0.45, 0.05, 0.1),
        ] {
            let (a, b) = per_step_margins(1.0, d, dn, l, delta);
            assert_abs_diff_eq!(b, a / f64::sinh(l), epsilon = 1e-12 * (1.0 + b.abs()));
        }
        // λ → 0 with d_{k+1} = d_k: the first margin vanishes, the divided one tends to −sinh(κδ/2)
        let (a, b) = per_step_margins(1.0, 2.0, 2.0, 1e-8, 0.4);
        assert_abs_diff_eq!(a, 0.0, epsilon = 1e-8);
        assert_abs_diff_eq!(b, -(0.2f64).sinh(), epsilon = 1e-7);
    }

    #[test]
    fn half_angle_identity() {
        let mut t: f64 = 1e-6;
        while t <= 20.0 {
            let lhs = (t / 2.0).tanh();
            // cosh t − 1 = (eᵗ − 1)² / (2eᵗ), free of cancellation for small t
            let rhs = t.exp_m1().powi(2) / (2.0 * t.exp()) / t.sinh();
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
            t *= 1.1;
        }
    }

    #[test]
    fn key_margin_zero_step_limit() {
        let d = 1.3;
        let m = key_margin_from_distances(1.0, d, 0.0, d, 0.2);
        assert_eq!(m, 0.0);
    }

    #[test]
    fn key_hypothesis_paths() {
        let anchor = Point::ORIGIN;
        let f = distance_oracle(anchor);
        let x_bar = DISK.geodesic(anchor, 0.5, 0.2);
        let x = DISK.geodesic(anchor, 2.0, 2.0);
        let cfg = KeyConfig {
            x,
            x_bar,
            delta: 0.3,
            lambda: 0.7,
        };
        let sup = distance_sup_on_ball(&DISK, anchor, x_bar, 0.3);
        let out = key_theorem_margin(1.0, &DISK, &f, &cfg, Some(sup), 0).unwrap();
        assert_eq!(out.mode, HypothesisMode::Analytic);
        assert!(out.margin >= -MARGIN_TOL);
        let net = key_theorem_margin(1.0, &DISK, &f, &cfg, None, 200).unwrap();
        assert_eq!(net.mode, HypothesisMode::NetChecked);
        assert_eq!(net.margin, out.margin);

        let close = KeyConfig { delta: 1.5, ..cfg };
        assert!(matches!(
            key_theorem_margin(1.0, &DISK, &f, &close, None, 10),
            Err(VerifyError::TooClose { .. })
        ));
        // x inside the level set of the ball
        let inner = KeyConfig {
            x: DISK.geodesic(anchor, 2.0, 0.25),
            delta: 0.1,
            ..cfg
        };
        assert_eq!(
            key_theorem_margin(1.0, &DISK, &f, &inner, None, 100).err(),
            Some(VerifyError::HypothesisUnverified)
        );
    }

    #[test]
    fn net_sup_bounds_two_busemann() {
        // on the disk f = 2 ln cosh h, so the sup over B[c, δ] is 2 ln cosh(h_c + δ)
        let mut rng = sample_rng(8, 0);
        for _ in 0..100 {
            let c = sample_point(&mut rng, &DISK, Point::ORIGIN, 2.0);
            let delta = 0.05 + rng.random::<f64>();
            let exact = 2.0 * (DISK.distance_to_x_axis(c) + delta).cosh().ln();
            let (sup, slack) = net_sup(&DISK, &TwoBusemann, c, delta, 1000);
            assert!(sup <= exact + 1e-12);
            assert!(sup + slack >= exact);
        }
    }

    #[test]
    fn sublevel_examples() {
        let f = distance_oracle(Point::ORIGIN);
        let rep = sublevel_boundedness_check(&DISK, &f, 1.0, 16).unwrap();
        for r in &rep.witness_radii {
            assert_abs_diff_eq!(*r, 1.0, epsilon = 1e-9);
        }
        let h = ball_hinge(Point::ORIGIN, 0.7).unwrap();
        let rep = sublevel_boundedness_check(&DISK, &h, 1.0, 16).unwrap();
        assert_abs_diff_eq!(rep.max_witness_radius, 1.7, epsilon = 1e-9);
        match sublevel_boundedness_check(&DISK, &TwoBusemann, 1.0, 8) {
            Err(VerifyError::WitnessNotFound { ray, angle }) => {
                assert_eq!(ray, 0);
                assert_eq!(angle, 0.0);
            }
            other => panic!("expected a missing witness, got {other:?}"),
        }
        assert!(sublevel_boundedness_check(&DISK, &f, 1.0, 0).is_err());
    }

    #[test]
    fn report_bins_and_merge() {
        let mut a = InequalityReport::empty("t", 1e-9, 1, HypothesisMode::None);
        a.record(-1.0);
        a.record(-1e-10);
        a.record(5e-13);
        let mut b = InequalityReport::empty("t", 1e-9, 1, HypothesisMode::None);
        b.record(0.5);
        b.record(2.0);
        b.rejected = 3;
        let m = a.clone().merge(b.clone());
        assert_eq!(m, b.merge(a));
        assert_eq!(m.n_samples, 5);
        assert_eq!(m.n_violations, 1);
        assert_eq!(m.worst_margin, Some(-1.0));
        assert_eq!(m.histogram, [1, 1, 1, 0, 0, 0, 1, 1]);
        assert_eq!(m.rejected, 3);
        assert!(!m.passed());
    }

    #[test]
    fn fuzz_rejects_zero_and_is_deterministic() {
        let check = |rng: &mut ChaCha8Rng| Sample::Margin(rng.random::<f64>() - 0.001);
        assert_eq!(
            fuzz(
                "u",
                0,
                1,
                1e-9,
                HypothesisMode::None,
                Exec::Sequential,
                check
            )
            .err(),
            Some(VerifyError::NoSamples)
        );
        let a = fuzz(
            "u",
            5000,
            42,
            1e-9,
            HypothesisMode::None,
            Exec::Sequential,
            check,
        )
        .unwrap();
        let b = fuzz(
            "u",
            5000,
            42,
            1e-9,
            HypothesisMode::None,
            Exec::Parallel,
            check,
        )
        .unwrap();
        let c = fuzz(
            "u",
            5000,
            42,
            1e-9,
            HypothesisMode::None,
            Exec::Parallel,
            check,
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert!(a.n_violations > 0);
    }
}
