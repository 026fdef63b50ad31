//! Geodesically convex objectives with subgradient oracles.
//!
//! Busemann functions are only provided for rays from the origin; their
//! closed forms on the disk are
//! `B(x) = ln(|x−η|²/(1−|x|²))` and
//! `grad B(p) = (1−|p|²)/2 · (p−η)/(1−ηp̄)`.
//! On a scaled disk both are divided/multiplied by κ so the gradient keeps
//! unit norm; on the plane `B(x) = −⟨x, η⟩`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::OracleError;
use crate::geometry::{one_minus_sq, Manifold, Point, Tangent};

/// Below this distance the distance oracle treats the query as the anchor
/// itself and returns the zero subgradient.
pub const AT_ANCHOR_TOL: f64 = 1e-12;

/// Names accepted by [`OracleSpec::from_name`].
pub const REGISTRY: [&str; 4] = ["two-busemann", "ball-hinge", "distance", "busemann"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub subgradient: Tangent,
}

/// Description of `S = argmin f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SolutionSet {
    SinglePoint { point: Point },
    XAxisDiameter,
    ClosedBall { center: Point, radius: f64 },
    Unknown,
}

impl SolutionSet {
    /// `d(p, S)`, exact for every kind except `Unknown`.
    pub fn distance_to(&self, m: &Manifold, p: Point) -> Option<f64> {
        match *self {
            SolutionSet::SinglePoint { point } => Some(m.distance(p, point)),
            SolutionSet::XAxisDiameter => Some(m.distance_to_x_axis(p)),
            SolutionSet::ClosedBall { center, radius } => {
                Some((m.distance(p, center) - radius).max(0.0))
            }
            SolutionSet::Unknown => None,
        }
    }

    /// Nearest point of `S` to `p`.
    pub fn project(&self, m: &Manifold, p: Point) -> Option<Point> {
        match *self {
            SolutionSet::SinglePoint { point } => Some(point),
            SolutionSet::XAxisDiameter => Some(m.project_to_x_axis(p)),
            SolutionSet::ClosedBall { center, radius } => {
                let d = m.distance(p, center);
                if d <= radius {
                    Some(p)
                } else {
                    let v = m.log(center, p);
                    Some(m.exp(&v.scale(radius / d)))
                }
            }
            SolutionSet::Unknown => None,
        }
    }

    pub fn is_compact(&self) -> bool {
        matches!(
            self,
            SolutionSet::SinglePoint { .. } | SolutionSet::ClosedBall { .. }
        )
    }

    /// A representative point of `S`.
    pub fn anchor(&self) -> Option<Point> {
        match *self {
            SolutionSet::SinglePoint { point } => Some(point),
            SolutionSet::XAxisDiameter => Some(Point::ORIGIN),
            SolutionSet::ClosedBall { center, .. } => Some(center),
            SolutionSet::Unknown => None,
        }
    }
}

/// Value plus one element of `∂f(x)`.
pub trait SubgradientOracle: Send + Sync {
    fn name(&self) -> &str;

    fn eval(&self, m: &Manifold, x: Point) -> Evaluation;

    fn value(&self, m: &Manifold, x: Point) -> f64 {
        self.eval(m, x).value
    }

    /// `f* = inf f`, when known in closed form.
    fn known_min(&self, _m: &Manifold) -> Option<f64> {
        None
    }

    fn solution_set(&self, _m: &Manifold) -> SolutionSet {
        SolutionSet::Unknown
    }

    /// A global Lipschitz constant for `f`, when one is known.
    fn lipschitz(&self, _m: &Manifold) -> Option<f64> {
        None
    }

    /// Whether `f` is differentiable everywhere (so the subgradient is the gradient).
    fn is_smooth(&self) -> bool {
        false
    }
}

impl fmt::Debug for dyn SubgradientOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubgradientOracle({})", self.name())
    }
}

pub type SharedOracle = Arc<dyn SubgradientOracle>;

fn unit_direction(eta: Complex64) -> Result<Complex64, OracleError> {
    let n = eta.norm();
    if !n.is_finite() || (n - 1.0).abs() > 1e-9 {
        return Err(OracleError::NotUnitDirection(n));
    }
    Ok(eta / n)
}

/// Value of the origin-based Busemann function `B⁰_η` on the unit disk.
pub fn busemann_value(eta: Complex64, x: Point) -> f64 {
    let z = x.to_complex();
    (z - eta).norm_sqr().ln() - one_minus_sq(z).ln()
}

/// Euclidean components of `grad B⁰_η(p)` on the unit disk.
pub fn busemann_gradient(eta: Complex64, p: Point) -> Tangent {
    let z = p.to_complex();
    let g = (z - eta) / (1.0 - eta * z.conj()) * (one_minus_sq(z) / 2.0);
    Tangent::from_complex(p, g)
}

/// Busemann function of the ray from the origin toward `eta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Busemann {
    eta: Complex64,
}

impl Busemann {
    pub fn new(eta: Complex64) -> Result<Self, OracleError> {
        Ok(Busemann {
            eta: unit_direction(eta)?,
        })
    }

    pub fn direction(&self) -> Complex64 {
        self.eta
    }
}

impl SubgradientOracle for Busemann {
    fn name(&self) -> &str {
        "busemann"
    }

    fn eval(&self, m: &Manifold, x: Point) -> Evaluation {
        match *m {
            Manifold::EuclideanPlane => {
                let z = x.to_complex();
                Evaluation {
                    value: -(z.re * self.eta.re + z.im * self.eta.im),
                    subgradient: Tangent::from_complex(x, -self.eta),
                }
            }
            _ => {
                let k = m.curvature_bound();
                Evaluation {
                    value: busemann_value(self.eta, x) / k,
                    subgradient: busemann_gradient(self.eta, x).scale(k),
                }
            }
        }
    }

    fn lipschitz(&self, _m: &Manifold) -> Option<f64> {
        Some(1.0)
    }

    fn is_smooth(&self) -> bool {
        true
    }
}

/// `f = B_β + B_α` for the opposite rays along the x-axis.
///
/// On the disk `f(p) = ln(1 + sinh²h)` where `h` is the distance from `p`
/// to the x-axis, so `f ≥ 0` with equality exactly on the axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoBusemann;

/// The worked two-Busemann example.
pub fn example_two_busemann() -> TwoBusemann {
    TwoBusemann
}

impl SubgradientOracle for TwoBusemann {
    fn name(&self) -> &str {
        "two-busemann"
    }

    fn eval(&self, m: &Manifold, x: Point) -> Evaluation {
        let plus = Complex64::new(1.0, 0.0);
        match *m {
            Manifold::EuclideanPlane => Evaluation {
                value: 0.0,
                subgradient: Tangent::zero(x),
            },
            _ => {
                let k = m.curvature_bound();
                let z = x.to_complex();
                let sinh_h = 2.0 * x.y / one_minus_sq(z);
                let g = busemann_gradient(plus, x).components()
                    + busemann_gradient(-plus, x).components();
                Evaluation {
                    value: (sinh_h * sinh_h).ln_1p() / k,
                    subgradient: Tangent::from_complex(x, g * k),
                }
            }
        }
    }

    fn known_min(&self, m: &Manifold) -> Option<f64> {
        m.is_disk().then_some(0.0)
    }

    fn solution_set(&self, m: &Manifold) -> SolutionSet {
        if m.is_disk() {
            SolutionSet::XAxisDiameter
        } else {
            SolutionSet::Unknown
        }
    }

    fn lipschitz(&self, _m: &Manifold) -> Option<f64> {
        Some(2.0)
    }

    fn is_smooth(&self) -> bool {
        true
    }
}

/// `f(p) = max(0, d(p, center) − r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallHinge {
    center: Point,
    radius: f64,
}

pub fn ball_hinge(center: Point, radius: f64) -> Result<BallHinge, OracleError> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(OracleError::InvalidRadius(radius));
    }
    Ok(BallHinge { center, radius })
}

impl SubgradientOracle for BallHinge {
    fn name(&self) -> &str {
        "ball-hinge"
    }

    fn eval(&self, m: &Manifold, x: Point) -> Evaluation {
        let d = m.distance(x, self.center);
        if d <= self.radius {
            // zero is in the subdifferential on the closed ball, boundary included
            return Evaluation {
                value: 0.0,
                subgradient: Tangent::zero(x),
            };
        }
        Evaluation {
            value: d - self.radius,
            subgradient: m.log(x, self.center).scale(-1.0 / d),
        }
    }

    fn known_min(&self, _m: &Manifold) -> Option<f64> {
        Some(0.0)
    }

    fn solution_set(&self, _m: &Manifold) -> SolutionSet {
        SolutionSet::ClosedBall {
            center: self.center,
            radius: self.radius,
        }
    }

    fn lipschitz(&self, _m: &Manifold) -> Option<f64> {
        Some(1.0)
    }
}

/// `f(p) = d(p, anchor)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceOracle {
    anchor: Point,
}

pub fn distance_oracle(anchor: Point) -> DistanceOracle {
    DistanceOracle { anchor }
}

impl DistanceOracle {
    pub fn anchor(&self) -> Point {
        self.anchor
    }
}

impl SubgradientOracle for DistanceOracle {
    fn name(&self) -> &str {
        "distance"
    }

    fn eval(&self, m: &Manifold, x: Point) -> Evaluation {
        let d = m.distance(x, self.anchor);
        let subgradient = if d <= AT_ANCHOR_TOL {
            Tangent::zero(x)
        } else {
            m.log(x, self.anchor).scale(-1.0 / d)
        };
        Evaluation {
            value: d,
            subgradient,
        }
    }

    fn known_min(&self, _m: &Manifold) -> Option<f64> {
        Some(0.0)
    }

    fn solution_set(&self, _m: &Manifold) -> SolutionSet {
        SolutionSet::SinglePoint { point: self.anchor }
    }

    fn lipschitz(&self, _m: &Manifold) -> Option<f64> {
        Some(1.0)
    }
}

/// Positive combination `Σ wᵢ fᵢ`.
pub struct WeightedSum {
    parts: Vec<(f64, SharedOracle)>,
    known_min: Option<f64>,
    solution_set: SolutionSet,
}

pub fn combine_sum(
    oracles: Vec<SharedOracle>,
    weights: Vec<f64>,
) -> Result<WeightedSum, OracleError> {
    if oracles.len() != weights.len() {
        return Err(OracleError::LengthMismatch {
            oracles: oracles.len(),
            weights: weights.len(),
        });
    }
    if oracles.is_empty() {
        return Err(OracleError::Empty);
    }
    if let Some(&w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
        return Err(OracleError::InvalidWeight(w));
    }
    Ok(WeightedSum {
        parts: weights.into_iter().zip(oracles).collect(),
        known_min: None,
        solution_set: SolutionSet::Unknown,
    })
}

impl WeightedSum {
    /// Attach a known optimum and solution set.
    pub fn with_solution(mut self, known_min: f64, solution_set: SolutionSet) -> Self {
        self.known_min = Some(known_min);
        self.solution_set = solution_set;
        self
    }
}

impl SubgradientOracle for WeightedSum {
    fn name(&self) -> &str {
        "sum"
    }

    fn eval(&self, m: &Manifold, x: Point) -> Evaluation {
        let mut value = 0.0;
        let mut g = Complex64::new(0.0, 0.0);
        for (w, oracle) in &self.parts {
            let e = oracle.eval(m, x);
            value += w * e.value;
            g += e.subgradient.components() * *w;
        }
        Evaluation {
            value,
            subgradient: Tangent::from_complex(x, g),
        }
    }

    fn known_min(&self, _m: &Manifold) -> Option<f64> {
        self.known_min
    }

    fn solution_set(&self, _m: &Manifold) -> SolutionSet {
        self.solution_set
    }

    fn lipschitz(&self, m: &Manifold) -> Option<f64> {
        self.parts
            .iter()
            .map(|(w, o)| o.lipschitz(m).map(|l| w * l))
            .sum()
    }

    fn is_smooth(&self) -> bool {
        self.parts.iter().all(|(_, o)| o.is_smooth())
    }
}

/// Serializable description of a bundled oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum OracleSpec {
    TwoBusemann,
    BallHinge { center: Point, radius: f64 },
    Distance { anchor: Point },
    Busemann { eta: (f64, f64) },
}

impl OracleSpec {
    pub fn name(&self) -> &'static str {
        match self {
            OracleSpec::TwoBusemann => "two-busemann",
            OracleSpec::BallHinge { .. } => "ball-hinge",
            OracleSpec::Distance { .. } => "distance",
            OracleSpec::Busemann { .. } => "busemann",
        }
    }

    pub fn build(&self) -> Result<SharedOracle, OracleError> {
        Ok(match *self {
            OracleSpec::TwoBusemann => Arc::new(TwoBusemann),
            OracleSpec::BallHinge { center, radius } => Arc::new(ball_hinge(center, radius)?),
            OracleSpec::Distance { anchor } => Arc::new(distance_oracle(anchor)),
            OracleSpec::Busemann { eta } => Arc::new(Busemann::new(Complex64::new(eta.0, eta.1))?),
        })
    }

    /// Looks up a registry name; parameters are filled from `param`, which
    /// returns `None` for absent keys.
    pub fn from_name<F>(name: &str, mut param: F) -> Result<Self, OracleError>
    where
        F: FnMut(&str) -> Option<Complex64>,
    {
        let point = |z: Option<Complex64>| -> Result<Point, OracleError> {
            let z = z.unwrap_or_default();
            Ok(Point::plane(z.re, z.im)?)
        };
        match name {
            "two-busemann" => Ok(OracleSpec::TwoBusemann),
            "ball-hinge" => {
                let center = point(param("center"))?;
                let radius = param("radius").map(|r| r.re).unwrap_or(f64::NAN);
                ball_hinge(center, radius)?;
                Ok(OracleSpec::BallHinge { center, radius })
            }
            "distance" => Ok(OracleSpec::Distance {
                anchor: point(param("anchor"))?,
            }),
            "busemann" => {
                let eta = unit_direction(param("eta").unwrap_or(Complex64::new(1.0, 0.0)))?;
                Ok(OracleSpec::Busemann {
                    eta: (eta.re, eta.im),
                })
            }
            other => Err(OracleError::Unknown(other.to_string())),
        }
    }
}
