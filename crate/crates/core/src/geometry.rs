//! Double-precision geometry of the Poincaré disk, its curvature-scaled
//! variants and the Euclidean plane.
//!
//! Points are stored as Euclidean coordinates and read as complex numbers
//! `x + iy`. Tangent vectors carry Euclidean components; their length is
//! measured in the metric of whichever [`Manifold`] is asked. All three
//! models are conformal to the plane, so angles are Euclidean angles.
//!
//! Geodesics of the disk are images of the diameter ray `t ↦ tanh(t/2)`
//! under the Möbius isometry that carries the origin to the base point.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;

/// Radius at which an exp result is considered to have drifted onto the
/// boundary.
pub const DRIFT_RADIUS: f64 = 1.0 - 1e-15;
/// Radius drifted results are pulled back to.
pub const CLAMP_RADIUS: f64 = 1.0 - 1e-12;

/// A point of the model. For the disk models the invariant `x² + y² < 1`
/// is enforced by every checked constructor; plane points only need to be
/// finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    /// Point of the open unit disk.
    pub fn new(x: f64, y: f64) -> Result<Self, GeometryError> {
        if !x.is_finite() || !y.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if x.hypot(y) >= 1.0 {
            return Err(GeometryError::OutsideDisk { x, y });
        }
        Ok(Point { x, y })
    }

    /// Point of the Euclidean plane (no disk restriction).
    pub fn plane(x: f64, y: f64) -> Result<Self, GeometryError> {
        if !x.is_finite() || !y.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        Ok(Point { x, y })
    }

    pub fn from_complex(z: Complex64) -> Result<Self, GeometryError> {
        Self::new(z.re, z.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// Euclidean modulus `|p|`.
    pub fn modulus(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub(crate) fn raw(z: Complex64) -> Self {
        Point { x: z.re, y: z.im }
    }
}

/// `1 − |z|²`, factored to keep relative accuracy near the boundary.
pub fn one_minus_sq(z: Complex64) -> f64 {
    let r = z.norm();
    (1.0 - r) * (1.0 + r)
}

/// Tangent vector at `base` with Euclidean components `(vx, vy)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tangent {
    pub base: Point,
    pub vx: f64,
    pub vy: f64,
}

impl Tangent {
    pub fn new(base: Point, vx: f64, vy: f64) -> Result<Self, GeometryError> {
        if !vx.is_finite() || !vy.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        Ok(Tangent { base, vx, vy })
    }

    pub fn zero(base: Point) -> Self {
        Tangent {
            base,
            vx: 0.0,
            vy: 0.0,
        }
    }

    pub(crate) fn from_complex(base: Point, v: Complex64) -> Self {
        Tangent {
            base,
            vx: v.re,
            vy: v.im,
        }
    }

    pub fn components(&self) -> Complex64 {
        Complex64::new(self.vx, self.vy)
    }

    /// Euclidean length of the components (not the manifold norm).
    pub fn euclidean_len(&self) -> f64 {
        self.vx.hypot(self.vy)
    }

    pub fn is_zero(&self) -> bool {
        self.vx == 0.0 && self.vy == 0.0
    }

    pub fn scale(&self, s: f64) -> Self {
        Tangent {
            base: self.base,
            vx: self.vx * s,
            vy: self.vy * s,
        }
    }

    /// Componentwise sum; both vectors must share a base point.
    pub fn add(&self, other: &Tangent) -> Result<Self, GeometryError> {
        if self.base != other.base {
            return Err(GeometryError::BaseMismatch);
        }
        Ok(Tangent {
            base: self.base,
            vx: self.vx + other.vx,
            vy: self.vy + other.vy,
        })
    }
}

/// Orientation-preserving isometry of the disk
/// `z ↦ (ω z + p) / (p̄ ω z + 1)` with `|ω| = 1`, sending the origin to `p`.
///
/// With a direction parameter `ξ` the general form
/// `(|ξ|ξz + |ξ|²p) / (|ξ|p̄ξz + |ξ|²)` reduces to this with `ω = ξ/|ξ|`.
/// The canonical choice (real positive `ξ`) gives `ω = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    p: Complex64,
    rot: Complex64,
}

impl Mobius {
    /// Canonical isometry carrying the origin to `p`.
    pub fn to_origin(p: Point) -> Self {
        Mobius {
            p: p.to_complex(),
            rot: Complex64::new(1.0, 0.0),
        }
    }

    /// Isometry with direction parameter `xi` (any nonzero complex number).
    pub fn with_direction(p: Point, xi: Complex64) -> Result<Self, GeometryError> {
        let n = xi.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(GeometryError::ZeroVector);
        }
        Ok(Mobius {
            p: p.to_complex(),
            rot: xi / n,
        })
    }

    pub fn base(&self) -> Point {
        Point::raw(self.p)
    }

    pub fn forward_c(&self, z: Complex64) -> Complex64 {
        let wz = self.rot * z;
        (wz + self.p) / (self.p.conj() * wz + 1.0)
    }

    pub fn inverse_c(&self, w: Complex64) -> Complex64 {
        (w - self.p) / (1.0 - self.p.conj() * w) / self.rot
    }

    pub fn forward(&self, z: Point) -> Point {
        Point::raw(self.forward_c(z.to_complex()))
    }

    pub fn inverse(&self, w: Point) -> Point {
        Point::raw(self.inverse_c(w.to_complex()))
    }

    /// Complex derivative of the forward map at `z`.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let d = self.p.conj() * self.rot * z + 1.0;
        self.rot * one_minus_sq(self.p) / (d * d)
    }

    /// Differential of the forward map applied to a tangent at `v.base`.
    pub fn push_forward(&self, v: &Tangent) -> Tangent {
        let z = v.base.to_complex();
        Tangent::from_complex(
            Point::raw(self.forward_c(z)),
            v.components() * self.derivative(z),
        )
    }

    /// Differential of the inverse map applied to a tangent at `v.base`.
    pub fn pull_back(&self, v: &Tangent) -> Tangent {
        let w = v.base.to_complex();
        let z = self.inverse_c(w);
        Tangent::from_complex(Point::raw(z), v.components() / self.derivative(z))
    }
}

/// The model space the method runs on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum Manifold {
    /// Unit disk with metric `4⟨u,v⟩/(1−|p|²)²`, curvature −1.
    PoincareDisk,
    /// Disk metric divided by `kappa²`: curvature `−kappa²`, distances `d/kappa`.
    ScaledDisk { kappa: f64 },
    /// Flat plane.
    EuclideanPlane,
}

impl Manifold {
    pub fn scaled_disk(kappa: f64) -> Result<Self, GeometryError> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(GeometryError::InvalidCurvature(kappa));
        }
        Ok(Manifold::ScaledDisk { kappa })
    }

    /// The κ in the sectional curvature bound `sec ≥ −κ²`.
    pub fn curvature_bound(&self) -> f64 {
        match *self {
            Manifold::PoincareDisk => 1.0,
            Manifold::ScaledDisk { kappa } => kappa,
            Manifold::EuclideanPlane => 0.0,
        }
    }

    pub fn is_disk(&self) -> bool {
        !matches!(self, Manifold::EuclideanPlane)
    }

    /// Multiplier converting manifold lengths into unscaled disk lengths.
    fn disk_units(&self) -> f64 {
        match *self {
            Manifold::ScaledDisk { kappa } => kappa,
            _ => 1.0,
        }
    }

    pub fn point(&self, x: f64, y: f64) -> Result<Point, GeometryError> {
        if self.is_disk() {
            Point::new(x, y)
        } else {
            Point::plane(x, y)
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.point(p.x, p.y).is_ok()
    }

    /// Ratio between manifold length and Euclidean length at `p`.
    pub fn conformal_factor(&self, p: Point) -> f64 {
        match *self {
            Manifold::EuclideanPlane => 1.0,
            _ => 2.0 / (one_minus_sq(p.to_complex()) * self.disk_units()),
        }
    }

    pub fn norm(&self, v: &Tangent) -> f64 {
        self.conformal_factor(v.base) * v.euclidean_len()
    }

    pub fn inner(&self, u: &Tangent, v: &Tangent) -> Result<f64, GeometryError> {
        if u.base != v.base {
            return Err(GeometryError::BaseMismatch);
        }
        let c = self.conformal_factor(u.base);
        Ok(c * c * (u.vx * v.vx + u.vy * v.vy))
    }

    /// Geodesic distance.
    ///
    /// On the disk this is `arccosh(1 + 2|p−q|²/((1−|p|²)(1−|q|²)))`,
    /// evaluated through the equivalent `2 asinh(|p−q|/√((1−|p|²)(1−|q|²)))`
    /// which keeps full precision for nearby points.
    pub fn distance(&self, p: Point, q: Point) -> f64 {
        let (pc, qc) = (p.to_complex(), q.to_complex());
        match *self {
            Manifold::EuclideanPlane => (pc - qc).norm(),
            _ => {
                let chord = (pc - qc).norm();
                if chord == 0.0 {
                    return 0.0;
                }
                let s = chord / (one_minus_sq(pc) * one_minus_sq(qc)).sqrt();
                2.0 * s.asinh() / self.disk_units()
            }
        }
    }

    /// `exp_p(v)`. Drift onto the boundary is clamped silently; use
    /// [`Manifold::exp_traced`] to observe it.
    pub fn exp(&self, v: &Tangent) -> Point {
        self.exp_traced(v).0
    }

    /// `exp_p(v)` together with a flag recording whether the result had to
    /// be clamped back inside the disk.
    pub fn exp_traced(&self, v: &Tangent) -> (Point, bool) {
        let p = v.base;
        let len = v.euclidean_len();
        if len == 0.0 {
            return (p, false);
        }
        match *self {
            Manifold::EuclideanPlane => (Point::raw(p.to_complex() + v.components()), false),
            _ => {
                // disk-unit length of v; identical Euclidean components for every disk model
                let t_disk = 2.0 * len / one_minus_sq(p.to_complex());
                let dir = v.components() / len;
                let at_origin = dir * (t_disk / 2.0).tanh();
                clamp_to_disk(Mobius::to_origin(p).forward_c(at_origin))
            }
        }
    }

    /// `exp_p(t·u)` for a unit-norm direction `u` given by its Euclidean
    /// angle.
    pub fn geodesic(&self, p: Point, direction: f64, t: f64) -> Point {
        let (s, c) = direction.sin_cos();
        let e = Tangent {
            base: p,
            vx: c,
            vy: s,
        };
        let unit = e.scale(1.0 / self.norm(&e));
        self.exp(&unit.scale(t))
    }

    /// `exp_p⁻¹(q)`: the tangent at `p` whose geodesic reaches `q` at time 1.
    pub fn log(&self, p: Point, q: Point) -> Tangent {
        if p == q {
            return Tangent::zero(p);
        }
        match *self {
            Manifold::EuclideanPlane => Tangent::from_complex(p, q.to_complex() - p.to_complex()),
            _ => {
                let mob = Mobius::to_origin(p);
                let w = mob.inverse_c(q.to_complex());
                let r = w.norm();
                if r == 0.0 {
                    return Tangent::zero(p);
                }
                let t_disk = 2.0 * r.atanh();
                // unit-speed vector at the origin has Euclidean length 1/2,
                // and the canonical isometry's differential there is 1 − |p|²
                let at_origin = w / r * (t_disk / 2.0);
                Tangent::from_complex(p, at_origin * one_minus_sq(p.to_complex()))
            }
        }
    }

    /// Angle in `[0, π]` between two nonzero tangents at the same base.
    pub fn angle(&self, u: &Tangent, v: &Tangent) -> Result<f64, GeometryError> {
        if u.base != v.base {
            return Err(GeometryError::BaseMismatch);
        }
        if u.is_zero() || v.is_zero() {
            return Err(GeometryError::ZeroVector);
        }
        let dot = u.vx * v.vx + u.vy * v.vy;
        let cross = u.vx * v.vy - u.vy * v.vx;
        Ok(cross.abs().atan2(dot))
    }

    /// Distance from `p` to the horizontal diameter (the x-axis).
    ///
    /// On the disk `sinh d = 2|Im p| / (1 − |p|²)`.
    pub fn distance_to_x_axis(&self, p: Point) -> f64 {
        match *self {
            Manifold::EuclideanPlane => p.y.abs(),
            _ => {
                let s = 2.0 * p.y.abs() / one_minus_sq(p.to_complex());
                s.asinh() / self.disk_units()
            }
        }
    }

    /// Foot of the perpendicular from `p` to the x-axis.
    pub fn project_to_x_axis(&self, p: Point) -> Point {
        match *self {
            Manifold::EuclideanPlane => Point { x: p.x, y: 0.0 },
            _ => {
                // the real translation T_s(z) = (z+s)/(1+sz) whose inverse puts p on the imaginary axis
                if p.x == 0.0 {
                    return Point::ORIGIN;
                }
                let a = 1.0 + p.x * p.x + p.y * p.y;
                let s = 2.0 * p.x / (a + (a * a - 4.0 * p.x * p.x).sqrt());
                Point { x: s, y: 0.0 }
            }
        }
    }
}

fn clamp_to_disk(z: Complex64) -> (Point, bool) {
    let r = z.norm();
    if r >= DRIFT_RADIUS || !r.is_finite() {
        let dir = if r > 0.0 && r.is_finite() {
            z / r
        } else {
            Complex64::new(1.0, 0.0)
        };
        (Point::raw(dir * CLAMP_RADIUS), true)
    } else {
        (Point::raw(z), false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_disk_point(rng: &mut ChaCha8Rng, max_radius: f64) -> Point {
        let r: f64 = rng.random::<f64>() * max_radius;
        let phi: f64 = rng.random::<f64>() * 2.0 * PI;
        Point::new(r * phi.cos(), r * phi.sin()).unwrap()
    }

    // Textbook arccosh form, kept independent of the asinh path.
    fn acosh_distance(p: Point, q: Point) -> f64 {
        let d2 = (p.x - q.x).powi(2) + (p.y - q.y).powi(2);
        let np = 1.0 - p.x * p.x - p.y * p.y;
        let nq = 1.0 - q.x * q.x - q.y * q.y;
        (1.0 + 2.0 * d2 / (np * nq)).acosh()
    }

    #[test]
    fn rejects_boundary_and_exterior() {
        assert!(Point::new(1.0, 0.0).is_err());
        assert!(Point::new(0.8, 0.8).is_err());
        assert!(Point::new(f64::NAN, 0.0).is_err());
        assert!(Point::new(0.6, 0.79).is_ok());
        assert!(Point::plane(3.0, -7.0).is_ok());
        assert!(Manifold::scaled_disk(0.0).is_err());
        assert!(Manifold::scaled_disk(-1.0).is_err());
    }

    #[test]
    fn distance_examples() {
        let m = Manifold::PoincareDisk;
        assert_eq!(m.distance(Point::ORIGIN, Point::ORIGIN), 0.0);
        let q = Point::new(0.5f64.tanh(), 0.0).unwrap();
        assert_abs_diff_eq!(m.distance(Point::ORIGIN, q), 1.0, epsilon = 1e-12);
        let s = Manifold::scaled_disk(2.0).unwrap();
        let oracle = m.distance(Point::ORIGIN, q) / 2.0;
        assert_abs_diff_eq!(s.distance(Point::ORIGIN, q), oracle, epsilon = 1e-15);
        assert_abs_diff_eq!(s.distance(Point::ORIGIN, q), 0.5, epsilon = 1e-12);
        let e = Manifold::EuclideanPlane;
        assert_eq!(
            e.distance(
                Point::plane(0.0, 0.0).unwrap(),
                Point::plane(3.0, 4.0).unwrap()
            ),
            5.0
        );
    }

    #[test]
    fn distance_matches_acosh_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = Manifold::PoincareDisk;
        for _ in 0..2000 {
            let p = random_disk_point(&mut rng, 0.95);
            let q = random_disk_point(&mut rng, 0.95);
            let d = m.distance(p, q);
            if d > 1e-3 {
                assert_abs_diff_eq!(d, acosh_distance(p, q), epsilon = 1e-9 * d.max(1.0));
            }
        }
    }

    #[test]
    fn exp_along_diameter_ray() {
        let m = Manifold::PoincareDisk;
        let eta = Complex64::from_polar(1.0, 0.7);
        for t in [0.1, 1.0, 3.0] {
            // unit tangent at the origin has Euclidean length 1/2
            let v = Tangent::from_complex(Point::ORIGIN, eta * (t / 2.0));
            let got = m.exp(&v).to_complex();
            let want = eta * (t / 2.0).tanh();
            assert_abs_diff_eq!((got - want).norm(), 0.0, epsilon = 1e-15);
        }
        let p = Point::new(0.3, -0.2).unwrap();
        for model in [
            Manifold::PoincareDisk,
            Manifold::ScaledDisk { kappa: 3.0 },
            Manifold::EuclideanPlane,
        ] {
            assert_eq!(model.exp(&Tangent::zero(p)), p);
        }
    }

    #[test]
    fn log_examples() {
        let m = Manifold::PoincareDisk;
        let eta = Complex64::from_polar(1.0, -2.1);
        let q = Point::raw(eta * 0.5f64.tanh());
        let v = m.log(Point::ORIGIN, q);
        assert_abs_diff_eq!(m.norm(&v), 1.0, epsilon = 1e-12);
        let dir = v.components() / v.euclidean_len();
        assert_abs_diff_eq!((dir - eta).norm(), 0.0, epsilon = 1e-12);
        let p = Point::new(-0.4, 0.1).unwrap();
        assert!(m.log(p, p).is_zero());
    }

    #[test]
    fn angle_examples() {
        let m = Manifold::ScaledDisk { kappa: 0.5 };
        let base = Point::new(0.2, 0.6).unwrap();
        let u = Tangent::new(base, 0.3, -0.1).unwrap();
        assert_abs_diff_eq!(m.angle(&u, &u).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.angle(&u, &u.scale(-1.0)).unwrap(), PI, epsilon = 1e-15);
        let w = Tangent::new(base, 0.1, 0.3).unwrap();
        assert_abs_diff_eq!(m.angle(&u, &w).unwrap(), PI / 2.0, epsilon = 1e-15);
        assert_eq!(
            m.angle(&u, &Tangent::zero(base)),
            Err(GeometryError::ZeroVector)
        );
    }

    #[test]
    fn mobius_examples() {
        let p = Point::new(0.45, -0.3).unwrap();
        let mob = Mobius::to_origin(p);
        let f0 = mob.forward(Point::ORIGIN);
        assert_abs_diff_eq!(f0.x, p.x, epsilon = 1e-16);
        assert_abs_diff_eq!(f0.y, p.y, epsilon = 1e-16);
        let back = mob.inverse(p);
        assert_abs_diff_eq!(back.modulus(), 0.0, epsilon = 1e-16);

        // general direction parameter: M(0) = p still, differential at 0 along ξ
        let xi = Complex64::new(-0.2, 0.35);
        let rot = Mobius::with_direction(p, xi).unwrap();
        assert_abs_diff_eq!(
            (rot.forward_c(Complex64::new(0.0, 0.0)) - p.to_complex()).norm(),
            0.0,
            epsilon = 1e-16
        );
        let d0 = rot.derivative(Complex64::new(0.0, 0.0));
        assert_abs_diff_eq!(
            (d0 / d0.norm() - xi / xi.norm()).norm(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn push_forward_and_pull_back_are_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = Manifold::PoincareDisk;
        for _ in 0..500 {
            let p = random_disk_point(&mut rng, 0.9);
            let z = random_disk_point(&mut rng, 0.9);
            let mob = Mobius::to_origin(p);
            let v = Tangent::new(z, rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5).unwrap();
            let pushed = mob.push_forward(&v);
            // isometry: norms preserved
            assert_abs_diff_eq!(
                m.norm(&pushed),
                m.norm(&v),
                epsilon = 1e-10 * m.norm(&v).max(1.0)
            );
            let back = mob.pull_back(&pushed);
            assert_abs_diff_eq!(back.vx, v.vx, epsilon = 1e-12);
            assert_abs_diff_eq!(back.vy, v.vy, epsilon = 1e-12);
        }
    }

    #[test]
    fn distance_to_axis_examples() {
        let m = Manifold::PoincareDisk;
        assert_eq!(m.distance_to_x_axis(Point::new(0.7, 0.0).unwrap()), 0.0);
        for q in [0.1, 0.5, 0.9, -0.6] {
            let p = Point::new(0.0, q).unwrap();
            let want = 2.0 * f64::atanh(q.abs());
            assert_abs_diff_eq!(m.distance_to_x_axis(p), want, epsilon = 1e-12);
            assert_abs_diff_eq!(m.distance(Point::ORIGIN, p), want, epsilon = 1e-12);
        }
    }

    // Golden-section minimisation of s ↦ d(p, (s, 0)).
    fn axis_distance_oracle(m: &Manifold, p: Point) -> f64 {
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let f = |s: f64| m.distance(p, Point { x: s, y: 0.0 });
        let (mut a, mut b) = (-1.0 + 1e-12, 1.0 - 1e-12);
        let mut c = b - g * (b - a);
        let mut d = a + g * (b - a);
        for _ in 0..200 {
            if f(c) < f(d) {
                b = d;
            } else {
                a = c;
            }
            c = b - g * (b - a);
            d = a + g * (b - a);
        }
        f(0.5 * (a + b))
    }

    #[test]
    fn distance_to_axis_matches_golden_section() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let m = Manifold::PoincareDisk;
        for _ in 0..300 {
            let p = random_disk_point(&mut rng, 0.9);
            let oracle = axis_distance_oracle(&m, p);
            assert_abs_diff_eq!(m.distance_to_x_axis(p), oracle, epsilon = 1e-8);
            let foot = m.project_to_x_axis(p);
            assert_abs_diff_eq!(m.distance(p, foot), oracle, epsilon = 1e-8);
        }
    }

    #[test]
    fn drift_is_clamped_and_reported() {
        let m = Manifold::PoincareDisk;
        let p = Point::new(0.5, 0.0).unwrap();
        let v = Tangent::new(p, 100.0, 0.0).unwrap();
        let (q, drift) = m.exp_traced(&v);
        assert!(drift);
        assert_abs_diff_eq!(q.modulus(), CLAMP_RADIUS, epsilon = 1e-15);
        let (_, calm) = m.exp_traced(&Tangent::new(p, 0.01, 0.0).unwrap());
        assert!(!calm);
    }

    #[test]
    fn flat_model_is_plain_vector_arithmetic() {
        let m = Manifold::EuclideanPlane;
        let p = Point::plane(2.0, 0.0).unwrap();
        let q = Point::plane(-1.0, 4.0).unwrap();
        let v = m.log(p, q);
        assert_eq!((v.vx, v.vy), (-3.0, 4.0));
        assert_eq!(m.norm(&v), 5.0);
        assert_eq!(m.exp(&v), q);
        assert_eq!(m.curvature_bound(), 0.0);
        assert_eq!(m.distance_to_x_axis(q), 4.0);
    }
}
