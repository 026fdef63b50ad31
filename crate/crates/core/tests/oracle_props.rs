use hypersub::exec::Exec;
use hypersub::oracles::{
    ball_hinge, busemann_gradient, combine_sum, distance_oracle, Busemann, SharedOracle,
    TwoBusemann,
};
use hypersub::verify::{
    finite_difference_error, fuzz, sample_point, sample_rng, subgradient_slack, HypothesisMode,
    Sample,
};
use hypersub::{Manifold, OracleSpec, Point, SolutionSet, SubgradientOracle};
use num_complex::Complex64;
use rand::Rng;
use std::sync::Arc;

const DISK: Manifold = Manifold::PoincareDisk;

fn bundled() -> Vec<(Manifold, SharedOracle)> {
    let c = Point::new(0.2, -0.3).unwrap();
    let mut out: Vec<(Manifold, SharedOracle)> = Vec::new();
    for m in [DISK, Manifold::ScaledDisk { kappa: 2.0 }] {
        out.push((m, Arc::new(TwoBusemann)));
        out.push((m, Arc::new(ball_hinge(c, 0.3).unwrap())));
        out.push((m, Arc::new(distance_oracle(c))));
        out.push((
            m,
            Arc::new(Busemann::new(Complex64::new(0.6, -0.8)).unwrap()),
        ));
    }
    let plane = Manifold::EuclideanPlane;
    out.push((
        plane,
        Arc::new(distance_oracle(Point::plane(1.0, 2.0).unwrap())),
    ));
    out.push((
        plane,
        Arc::new(Busemann::new(Complex64::new(0.0, 1.0)).unwrap()),
    ));
    let sum = combine_sum(
        vec![
            Arc::new(TwoBusemann),
            Arc::new(distance_oracle(Point::ORIGIN)),
        ],
        vec![0.5, 2.0],
    )
    .unwrap()
    .with_solution(
        0.0,
        SolutionSet::SinglePoint {
            point: Point::ORIGIN,
        },
    );
    out.push((DISK, Arc::new(sum)));
    out
}

#[test]
fn subgradient_inequality_holds_for_every_bundled_oracle() {
    for (m, oracle) in bundled() {
        let report = fuzz(
            "subineq",
            10_000,
            11,
            1e-9,
            HypothesisMode::None,
            Exec::default(),
            |rng| {
                let x = sample_point(rng, &m, Point::ORIGIN, 3.0);
                let y = sample_point(rng, &m, Point::ORIGIN, 3.0);
                Sample::Margin(subgradient_slack(&m, oracle.as_ref(), x, y))
            },
        )
        .unwrap();
        assert!(
            report.passed(),
            "{} on {:?}: {}",
            oracle.name(),
            m,
            report.to_json()
        );
    }
}

#[test]
fn smooth_oracles_match_finite_differences() {
    for (m, oracle) in bundled().into_iter().filter(|(_, o)| o.is_smooth()) {
        let mut rng = sample_rng(5, 0);
        for _ in 0..2000 {
            let p = sample_point(&mut rng, &m, Point::ORIGIN, 2.5);
            let dir = rng.random::<f64>() * std::f64::consts::TAU;
            let err = finite_difference_error(&m, oracle.as_ref(), p, dir, 1e-5);
            assert!(err < 1e-4, "{} at {p:?}: {err}", oracle.name());
        }
    }
}

#[test]
fn nonsmooth_oracles_match_finite_differences_away_from_kinks() {
    let c = Point::new(0.1, 0.1).unwrap();
    let hinge = ball_hinge(c, 0.3).unwrap();
    let dist = distance_oracle(c);
    let mut rng = sample_rng(6, 0);
    for _ in 0..2000 {
        let p = sample_point(&mut rng, &DISK, c, 3.0);
        if DISK.distance(p, c) < 0.4 {
            continue;
        }
        let dir = rng.random::<f64>() * std::f64::consts::TAU;
        assert!(finite_difference_error(&DISK, &hinge, p, dir, 1e-5) < 1e-4);
        assert!(finite_difference_error(&DISK, &dist, p, dir, 1e-5) < 1e-4);
    }
}

#[test]
fn busemann_gradient_has_unit_norm() {
    let mut rng = sample_rng(8, 0);
    for _ in 0..10_000 {
        let phi = rng.random::<f64>() * std::f64::consts::TAU;
        let eta = Complex64::from_polar(1.0, phi);
        let p = sample_point(&mut rng, &DISK, Point::ORIGIN, 6.0);
        let n = DISK.norm(&busemann_gradient(eta, p));
        assert!((n - 1.0).abs() < 1e-10, "{p:?}: {n}");
        for kappa in [0.5, 3.0] {
            let m = Manifold::ScaledDisk { kappa };
            let b = Busemann::new(eta).unwrap();
            assert!((m.norm(&b.eval(&m, p).subgradient) - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn busemann_is_one_lipschitz() {
    let b = Busemann::new(Complex64::new(0.0, -1.0)).unwrap();
    let mut rng = sample_rng(9, 0);
    for _ in 0..5000 {
        let x = sample_point(&mut rng, &DISK, Point::ORIGIN, 4.0);
        let y = sample_point(&mut rng, &DISK, Point::ORIGIN, 4.0);
        let diff = (b.value(&DISK, x) - b.value(&DISK, y)).abs();
        assert!(diff <= DISK.distance(x, y) + 1e-10);
    }
}

#[test]
fn two_busemann_vanishes_exactly_on_the_axis() {
    let mut rng = sample_rng(10, 0);
    for _ in 0..5000 {
        let p = sample_point(&mut rng, &DISK, Point::ORIGIN, 4.0);
        let f = TwoBusemann.value(&DISK, p);
        assert!(f >= 0.0);
        let h = DISK.distance_to_x_axis(p);
        assert!((f - 2.0 * h.cosh().ln()).abs() < 1e-10 * f.max(1.0));
        let on_axis = Point::new(p.x, 0.0).unwrap();
        assert_eq!(TwoBusemann.value(&DISK, on_axis), 0.0);
        assert!(TwoBusemann.eval(&DISK, on_axis).subgradient.is_zero());
    }
}

#[test]
fn specs_round_trip_through_json() {
    let specs = [
        OracleSpec::TwoBusemann,
        OracleSpec::BallHinge {
            center: Point::new(0.1, 0.2).unwrap(),
            radius: 0.3,
        },
        OracleSpec::Distance {
            anchor: Point::ORIGIN,
        },
        OracleSpec::Busemann { eta: (0.0, 1.0) },
    ];
    for s in specs {
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains(&format!("\"name\":\"{}\"", s.name())));
        let back: OracleSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.build().unwrap().name(), s.name());
    }
}

#[test]
fn fuzz_is_identical_across_execution_modes() {
    let f = distance_oracle(Point::new(0.3, 0.3).unwrap());
    let check = |rng: &mut rand_chacha::ChaCha8Rng| {
        let x = sample_point(rng, &DISK, Point::ORIGIN, 3.0);
        let y = sample_point(rng, &DISK, Point::ORIGIN, 3.0);
        Sample::Margin(subgradient_slack(&DISK, &f, x, y))
    };
    let seq = fuzz(
        "subineq",
        3000,
        42,
        1e-9,
        HypothesisMode::None,
        Exec::Sequential,
        check,
    )
    .unwrap();
    let par = fuzz(
        "subineq",
        3000,
        42,
        1e-9,
        HypothesisMode::None,
        Exec::Parallel,
        check,
    )
    .unwrap();
    assert_eq!(seq, par);
    assert_eq!(seq.n_samples, 3000);
}
