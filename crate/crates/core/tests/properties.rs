use ftrisk_core::geometry::{
    fermat_point, fermat_point_analytic, fermat_point_weiszfeld, max_vertex_angle, objective,
    Point, SolutionCase, Triangle, VERTEX_OPTIMAL_ANGLE,
};
use ftrisk_core::interpolant::{eq10_coefficients, evaluate, ExpTerm, ExponentialSum};
use ftrisk_core::smoothing::{smooth, Series};
use ftrisk_core::stats::{classical_summary, ft_summary};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn coord() -> impl Strategy<Value = f64> {
    -50.0..50.0f64
}

fn triangle() -> impl Strategy<Value = Triangle> {
    (coord(), coord(), coord(), coord(), coord(), coord())
        .prop_map(|(a, b, c, d, e, f)| {
            Triangle::new(Point::new(a, b), Point::new(c, d), Point::new(e, f))
        })
        .prop_filter("nondegenerate", |t| max_vertex_angle(t).is_ok())
}

fn acute_ish() -> impl Strategy<Value = Triangle> {
    triangle().prop_filter("all angles below 120 degrees", |t| {
        max_vertex_angle(t).unwrap().angle < VERTEX_OPTIMAL_ANGLE
    })
}

fn series() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0..10.0f64, 3..12)
}

fn bounding_box(t: &Triangle) -> (Point, Point) {
    let v = t.vertices();
    let lo = Point::new(
        v.iter().map(|p| p.t).fold(f64::INFINITY, f64::min),
        v.iter().map(|p| p.v).fold(f64::INFINITY, f64::min),
    );
    let hi = Point::new(
        v.iter().map(|p| p.t).fold(f64::NEG_INFINITY, f64::max),
        v.iter().map(|p| p.v).fold(f64::NEG_INFINITY, f64::max),
    );
    (lo, hi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn solution_dominates_random_probes(t in triangle(), seed in any::<u64>()) {
        let s = fermat_point(&t).unwrap();
        let best = objective(&s.location, &t);
        prop_assert!((s.total_distance - best).abs() <= 1e-10);
        let (lo, hi) = bounding_box(&t);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..1000 {
            let q = Point::new(rng.gen_range(lo.t..=hi.t), rng.gen_range(lo.v..=hi.v));
            prop_assert!(best <= objective(&q, &t) + 1e-9);
        }
        for v in t.vertices() {
            prop_assert!(best <= objective(&v, &t) + 1e-12);
        }
    }

    #[test]
    fn case_invariants(t in triangle()) {
        let s = fermat_point(&t).unwrap();
        match s.case {
            SolutionCase::Interior => prop_assert!(t.contains(&s.location, 0.0)),
            SolutionCase::VertexOptimal(i) => prop_assert_eq!(s.location, t.vertex(i)),
            SolutionCase::Collinear => prop_assert!(t.vertices().contains(&s.location)),
        }
        prop_assert_eq!(s.iterations, 0);
    }

    #[test]
    fn interior_point_sees_vertices_at_120_degrees(t in acute_ish()) {
        let s = fermat_point_analytic(&t).unwrap();
        let u: Vec<Point> = t.vertices().iter().map(|p| {
            let d = *p - s.location;
            d * (1.0 / d.norm())
        }).collect();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let angle = u[i].cross(&u[j]).abs().atan2(u[i].dot(&u[j]));
            prop_assert!((angle - VERTEX_OPTIMAL_ANGLE).abs() <= 1e-6);
        }
    }

    #[test]
    fn analytic_agrees_with_weiszfeld(t in acute_ish()) {
        let a = fermat_point_analytic(&t).unwrap();
        let w = fermat_point_weiszfeld(&t, 1e-10, 1000).unwrap();
        prop_assert!(a.location.distance(&w.location) <= 1e-8);
    }

    #[test]
    fn translation_and_scaling(t in triangle(), dt in coord(), dv in coord(), s in 0.1..10.0f64) {
        let base = fermat_point(&t).unwrap().location;
        let shift = Point::new(dt, dv);
        let moved = Triangle::new(t.a + shift, t.b + shift, t.c + shift);
        let m = fermat_point(&moved).unwrap().location;
        prop_assert!((m - (base + shift)).norm() <= 1e-10 * (1.0 + base.norm() + shift.norm()));

        let scaled = Triangle::new(t.a * s, t.b * s, t.c * s);
        let q = fermat_point(&scaled).unwrap().location;
        prop_assert!((q - base * s).norm() <= 1e-10 * (base * s).norm().max(1.0));
    }

    #[test]
    fn vertex_order_does_not_matter(t in triangle()) {
        let base = fermat_point(&t).unwrap().location;
        let [a, b, c] = t.vertices();
        for perm in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
            let q = fermat_point(&Triangle::new(perm[0], perm[1], perm[2])).unwrap().location;
            prop_assert!((q - base).norm() <= 1e-12 * base.norm().max(1.0));
        }
    }

    #[test]
    fn smoothing_stays_in_hull(values in series()) {
        let s = Series::from_values("p", &values).unwrap();
        let out = smooth(&s).unwrap();
        prop_assert_eq!(out.points.len(), values.len() - 2);
        let pts = s.points();
        for sp in &out.points {
            let i = sp.center_index - 1;
            let tri = Triangle::new(pts[i - 1], pts[i], pts[i + 1]);
            if tri.is_collinear() {
                prop_assert!(tri.vertices().contains(&sp.smoothed));
            } else {
                prop_assert!(tri.contains(&sp.smoothed, 1e-10));
            }
            prop_assert!(sp.value_displacement <= sp.planar_displacement);
        }
    }

    #[test]
    fn smoothing_commutes_with_value_shift(values in series(), c in -20.0..20.0f64) {
        let base = smooth(&Series::from_values("p", &values).unwrap()).unwrap();
        let shifted: Vec<f64> = values.iter().map(|v| v + c).collect();
        let moved = smooth(&Series::from_values("p", &shifted).unwrap()).unwrap();
        for (a, b) in base.points.iter().zip(&moved.points) {
            prop_assert!((a.smoothed.t - b.smoothed.t).abs() <= 1e-10);
            prop_assert!((a.smoothed.v + c - b.smoothed.v).abs() <= 1e-10);
        }
    }

    #[test]
    fn smoothing_is_deterministic(values in series()) {
        let s = Series::from_values("p", &values).unwrap();
        let a = smooth(&s).unwrap();
        let b = smooth(&s).unwrap();
        for (x, y) in a.points.iter().zip(&b.points) {
            prop_assert_eq!(x.smoothed.t.to_bits(), y.smoothed.t.to_bits());
            prop_assert_eq!(x.smoothed.v.to_bits(), y.smoothed.v.to_bits());
        }
    }

    #[test]
    fn classical_shift_and_scale(values in prop::collection::vec(0.5..10.0f64, 2..12),
                                 c in -5.0..5.0f64, s in 0.1..10.0f64) {
        let base = classical_summary(&values, 3.0).unwrap();
        let shifted: Vec<f64> = values.iter().map(|v| v + c).collect();
        if let Ok(m) = classical_summary(&shifted, 3.0) {
            prop_assert!((m.mean - (base.mean + c)).abs() <= 1e-12 * (1.0 + base.mean.abs() + c.abs()) * 10.0);
            prop_assert!((m.sigma - base.sigma).abs() <= 1e-12 * 10.0 * (1.0 + base.mean.abs()));
            prop_assert!((m.interval.low - (base.interval.low + c)).abs() <= 1e-11);
            prop_assert!((m.interval.high - (base.interval.high + c)).abs() <= 1e-11);
        }
        let scaled: Vec<f64> = values.iter().map(|v| v * s).collect();
        let m = classical_summary(&scaled, 3.0).unwrap();
        let rel = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs().max(1e-300) * 10.0;
        prop_assert!(rel(m.mean, base.mean * s));
        prop_assert!((m.sigma - base.sigma * s).abs() <= 1e-12 * 10.0 * (base.sigma * s).max(s * base.mean));
        prop_assert!((m.variation - base.variation).abs() <= 1e-12 * 10.0 * base.variation.max(1.0));
        prop_assert!(base.variance >= 0.0 && base.sigma >= 0.0);
        prop_assert!((base.sigma - base.variance.sqrt()).abs() <= 1e-12 * base.sigma.max(1e-300));
        prop_assert!((base.variation * base.mean - base.sigma).abs() <= 1e-12 * base.sigma.max(1e-300) * 10.0);
    }

    #[test]
    fn ft_shift_and_scale(pairs in prop::collection::vec((0.5..10.0f64, 0.5..10.0f64), 1..12),
                          c in -5.0..5.0f64, s in 0.1..10.0f64) {
        let (orig, sm): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        let base = ft_summary(&orig, &sm).unwrap();
        prop_assert!(base.f >= 0.0 && base.s >= 0.0);
        prop_assert!((base.s - base.f.sqrt()).abs() <= 1e-12 * base.s.max(1e-300));
        prop_assert!((base.interval.width() - 8.0 * base.s).abs() <= 1e-12 * (1.0 + base.m_phi.abs()) * 10.0);

        let o2: Vec<f64> = orig.iter().map(|v| v + c).collect();
        let s2: Vec<f64> = sm.iter().map(|v| v + c).collect();
        if let Ok(m) = ft_summary(&o2, &s2) {
            prop_assert!((m.s - base.s).abs() <= 1e-12 * 100.0);
            prop_assert!((m.f - base.f).abs() <= 1e-12 * 100.0 * (1.0 + base.f));
            prop_assert!((m.interval.low - (base.interval.low + c)).abs() <= 1e-11);
        }
        let o3: Vec<f64> = orig.iter().map(|v| v * s).collect();
        let s3: Vec<f64> = sm.iter().map(|v| v * s).collect();
        let m = ft_summary(&o3, &s3).unwrap();
        prop_assert!((m.m_phi - base.m_phi * s).abs() <= 1e-12 * 10.0 * base.m_phi * s);
        prop_assert!((m.s - base.s * s).abs() <= 1e-12 * 10.0 * (base.s * s).max(1e-300));
        prop_assert!((m.w - base.w).abs() <= 1e-12 * 10.0 * base.w.max(1e-300));
        prop_assert!((m.interval.high - base.interval.high * s).abs() <= 1e-12 * 10.0 * base.interval.high.abs() * s);
    }

    #[test]
    fn exponential_sums_are_linear(t in 0.0..12.0f64,
                                   a in -1.0..1.0f64, b in -1.0..1.0f64,
                                   r in -0.5..0.5f64, w in -3.0..3.0f64) {
        let f = eq10_coefficients();
        let term = ExpTerm::new(Complex64::new(a, b), Complex64::new(r, w));
        let g = ExponentialSum::new(vec![term, term.conj()]);
        let both = evaluate(&f.concat(&g), t).unwrap();
        let sep = evaluate(&f, t).unwrap() + evaluate(&g, t).unwrap();
        prop_assert!((both - sep).abs() <= 1e-12 * both.abs().max(1.0));
        let conj = evaluate(&f.conj(), t).unwrap();
        prop_assert!((conj - evaluate(&f, t).unwrap()).abs() <= 1e-12);
    }
}

/// Straightforward two-pass mean and population variance.
fn reference_moments(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mut sum = 0.0;
    for v in values {
        sum += v;
    }
    let mean = sum / n;
    let mut sq = 0.0;
    for v in values {
        sq += (v - mean).powi(2);
    }
    (mean, sq / n)
}

#[test]
fn classical_matches_two_pass_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=12);
        let values: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..100.0)).collect();
        let c = classical_summary(&values, 3.0).unwrap();
        let (mean, var) = reference_moments(&values);
        assert!((c.mean - mean).abs() <= 1e-12 * mean.abs());
        assert!((c.variance - var).abs() <= 1e-12 * var.max(1e-300));
        let sigma = var.sqrt();
        assert!((c.interval.low - (mean - 3.0 * sigma)).abs() <= 1e-12 * (mean.abs() + 3.0 * sigma));
    }
}

#[test]
fn eq10_is_real_on_sample_grid() {
    let f = eq10_coefficients();
    for i in 0..=1200 {
        let t = i as f64 * 0.01;
        let z = f.complex_value(t);
        assert!(z.im.abs() <= 1e-9 * z.re.abs().max(1.0), "t = {t}: {z}");
    }
}
