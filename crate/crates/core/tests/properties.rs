use proptest::prelude::*;
use sbmetric::catalog::{abs_metric, ex2_1, ex2_2, ex2_3, ex2_5, ex2_6, l1_metric, s1, squared_metric};
use sbmetric::linsys::{column_sum_norm, direct_solve, solve_iterative, LinearSystem, Matrix, SystemForm};
use sbmetric::*;

const TOL_ABS: f64 = 1e-9;
const TOL_REL: f64 = 1e-9;

fn p(x: f64) -> Point {
    Point::scalar(x)
}

fn le(a: f64, b: f64) -> bool {
    a <= b + TOL_ABS + TOL_REL * b.abs()
}

fn catalog() -> Vec<SbMetricSpec> {
    vec![
        ex2_1(),
        ex2_2(2.0).unwrap(),
        ex2_2(1.5).unwrap(),
        ex2_3(),
        ex2_5(),
        ex2_6(1.0).unwrap(),
        ex2_6(3.0).unwrap(),
        s1(Some(1)).unwrap(),
    ]
}

fn small_cfg(seed: u64) -> SamplerConfig {
    SamplerConfig::default().with_seed(seed).with_range(-4.0, 4.0).with_random_count(300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn catalog_metrics_vanish_on_diagonal(x in -50.0f64..50.0, y in -50.0f64..50.0, z in -50.0f64..50.0) {
        for m in catalog() {
            prop_assert_eq!(m.eval(&p(x), &p(x), &p(x)).unwrap(), 0.0);
            prop_assert!(m.eval(&p(x), &p(y), &p(z)).unwrap() >= 0.0);
        }
    }

    #[test]
    fn induced_s_metric_triangle(x in -20.0f64..20.0, y in -20.0f64..20.0, z in -20.0f64..20.0, a in -20.0f64..20.0) {
        let s = induce_s_from_metric(&abs_metric()).unwrap();
        let (x, y, z, a) = (p(x), p(y), p(z), p(a));
        let rhs = s.eval(&x, &x, &a).unwrap() + s.eval(&y, &y, &a).unwrap() + s.eval(&z, &z, &a).unwrap();
        prop_assert!(le(s.eval(&x, &y, &z).unwrap(), rhs));
    }

    #[test]
    fn induced_sb_metric_keeps_coefficient(x in -20.0f64..20.0, y in -20.0f64..20.0, z in -20.0f64..20.0, a in -20.0f64..20.0) {
        let d = squared_metric();
        let s = induce_sb_from_b(&d);
        prop_assert_eq!(s.b(), d.b());
        let (x, y, z, a) = (p(x), p(y), p(z), p(a));
        let rhs = s.eval(&x, &x, &a).unwrap() + s.eval(&y, &y, &a).unwrap() + s.eval(&z, &z, &a).unwrap();
        prop_assert!(le(s.eval(&x, &y, &z).unwrap(), s.b() * rhs));
    }

    #[test]
    fn induced_b_metric_has_three_halves_coefficient(x in -20.0f64..20.0, y in -20.0f64..20.0, z in -20.0f64..20.0) {
        for s in [ex2_1(), ex2_2(2.0).unwrap(), ex2_5()] {
            let d = induce_b_from_sb(&s, true).unwrap();
            prop_assert_eq!(d.b(), 1.5 * s.b());
            let (x, y, z) = (p(x), p(y), p(z));
            let rhs = d.eval(&x, &z).unwrap() + d.eval(&y, &z).unwrap();
            prop_assert!(le(d.eval(&x, &y).unwrap(), d.b() * rhs));
        }
    }

    #[test]
    fn round_trip_doubles_an_ordinary_metric(u in prop::collection::vec(-9.0f64..9.0, 3), v in prop::collection::vec(-9.0f64..9.0, 3)) {
        let d = l1_metric(Some(3));
        let back = induce_b_from_sb(&induce_s_from_metric(&d).unwrap(), true).unwrap();
        let (x, y) = (Point::new(u).unwrap(), Point::new(v).unwrap());
        prop_assert_eq!(back.eval(&x, &y).unwrap(), 2.0 * d.eval(&x, &y).unwrap());
    }

    #[test]
    fn reported_counterexamples_really_violate(seed in any::<u64>()) {
        let cfg = small_cfg(seed);
        let m = ex2_1();
        let r = check_axioms(AxiomSchema::new(AxiomFamily::SMetric), &m, &cfg).unwrap();
        prop_assert!(!r.passed());
        for c in r.counterexamples() {
            let [x, y, z, a] = [&c.tuple[0], &c.tuple[1], &c.tuple[2], &c.tuple[3]];
            let lhs = m.eval(x, y, z).unwrap();
            let rhs = m.eval(x, x, a).unwrap() + m.eval(y, y, a).unwrap() + m.eval(z, z, a).unwrap();
            prop_assert!(lhs > rhs + cfg.slack);
        }
    }

    #[test]
    fn coefficient_estimates_stay_below_claimed_b(seed in any::<u64>()) {
        let cfg = small_cfg(seed).with_random_count(100);
        for m in catalog() {
            let est = estimate_min_b(&m, &cfg).unwrap();
            prop_assert!(est.lower_bound <= m.b() + cfg.slack, "{}: {}", m.name(), est.lower_bound);
        }
    }

    #[test]
    fn s_metrics_are_symmetric(seed in any::<u64>()) {
        let cfg = small_cfg(seed);
        for m in catalog().into_iter().filter(|m| m.b() == 1.0) {
            let s = check_axioms(AxiomSchema::new(AxiomFamily::SMetric), &m, &cfg).unwrap();
            if s.passed() {
                prop_assert!(check_symmetry(&m, &cfg).unwrap().passed(), "{}", m.name());
            }
        }
    }

    #[test]
    fn reports_are_deterministic(seed in any::<u64>()) {
        let cfg = small_cfg(seed);
        let a = check_axioms(AxiomSchema::with_b(AxiomFamily::SbMetric, 2.0), &ex2_3(), &cfg).unwrap();
        let b = check_axioms(AxiomSchema::with_b(AxiomFamily::SbMetric, 2.0), &ex2_3(), &cfg.clone().with_parallel(false)).unwrap();
        prop_assert_eq!(a.to_records(), b.to_records());
    }

    #[test]
    fn contracting_orbits_obey_decay_and_tail_bound(c in -0.24f64..0.24, d in -5.0f64..5.0, x0 in -20.0f64..20.0) {
        let m = ex2_1();
        let t = SelfMap::affine(c, d);
        let cfg = SamplerConfig::default().with_range(-5.0, 5.0).with_random_count(200);
        let h = estimate_contraction_h(&m, &t, &cfg).unwrap().h;
        let cert = certify(CertificateKind::Banach, &m, ContractionParams::Banach { h }).unwrap();
        prop_assume!(cert.tail_bound_usable);
        let eps = 1e-10;
        let tr = picard(&m, &t, &p(x0), Some(&cert), PicardOptions { eps, max_iters: 10_000 }).unwrap();
        prop_assert_eq!(tr.termination, Termination::Converged);
        let s0 = tr.step_distances[0];
        for (n, s) in tr.step_distances.iter().enumerate() {
            prop_assert!(le(*s, h.powi(n as i32) * s0));
        }
        for n in 0..tr.points.len() {
            let bound = apriori_tail_bound(h, m.b(), n, s0).unwrap();
            for xm in &tr.points[n + 1..] {
                prop_assert!(le(m.eval(&tr.points[n], &tr.points[n], xm).unwrap(), bound));
            }
        }
        let x = tr.fixed_point.unwrap();
        prop_assert!(verify_fixed_point(&m, &t, &x, 10.0 * eps).unwrap());
    }

    #[test]
    fn certified_starts_agree(c in -0.24f64..0.24, d in -5.0f64..5.0, starts in prop::collection::vec(-30.0f64..30.0, 2..6)) {
        let m = ex2_1();
        let t = SelfMap::affine(c, d);
        let h = c * c;
        let cert = certify(CertificateKind::Banach, &m, ContractionParams::Banach { h: h.max(1e-6) }).unwrap();
        let eps = 1e-10;
        let starts: Vec<Point> = starts.into_iter().map(p).collect();
        let traces = picard_from_starts(&m, &t, &starts, Some(&cert), PicardOptions { eps, max_iters: 10_000 }, true).unwrap();
        let first = traces[0].fixed_point.clone().unwrap();
        for tr in &traces {
            let x = tr.fixed_point.clone().unwrap();
            // Each estimate is within eps of the limit; combine with the
            // S_b triangle clause for a symmetric metric.
            prop_assert!(le(m.eval(&x, &x, &first).unwrap(), 3.0 * m.b() * eps));
        }
    }

    #[test]
    fn generalized_reduces_to_banach(b in 1.0f64..10.0, h in 0.0f64..0.5) {
        let m = ex2_1().with_b(b).unwrap();
        let bn = certify(CertificateKind::Banach, &m, ContractionParams::Banach { h }).unwrap();
        let gn = certify(CertificateKind::Generalized, &m, ContractionParams::Generalized { alpha1: h, alpha2: 0.0 }).unwrap();
        prop_assert_eq!(bn.valid, gn.tail_bound_usable);
        prop_assert_eq!(gn.rate, Some(h));
    }

    #[test]
    fn thresholds_coincide_at_b_one(a1 in 0.0f64..1.2, a2 in 0.0f64..0.4) {
        let m = ex2_5();
        let params = ContractionParams::Generalized { alpha1: a1, alpha2: a2 };
        let g = certify(CertificateKind::Generalized, &m, params).unwrap();
        let gs = certify(CertificateKind::GeneralizedSymmetric, &m, params).unwrap();
        prop_assert_eq!(g.valid, gs.valid);
        prop_assert_eq!(g.margin, gs.margin);
    }
}

fn system_strategy() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>, f64)> {
    (2usize..7).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::vec(-1.0f64..1.0, n), n),
            prop::collection::vec(-10.0f64..10.0, n),
            0.01f64..0.9,
        )
    })
}

fn scaled_system(rows: Vec<Vec<f64>>, rhs: Vec<f64>, target: f64) -> Option<LinearSystem> {
    let raw = Matrix::from_rows(rows.clone()).unwrap();
    let norm = column_sum_norm(&raw);
    if norm == 0.0 {
        return None;
    }
    let rows = rows.into_iter().map(|r| r.into_iter().map(|v| v * target / norm).collect()).collect();
    Some(LinearSystem::new(Matrix::from_rows(rows).unwrap(), rhs, SystemForm::FixedPoint).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn iterative_matches_elimination((rows, rhs, target) in system_strategy()) {
        let Some(sys) = scaled_system(rows, rhs, target) else { return Ok(()) };
        let n = sys.n();
        let sol = solve_iterative(&sys, PicardOptions::default()).unwrap();
        prop_assert!(sol.certificate.valid);
        let ia: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 } - sys.matrix.get(i, j)).collect())
            .collect();
        let direct = direct_solve(&Matrix::from_rows(ia).unwrap(), &sys.rhs).unwrap();
        for (u, v) in sol.solution.iter().zip(&direct) {
            prop_assert!((u - v).abs() <= 1e-8);
        }
    }

    #[test]
    fn linear_traces_obey_tail_bound((rows, rhs, target) in system_strategy()) {
        let Some(sys) = scaled_system(rows, rhs, target) else { return Ok(()) };
        let m = s1(Some(sys.n())).unwrap();
        let h = column_sum_norm(&sys.matrix);
        let sol = solve_iterative(&sys, PicardOptions::default()).unwrap();
        let pts = &sol.trace.points;
        let s0 = sol.trace.step_distances[0];
        for n in 0..pts.len() {
            let bound = apriori_tail_bound(h, 1.0, n, s0).unwrap();
            for xm in &pts[n + 1..] {
                prop_assert!(le(m.eval(&pts[n], &pts[n], xm).unwrap(), bound));
            }
        }
    }

    #[test]
    fn elimination_residual_is_small(rows in prop::collection::vec(prop::collection::vec(-5.0f64..5.0, 4), 4), d in prop::collection::vec(-5.0f64..5.0, 4)) {
        // Diagonal dominance keeps the system well conditioned.
        let rows: Vec<Vec<f64>> = rows
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| { r[i] += 25.0; r })
            .collect();
        let c = Matrix::from_rows(rows).unwrap();
        let x = direct_solve(&c, &d).unwrap();
        let cx = c.mul_vec(&x);
        let scale = 1.0 + d.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        for (u, v) in cx.iter().zip(&d) {
            prop_assert!((u - v).abs() <= 1e-8 * scale);
        }
    }
}
