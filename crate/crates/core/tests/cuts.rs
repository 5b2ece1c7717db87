use borsuk_core::cuts::{
    apply_plan, cut, strip_partition, verify_partition, verify_partition_with, CutError,
    PartitionPlan, PlanStep,
};
use borsuk_core::{fixtures, gen, Execution, Line2, Point2, Tolerance};
use rand::Rng;

fn random_line<R: Rng>(rng: &mut R) -> Line2 {
    let angle = rng.gen_range(0.0..std::f64::consts::PI);
    let through = Point2::new(rng.gen_range(2.0..8.0), rng.gen_range(2.0..8.0));
    Line2::through_point(through, Point2::polar(1.0, angle)).unwrap()
}

#[test]
fn cut_conserves_length() {
    let tol = Tolerance::default();
    let mut rng = gen::rng(41);
    let mut cuts = 0;
    while cuts < 40 {
        let n = rng.gen_range(2..=9);
        let g = gen::geometric_graph(&mut rng, n, 3);
        let l = random_line(&mut rng);
        let r = match cut(&g, &l, &tol) {
            Ok(r) => r,
            Err(CutError::NoIntersection) => continue,
            Err(e) => panic!("{e}"),
        };
        let total = r.plus.total_length() + r.minus.total_length();
        let expect = g.total_length() + 2.0 * r.s_ell_length();
        assert!((total - expect).abs() < 1e-9, "{total} vs {expect}");
        for p in r.plus.vertices() {
            assert!(l.signed_distance(*p) >= -1e-9);
        }
        for p in r.minus.vertices() {
            assert!(l.signed_distance(*p) <= 1e-9);
        }
        assert_eq!(r.plus.validate(&tol), Ok(()));
        assert_eq!(r.minus.validate(&tol), Ok(()));
        cuts += 1;
    }
}

#[test]
fn strip_partition_is_correct() {
    let tol = Tolerance::default();
    let mut rng = gen::rng(42);
    for _ in 0..20 {
        let n = rng.gen_range(3..=10);
        let extra = rng.gen_range(0..5);
        let g = gen::geometric_graph(&mut rng, n, extra);
        let plan = strip_partition(&g).unwrap();
        assert!(plan.len() + 1 <= n - 1);
        assert!(verify_partition(&g, &plan, &tol).unwrap().correct);
    }
}

#[test]
fn square_cuts() {
    let tol = Tolerance::default();
    let g = fixtures::unit_square();
    let center = |l| PartitionPlan::new(vec![PlanStep { target: 0, line: l }]);
    let v = verify_partition(&g, &center(Line2::vertical(0.5)), &tol).unwrap();
    assert!(v.correct);
    assert_eq!(v.diameters, vec![1.5, 1.5]);
    // A corner-to-corner line leaves two triangles of perimeter 2 + √2.
    let diag = Line2::through_points(Point2::new(0.0, 0.0), Point2::new(1.0, 1.0)).unwrap();
    let v = verify_partition(&g, &center(diag), &tol).unwrap();
    assert!(v.correct);
    assert!((v.diameters[0] - (2.0 + 2f64.sqrt()) / 2.0).abs() < 1e-12);
}

#[test]
fn later_steps_cut_later_parts() {
    let tol = Tolerance::default();
    let g = fixtures::polyline(&[Point2::new(0.0, 0.0), Point2::new(4.0, 0.0)]);
    let plan = PartitionPlan::new(vec![
        PlanStep { target: 0, line: Line2::vertical(1.0) },
        PlanStep { target: 1, line: Line2::vertical(3.0) },
    ]);
    let parts = apply_plan(&g, &plan, &tol).unwrap();
    let lengths: Vec<f64> = parts.iter().map(|p| p.total_length()).collect();
    assert_eq!(lengths, vec![1.0, 2.0, 1.0]);
    let bad = PartitionPlan::new(vec![PlanStep { target: 1, line: Line2::vertical(1.0) }]);
    assert!(apply_plan(&g, &bad, &tol).is_err());
}

#[test]
fn verification_is_the_same_in_parallel() {
    let tol = Tolerance::default();
    let mut rng = gen::rng(43);
    for _ in 0..10 {
        let g = gen::geometric_graph(&mut rng, 8, 3);
        let plan = strip_partition(&g).unwrap();
        let a = verify_partition_with(&g, &plan, &tol, Execution::Sequential).unwrap();
        let b = verify_partition_with(&g, &plan, &tol, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
