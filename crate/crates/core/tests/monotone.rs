use std::f64::consts::PI;

use borsuk_core::cuts::{verify_partition, PartitionPlan, PlanStep};
use borsuk_core::monotone::{
    h_profile, is_convex_monotone, is_monotone, max_disjoint_family, monotone_partition,
};
use borsuk_core::{continuous_diameter, fixtures, gen, Execution, GeometricGraph, Line2, Point2, Tolerance};
use rand::Rng;

fn sample_positions(g: &GeometricGraph, l: &Line2, k: usize) -> Vec<f64> {
    let dir = l.direction();
    let xs: Vec<f64> = g.vertices().iter().map(|p| p.dot(dir)).collect();
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (1..=k)
        .map(|i| lo + (hi - lo) * (i as f64 - 0.5) / k as f64)
        .collect()
}

#[test]
fn profiles_are_monotone_and_bounded() {
    let tol = Tolerance::default();
    let mut rng = gen::rng(51);
    for _ in 0..10 {
        let blocks = rng.gen_range(1..=3);
        let (g, l) = gen::monotone_graph(&mut rng, blocks);
        let diam = continuous_diameter(&g, &tol).value;
        let xs = sample_positions(&g, &l, 30);
        let p = h_profile(&g, &l, &xs, &tol, Execution::default()).unwrap();
        let eps = 1e-9;
        for w in p.samples.windows(2) {
            assert!(w[1].h_minus >= w[0].h_minus - eps);
            assert!(w[1].h_plus <= w[0].h_plus + eps);
        }
        for s in &p.samples {
            assert!(s.h_minus <= diam + eps && s.h_plus <= diam + eps);
        }
    }
}

#[test]
fn stabbing_partition_on_random_monotone_graphs() {
    let tol = Tolerance::default();
    let mut rng = gen::rng(52);
    for _ in 0..10 {
        let blocks = rng.gen_range(1..=3);
        let (g, l) = gen::monotone_graph(&mut rng, blocks);
        assert!(is_monotone(&g, &l, &tol));
        assert!(is_convex_monotone(&g, &l, &tol));
        let mp = monotone_partition(&g, &l, &tol).unwrap();
        assert!(mp.plan.len() <= mp.family.max_disjoint + 1);
        assert!(verify_partition(&g, &mp.plan, &tol).unwrap().correct);
    }
}

#[test]
fn non_monotone_input_is_rejected() {
    let tol = Tolerance::default();
    let g = fixtures::polyline(&[
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 1.0),
        Point2::new(2.0, 0.0),
        Point2::new(1.0, -2.0),
    ]);
    let l = Line2::horizontal(0.0);
    assert!(monotone_partition(&g, &l, &tol).is_err());
    assert!(h_profile(&g, &l, &[1.5], &tol, Execution::Sequential).is_err());
}

#[test]
fn disjoint_families() {
    let tol = Tolerance::default();
    assert_eq!(max_disjoint_family(&fixtures::unit_square(), &tol).max_disjoint, 1);
    assert_eq!(max_disjoint_family(&fixtures::w33(), &tol).max_disjoint, 1);
    let (g, leaves) = fixtures::three_disjoint_paths();
    let fam = max_disjoint_family(&g, &tol);
    assert_eq!(fam.sets.len(), 15);
    assert_eq!(fam.max_disjoint, 3);
    let paired: Vec<(usize, usize)> = fam
        .disjoint
        .iter()
        .map(|&i| {
            let s = &fam.sets[i];
            let mut ends: Vec<usize> = leaves
                .iter()
                .copied()
                .filter(|&v| s.vertices.contains(&v))
                .collect();
            ends.sort_unstable();
            (ends[0], ends[1])
        })
        .collect();
    let expected: Vec<(usize, usize)> =
        leaves.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
    let mut paired = paired;
    paired.sort_unstable();
    assert_eq!(paired, expected);
}

#[test]
fn wheel_needs_two_parallel_lines() {
    let tol = Tolerance::default();
    let g = fixtures::w33();
    for angle in [0.0, PI / 2.0, 0.3] {
        let l = Line2::through_point(Point2::new(0.0, 0.0), Point2::polar(1.0, angle)).unwrap();
        let mp = monotone_partition(&g, &l, &tol).unwrap();
        assert_eq!(mp.plan.len(), 2);
        assert!(verify_partition(&g, &mp.plan, &tol).unwrap().correct);
    }
}

#[test]
fn wheel_has_no_correct_single_cut() {
    let tol = Tolerance::default();
    let g = fixtures::w33();
    let one = |l: Line2| {
        let plan = PartitionPlan::new(vec![PlanStep { target: 0, line: l }]);
        verify_partition(&g, &plan, &tol).is_ok_and(|v| v.correct)
    };
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            let (a, b) = (g.vertex(i), g.vertex(j));
            let mid = a.midpoint(b);
            for rot in [0.0, 1e-3, -1e-3] {
                let base = Line2::through_point(mid, (b - a).rotate(rot)).unwrap();
                for off in [0.0, 1e-3, -1e-3] {
                    assert!(!one(base.shifted(off)), "line through {i} and {j}");
                }
            }
        }
    }
}
