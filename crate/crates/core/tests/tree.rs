use std::f64::consts::PI;

use borsuk_core::cuts::{cut, near_offset, verify_partition, PartitionPlan, PlanStep};
use borsuk_core::gen;
use borsuk_core::tree::{borsuk_continuous_tree, center_cut_safety, tree_center};
use borsuk_core::{GeometricGraph, Line2, Metric, Point2, Tolerance};
use rand::Rng;

fn one_line(t: &GeometricGraph, l: Line2, tol: &Tolerance) -> bool {
    let plan = PartitionPlan::new(vec![PlanStep { target: 0, line: l }]);
    verify_partition(t, &plan, tol).is_ok_and(|v| v.correct)
}

/// Dense family of single lines: lines through vertex pairs with small
/// rotations and shifts, and a fan of lines through and near the center.
fn oracle_one_line(t: &GeometricGraph, tol: &Tolerance) -> bool {
    let n = t.n();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (t.vertex(i), t.vertex(j));
            let mid = a.midpoint(b);
            for rot in [0.0, 1e-4, -1e-4] {
                let dir = (b - a).rotate(rot);
                let base = Line2::through_point(mid, dir).unwrap();
                for off in [0.0, 1e-5, -1e-5] {
                    if one_line(t, base.shifted(off), tol) {
                        return true;
                    }
                }
            }
        }
    }
    let c = tree_center(t, tol).unwrap().position;
    for k in 0..360 {
        let base = Line2::through_point(c, Point2::polar(1.0, PI * k as f64 / 360.0)).unwrap();
        for off in [0.0, 1e-6, -1e-6, 1e-4, -1e-4] {
            if one_line(t, base.shifted(off), tol) {
                return true;
            }
        }
    }
    false
}

#[test]
fn random_trees_have_verified_witnesses() {
    let tol = Tolerance::default();
    let mut rng = gen::rng(11);
    for _ in 0..100 {
        let n = rng.gen_range(2..=12);
        let t = gen::geometric_tree(&mut rng, n);
        let r = borsuk_continuous_tree(&t, &tol).unwrap();
        assert!(r.k == 2 || r.k == 3);
        assert_eq!(r.plan.len(), r.k - 1);
        assert!(verify_partition(&t, &r.plan, &tol).unwrap().correct);
    }
}

#[test]
fn small_trees_match_dense_oracle() {
    let tol = Tolerance::default();
    let mut rng = gen::rng(12);
    let mut seen = [0; 2];
    for case in 0..60 {
        let t = if case % 3 == 0 {
            let n = rng.gen_range(3..=7);
            gen::geometric_tree(&mut rng, n)
        } else {
            let mut legs = vec![1; rng.gen_range(2..=6)];
            while legs.iter().sum::<usize>() < 6 && rng.gen_bool(0.5) {
                let i = rng.gen_range(0..legs.len());
                legs[i] += 1;
            }
            gen::spider(&mut rng, &legs)
        };
        let k = borsuk_continuous_tree(&t, &tol).unwrap().k;
        let expect = if oracle_one_line(&t, &tol) { 2 } else { 3 };
        assert_eq!(k, expect, "case {case}: {:?}", t);
        seen[k - 2] += 1;
    }
    println!("one line: {}, two lines: {}", seen[0], seen[1]);
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn equal_star_needs_a_line_off_the_hub() {
    let tol = Tolerance::default();
    let t = borsuk_core::fixtures::star(&[0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0]);
    let l = Line2::through_point(Point2::new(0.0, 0.0), Point2::polar(1.0, 0.3)).unwrap();
    assert!(center_cut_safety(&t, &l, &tol).unwrap());
    assert!(!one_line(&t, l, &tol));
    // Shifting the line so the hub stays with a single leaf separates the
    // other two.
    let r = borsuk_continuous_tree(&t, &tol).unwrap();
    assert_eq!(r.k, 2);
    assert!(r.delta > 0.0);
}

#[test]
fn near_center_cuts_never_grow_the_diameter() {
    let tol = Tolerance::default();
    let mut rng = gen::rng(13);
    for _ in 0..60 {
        let n = rng.gen_range(2..=10);
        let t = gen::geometric_tree(&mut rng, n);
        let c = tree_center(&t, &tol).unwrap();
        let incident: Vec<usize> = match c.vertex {
            Some(v) => t.neighbors(v).iter().map(|&(_, e)| e).collect(),
            None => vec![c.point.edge],
        };
        let delta = near_offset(&t, c.position, &incident, &tol);
        let angle = rng.gen_range(0.0..PI);
        let off = rng.gen_range(-1.0..1.0) * delta;
        let l = Line2::through_point(c.position, Point2::polar(1.0, angle))
            .unwrap()
            .shifted(off);
        assert!(center_cut_safety(&t, &l, &tol).unwrap());

        // Every vertex of a side stays within half the diameter of the
        // center, measured through the side.
        let through = Line2::through_point(c.position, Point2::polar(1.0, angle)).unwrap();
        if let Ok(r) = cut(&t, &through, &tol) {
            let half = c.eccentricity;
            for side in [&r.plus, &r.minus] {
                let Some(ci) = side.vertices().iter().position(|p| p.dist(c.position) < 1e-9)
                else {
                    continue;
                };
                let m = Metric::new(side, &tol);
                for v in 0..side.n() {
                    assert!(m.vertex_distance(ci, v) <= half + tol.tie(2.0 * half));
                }
            }
        }
    }
}
