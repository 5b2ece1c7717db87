//! One PASS/FAIL line per acceptance criterion.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use borsuk_core::cuts::{strip_partition, verify_partition, PartitionPlan, PlanStep};
use borsuk_core::discrete::{borsuk_discrete_exact, borsuk_discrete_tree, cone};
use borsuk_core::monotone::{h_profile, monotone_partition};
use borsuk_core::tree::{borsuk_continuous_tree, tree_center};
use borsuk_core::{
    continuous_diameter, fixtures, gen, AbstractGraph, ContinuousPoint, Execution, GeometricGraph,
    Line2, Metric, Point2, Tolerance,
};
use borsuk_prover::{run_prover, ProverConfig, CASE_COUNT};
use rand::Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn single(l: Line2) -> PartitionPlan {
    PartitionPlan::new(vec![PlanStep { target: 0, line: l }])
}

fn correct(g: &GeometricGraph, plan: &PartitionPlan, tol: &Tolerance) -> bool {
    verify_partition(g, plan, tol).is_ok_and(|v| v.correct)
}

fn square_diameter() -> Outcome {
    let t = Instant::now();
    let d = continuous_diameter(&fixtures::unit_square(), &Tolerance::default()).value;
    within(t.elapsed(), Duration::from_secs(1))?;
    check((d - 2.0).abs() <= 1e-9, || format!("diameter {d}"))?;
    Ok(format!("diameter {d:.12}"))
}

fn wheel_diameter() -> Outcome {
    let t = Instant::now();
    let tol = Tolerance::default();
    let g = fixtures::w33();
    let m = Metric::new(&g, &tol);
    let d = m.diameter().value;
    let expect = 2.0 + 2.0 * (PI / 32.0).sin();
    check((d - expect).abs() <= 1e-9, || format!("diameter {d}, expected {expect}"))?;
    let mut counts = vec![];
    for i in 1..=32 {
        let e = g.find_edge(i, i % 32 + 1).ok_or("missing boundary side")?;
        let mid = ContinuousPoint::new(&g, e, i, g.length(e) / 2.0, &tol).map_err(|e| e.to_string())?;
        counts.push(m.partners_at(&mid, d).len());
    }
    within(t.elapsed(), Duration::from_secs(10))?;
    check(counts.iter().all(|&c| c == 9), || format!("partner counts {counts:?}"))?;
    Ok(format!("diameter {d:.12}, 9 partners at all 32 side midpoints"))
}

fn witnesses() -> Outcome {
    let tol = Tolerance::default();
    let square = fixtures::unit_square();
    check(correct(&square, &single(Line2::vertical(0.5)), &tol), || "square center line".into())?;

    let star = fixtures::plus_star();
    let r = borsuk_continuous_tree(&star, &tol).map_err(|e| e.to_string())?;
    check(r.k == 3 && r.plan.len() == 2, || format!("4-star k = {}", r.k))?;
    check(correct(&star, &r.plan, &tol), || "4-star plan".into())?;

    let w = fixtures::w33();
    let mp = monotone_partition(&w, &Line2::horizontal(0.0), &tol).map_err(|e| e.to_string())?;
    check(mp.plan.len() == 2 && correct(&w, &mp.plan, &tol), || {
        format!("W33 plan with {} lines", mp.plan.len())
    })?;
    // Single-line classes: lines through every vertex pair, rotated and
    // shifted off the vertices.
    let mut tried = 0;
    for i in 0..w.n() {
        for j in i + 1..w.n() {
            let (a, b) = (w.vertex(i), w.vertex(j));
            for rot in [0.0, 1e-3, -1e-3] {
                let base = Line2::through_point(a.midpoint(b), (b - a).rotate(rot)).map_err(|e| e.to_string())?;
                for off in [0.0, 1e-3, -1e-3] {
                    tried += 1;
                    check(!correct(&w, &single(base.shifted(off)), &tol), || {
                        format!("a single line through {i} and {j} is correct")
                    })?;
                }
            }
        }
    }
    Ok(format!("square 1 line, 4-star k = 3 with 2 lines, W33 2 lines, {tried} single lines rejected"))
}

fn golden() -> Outcome {
    let t = Instant::now();
    let b = |g: &AbstractGraph| borsuk_discrete_exact(g).map(|r| r.0).map_err(|e| e.to_string());
    let mut checked = 0;
    let mut expect = |name: String, got: usize, want: usize| {
        checked += 1;
        check(got == want, || format!("{name}: {got}, expected {want}"))
    };
    for n in 2..=11 {
        expect(format!("P{n}"), b(&AbstractGraph::path(n))?, 2)?;
        expect(format!("K{n}"), b(&AbstractGraph::complete(n))?, n)?;
    }
    for k in 2..=5 {
        expect(format!("C{}", 2 * k), b(&AbstractGraph::cycle(2 * k))?, 2)?;
        expect(format!("C{}", 2 * k + 1), b(&AbstractGraph::cycle(2 * k + 1))?, 3)?;
    }
    for k in 2..=10 {
        expect(format!("K1,{k}"), b(&AbstractGraph::star(k))?, k)?;
    }
    for n in 3..=10 {
        expect(format!("fan {n}"), b(&AbstractGraph::fan(n))?, n.div_ceil(2))?;
    }
    within(t.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{checked} graphs"))
}

/// Smallest number of cliques partitioning the vertices, by enumerating
/// restricted growth strings.
fn brute_clique_cover(g: &AbstractGraph) -> usize {
    fn rec(g: &AbstractGraph, i: usize, labels: &mut Vec<usize>, used: usize, best: &mut usize) {
        if used >= *best {
            return;
        }
        if i == g.n() {
            *best = used;
            return;
        }
        for l in 0..=used {
            if (0..i).all(|u| labels[u] != l || g.has_edge(u, i)) {
                labels[i] = l;
                rec(g, i + 1, labels, used.max(l + 1), best);
            }
        }
    }
    let mut best = g.n();
    rec(g, 0, &mut vec![0; g.n()], 0, &mut best);
    best
}

fn discrete_oracles() -> Outcome {
    let mut rng = gen::rng(105);
    for _ in 0..50 {
        let n = rng.gen_range(2..=10);
        let t = gen::abstract_tree(&mut rng, n);
        let formula = borsuk_discrete_tree(&t).map_err(|e| e.to_string())?.0;
        let exact = borsuk_discrete_exact(&t).map_err(|e| e.to_string())?.0;
        check(formula == exact, || format!("tree {t:?}: {formula} vs {exact}"))?;
    }
    let mut diam2 = 0;
    while diam2 < 30 {
        let n = rng.gen_range(3..=8);
        let g = gen::connected_graph(&mut rng, n, 0.55);
        if g.diameter() != Some(2) {
            continue;
        }
        let b = borsuk_discrete_exact(&g).map_err(|e| e.to_string())?.0;
        let theta = brute_clique_cover(&g);
        check(b == theta, || format!("{g:?}: b = {b}, theta = {theta}"))?;
        diam2 += 1;
    }
    let mut cones = 0;
    while cones < 20 {
        let n = rng.gen_range(2..=7);
        let g = gen::connected_graph(&mut rng, n, 0.6);
        if g.diameter().is_none_or(|d| d > 2) {
            continue;
        }
        let b = borsuk_discrete_exact(&g).map_err(|e| e.to_string())?.0;
        let bc = borsuk_discrete_exact(&cone(&g)).map_err(|e| e.to_string())?.0;
        check(bc <= b + 1, || format!("{g:?}: b = {b}, b(cone) = {bc}"))?;
        cones += 1;
    }
    Ok("50 trees, 30 diameter-2 graphs, 20 cones of diameter-2 graphs".into())
}

fn strips() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = gen::rng(106);
    for _ in 0..50 {
        let n = rng.gen_range(3..=10);
        let extra = rng.gen_range(0..5);
        let g = gen::geometric_graph(&mut rng, n, extra);
        let plan = strip_partition(&g).map_err(|e| e.to_string())?;
        check(plan.len() + 1 <= n - 1, || format!("{} parts for n = {n}", plan.len() + 1))?;
        check(correct(&g, &plan, &tol), || format!("strip plan fails on {g:?}"))?;
    }
    Ok("50 graphs".into())
}

fn monotone() -> Outcome {
    let tol = Tolerance::default();
    let eps = 1e-9;
    let mut rng = gen::rng(107);
    let mut lines = vec![];
    for _ in 0..20 {
        let blocks = rng.gen_range(1..=3);
        let (g, l) = gen::monotone_graph(&mut rng, blocks);
        let diam = continuous_diameter(&g, &tol).value;
        let dir = l.direction();
        let xs: Vec<f64> = g.vertices().iter().map(|p| p.dot(dir)).collect();
        let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let at: Vec<f64> = (0..30).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / 30.0).collect();
        let p = h_profile(&g, &l, &at, &tol, Execution::default()).map_err(|e| e.to_string())?;
        for w in p.samples.windows(2) {
            check(w[1].h_minus >= w[0].h_minus - eps, || format!("h- drops at x = {}", w[1].x))?;
            check(w[1].h_plus <= w[0].h_plus + eps, || format!("h+ grows at x = {}", w[1].x))?;
        }
        check(
            p.samples.iter().all(|s| s.h_minus <= diam + eps && s.h_plus <= diam + eps),
            || "h above the diameter".into(),
        )?;
        let mp = monotone_partition(&g, &l, &tol).map_err(|e| e.to_string())?;
        check(mp.plan.len() <= mp.family.max_disjoint + 1, || {
            format!("{} lines for k = {}", mp.plan.len(), mp.family.max_disjoint)
        })?;
        check(correct(&g, &mp.plan, &tol), || "monotone plan fails".into())?;
        lines.push(mp.plan.len());
    }
    Ok(format!("20 instances, line counts {lines:?}"))
}

fn one_line(t: &GeometricGraph, l: Line2, tol: &Tolerance) -> bool {
    correct(t, &single(l), tol)
}

/// Dense family of single lines: through vertex pairs with small rotations
/// and shifts, and a fan through and near the center.
fn oracle_one_line(t: &GeometricGraph, tol: &Tolerance) -> bool {
    let n = t.n();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (t.vertex(i), t.vertex(j));
            for rot in [0.0, 1e-4, -1e-4] {
                let Ok(base) = Line2::through_point(a.midpoint(b), (b - a).rotate(rot)) else {
                    continue;
                };
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

fn trees() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = gen::rng(108);
    let (mut two, mut three, mut oracle) = (0, 0, 0);
    for case in 0..100 {
        let t = if case % 2 == 0 {
            let n = rng.gen_range(2..=12);
            gen::geometric_tree(&mut rng, n)
        } else {
            let mut legs = vec![1; rng.gen_range(2..=5)];
            while legs.iter().sum::<usize>() < 11 - legs.len() && rng.gen_bool(0.6) {
                let i = rng.gen_range(0..legs.len());
                legs[i] += 1;
            }
            gen::spider(&mut rng, &legs)
        };
        let r = borsuk_continuous_tree(&t, &tol).map_err(|e| format!("case {case}: {e}"))?;
        check(r.k == 2 || r.k == 3, || format!("case {case}: k = {}", r.k))?;
        check(r.plan.len() == r.k - 1 && correct(&t, &r.plan, &tol), || {
            format!("case {case}: witness fails")
        })?;
        if r.k == 2 {
            two += 1;
        } else {
            three += 1;
        }
        if t.n() <= 7 {
            let expect = if oracle_one_line(&t, &tol) { 2 } else { 3 };
            check(r.k == expect, || format!("case {case}: k = {}, oracle {expect}", r.k))?;
            oracle += 1;
        }
    }
    Ok(format!("100 trees (k = 2: {two}, k = 3: {three}), {oracle} checked against the one-line oracle"))
}

fn prover() -> Outcome {
    let t = Instant::now();
    let run = run_prover(&ProverConfig::default());
    let s = &run.summary;
    within(t.elapsed(), Duration::from_secs(600))?;
    check(s.total == CASE_COUNT, || format!("{} cases", s.total))?;
    check(s.exceptions.is_empty(), || format!("planar feasible cases {:?}", s.exceptions))?;
    check(s.feasible_count == 1296 && s.nonplanar_count == 1296, || {
        format!("feasible {}, non-planar {}", s.feasible_count, s.nonplanar_count)
    })?;
    Ok(format!(
        "{} cases, {} feasible, all non-planar",
        s.total, s.feasible_count
    ))
}

/// Largest distance between grid points of step at most `h` on every
/// edge, by Floyd–Warshall on the subdivided graph.
fn grid_estimate(g: &GeometricGraph, h: f64) -> f64 {
    let mut pts = g.n();
    let mut edges = vec![];
    for e in 0..g.m() {
        let (u, v) = g.edge(e);
        let k = (g.length(e) / h).ceil() as usize;
        let w = g.length(e) / k as f64;
        let mut prev = u;
        for _ in 1..k {
            edges.push((prev, pts, w));
            prev = pts;
            pts += 1;
        }
        edges.push((prev, v, w));
    }
    let mut d = vec![vec![f64::INFINITY; pts]; pts];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for (a, b, w) in edges {
        d[a][b] = d[a][b].min(w);
        d[b][a] = d[b][a].min(w);
    }
    for k in 0..pts {
        for i in 0..pts {
            let dik = d[i][k];
            for j in 0..pts {
                if dik + d[k][j] < d[i][j] {
                    d[i][j] = dik + d[k][j];
                }
            }
        }
    }
    d.iter().flatten().copied().fold(0.0, f64::max)
}

fn grid_oracle() -> Outcome {
    let tol = Tolerance::default();
    let h = 0.25;
    let mut rng = gen::rng(110);
    let mut worst: f64 = 0.0;
    for _ in 0..30 {
        let n = rng.gen_range(2..=8);
        let extra = rng.gen_range(0..4);
        let g = gen::geometric_graph(&mut rng, n, extra);
        let exact = continuous_diameter(&g, &tol).value;
        let est = grid_estimate(&g, h);
        check((exact - est).abs() <= h, || format!("exact {exact}, grid {est}"))?;
        worst = worst.max((exact - est).abs());
    }
    for _ in 0..500 {
        let n = rng.gen_range(3..=6);
        let g = gen::geometric_graph(&mut rng, n, 1);
        let before = continuous_diameter(&g, &tol).value;
        for u in 0..n {
            for v in u + 1..n {
                if g.find_edge(u, v).is_some() {
                    continue;
                }
                let Ok(bigger) = g.with_edge(u, v) else { continue };
                if bigger.validate(&tol).is_err() {
                    continue;
                }
                let after = continuous_diameter(&bigger, &tol).value;
                if after > before + 1e-6 {
                    return Ok(format!(
                        "30 graphs, max gap {worst:.4} <= {h}; edge {u}-{v} raises {before:.6} to {after:.6}"
                    ));
                }
            }
        }
    }
    Err("no edge insertion increasing the continuous diameter found".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("unit square diameter 2", square_diameter),
        ("W33 diameter and nine partners", wheel_diameter),
        ("Borsuk witnesses: square, 4-star, W33", witnesses),
        ("discrete golden values", golden),
        ("discrete oracles (cones sampled from diameter <= 2 graphs)", discrete_oracles),
        ("strip partitions", strips),
        ("monotone profiles and partitions", monotone),
        ("continuous trees", trees),
        ("prover reproduction", prover),
        ("continuous diameter grid oracle and non-monotonicity", grid_oracle),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
