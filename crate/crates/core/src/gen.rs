//! Seeded random instances: geometric trees and graphs, monotone graphs and
//! abstract graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{point_segment_distance, segment_distance, Line2, Point2, Tolerance};
use crate::graph::{AbstractGraph, GeometricGraph};

/// Deterministic generator for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Smallest distance between a vertex and an edge not incident to it, and
/// between two vertex-disjoint edges.
pub fn clearance(g: &GeometricGraph) -> f64 {
    let mut best = f64::INFINITY;
    for e in 0..g.m() {
        let (u, v) = g.edge(e);
        let (a, b) = g.edge_segment(e);
        for w in 0..g.n() {
            if w != u && w != v {
                best = best.min(point_segment_distance(g.vertex(w), a, b));
            }
        }
        for f in e + 1..g.m() {
            let (x, y) = g.edge(f);
            if x != u && x != v && y != u && y != v {
                let (c, d) = g.edge_segment(f);
                best = best.min(segment_distance(a, b, c, d));
            }
        }
    }
    best
}

fn random_point<R: Rng>(rng: &mut R, size: f64) -> Point2 {
    Point2::new(rng.gen_range(0.0..size), rng.gen_range(0.0..size))
}

fn well_spread(g: &GeometricGraph, min_gap: f64) -> bool {
    g.validate(&Tolerance::default()).is_ok() && clearance(g) >= min_gap
}

/// Geometric tree on `n` vertices in a 10×10 box: each new vertex is joined
/// to a random earlier one.
pub fn geometric_tree<R: Rng>(rng: &mut R, n: usize) -> GeometricGraph {
    loop {
        let pts: Vec<Point2> = (0..n).map(|_| random_point(rng, 10.0)).collect();
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
        if let Ok(g) = GeometricGraph::new(pts, edges) {
            if well_spread(&g, 0.05) {
                return g;
            }
        }
    }
}

/// Spider: legs of equal length 2 leaving a hub at the origin, each a
/// bent path of `legs[i]` segments. The hub is the center and every foot is
/// a diametral leaf.
pub fn spider<R: Rng>(rng: &mut R, legs: &[usize]) -> GeometricGraph {
    loop {
        let mut pts = vec![Point2::new(0.0, 0.0)];
        let mut edges = vec![];
        for &segs in legs {
            let mut dir = rng.gen_range(0.0..std::f64::consts::TAU);
            let mut cuts: Vec<f64> = (1..segs).map(|_| rng.gen_range(0.2..1.8)).collect();
            cuts.sort_by(f64::total_cmp);
            cuts.push(2.0);
            let (mut at, mut prev, mut done) = (pts[0], 0, 0.0);
            for c in cuts {
                at = at + Point2::polar(c - done, dir);
                pts.push(at);
                edges.push((prev, pts.len() - 1));
                prev = pts.len() - 1;
                done = c;
                dir += rng.gen_range(-0.9..0.9);
            }
        }
        if let Ok(g) = GeometricGraph::new(pts, edges) {
            if well_spread(&g, 0.05) {
                return g;
            }
        }
    }
}

/// Connected plane graph on `n` vertices: a random spanning tree plus up to
/// `extra` non-crossing edges.
pub fn geometric_graph<R: Rng>(rng: &mut R, n: usize, extra: usize) -> GeometricGraph {
    loop {
        let mut g = geometric_tree(rng, n);
        let mut pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| g.find_edge(i, j).is_none())
            .collect();
        pairs.shuffle(rng);
        let mut added = 0;
        for (i, j) in pairs {
            if added == extra {
                break;
            }
            if let Ok(h) = g.with_edge(i, j) {
                if well_spread(&h, 0.05) {
                    g = h;
                    added += 1;
                }
            }
        }
        if g.validate(&Tolerance::default()).is_ok() {
            return g;
        }
    }
}

/// An x-monotone graph: ladders (two monotone chains from a common left
/// vertex to a common right vertex, with non-crossing rungs) joined by
/// monotone paths, rotated by a random angle. Returns the graph and the
/// reference line.
pub fn monotone_graph<R: Rng>(rng: &mut R, blocks: usize) -> (GeometricGraph, Line2) {
    loop {
        let mut pts = vec![Point2::new(0.0, rng.gen_range(-0.5..0.5))];
        let mut edges = vec![];
        let mut x = 0.0;
        for _ in 0..blocks {
            let start = pts.len() - 1;
            let width = rng.gen_range(1.5..3.0);
            if rng.gen_bool(0.6) {
                let chain = |rng: &mut R, sign: f64, pts: &mut Vec<Point2>| {
                    let k = rng.gen_range(1..=2);
                    let mut xs: Vec<f64> = (0..k).map(|_| x + rng.gen_range(0.1..0.9) * width).collect();
                    xs.sort_by(f64::total_cmp);
                    xs.into_iter()
                        .map(|cx| {
                            pts.push(Point2::new(cx, sign * rng.gen_range(0.4..1.4)));
                            pts.len() - 1
                        })
                        .collect::<Vec<_>>()
                };
                let top = chain(rng, 1.0, &mut pts);
                let bottom = chain(rng, -1.0, &mut pts);
                pts.push(Point2::new(x + width, rng.gen_range(-0.5..0.5)));
                let end = pts.len() - 1;
                for side in [&top, &bottom] {
                    let mut prev = start;
                    for &v in side.iter() {
                        edges.push((prev, v));
                        prev = v;
                    }
                    edges.push((prev, end));
                }
                // At most one rung, between the first vertices of the chains.
                if rng.gen_bool(0.5) {
                    edges.push((top[0], bottom[0]));
                }
            } else {
                let steps = rng.gen_range(1..=2);
                let mut prev = start;
                for s in 1..=steps {
                    let px = x + width * s as f64 / steps as f64;
                    pts.push(Point2::new(px, rng.gen_range(-0.8..0.8)));
                    edges.push((prev, pts.len() - 1));
                    prev = pts.len() - 1;
                }
            }
            x += width;
        }
        let angle = rng.gen_range(0.0..std::f64::consts::PI);
        let pts: Vec<Point2> = pts.into_iter().map(|p| p.rotate(angle)).collect();
        let Ok(g) = GeometricGraph::new(pts, edges) else {
            continue;
        };
        if well_spread(&g, 0.05) {
            let dir = Point2::polar(1.0, angle);
            let line = Line2::through_point(Point2::new(0.0, 0.0), dir).expect("unit direction");
            return (g, line);
        }
    }
}

/// Random connected abstract graph with edge probability `p`.
pub fn connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> AbstractGraph {
    loop {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = AbstractGraph::new(n, edges).expect("indices in range");
        if g.is_connected() {
            return g;
        }
    }
}

/// Random abstract tree: each vertex joins a random earlier one.
pub fn abstract_tree<R: Rng>(rng: &mut R, n: usize) -> AbstractGraph {
    let edges = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    AbstractGraph::new(n, edges).expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monotone::is_monotone;

    #[test]
    fn generators_produce_valid_instances() {
        let mut r = rng(7);
        let tol = Tolerance::default();
        for n in 2..9 {
            assert!(geometric_tree(&mut r, n).is_tree());
            let g = geometric_graph(&mut r, n, 3);
            assert!(g.is_connected());
            assert_eq!(g.validate(&tol), Ok(()));
            assert!(abstract_tree(&mut r, n).is_tree());
            assert!(spider(&mut r, &[1, 2, 1]).is_tree());
            assert!(connected_graph(&mut r, n, 0.4).is_connected());
        }
        for blocks in 1..4 {
            let (g, l) = monotone_graph(&mut r, blocks);
            assert!(is_monotone(&g, &l, &tol));
        }
    }
}
