//! Builders for the standard example graphs.

use std::f64::consts::PI;

use crate::geom::Point2;
use crate::graph::{AbstractGraph, GeometricGraph};

fn build(vertices: Vec<Point2>, edges: Vec<(usize, usize)>) -> GeometricGraph {
    GeometricGraph::new(vertices, edges).expect("fixture is structurally valid")
}

/// Unit square 4-cycle.
pub fn unit_square() -> GeometricGraph {
    build(
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ],
        vec![(0, 1), (1, 2), (2, 3), (3, 0)],
    )
}

/// Star with hub 0 and unit spokes at the given angles (radians).
pub fn star(angles: &[f64]) -> GeometricGraph {
    let mut v = vec![Point2::new(0.0, 0.0)];
    v.extend(angles.iter().map(|&a| Point2::polar(1.0, a)));
    build(v, (1..=angles.len()).map(|i| (0, i)).collect())
}

/// Plus-shaped star: unit spokes at 0°, 90°, 180°, 270°.
pub fn plus_star() -> GeometricGraph {
    build(
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(-1.0, 0.0),
            Point2::new(0.0, -1.0),
        ],
        vec![(0, 1), (0, 2), (0, 3), (0, 4)],
    )
}

/// Regular `k`-gon on the unit circle plus a hub joined to every corner.
/// Hub is vertex 0; rim vertex `i` sits at angle `2π(i-1)/k`.
pub fn wheel(k: usize) -> GeometricGraph {
    let mut v = vec![Point2::new(0.0, 0.0)];
    v.extend((0..k).map(|i| Point2::polar(1.0, 2.0 * PI * i as f64 / k as f64)));
    let mut e: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    e.extend((1..=k).map(|i| (i, i % k + 1)));
    build(v, e)
}

/// The 33-vertex wheel: 32-gon with unit spokes.
pub fn w33() -> GeometricGraph {
    wheel(32)
}

/// Polygonal path through the given points.
pub fn polyline(points: &[Point2]) -> GeometricGraph {
    build(
        points.to_vec(),
        (1..points.len()).map(|i| (i - 1, i)).collect(),
    )
}

/// Closed polygon through the given points.
pub fn polygon(points: &[Point2]) -> GeometricGraph {
    let n = points.len();
    build(points.to_vec(), (0..n).map(|i| (i, (i + 1) % n)).collect())
}

/// Fan drawn with its path on the x-axis and the apex above.
pub fn fan(n: usize) -> GeometricGraph {
    let mut v = vec![Point2::new((n as f64 + 1.0) / 2.0, 2.0)];
    v.extend((1..=n).map(|i| Point2::new(i as f64, 0.0)));
    let g = AbstractGraph::fan(n);
    build(v, g.edges().to_vec())
}

/// Chain of faces monotone with respect to the x-axis: a diamond, a bridge,
/// a triangle, a quadrilateral and a pendant tail.
pub fn monotone_chain() -> GeometricGraph {
    build(
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(2.0, 0.1),
            Point2::new(1.2, -0.9),
            Point2::new(3.1, 0.4),
            Point2::new(4.0, 1.3),
            Point2::new(4.6, -0.5),
            Point2::new(8.0, 1.0),
            Point2::new(5.9, 0.6),
            Point2::new(7.0, 1.1),
            Point2::new(6.4, -0.8),
        ],
        vec![
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (2, 4),
            (4, 5),
            (5, 6),
            (6, 4),
            (6, 8),
            (8, 9),
            (9, 10),
            (10, 6),
            (9, 7),
        ],
    )
}

/// Parameters of [`three_disjoint_paths`].
pub const TRIANGLE_SIDE: f64 = 2.0;
pub const WINDING: f64 = 1.1;
pub const PENDANT: f64 = 1.3;

/// A graph with three pairwise disjoint diametral paths.
///
/// A unit triangle `A B C` of side [`TRIANGLE_SIDE`]; six ports, two per
/// side, each joined to both corners of its side by edges of length
/// [`WINDING`] (one port inside the triangle, one outside), and a pendant
/// leaf of length [`PENDANT`] on every port. Ports of the same pair are
/// joined through exactly one corner: `(t1, t2)` via `A`, `(t3, t4)` via
/// `B`, `(t5, t6)` via `C`. Every two leaves are at distance
/// `2·WINDING + 2·PENDANT`.
///
/// Returns the graph and the six leaf vertex ids, grouped by pair.
pub fn three_disjoint_paths() -> (GeometricGraph, [usize; 6]) {
    let s = TRIANGLE_SIDE;
    let a = Point2::new(0.0, 0.0);
    let b = Point2::new(s, 0.0);
    let c = Point2::new(s / 2.0, s * 3f64.sqrt() / 2.0);
    let corners = [a, b, c];
    let centroid = (a + b + c) * (1.0 / 3.0);
    let depth = (WINDING * WINDING - s * s / 4.0).sqrt();

    let mut v = corners.to_vec();
    let mut e = vec![(0, 1), (1, 2), (0, 2)];
    // (corner i, corner j, inside?) for ports w1..w6.
    let ports = [
        (0, 1, true),
        (0, 2, true),
        (0, 1, false),
        (1, 2, true),
        (0, 2, false),
        (1, 2, false),
    ];
    let mut leaves = [0; 6];
    for (k, &(i, j, inside)) in ports.iter().enumerate() {
        let (p, q) = (corners[i], corners[j]);
        let mid = p.midpoint(q);
        let inward = (centroid - mid).normalized().unwrap();
        let dir = if inside { inward } else { -inward };
        let w = mid + dir * depth;
        let wi = v.len();
        v.push(w);
        e.push((i, wi));
        e.push((j, wi));
        let along = (q - p).normalized().unwrap();
        let leaf = if inside {
            // Two-segment pendant folded into the sliver between the side
            // and the port.
            let bend = mid + inward * (depth * 0.2) - along * (s * 0.325);
            let first = bend.dist(w);
            let bi = v.len();
            v.push(bend);
            e.push((wi, bi));
            bend + along * (PENDANT - first)
        } else {
            w + dir * PENDANT
        };
        leaves[k] = v.len();
        v.push(leaf);
        e.push((leaves[k] - 1, leaves[k]));
    }
    (build(v, e), leaves)
}
