//! Shortest-path metric of a continuous geometric graph: vertex distances,
//! point distances, the exact continuous diameter and diametral sets.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::geom::{Point2, Tolerance};
use crate::graph::GeometricGraph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("edge {0} does not exist")]
    NoSuchEdge(usize),
    #[error("vertex {anchor} is not an endpoint of edge {edge}")]
    NotAnEndpoint { edge: usize, anchor: usize },
    #[error("position {lambda} is outside edge {edge} of length {length}")]
    OutOfEdge { edge: usize, lambda: f64, length: f64 },
    #[error("vertex {0} has no incident edge")]
    IsolatedVertex(usize),
}

/// A point of the continuous graph: the position at distance `lambda` from
/// `anchor` along `edge`. Constructors canonicalize to the smaller endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuousPoint {
    pub edge: usize,
    pub anchor: usize,
    pub lambda: f64,
}

impl ContinuousPoint {
    pub fn new(
        g: &GeometricGraph,
        edge: usize,
        anchor: usize,
        lambda: f64,
        tol: &Tolerance,
    ) -> Result<Self, MetricError> {
        if edge >= g.m() {
            return Err(MetricError::NoSuchEdge(edge));
        }
        let (u, v) = g.edge(edge);
        let len = g.length(edge);
        let lambda = if anchor == u {
            lambda
        } else if anchor == v {
            len - lambda
        } else {
            return Err(MetricError::NotAnEndpoint { edge, anchor });
        };
        if !(lambda >= -tol.eps_geom && lambda <= len + tol.eps_geom) {
            return Err(MetricError::OutOfEdge {
                edge,
                lambda,
                length: len,
            });
        }
        Ok(ContinuousPoint {
            edge,
            anchor: u,
            lambda: lambda.clamp(0.0, len),
        })
    }

    /// The vertex `v`, addressed through its lowest-numbered incident edge.
    pub fn at_vertex(g: &GeometricGraph, v: usize) -> Result<Self, MetricError> {
        let e = g
            .neighbors(v)
            .iter()
            .map(|&(_, e)| e)
            .min()
            .ok_or(MetricError::IsolatedVertex(v))?;
        let (u, _) = g.edge(e);
        Ok(ContinuousPoint {
            edge: e,
            anchor: u,
            lambda: if u == v { 0.0 } else { g.length(e) },
        })
    }

    pub(crate) fn raw(g: &GeometricGraph, edge: usize, lambda: f64) -> Self {
        ContinuousPoint {
            edge,
            anchor: g.edge(edge).0,
            lambda: lambda.clamp(0.0, g.length(edge)),
        }
    }

    pub fn position(&self, g: &GeometricGraph) -> Point2 {
        let (a, b) = g.edge_segment(self.edge);
        a.lerp(b, self.lambda / g.length(self.edge))
    }

    fn key_cmp(&self, other: &Self) -> Ordering {
        self.edge
            .cmp(&other.edge)
            .then(self.lambda.total_cmp(&other.lambda))
    }
}

/// Lexicographic order on canonical point pairs.
pub fn pair_cmp(
    a: &(ContinuousPoint, ContinuousPoint),
    b: &(ContinuousPoint, ContinuousPoint),
) -> Ordering {
    a.0.key_cmp(&b.0).then(a.1.key_cmp(&b.1))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diameter {
    pub value: f64,
    pub witness: Option<(ContinuousPoint, ContinuousPoint)>,
}

#[derive(Clone, Copy, PartialEq)]
struct HeapItem(f64, usize);

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then(o.1.cmp(&self.1))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Single-source shortest paths, optionally ignoring one edge.
pub fn dijkstra(g: &GeometricGraph, src: usize, skip_edge: Option<usize>) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; g.n()];
    dist[src] = 0.0;
    let mut heap = BinaryHeap::from([HeapItem(0.0, src)]);
    while let Some(HeapItem(d, x)) = heap.pop() {
        if d > dist[x] {
            continue;
        }
        for &(y, e) in g.neighbors(x) {
            if Some(e) == skip_edge {
                continue;
            }
            let nd = d + g.length(e);
            if nd < dist[y] {
                dist[y] = nd;
                heap.push(HeapItem(nd, y));
            }
        }
    }
    dist
}

/// `c + s·x` restricted to a parameter interval.
#[derive(Debug, Clone, Copy)]
struct Affine {
    c: f64,
    s: f64,
}

/// Distance from a fixed point to the points of one edge, as a min of
/// affine functions on each sub-interval.
struct Profile {
    pieces: Vec<(f64, f64, Vec<Affine>)>,
}

impl Profile {
    fn split(&self, cut: f64) -> Vec<f64> {
        let mut pts = vec![];
        for (lo, hi, _) in &self.pieces {
            pts.push(*lo);
            pts.push(*hi);
        }
        pts.push(cut);
        pts
    }

    fn funcs_at(&self, x: f64) -> &[Affine] {
        for (lo, hi, f) in &self.pieces {
            if x >= *lo && x <= *hi {
                return f;
            }
        }
        &self.pieces.last().unwrap().2
    }
}

/// Maximal sub-interval `[lo, hi]` of an edge covered by a diametral set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub edge: usize,
    pub lo: f64,
    pub hi: f64,
}

/// Union of all shortest paths between a diametral pair.
#[derive(Debug, Clone, PartialEq)]
pub struct DiametralSet {
    pub pair: (ContinuousPoint, ContinuousPoint),
    /// Sorted by edge, then by position.
    pub pieces: Vec<Piece>,
    pub vertices: BTreeSet<usize>,
}

impl DiametralSet {
    pub fn full_edges(&self, g: &GeometricGraph, tol: &Tolerance) -> Vec<usize> {
        self.pieces
            .iter()
            .filter(|p| p.lo <= tol.eps_geom && p.hi >= g.length(p.edge) - tol.eps_geom)
            .map(|p| p.edge)
            .collect()
    }

    pub fn fragments(&self, g: &GeometricGraph, tol: &Tolerance) -> Vec<Piece> {
        self.pieces
            .iter()
            .filter(|p| !(p.lo <= tol.eps_geom && p.hi >= g.length(p.edge) - tol.eps_geom))
            .copied()
            .collect()
    }

    /// Range of `dir · x` over the set.
    pub fn projection(&self, g: &GeometricGraph, dir: Point2) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in &self.pieces {
            for t in [p.lo, p.hi] {
                let x = ContinuousPoint::raw(g, p.edge, t).position(g).dot(dir);
                lo = lo.min(x);
                hi = hi.max(x);
            }
        }
        (lo, hi)
    }

    pub fn intersects(&self, other: &DiametralSet, tol: &Tolerance) -> bool {
        if self.vertices.intersection(&other.vertices).next().is_some() {
            return true;
        }
        let eps = tol.eps_geom;
        self.pieces.iter().any(|a| {
            other
                .pieces
                .iter()
                .any(|b| b.edge == a.edge && a.lo <= b.hi + eps && b.lo <= a.hi + eps)
        })
    }

    fn same_content(&self, other: &DiametralSet, eps: f64) -> bool {
        self.vertices == other.vertices
            && self.pieces.len() == other.pieces.len()
            && self.pieces.iter().zip(&other.pieces).all(|(a, b)| {
                a.edge == b.edge && (a.lo - b.lo).abs() <= eps && (a.hi - b.hi).abs() <= eps
            })
    }
}

/// Precomputed distances of a geometric graph.
#[derive(Debug, Clone)]
pub struct Metric<'g> {
    g: &'g GeometricGraph,
    tol: Tolerance,
    exec: Execution,
    dist: Vec<Vec<f64>>,
    around: Vec<f64>,
}

impl<'g> Metric<'g> {
    pub fn new(g: &'g GeometricGraph, tol: &Tolerance) -> Self {
        Metric::with_execution(g, tol, Execution::default())
    }

    pub fn with_execution(g: &'g GeometricGraph, tol: &Tolerance, exec: Execution) -> Self {
        let dist = exec.map_range(g.n(), |s| dijkstra(g, s, None));
        let around = exec.map_range(g.m(), |e| {
            let (u, v) = g.edge(e);
            dijkstra(g, u, Some(e))[v]
        });
        Metric {
            g,
            tol: *tol,
            exec,
            dist,
            around,
        }
    }

    pub fn graph(&self) -> &'g GeometricGraph {
        self.g
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    pub fn vertex_distances(&self) -> &[Vec<f64>] {
        &self.dist
    }

    pub fn vertex_distance(&self, u: usize, v: usize) -> f64 {
        self.dist[u][v]
    }

    /// Length of the shortest path between the endpoints of `e` avoiding
    /// the interior of `e`.
    pub fn around(&self, e: usize) -> f64 {
        self.around[e]
    }

    pub fn distance_to_vertex(&self, p: &ContinuousPoint, w: usize) -> f64 {
        let (a, b) = self.g.edge(p.edge);
        let len = self.g.length(p.edge);
        (p.lambda + self.dist[a][w]).min(len - p.lambda + self.dist[b][w])
    }

    pub fn distance(&self, p: &ContinuousPoint, q: &ContinuousPoint) -> f64 {
        let len = self.g.length(p.edge);
        if p.edge == q.edge {
            let t = (p.lambda - q.lambda).abs();
            return t.min(len - t + self.around[p.edge]);
        }
        let f = self.routings(p.edge, q.edge);
        f.iter()
            .map(|r| r.c + r.sl * p.lambda + r.sm * q.lambda)
            .fold(f64::INFINITY, f64::min)
    }

    /// The four endpoint routings between points on distinct edges as affine
    /// functions of the two positions.
    fn routings(&self, e: usize, f: usize) -> [Routing; 4] {
        let (a, b) = self.g.edge(e);
        let (c, d) = self.g.edge(f);
        let le = self.g.length(e);
        let lf = self.g.length(f);
        [
            Routing::new(self.dist[a][c], 1.0, 1.0),
            Routing::new(self.dist[a][d] + lf, 1.0, -1.0),
            Routing::new(self.dist[b][c] + le, -1.0, 1.0),
            Routing::new(self.dist[b][d] + le + lf, -1.0, -1.0),
        ]
    }

    /// Candidate optima `(λ, μ, value)` of the distance over `e × f`.
    fn pair_candidates(&self, e: usize, f: usize) -> Vec<(f64, f64, f64)> {
        let le = self.g.length(e);
        let lf = self.g.length(f);
        let eval = |l: f64, m: f64| {
            if e == f {
                let t = (l - m).abs();
                t.min(le - t + self.around[e])
            } else {
                self.routings(e, f)
                    .iter()
                    .map(|r| r.c + r.sl * l + r.sm * m)
                    .fold(f64::INFINITY, f64::min)
            }
        };
        let mut pts: Vec<(f64, f64)> = Vec::new();
        if e == f {
            let t = le.min((le + self.around[e]) / 2.0);
            pts.push((0.0, t));
            pts.push((le - t, le));
            pts.push(((le - t) / 2.0, (le + t) / 2.0));
        } else {
            let r = self.routings(e, f);
            pts.extend([(0.0, 0.0), (0.0, lf), (le, 0.0), (le, lf)]);
            let mut lines = Vec::new();
            for i in 0..4 {
                for j in i + 1..4 {
                    // r_i - r_j = 0 as  A λ + B μ = C.
                    let a = r[i].sl - r[j].sl;
                    let b = r[i].sm - r[j].sm;
                    let c = r[j].c - r[i].c;
                    if (a == 0.0 && b == 0.0) || !c.is_finite() {
                        continue;
                    }
                    lines.push((a, b, c));
                    if b != 0.0 {
                        for l in [0.0, le] {
                            pts.push((l, (c - a * l) / b));
                        }
                    }
                    if a != 0.0 {
                        for m in [0.0, lf] {
                            pts.push(((c - b * m) / a, m));
                        }
                    }
                }
            }
            for i in 0..lines.len() {
                for j in i + 1..lines.len() {
                    let (a1, b1, c1) = lines[i];
                    let (a2, b2, c2) = lines[j];
                    let det = a1 * b2 - a2 * b1;
                    if det != 0.0 {
                        pts.push(((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det));
                    }
                }
            }
        }
        let slack = self.tol.eps_geom;
        pts.into_iter()
            .filter(|&(l, m)| {
                l >= -slack && l <= le + slack && m >= -slack && m <= lf + slack
            })
            .map(|(l, m)| {
                let (l, m) = (l.clamp(0.0, le), m.clamp(0.0, lf));
                (l, m, eval(l, m))
            })
            .collect()
    }

    /// Edge pairs `(e, f)` with `e ≤ f`, in lexicographic order.
    fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.g.m();
        (0..m).flat_map(|e| (e..m).map(move |f| (e, f))).collect()
    }

    fn all_candidates(&self) -> Vec<((usize, usize), Vec<(f64, f64, f64)>)> {
        let pairs = self.edge_pairs();
        let cands = self.exec.map(&pairs, |&(e, f)| self.pair_candidates(e, f));
        pairs.into_iter().zip(cands).collect()
    }

    /// Exact continuous diameter with a deterministic witness pair.
    pub fn diameter(&self) -> Diameter {
        if self.g.m() == 0 {
            return Diameter {
                value: if self.g.n() <= 1 { 0.0 } else { f64::INFINITY },
                witness: None,
            };
        }
        if !self.g.is_connected() {
            return Diameter {
                value: f64::INFINITY,
                witness: None,
            };
        }
        let all = self.all_candidates();
        let value = all
            .iter()
            .flat_map(|(_, c)| c.iter().map(|x| x.2))
            .fold(0.0, f64::max);
        let tie = self.tol.tie(value);
        let witness = all
            .iter()
            .flat_map(|&((e, f), ref c)| {
                c.iter()
                    .filter(|x| x.2 >= value - tie)
                    .map(move |&(l, m, _)| self.ordered_pair(e, l, f, m))
            })
            .min_by(pair_cmp);
        Diameter { value, witness }
    }

    /// Maximum distance over all pairs, without the witness bookkeeping.
    pub fn diameter_value(&self) -> f64 {
        self.diameter().value
    }

    fn ordered_pair(&self, e: usize, l: f64, f: usize, m: f64) -> (ContinuousPoint, ContinuousPoint) {
        let p = ContinuousPoint::raw(self.g, e, l);
        let q = ContinuousPoint::raw(self.g, f, m);
        if p.key_cmp(&q) == Ordering::Greater {
            (q, p)
        } else {
            (p, q)
        }
    }

    /// Representative diametral pairs: the optimal vertices of every edge
    /// pair's distance function plus midpoints between optimal vertices.
    pub fn diametral_pairs(&self, d: &Diameter) -> Vec<(ContinuousPoint, ContinuousPoint)> {
        if d.witness.is_none() {
            return vec![];
        }
        let tie = self.tol.tie(d.value);
        let mut out = vec![];
        for ((e, f), cands) in self.all_candidates() {
            let best: Vec<(f64, f64)> = cands
                .iter()
                .filter(|x| x.2 >= d.value - tie)
                .map(|x| (x.0, x.1))
                .collect();
            let mut reps = best.clone();
            for i in 0..best.len() {
                for j in i + 1..best.len() {
                    let (l, m) = (
                        (best[i].0 + best[j].0) / 2.0,
                        (best[i].1 + best[j].1) / 2.0,
                    );
                    let p = ContinuousPoint::raw(self.g, e, l);
                    let q = ContinuousPoint::raw(self.g, f, m);
                    if self.distance(&p, &q) >= d.value - tie {
                        reps.push((l, m));
                    }
                }
            }
            for (l, m) in reps {
                out.push(self.ordered_pair(e, l, f, m));
            }
        }
        out.sort_by(pair_cmp);
        out.dedup_by(|a, b| {
            a.0.edge == b.0.edge
                && a.1.edge == b.1.edge
                && (a.0.lambda - b.0.lambda).abs() <= self.tol.eps_geom
                && (a.1.lambda - b.1.lambda).abs() <= self.tol.eps_geom
        });
        out
    }

    fn profile(&self, p: &ContinuousPoint, g_edge: usize) -> Profile {
        let (c, d) = self.g.edge(g_edge);
        let n = self.g.length(g_edge);
        if g_edge != p.edge {
            let dc = self.distance_to_vertex(p, c);
            let dd = self.distance_to_vertex(p, d);
            return Profile {
                pieces: vec![(
                    0.0,
                    n,
                    vec![Affine { c: dc, s: 1.0 }, Affine { c: dd + n, s: -1.0 }],
                )],
            };
        }
        let l = p.lambda;
        let a = self.around[g_edge];
        let wrap = [
            Affine {
                c: n - l + a,
                s: 1.0,
            },
            Affine {
                c: l + a + n,
                s: -1.0,
            },
        ];
        let mut left = vec![Affine { c: l, s: -1.0 }];
        let mut right = vec![Affine { c: -l, s: 1.0 }];
        if a.is_finite() {
            left.extend(wrap);
            right.extend(wrap);
        }
        Profile {
            pieces: vec![(0.0, l, left), (l, n, right)],
        }
    }

    /// Points of `edge` within `bound` of both `p` and `q` in total length,
    /// i.e. `{x : d(p,x) + d(x,q) ≤ bound}`, as merged intervals.
    fn sum_sublevel(
        &self,
        p: &ContinuousPoint,
        q: &ContinuousPoint,
        edge: usize,
        bound: f64,
    ) -> Vec<(f64, f64)> {
        let pp = self.profile(p, edge);
        let pq = self.profile(q, edge);
        let n = self.g.length(edge);
        let mut cuts = pp.split(0.0);
        cuts.extend(pq.split(n));
        cuts.retain(|x| (0.0..=n).contains(x));
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut ivs = vec![];
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let mid = (lo + hi) / 2.0;
            for f1 in pp.funcs_at(mid) {
                for f2 in pq.funcs_at(mid) {
                    let h = Affine {
                        c: f1.c + f2.c,
                        s: f1.s + f2.s,
                    };
                    if !h.c.is_finite() {
                        continue;
                    }
                    let (a, b) = if h.s == 0.0 {
                        if h.c <= bound {
                            (lo, hi)
                        } else {
                            continue;
                        }
                    } else if h.s > 0.0 {
                        (lo, hi.min((bound - h.c) / h.s))
                    } else {
                        (lo.max((bound - h.c) / h.s), hi)
                    };
                    if a <= b {
                        ivs.push((a, b));
                    }
                }
            }
        }
        merge_intervals(ivs, self.tol.eps_geom)
    }

    /// The union of all shortest paths between `p` and `q`.
    pub fn diametral_set(&self, p: ContinuousPoint, q: ContinuousPoint) -> DiametralSet {
        let dpq = self.distance(&p, &q);
        let tie = self.tol.tie(dpq);
        let mut pieces = vec![];
        let mut vertices = BTreeSet::new();
        for e in 0..self.g.m() {
            let n = self.g.length(e);
            for (lo, hi) in self.sum_sublevel(&p, &q, e, dpq + tie) {
                if hi - lo <= tie {
                    continue;
                }
                let lo = if lo <= tie { 0.0 } else { lo };
                let hi = if hi >= n - tie { n } else { hi };
                pieces.push(Piece { edge: e, lo, hi });
            }
        }
        for w in 0..self.g.n() {
            if self.distance_to_vertex(&p, w) + self.distance_to_vertex(&q, w) <= dpq + tie {
                vertices.insert(w);
            }
        }
        DiametralSet {
            pair: (p, q),
            pieces,
            vertices,
        }
    }

    /// Distinct diametral sets, one per class of representative pairs.
    pub fn diametral_sets(&self) -> Vec<DiametralSet> {
        let d = self.diameter();
        let pairs = self.diametral_pairs(&d);
        let sets = self.exec.map(&pairs, |&(p, q)| self.diametral_set(p, q));
        let mut out: Vec<DiametralSet> = Vec::new();
        for s in sets {
            if !out
                .iter()
                .any(|t| t.same_content(&s, self.tol.tie(d.value).max(1e-7)))
            {
                out.push(s);
            }
        }
        out
    }

    /// Points at distance exactly `diam` from `p`, one per maximal arc
    /// (collapsed to its midpoint), deduplicated by location.
    pub fn partners_at(&self, p: &ContinuousPoint, diam: f64) -> Vec<ContinuousPoint> {
        let tie = self.tol.tie(diam);
        let mut out: Vec<ContinuousPoint> = vec![];
        for e in 0..self.g.m() {
            let prof = self.profile(p, e);
            for (lo, hi, funcs) in &prof.pieces {
                let (mut a, mut b) = (*lo, *hi);
                for f in funcs {
                    if !f.c.is_finite() {
                        continue;
                    }
                    if f.s > 0.0 {
                        a = a.max((diam - tie - f.c) / f.s);
                    } else if f.s < 0.0 {
                        b = b.min((diam - tie - f.c) / f.s);
                    } else if f.c < diam - tie {
                        b = f64::NEG_INFINITY;
                    }
                }
                if a <= b {
                    let q = ContinuousPoint::raw(self.g, e, (a + b) / 2.0);
                    let pos = q.position(self.g);
                    if !out
                        .iter()
                        .any(|r| r.position(self.g).dist(pos) <= 1e3 * tie)
                    {
                        out.push(q);
                    }
                }
            }
        }
        out
    }
}

fn merge_intervals(mut ivs: Vec<(f64, f64)>, eps: f64) -> Vec<(f64, f64)> {
    ivs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = vec![];
    for (lo, hi) in ivs {
        match out.last_mut() {
            Some(last) if lo <= last.1 + eps => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

#[derive(Debug, Clone, Copy)]
struct Routing {
    c: f64,
    sl: f64,
    sm: f64,
}

impl Routing {
    fn new(c: f64, sl: f64, sm: f64) -> Self {
        Routing { c, sl, sm }
    }
}

/// Convenience: exact continuous diameter of `g`.
pub fn continuous_diameter(g: &GeometricGraph, tol: &Tolerance) -> Diameter {
    Metric::new(g, tol).diameter()
}
