//! Monotone and convex graphs with respect to a direction, the h⁺/h⁻
//! profiles, disjoint diametral families and the stabbing partition.

use thiserror::Error;

use crate::cuts::{cut, sweep_plan, CutError, PartitionPlan};
use crate::exec::Execution;
use crate::geom::{angular_order, signed_area, winding_number, Line2, Point2, Tolerance};
use crate::graph::GeometricGraph;
use crate::metric::{DiametralSet, Metric};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MonotoneError {
    #[error("graph is not monotone with respect to the given line")]
    NotMonotone,
    #[error("graph is not connected")]
    Disconnected,
    #[error("cut at x = {x}: {source}")]
    Cut {
        x: f64,
        #[source]
        source: CutError,
    },
}

/// Closed face walks of a plane graph. Bounded faces are traced
/// counter-clockwise and have positive signed area.
#[derive(Debug, Clone, PartialEq)]
pub struct Faces {
    pub walks: Vec<Vec<usize>>,
    pub areas: Vec<f64>,
}

impl Faces {
    pub fn polygon(&self, g: &GeometricGraph, i: usize) -> Vec<Point2> {
        self.walks[i].iter().map(|&v| g.vertex(v)).collect()
    }

    /// Indices of the walks bounding interior faces.
    pub fn bounded(&self, g: &GeometricGraph, tol: &Tolerance) -> Vec<usize> {
        let scale = g
            .bounding_box()
            .map(|(lo, hi)| lo.dist(hi))
            .unwrap_or(0.0)
            .max(1.0);
        (0..self.walks.len())
            .filter(|&i| self.areas[i] > tol.eps_geom * scale)
            .collect()
    }
}

/// Face walks obtained by always turning to the clockwise-next neighbor.
pub fn faces(g: &GeometricGraph, tol: &Tolerance) -> Faces {
    let n = g.n();
    let order: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let nb: Vec<usize> = g.neighbors(v).iter().map(|&(u, _)| u).collect();
            let pts: Vec<Point2> = nb.iter().map(|&u| g.vertex(u)).collect();
            angular_order(g.vertex(v), &pts, tol)
                .expect("valid graphs have no coincident vertices")
                .into_iter()
                .map(|i| nb[i])
                .collect()
        })
        .collect();
    let pos = |v: usize, u: usize| order[v].iter().position(|&w| w == u).unwrap();
    let mut used: Vec<Vec<bool>> = order.iter().map(|o| vec![false; o.len()]).collect();
    let mut walks = vec![];
    let mut areas = vec![];
    for s in 0..n {
        for k in 0..order[s].len() {
            if used[s][k] {
                continue;
            }
            let mut walk = vec![];
            let (mut u, mut v) = (s, order[s][k]);
            loop {
                let i = pos(u, v);
                if used[u][i] {
                    break;
                }
                used[u][i] = true;
                walk.push(u);
                let deg = order[v].len();
                let w = order[v][(pos(v, u) + deg - 1) % deg];
                u = v;
                v = w;
            }
            let poly: Vec<Point2> = walk.iter().map(|&x| g.vertex(x)).collect();
            areas.push(signed_area(&poly));
            walks.push(walk);
        }
    }
    Faces { walks, areas }
}

fn merge(mut ivs: Vec<(f64, f64)>, eps: f64) -> Vec<(f64, f64)> {
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

/// Frame with `dir` as the x-axis and its left normal as the y-axis.
#[derive(Debug, Clone, Copy)]
struct Frame {
    dir: Point2,
    up: Point2,
}

impl Frame {
    fn new(l: &Line2) -> Self {
        let dir = l.direction();
        Frame { dir, up: dir.perp() }
    }

    fn x(&self, p: Point2) -> f64 {
        self.dir.dot(p)
    }

    fn y(&self, p: Point2) -> f64 {
        self.up.dot(p)
    }

    fn point(&self, x: f64, y: f64) -> Point2 {
        self.dir * x + self.up * y
    }
}

/// Intersections of the segments with the slice `x`: points or, for
/// segments lying on the slice, intervals.
fn segment_hits(segs: &[(Point2, Point2)], f: &Frame, x: f64, eps: f64) -> Vec<(f64, f64)> {
    let mut hits = vec![];
    for &(a, b) in segs {
        let (xa, xb) = (f.x(a), f.x(b));
        let (ya, yb) = (f.y(a), f.y(b));
        let on_a = (xa - x).abs() <= eps;
        let on_b = (xb - x).abs() <= eps;
        if on_a && on_b {
            hits.push((ya.min(yb), ya.max(yb)));
        } else if on_a {
            hits.push((ya, ya));
        } else if on_b {
            hits.push((yb, yb));
        } else if (xa < x) != (xb < x) {
            let y = ya + (yb - ya) * (x - xa) / (xb - xa);
            hits.push((y, y));
        }
    }
    hits
}

/// Connected pieces of `slice ∩ (segments ∪ region)` where `inside` decides
/// membership in the region.
fn slice_pieces(
    segs: &[(Point2, Point2)],
    f: &Frame,
    x: f64,
    eps: f64,
    inside: impl Fn(Point2) -> bool,
) -> Vec<(f64, f64)> {
    let mut hits = segment_hits(segs, f, x, eps);
    let mut ys: Vec<f64> = hits.iter().flat_map(|&(a, b)| [a, b]).collect();
    ys.sort_by(f64::total_cmp);
    for w in ys.windows(2) {
        if w[1] - w[0] > eps && inside(f.point(x, (w[0] + w[1]) / 2.0)) {
            hits.push((w[0], w[1]));
        }
    }
    merge(hits, eps)
}

/// Slice positions: every vertex projection and one point strictly between
/// consecutive projections.
fn slice_positions(g: &GeometricGraph, f: &Frame, eps: f64) -> Vec<f64> {
    let mut xs: Vec<f64> = g.vertices().iter().map(|&p| f.x(p)).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() <= eps);
    let mut out = vec![];
    for (i, &x) in xs.iter().enumerate() {
        out.push(x);
        if let Some(&next) = xs.get(i + 1) {
            out.push((x + next) / 2.0);
        }
    }
    out
}

fn edge_segments(g: &GeometricGraph) -> Vec<(Point2, Point2)> {
    (0..g.m()).map(|e| g.edge_segment(e)).collect()
}

/// Whether every line perpendicular to `l` meets the graph together with its
/// interior faces in at most one interval.
pub fn is_monotone(g: &GeometricGraph, l: &Line2, tol: &Tolerance) -> bool {
    let f = Frame::new(l);
    let fc = faces(g, tol);
    let polys: Vec<Vec<Point2>> = fc
        .bounded(g, tol)
        .into_iter()
        .map(|i| fc.polygon(g, i))
        .collect();
    if g.m() == 0 {
        return g.n() <= 1;
    }
    let segs = edge_segments(g);
    let eps = tol.eps_geom;
    slice_positions(g, &f, eps).into_iter().all(|x| {
        let inside = |p: Point2| polys.iter().any(|poly| winding_number(poly, p) != 0);
        slice_pieces(&segs, &f, x, eps, inside).len() <= 1
    })
}

/// Monotone, and every interior face is itself monotone.
pub fn is_convex_monotone(g: &GeometricGraph, l: &Line2, tol: &Tolerance) -> bool {
    if !is_monotone(g, l, tol) {
        return false;
    }
    let f = Frame::new(l);
    let fc = faces(g, tol);
    let eps = tol.eps_geom;
    let xs = slice_positions(g, &f, eps);
    fc.bounded(g, tol).into_iter().all(|i| {
        let poly = fc.polygon(g, i);
        let segs: Vec<(Point2, Point2)> = (0..poly.len())
            .map(|k| (poly[k], poly[(k + 1) % poly.len()]))
            .collect();
        xs.iter().all(|&x| {
            slice_pieces(&segs, &f, x, eps, |p| winding_number(&poly, p) != 0).len() <= 1
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample {
    pub x: f64,
    pub h_minus: f64,
    pub h_plus: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneProfile {
    /// Reference line; slices are perpendicular to it and positions are
    /// measured along its direction.
    pub direction: Line2,
    pub samples: Vec<ProfileSample>,
    /// Sorted vertex positions.
    pub events: Vec<f64>,
}

/// The line `{p : dir·p = x}` together with a flag telling whether its
/// plus side is the side of larger `x`.
fn slice_line(dir: Point2, x: f64) -> (Line2, bool) {
    let line = Line2::new(dir.x, dir.y, x).expect("unit direction");
    (line, line.normal().dot(dir) > 0.0)
}

/// Diameters of the two sides of each perpendicular cut; `h_minus` is the
/// side of smaller position.
pub fn h_profile(
    g: &GeometricGraph,
    l: &Line2,
    xs: &[f64],
    tol: &Tolerance,
    exec: Execution,
) -> Result<MonotoneProfile, MonotoneError> {
    if !is_monotone(g, l, tol) {
        return Err(MonotoneError::NotMonotone);
    }
    let f = Frame::new(l);
    let samples = exec.map(xs, |&x| {
        let (line, forward) = slice_line(f.dir, x);
        let r = cut(g, &line, tol).map_err(|source| MonotoneError::Cut { x, source })?;
        let (lo, hi) = if forward {
            (r.minus, r.plus)
        } else {
            (r.plus, r.minus)
        };
        let d = |h: &GeometricGraph| {
            Metric::with_execution(h, tol, Execution::Sequential)
                .diameter()
                .value
        };
        Ok(ProfileSample {
            x,
            h_minus: d(&lo),
            h_plus: d(&hi),
        })
    });
    let samples = samples.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut events: Vec<f64> = g.vertices().iter().map(|&p| f.x(p)).collect();
    events.sort_by(f64::total_cmp);
    Ok(MonotoneProfile {
        direction: *l,
        samples,
        events,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiametralFamily {
    pub sets: Vec<DiametralSet>,
    /// `intersects[i][j]` for every pair of sets.
    pub intersects: Vec<Vec<bool>>,
    pub max_disjoint: usize,
    /// Indices of a largest pairwise-disjoint subfamily.
    pub disjoint: Vec<usize>,
}

struct CliqueSearch<'a> {
    adj: &'a [Vec<bool>],
    best: Vec<usize>,
}

impl CliqueSearch<'_> {
    fn run(&mut self, current: &mut Vec<usize>, cand: Vec<usize>) {
        if cand.is_empty() {
            if current.len() > self.best.len() {
                self.best = current.clone();
            }
            return;
        }
        // Greedy coloring of the candidates bounds the clique size.
        let mut colors: Vec<Vec<usize>> = vec![];
        for &v in &cand {
            match colors
                .iter_mut()
                .find(|c| c.iter().all(|&u| !self.adj[u][v]))
            {
                Some(c) => c.push(v),
                None => colors.push(vec![v]),
            }
        }
        if current.len() + colors.len() <= self.best.len() {
            return;
        }
        let mut cand = cand;
        while let Some(v) = cand.pop() {
            if current.len() + cand.len() + 1 <= self.best.len() {
                return;
            }
            current.push(v);
            let next = cand.iter().copied().filter(|&u| self.adj[u][v]).collect();
            self.run(current, next);
            current.pop();
        }
    }
}

/// Maximum clique of a symmetric adjacency matrix.
pub fn max_clique(adj: &[Vec<bool>]) -> Vec<usize> {
    let mut s = CliqueSearch { adj, best: vec![] };
    s.run(&mut vec![], (0..adj.len()).collect());
    s.best.sort_unstable();
    s.best
}

/// Distinct diametral sets, their intersection pattern and a largest
/// pairwise-disjoint subfamily.
pub fn max_disjoint_family(g: &GeometricGraph, tol: &Tolerance) -> DiametralFamily {
    let sets = Metric::new(g, tol).diametral_sets();
    let k = sets.len();
    let intersects: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| i == j || sets[i].intersects(&sets[j], tol)).collect())
        .collect();
    let disjoint_adj: Vec<Vec<bool>> = intersects
        .iter()
        .map(|row| row.iter().map(|&b| !b).collect())
        .collect();
    let disjoint = max_clique(&disjoint_adj);
    DiametralFamily {
        max_disjoint: disjoint.len(),
        sets,
        intersects,
        disjoint,
    }
}

/// Stabbing positions for closed intervals: sort by right end and stab just
/// left of the first unstabbed right end.
pub fn stab_intervals(intervals: &[(f64, f64)], eps: f64) -> Vec<f64> {
    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.sort_by(|&a, &b| intervals[a].1.total_cmp(&intervals[b].1));
    let mut xs: Vec<f64> = vec![];
    for i in order {
        let (lo, hi) = intervals[i];
        if xs.last().is_some_and(|&x| lo <= x && x <= hi) {
            continue;
        }
        xs.push(hi - eps);
    }
    xs
}

/// Result of [`monotone_partition`].
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonePartition {
    pub plan: PartitionPlan,
    /// Positions of the perpendicular cuts along the reference direction.
    pub positions: Vec<f64>,
    pub family: DiametralFamily,
}

/// Perpendicular cuts stabbing the projections of all diametral sets.
pub fn monotone_partition(
    g: &GeometricGraph,
    l: &Line2,
    tol: &Tolerance,
) -> Result<MonotonePartition, MonotoneError> {
    if !g.is_connected() {
        return Err(MonotoneError::Disconnected);
    }
    if !is_monotone(g, l, tol) {
        return Err(MonotoneError::NotMonotone);
    }
    let f = Frame::new(l);
    let family = max_disjoint_family(g, tol);
    let intervals: Vec<(f64, f64)> = family
        .sets
        .iter()
        .map(|s| s.projection(g, f.dir))
        .collect();
    let mut pts: Vec<f64> = intervals.iter().flat_map(|&(a, b)| [a, b]).collect();
    pts.extend(g.vertices().iter().map(|&p| f.x(p)));
    pts.sort_by(f64::total_cmp);
    let gap = pts
        .windows(2)
        .map(|w| w[1] - w[0])
        .filter(|&d| d > tol.eps_geom)
        .fold(f64::INFINITY, f64::min);
    let eps = if gap.is_finite() { gap / 2.0 } else { 0.5 };
    let positions = stab_intervals(&intervals, eps);
    let plan = sweep_plan(f.dir, &positions).map_err(|source| MonotoneError::Cut {
        x: f64::NAN,
        source,
    })?;
    Ok(MonotonePartition {
        plan,
        positions,
        family,
    })
}
