//! Borsuk partitions of continuous geometric trees: the center, the
//! `b ≤ 3` construction and the decision between 2 and 3 parts.

use std::f64::consts::PI;

use thiserror::Error;

use crate::cuts::{
    apply_plan, cut, near_offset, sweep_plan, verify_partition_with, CutError, Origin,
    PartitionPlan, PartitionVerdict, PlanStep,
};
use crate::exec::Execution;
use crate::geom::{Line2, Point2, Tolerance};
use crate::graph::GeometricGraph;
use crate::metric::{dijkstra, ContinuousPoint, Metric};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TreeError {
    #[error("graph is not a tree")]
    NotATree,
    #[error("tree needs at least two vertices")]
    TooSmall,
    #[error("line is {distance} away from the center, beyond {delta}")]
    FarFromCenter { distance: f64, delta: f64 },
    #[error(transparent)]
    Cut(#[from] CutError),
    #[error("constructed witness does not verify")]
    WitnessFailed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeCenter {
    pub point: ContinuousPoint,
    pub position: Point2,
    pub is_vertex: bool,
    /// The center vertex, when `is_vertex`.
    pub vertex: Option<usize>,
    pub eccentricity: f64,
}

fn check_tree(t: &GeometricGraph) -> Result<(), TreeError> {
    if t.n() < 2 {
        return Err(TreeError::TooSmall);
    }
    if !t.is_tree() {
        return Err(TreeError::NotATree);
    }
    Ok(())
}

fn argmax(d: &[f64]) -> usize {
    (0..d.len()).fold(0, |b, i| if d[i] > d[b] { i } else { b })
}

/// Center by a double sweep: the midpoint of a longest path.
pub fn tree_center(t: &GeometricGraph, tol: &Tolerance) -> Result<TreeCenter, TreeError> {
    check_tree(t)?;
    let u = argmax(&dijkstra(t, 0, None));
    let du = dijkstra(t, u, None);
    let w = argmax(&du);
    let diam = du[w];
    let half = diam / 2.0;
    // Walk from w towards u until the path passes the midpoint.
    let mut x = w;
    loop {
        let (y, e) = t
            .neighbors(x)
            .iter()
            .copied()
            .find(|&(y, e)| (du[y] + t.length(e) - du[x]).abs() <= tol.tie(diam) && du[y] < du[x])
            .expect("shortest-path parent exists");
        if du[y] <= half {
            let lambda = half - du[y];
            let point = ContinuousPoint::new(t, e, y, lambda, tol).expect("within edge");
            let position = point.position(t);
            let vertex = if lambda <= tol.eps_geom {
                Some(y)
            } else if t.length(e) - lambda <= tol.eps_geom {
                Some(x)
            } else {
                None
            };
            let point = match vertex {
                Some(v) => ContinuousPoint::at_vertex(t, v).expect("tree vertex has an edge"),
                None => point,
            };
            return Ok(TreeCenter {
                point,
                position: vertex.map_or(position, |v| t.vertex(v)),
                is_vertex: vertex.is_some(),
                vertex,
                eccentricity: half,
            });
        }
        x = y;
    }
}

/// Classes of lines through a vertex center and, per class, whether each
/// diametral leaf gets closer to the center.
#[derive(Debug, Clone, PartialEq)]
pub struct WedgeMatrix {
    pub center: usize,
    pub leaves: Vec<usize>,
    /// First edge on the path from the center to each leaf.
    pub branch: Vec<usize>,
    /// Open angle intervals `(lo, hi)` of line directions, `0 ≤ lo < π`.
    pub wedges: Vec<(f64, f64)>,
    /// `entries[w][i]`: 0 if lines of wedge `w` shorten the distance from
    /// leaf `i` to the center, otherwise the side (+1 or -1) of the leaf.
    pub entries: Vec<Vec<i8>>,
}

impl WedgeMatrix {
    pub fn line(&self, t: &GeometricGraph, w: usize) -> Line2 {
        let (lo, hi) = self.wedges[w];
        Line2::through_point(t.vertex(self.center), Point2::polar(1.0, (lo + hi) / 2.0))
            .expect("unit direction")
    }

    /// Whether keeping the center on `side` of wedge `w` leaves no two
    /// unshortened leaves of different branches together with it.
    pub fn admits(&self, w: usize, side: i8) -> bool {
        let mut seen: Option<usize> = None;
        for (i, &e) in self.entries[w].iter().enumerate() {
            if e == side {
                match seen {
                    Some(b) if b != self.branch[i] => return false,
                    _ => seen = Some(self.branch[i]),
                }
            }
        }
        true
    }

    /// Candidate one-line classes as `(wedge, side of the center)`.
    pub fn candidates(&self) -> Vec<(usize, i8)> {
        (0..self.wedges.len())
            .flat_map(|w| [(w, 1), (w, -1)])
            .filter(|&(w, s)| self.admits(w, s))
            .collect()
    }
}

fn line_angle(d: Point2) -> f64 {
    let a = d.y.atan2(d.x);
    let a = if a < 0.0 { a + PI } else { a };
    if a >= PI {
        a - PI
    } else {
        a
    }
}

/// Rooted view of a tree at vertex `c`.
struct Rooted {
    dist: Vec<f64>,
    parent: Vec<Option<usize>>,
    branch: Vec<usize>,
}

fn root_at(t: &GeometricGraph, c: usize) -> Rooted {
    let n = t.n();
    let mut dist = vec![0.0; n];
    let mut parent = vec![None; n];
    let mut branch = vec![usize::MAX; n];
    let mut stack = vec![c];
    let mut seen = vec![false; n];
    seen[c] = true;
    while let Some(x) = stack.pop() {
        for &(y, e) in t.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                dist[y] = dist[x] + t.length(e);
                parent[y] = Some(x);
                branch[y] = if x == c { e } else { branch[x] };
                stack.push(y);
            }
        }
    }
    Rooted {
        dist,
        parent,
        branch,
    }
}

/// Directions of lines through the center where the shortening behavior
/// may change: vertex directions and the law-of-cosines split points.
fn boundary_angles(t: &GeometricGraph, c: usize, r: &Rooted) -> Vec<f64> {
    let cp = t.vertex(c);
    let mut out: Vec<f64> = (0..t.n())
        .filter(|&v| v != c)
        .map(|v| line_angle(t.vertex(v) - cp))
        .collect();
    for e in 0..t.m() {
        let (x, y) = t.edge(e);
        let (a, b) = if r.dist[x] < r.dist[y] { (x, y) } else { (y, x) };
        if a == c {
            continue;
        }
        let (pa, pb) = (t.vertex(a), t.vertex(b));
        let len = t.length(e);
        let rr = pa.dist(cp);
        let cos_alpha = (cp - pa).dot(pb - pa) / (rr * len);
        let mut j = a;
        while j != c {
            let tau = 2.0 * r.dist[j] - r.dist[a];
            let den = 2.0 * (tau - rr * cos_alpha);
            if den > 0.0 {
                let lambda = (tau * tau - rr * rr) / den;
                if lambda > 0.0 && lambda < len {
                    out.push(line_angle(pa.lerp(pb, lambda / len) - cp));
                }
            }
            j = r.parent[j].expect("path to the root");
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Open wedges between consecutive boundary directions; zero-width ones are
/// dropped.
fn wedges_from(angles: &[f64]) -> Vec<(f64, f64)> {
    const MIN_WIDTH: f64 = 1e-12;
    if angles.is_empty() {
        return vec![(0.0, PI)];
    }
    let mut out = vec![];
    for w in angles.windows(2) {
        if w[1] - w[0] > MIN_WIDTH {
            out.push((w[0], w[1]));
        }
    }
    let (first, last) = (angles[0], angles[angles.len() - 1]);
    if first + PI - last > MIN_WIDTH {
        out.push((last, first + PI));
    }
    out
}

/// Distances from the center to the given vertices inside the part of the
/// cut containing each of them, tagged with the part's side.
fn leaf_distances(
    t: &GeometricGraph,
    c: usize,
    leaves: &[usize],
    line: &Line2,
    tol: &Tolerance,
) -> Result<Vec<(f64, i8)>, CutError> {
    let r = cut(t, line, tol)?;
    let find = |origin: &[Origin], v: usize| origin.iter().position(|&o| o == Origin::Vertex(v));
    let from_center = |g: &GeometricGraph, origin: &[Origin]| {
        find(origin, c).map(|ci| dijkstra(g, ci, None))
    };
    let dp = from_center(&r.plus, &r.plus_origin);
    let dm = from_center(&r.minus, &r.minus_origin);
    let fp = |v| find(&r.plus_origin, v);
    let fm = |v| find(&r.minus_origin, v);
    Ok(leaves
        .iter()
        .map(|&v| {
            if let Some(i) = fp(v) {
                (dp.as_ref().map_or(f64::INFINITY, |d| d[i]), 1)
            } else {
                let i = fm(v).expect("vertex off the line lies in one part");
                (dm.as_ref().map_or(f64::INFINITY, |d| d[i]), -1)
            }
        })
        .collect())
}

/// Wedge matrix of a tree whose center is a vertex.
pub fn wedge_matrix(
    t: &GeometricGraph,
    center: &TreeCenter,
    tol: &Tolerance,
    exec: Execution,
) -> Result<WedgeMatrix, TreeError> {
    let c = center.vertex.expect("center is a vertex");
    let r = root_at(t, c);
    let half = center.eccentricity;
    let tie = tol.tie(2.0 * half);
    let leaves: Vec<usize> = (0..t.n())
        .filter(|&v| v != c && t.degree(v) == 1 && r.dist[v] >= half - tie)
        .collect();
    let branch = leaves.iter().map(|&v| r.branch[v]).collect();
    let wedges = wedges_from(&boundary_angles(t, c, &r));
    let lines: Vec<Line2> = wedges
        .iter()
        .map(|&(lo, hi)| {
            Line2::through_point(t.vertex(c), Point2::polar(1.0, (lo + hi) / 2.0))
                .expect("unit direction")
        })
        .collect();
    let rows = exec.map(&lines, |l| {
        leaf_distances(t, c, &leaves, l, tol).map(|ds| {
            ds.into_iter()
                .map(|(d, s)| if d < half - tie { 0 } else { s })
                .collect::<Vec<i8>>()
        })
    });
    let entries = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(WedgeMatrix {
        center: c,
        leaves,
        branch,
        wedges,
        entries,
    })
}

/// Outcome of [`borsuk_continuous_tree`].
#[derive(Debug, Clone, PartialEq)]
pub struct TreeBorsuk {
    pub k: usize,
    pub plan: PartitionPlan,
    pub center: TreeCenter,
    pub matrix: Option<WedgeMatrix>,
    pub verdict: PartitionVerdict,
    /// Offset of the witness lines from the center.
    pub delta: f64,
}

/// Tries `build(δ)` for `δ, δ/2, …` until the plan verifies.
fn first_verifying(
    t: &GeometricGraph,
    delta: f64,
    tol: &Tolerance,
    exec: Execution,
    build: impl Fn(f64) -> Result<PartitionPlan, CutError>,
) -> Result<Option<(PartitionPlan, PartitionVerdict, f64)>, TreeError> {
    let mut d = delta;
    for _ in 0..=20 {
        let plan = build(d)?;
        let v = verify_partition_with(t, &plan, tol, exec)?;
        if v.correct {
            return Ok(Some((plan, v, d)));
        }
        d /= 2.0;
    }
    Ok(None)
}

pub fn borsuk_continuous_tree(t: &GeometricGraph, tol: &Tolerance) -> Result<TreeBorsuk, TreeError> {
    borsuk_continuous_tree_with(t, tol, Execution::default())
}

pub fn borsuk_continuous_tree_with(
    t: &GeometricGraph,
    tol: &Tolerance,
    exec: Execution,
) -> Result<TreeBorsuk, TreeError> {
    let center = tree_center(t, tol)?;
    let cp = center.position;
    let Some(c) = center.vertex else {
        let e = center.point.edge;
        let (a, b) = t.edge_segment(e);
        let line = Line2::with_normal_through(b - a, cp).expect("edge has positive length");
        let delta = near_offset(t, cp, &[e], tol);
        let one = |d: f64| -> Result<PartitionPlan, CutError> {
            Ok(PartitionPlan::new(vec![PlanStep {
                target: 0,
                line: line.shifted(d - delta),
            }]))
        };
        // δ = delta gives the line through the center itself.
        return match first_verifying(t, delta, tol, exec, one)? {
            Some((plan, verdict, d)) => Ok(TreeBorsuk {
                k: 2,
                plan,
                center,
                matrix: None,
                verdict,
                delta: delta - d,
            }),
            None => Err(TreeError::WitnessFailed),
        };
    };
    let incident: Vec<usize> = t.neighbors(c).iter().map(|&(_, e)| e).collect();
    let delta = near_offset(t, cp, &incident, tol);
    let matrix = wedge_matrix(t, &center, tol, exec)?;
    for (w, side) in matrix.candidates() {
        let line = matrix.line(t, w);
        // The center ends up strictly on `side`.
        let one = |d: f64| {
            Ok(PartitionPlan::new(vec![PlanStep {
                target: 0,
                line: line.shifted(-(side as f64) * d),
            }]))
        };
        if let Some((plan, verdict, d)) = first_verifying(t, delta, tol, exec, one)? {
            return Ok(TreeBorsuk {
                k: 2,
                plan,
                center,
                matrix: Some(matrix),
                verdict,
                delta: d,
            });
        }
    }
    let normal = match matrix.wedges.first() {
        Some(_) => matrix.line(t, 0).normal(),
        None => Point2::new(1.0, 0.0),
    };
    let at = normal.dot(cp);
    let two = |d: f64| sweep_plan(normal, &[at - d, at + d]);
    match first_verifying(t, delta, tol, exec, two)? {
        Some((plan, verdict, d)) => Ok(TreeBorsuk {
            k: 3,
            plan,
            center,
            matrix: Some(matrix),
            verdict,
            delta: d,
        }),
        None => Err(TreeError::WitnessFailed),
    }
}

/// Whether cutting by `l` keeps both sides within the tree's diameter.
/// Only lines within the near-center offset are accepted.
pub fn center_cut_safety(t: &GeometricGraph, l: &Line2, tol: &Tolerance) -> Result<bool, TreeError> {
    let center = tree_center(t, tol)?;
    let incident: Vec<usize> = match center.vertex {
        Some(c) => t.neighbors(c).iter().map(|&(_, e)| e).collect(),
        None => vec![center.point.edge],
    };
    let delta = near_offset(t, center.position, &incident, tol);
    let distance = l.signed_distance(center.position).abs();
    if distance > delta {
        return Err(TreeError::FarFromCenter { distance, delta });
    }
    let diam = 2.0 * center.eccentricity;
    let plan = PartitionPlan::new(vec![PlanStep { target: 0, line: *l }]);
    let parts = apply_plan(t, &plan, tol)?;
    Ok(parts.iter().all(|p| {
        Metric::with_execution(p, tol, Execution::Sequential)
            .diameter()
            .value
            <= diam + tol.tie(diam)
    }))
}
