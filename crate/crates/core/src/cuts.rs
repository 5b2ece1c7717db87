//! Line cuts, sequential partition plans and their verification.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::geom::{point_segment_distance, Line2, Point2, Tolerance};
use crate::graph::{GeometricGraph, GraphError};
use crate::metric::Metric;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CutError {
    #[error("line does not meet the graph")]
    NoIntersection,
    #[error("line contains edge {0}")]
    CollinearEdge(usize),
    #[error("step {step} targets subgraph {target} but only {parts} exist")]
    BadTarget {
        step: usize,
        target: usize,
        parts: usize,
    },
    #[error("step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<CutError>,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Minus,
    On,
    Plus,
}

/// Where a vertex of a cut side comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Vertex(usize),
    /// Index into [`CutResult::new_vertices`].
    Crossing(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutResult {
    pub plus: GeometricGraph,
    pub minus: GeometricGraph,
    /// Endpoints of `s_ℓ`; both equal when the line meets the graph once.
    pub s_ell: (Point2, Point2),
    /// Points where the line crosses an edge interior.
    pub new_vertices: Vec<Point2>,
    pub plus_origin: Vec<Origin>,
    pub minus_origin: Vec<Origin>,
}

impl CutResult {
    pub fn s_ell_length(&self) -> f64 {
        self.s_ell.0.dist(self.s_ell.1)
    }
}

/// Cuts `g` with `l`. Both sides keep the points of `l ∩ g` and the segment
/// of `l` spanning them.
pub fn cut(g: &GeometricGraph, l: &Line2, tol: &Tolerance) -> Result<CutResult, CutError> {
    let side: Vec<Side> = g
        .vertices()
        .iter()
        .map(|&p| {
            let s = l.signed_distance(p);
            if s.abs() <= tol.eps_geom {
                Side::On
            } else if s > 0.0 {
                Side::Plus
            } else {
                Side::Minus
            }
        })
        .collect();

    let mut crossings = vec![];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match (side[u], side[v]) {
            (Side::On, Side::On) => return Err(CutError::CollinearEdge(e)),
            (Side::Plus, Side::Minus) | (Side::Minus, Side::Plus) => {
                let (a, b) = g.edge_segment(e);
                let sa = l.signed_distance(a);
                let sb = l.signed_distance(b);
                crossings.push((e, a.lerp(b, sa / (sa - sb))));
            }
            _ => {}
        }
    }

    // Points of l ∩ g, ordered along the line.
    let mut on_line: Vec<(f64, Origin)> = side
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == Side::On)
        .map(|(v, _)| (l.parameter(g.vertex(v)), Origin::Vertex(v)))
        .collect();
    on_line.extend(
        crossings
            .iter()
            .enumerate()
            .map(|(k, &(_, p))| (l.parameter(p), Origin::Crossing(k))),
    );
    if on_line.is_empty() {
        return Err(CutError::NoIntersection);
    }
    on_line.sort_by(|a, b| a.0.total_cmp(&b.0));
    let position = |o: Origin| match o {
        Origin::Vertex(v) => g.vertex(v),
        Origin::Crossing(k) => crossings[k].1,
    };
    let new_vertices: Vec<Point2> = crossings.iter().map(|c| c.1).collect();
    let s_ell = (
        position(on_line[0].1),
        position(on_line[on_line.len() - 1].1),
    );

    let build = |keep: Side| -> Result<(GeometricGraph, Vec<Origin>), CutError> {
        let mut index = vec![usize::MAX; g.n()];
        let mut verts = vec![];
        let mut origin = vec![];
        for v in 0..g.n() {
            if side[v] == keep || side[v] == Side::On {
                index[v] = verts.len();
                verts.push(g.vertex(v));
                origin.push(Origin::Vertex(v));
            }
        }
        let mut cross_index = vec![0; crossings.len()];
        for &(_, o) in &on_line {
            if let Origin::Crossing(k) = o {
                cross_index[k] = verts.len();
                verts.push(crossings[k].1);
                origin.push(o);
            }
        }
        let local = |o: Origin| match o {
            Origin::Vertex(v) => index[v],
            Origin::Crossing(k) => cross_index[k],
        };
        let mut edges = vec![];
        let mut next_cross = 0;
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if next_cross < crossings.len() && crossings[next_cross].0 == e {
                let kept = if side[u] == keep { u } else { v };
                edges.push((index[kept], cross_index[next_cross]));
                next_cross += 1;
                continue;
            }
            let s = if side[u] == Side::On { side[v] } else { side[u] };
            if s == keep {
                edges.push((index[u], index[v]));
            }
        }
        for w in on_line.windows(2) {
            edges.push((local(w[0].1), local(w[1].1)));
        }
        Ok((GeometricGraph::new(verts, edges)?, origin))
    };
    let (plus, plus_origin) = build(Side::Plus)?;
    let (minus, minus_origin) = build(Side::Minus)?;
    Ok(CutResult {
        plus,
        minus,
        s_ell,
        new_vertices,
        plus_origin,
        minus_origin,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanStep {
    /// Index into the list of subgraphs present before this step.
    pub target: usize,
    pub line: Line2,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PartitionPlan {
    pub steps: Vec<PlanStep>,
}

impl PartitionPlan {
    pub fn new(steps: Vec<PlanStep>) -> Self {
        PartitionPlan { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn lines(&self) -> impl Iterator<Item = &Line2> {
        self.steps.iter().map(|s| &s.line)
    }
}

/// Subgraphs produced by a plan, with the `s_ℓ` segment of every step.
#[derive(Debug, Clone, PartialEq)]
pub struct AppliedPlan {
    pub parts: Vec<GeometricGraph>,
    pub segments: Vec<(Point2, Point2)>,
}

pub fn apply_plan_detailed(
    g: &GeometricGraph,
    plan: &PartitionPlan,
    tol: &Tolerance,
) -> Result<AppliedPlan, CutError> {
    let mut parts = vec![g.clone()];
    let mut segments = vec![];
    for (step, s) in plan.steps.iter().enumerate() {
        if s.target >= parts.len() {
            return Err(CutError::BadTarget {
                step,
                target: s.target,
                parts: parts.len(),
            });
        }
        let r = cut(&parts[s.target], &s.line, tol).map_err(|e| CutError::Step {
            step,
            source: Box::new(e),
        })?;
        segments.push(r.s_ell);
        parts[s.target] = r.minus;
        parts.insert(s.target + 1, r.plus);
    }
    Ok(AppliedPlan { parts, segments })
}

/// Applies the steps in order; each replaces its target by `[minus, plus]`.
pub fn apply_plan(
    g: &GeometricGraph,
    plan: &PartitionPlan,
    tol: &Tolerance,
) -> Result<Vec<GeometricGraph>, CutError> {
    Ok(apply_plan_detailed(g, plan, tol)?.parts)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionVerdict {
    pub correct: bool,
    pub diameters: Vec<f64>,
    pub original: f64,
    pub margin: f64,
}

pub fn verify_partition(
    g: &GeometricGraph,
    plan: &PartitionPlan,
    tol: &Tolerance,
) -> Result<PartitionVerdict, CutError> {
    verify_partition_with(g, plan, tol, Execution::default())
}

pub fn verify_partition_with(
    g: &GeometricGraph,
    plan: &PartitionPlan,
    tol: &Tolerance,
    exec: Execution,
) -> Result<PartitionVerdict, CutError> {
    let parts = apply_plan(g, plan, tol)?;
    let original = Metric::with_execution(g, tol, exec).diameter().value;
    let diameters = exec.map(&parts, |p| {
        Metric::with_execution(p, tol, Execution::Sequential)
            .diameter()
            .value
    });
    Ok(verdict(original, diameters, tol))
}

pub(crate) fn verdict(original: f64, diameters: Vec<f64>, tol: &Tolerance) -> PartitionVerdict {
    let worst = diameters.iter().copied().fold(0.0, f64::max);
    let margin = original - worst;
    PartitionVerdict {
        correct: margin > tol.eps_len * original,
        diameters,
        original,
        margin,
    }
}

/// Plan cutting with the lines `{x : dir·x = c}` for the given increasing
/// offsets, each applied to the part lying beyond the previous line.
pub fn sweep_plan(dir: Point2, offsets: &[f64]) -> Result<PartitionPlan, CutError> {
    let mut steps = vec![];
    let mut rest = 0;
    for &c in offsets {
        let line = Line2::new(dir.x, dir.y, c).map_err(|_| CutError::NoIntersection)?;
        steps.push(PlanStep { target: rest, line });
        if line.normal().dot(dir) > 0.0 {
            rest += 1;
        }
    }
    Ok(PartitionPlan { steps })
}

/// Offset used for lines "infinitely close" to a point `p` of the graph:
/// `1e-4` times the distance from `p` to the nearest vertex or edge that
/// does not contain it. Edges in `incident` are ignored.
pub fn near_offset(g: &GeometricGraph, p: Point2, incident: &[usize], tol: &Tolerance) -> f64 {
    let vd = g
        .vertices()
        .iter()
        .map(|&v| v.dist(p))
        .filter(|&d| d > tol.eps_geom);
    let ed = (0..g.m()).filter(|e| !incident.contains(e)).map(|e| {
        let (a, b) = g.edge_segment(e);
        point_segment_distance(p, a, b)
    });
    let d = vd.chain(ed).fold(f64::INFINITY, f64::min);
    if d.is_finite() {
        1e-4 * d
    } else {
        1e-4
    }
}

/// Quality of `dir` as a sweep direction: how far the lines stay from
/// being parallel to an edge, and how well it separates the vertices.
fn sweep_score(g: &GeometricGraph, dir: Point2, scale: f64) -> f64 {
    let along = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, _)| {
            let (a, b) = g.edge_segment(e);
            ((b - a).dot(dir) / g.length(e)).abs()
        })
        .fold(f64::INFINITY, f64::min);
    let mut proj: Vec<f64> = g.vertices().iter().map(|p| p.dot(dir)).collect();
    proj.sort_by(f64::total_cmp);
    let gap = proj
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    along.min(gap / scale)
}

/// Deterministic sweep direction avoiding edge directions and vertex ties.
pub fn sweep_direction(g: &GeometricGraph) -> Point2 {
    const CANDIDATES: usize = 97;
    let scale = g
        .bounding_box()
        .map(|(lo, hi)| lo.dist(hi))
        .unwrap_or(1.0)
        .max(f64::MIN_POSITIVE);
    (0..CANDIDATES)
        .map(|k| {
            let theta = (k as f64 + 0.5) * std::f64::consts::PI / CANDIDATES as f64;
            Point2::polar(1.0, theta)
        })
        .map(|d| (sweep_score(g, d, scale), d))
        .fold((f64::NEG_INFINITY, Point2::new(1.0, 0.0)), |best, c| {
            if c.0 > best.0 {
                c
            } else {
                best
            }
        })
        .1
}

/// `n − 1` strips cut by parallel lines through the `n − 2` interior
/// vertices in sweep order.
pub fn strip_partition(g: &GeometricGraph) -> Result<PartitionPlan, CutError> {
    if g.n() < 3 {
        return Err(GraphError::TooSmall {
            needed: 3,
            actual: g.n(),
        }
        .into());
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let dir = sweep_direction(g);
    let mut proj: Vec<f64> = g.vertices().iter().map(|p| p.dot(dir)).collect();
    proj.sort_by(f64::total_cmp);
    sweep_plan(dir, &proj[1..proj.len() - 1])
}
