//! Deterministic SVG drawings of graphs and partition plans.

use std::fmt::Write as _;

use crate::cuts::{apply_plan_detailed, CutError, PartitionPlan};
use crate::geom::{Line2, Point2, Tolerance};
use crate::graph::GeometricGraph;

pub const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

const WIDTH: f64 = 600.0;
const MARGIN: f64 = 20.0;

struct View {
    lo: Point2,
    hi: Point2,
    scale: f64,
    height: f64,
}

impl View {
    fn new(g: &GeometricGraph) -> View {
        let (lo, hi) = g
            .bounding_box()
            .unwrap_or((Point2::new(0.0, 0.0), Point2::new(1.0, 1.0)));
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        let scale = (WIDTH - 2.0 * MARGIN) / span;
        let height = (hi.y - lo.y) * scale + 2.0 * MARGIN;
        View {
            lo,
            hi,
            scale,
            height,
        }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        (
            MARGIN + (p.x - self.lo.x) * self.scale,
            MARGIN + (self.hi.y - p.y) * self.scale,
        )
    }

    /// The part of `l` inside the drawing's bounding box, padded by the margin.
    fn clip(&self, l: &Line2) -> Option<(Point2, Point2)> {
        let pad = MARGIN / self.scale;
        let (lo, hi) = (
            self.lo - Point2::new(pad, pad),
            self.hi + Point2::new(pad, pad),
        );
        let p = l.point_at(0.0);
        let d = l.direction();
        let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
        for (pc, dc, a, b) in [(p.x, d.x, lo.x, hi.x), (p.y, d.y, lo.y, hi.y)] {
            if dc.abs() < 1e-15 {
                if pc < a || pc > b {
                    return None;
                }
            } else {
                let (s0, s1) = ((a - pc) / dc, (b - pc) / dc);
                t0 = t0.max(s0.min(s1));
                t1 = t1.min(s0.max(s1));
            }
        }
        (t0 < t1).then(|| (p + d * t0, p + d * t1))
    }
}

fn line(out: &mut String, v: &View, a: Point2, b: Point2, style: &str) {
    let (x1, y1) = v.map(a);
    let (x2, y2) = v.map(b);
    writeln!(
        out,
        "  <line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" {style}/>"
    )
    .unwrap();
}

/// SVG drawing of `g`; with a plan, every resulting part gets its own
/// palette color, cut lines are dashed and the `s_ℓ` segments thickened.
pub fn render(
    g: &GeometricGraph,
    plan: Option<&PartitionPlan>,
    tol: &Tolerance,
) -> Result<String, CutError> {
    let v = View::new(g);
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH:.0}\" height=\"{:.0}\" viewBox=\"0 0 {WIDTH:.0} {:.0}\">",
        v.height.ceil(),
        v.height.ceil()
    )
    .unwrap();
    writeln!(out, "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>").unwrap();
    match plan {
        None => {
            for e in 0..g.m() {
                let (a, b) = g.edge_segment(e);
                line(&mut out, &v, a, b, "stroke=\"black\" stroke-width=\"1.5\"");
            }
        }
        Some(plan) => {
            let applied = apply_plan_detailed(g, plan, tol)?;
            for &(a, b) in &applied.segments {
                line(&mut out, &v, a, b, "stroke=\"#999999\" stroke-width=\"5\"");
            }
            for (i, part) in applied.parts.iter().enumerate() {
                let color = PALETTE[i % PALETTE.len()];
                for e in 0..part.m() {
                    let (a, b) = part.edge_segment(e);
                    let style = format!("stroke=\"{color}\" stroke-width=\"1.5\"");
                    line(&mut out, &v, a, b, &style);
                }
            }
            for l in plan.lines() {
                if let Some((a, b)) = v.clip(l) {
                    line(
                        &mut out,
                        &v,
                        a,
                        b,
                        "stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6 4\"",
                    );
                }
            }
        }
    }
    for &p in g.vertices() {
        let (x, y) = v.map(p);
        writeln!(out, "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\" fill=\"black\"/>").unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
