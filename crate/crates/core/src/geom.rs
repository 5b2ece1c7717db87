//! Planar primitives: points, canonical lines, segment/line intersection and
//! angular sorting. Every comparison goes through a [`Tolerance`].

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Environment variable overriding [`Tolerance::eps_geom`].
pub const TOLERANCE_ENV: &str = "BORSUK_EPS";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("degenerate segment: endpoints closer than {eps}")]
    DegenerateSegment { eps: f64 },
    #[error("point {index} coincides with the center")]
    CoincidentPoint { index: usize },
    #[error("line normal ({a}, {b}) has zero length")]
    ZeroNormal { a: f64, b: f64 },
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("invalid tolerance: eps_geom={eps_geom}, eps_len={eps_len}")]
    InvalidTolerance { eps_geom: f64, eps_len: f64 },
}

/// Absolute geometric tolerance plus relative length tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_geom: f64,
    pub eps_len: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_geom: 1e-9,
            eps_len: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(eps_geom: f64, eps_len: f64) -> Result<Self, GeomError> {
        if !(eps_geom > 0.0 && eps_len > 0.0 && eps_geom.is_finite() && eps_len.is_finite()) {
            return Err(GeomError::InvalidTolerance { eps_geom, eps_len });
        }
        Ok(Tolerance { eps_geom, eps_len })
    }

    /// Default tolerance with `eps_geom` taken from `BORSUK_EPS` when set and valid.
    pub fn from_env() -> Self {
        let mut tol = Tolerance::default();
        if let Ok(raw) = std::env::var(TOLERANCE_ENV) {
            if let Ok(eps) = raw.trim().parse::<f64>() {
                if eps > 0.0 && eps.is_finite() {
                    tol.eps_geom = eps;
                }
            }
        }
        tol
    }

    /// Slack used when deciding whether a length equals a reference length
    /// of magnitude `scale`.
    pub fn tie(&self, scale: f64) -> f64 {
        self.eps_geom.max(self.eps_len * scale.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn polar(radius: f64, angle: f64) -> Self {
        Point2::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn lerp(self, o: Point2, t: f64) -> Point2 {
        self + (o - self) * t
    }

    pub fn midpoint(self, o: Point2) -> Point2 {
        self.lerp(o, 0.5)
    }

    /// Counter-clockwise rotation about the origin.
    pub fn rotate(self, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Unit perpendicular, rotated counter-clockwise.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Option<Point2> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self * (1.0 / n))
    }

    /// Polar angle in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        let a = self.y.atan2(self.x);
        if a < 0.0 {
            a + 2.0 * PI
        } else {
            a
        }
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The line `a·x + b·y = c` with `a² + b² = 1`, stored with a canonical sign
/// (`a > 0`, or `a = 0` and `b > 0`) so equal lines are bitwise equal.
///
/// The open half-plane where `a·x + b·y > c` is the plus side: right of a
/// vertical line, above a horizontal one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct Line2 {
    a: f64,
    b: f64,
    c: f64,
}

impl TryFrom<[f64; 3]> for Line2 {
    type Error = GeomError;

    fn try_from([a, b, c]: [f64; 3]) -> Result<Self, GeomError> {
        Line2::new(a, b, c)
    }
}

impl From<Line2> for [f64; 3] {
    fn from(l: Line2) -> Self {
        [l.a, l.b, l.c]
    }
}

impl Line2 {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, GeomError> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let n = a.hypot(b);
        if n == 0.0 {
            return Err(GeomError::ZeroNormal { a, b });
        }
        // Unit normals within a few ulps are kept unchanged.
        let n = if (n - 1.0).abs() <= 4.0 * f64::EPSILON { 1.0 } else { n };
        let (mut a, mut b, mut c) = (a / n, b / n, c / n);
        if a < 0.0 || (a == 0.0 && b < 0.0) {
            a = -a;
            b = -b;
            c = -c;
        }
        // Collapse signed zeros so canonical lines compare bitwise.
        Ok(Line2 {
            a: a + 0.0,
            b: b + 0.0,
            c: c + 0.0,
        })
    }

    /// Line with the given (not necessarily unit) normal through `p`.
    pub fn with_normal_through(normal: Point2, p: Point2) -> Result<Self, GeomError> {
        Line2::new(normal.x, normal.y, normal.dot(p))
    }

    /// Line through `p` running along `direction`.
    pub fn through_point(p: Point2, direction: Point2) -> Result<Self, GeomError> {
        Line2::with_normal_through(direction.perp(), p)
    }

    pub fn through_points(p: Point2, q: Point2) -> Result<Self, GeomError> {
        Line2::through_point(p, q - p)
    }

    pub fn vertical(x: f64) -> Self {
        Line2 { a: 1.0, b: 0.0, c: x }
    }

    pub fn horizontal(y: f64) -> Self {
        Line2 { a: 0.0, b: 1.0, c: y }
    }

    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    pub fn normal(&self) -> Point2 {
        Point2::new(self.a, self.b)
    }

    pub fn offset(&self) -> f64 {
        self.c
    }

    /// Unit direction, the normal rotated clockwise.
    pub fn direction(&self) -> Point2 {
        Point2::new(self.b, -self.a)
    }

    pub fn signed_distance(&self, p: Point2) -> f64 {
        self.a * p.x + self.b * p.y - self.c
    }

    /// Parameter of the orthogonal projection of `p` along [`Line2::direction`].
    pub fn parameter(&self, p: Point2) -> f64 {
        self.direction().dot(p)
    }

    pub fn point_at(&self, t: f64) -> Point2 {
        self.normal() * self.c + self.direction() * t
    }

    pub fn project(&self, p: Point2) -> Point2 {
        p - self.normal() * self.signed_distance(p)
    }

    /// Parallel copy moved by `delta` along the normal.
    pub fn shifted(&self, delta: f64) -> Line2 {
        Line2 {
            a: self.a,
            b: self.b,
            c: self.c + delta,
        }
    }
}

impl fmt::Display for Line2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y = {}", self.a, self.b, self.c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegLineHit {
    Miss,
    Point(Point2),
    /// Both endpoints lie on the line.
    Overlap,
}

/// Intersection of the closed segment `pq` with `l`. Touching at an endpoint
/// counts as a hit.
pub fn seg_line_intersection(
    p: Point2,
    q: Point2,
    l: &Line2,
    tol: &Tolerance,
) -> Result<SegLineHit, GeomError> {
    if p.dist(q) <= tol.eps_geom {
        return Err(GeomError::DegenerateSegment { eps: tol.eps_geom });
    }
    let sp = l.signed_distance(p);
    let sq = l.signed_distance(q);
    let on_p = sp.abs() <= tol.eps_geom;
    let on_q = sq.abs() <= tol.eps_geom;
    Ok(match (on_p, on_q) {
        (true, true) => SegLineHit::Overlap,
        (true, false) => SegLineHit::Point(p),
        (false, true) => SegLineHit::Point(q),
        _ if (sp > 0.0) != (sq > 0.0) => SegLineHit::Point(p.lerp(q, sp / (sp - sq))),
        _ => SegLineHit::Miss,
    })
}

/// 0 for the upper half-plane (including the positive x-axis), 1 otherwise.
fn half(v: Point2) -> u8 {
    if v.y > 0.0 || (v.y == 0.0 && v.x > 0.0) {
        0
    } else {
        1
    }
}

/// Polar order of `a` and `b` around the origin; `None` when they point in
/// the same direction within `eps`.
fn polar_cmp(a: Point2, b: Point2, eps: f64) -> Option<Ordering> {
    let cr = a.cross(b);
    let scale = a.norm() * b.norm();
    if cr.abs() <= eps * scale && a.dot(b) > 0.0 {
        return None;
    }
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return Some(ha.cmp(&hb));
    }
    Some(if cr > 0.0 {
        Ordering::Less
    } else {
        Ordering::Greater
    })
}

/// Indices of `pts` sorted by polar angle around `center` in `[0, 2π)`;
/// points on a common ray are ordered by distance.
pub fn angular_order(
    center: Point2,
    pts: &[Point2],
    tol: &Tolerance,
) -> Result<Vec<usize>, GeomError> {
    let rel: Vec<Point2> = pts.iter().map(|&p| p - center).collect();
    if let Some(index) = rel.iter().position(|v| v.norm() <= tol.eps_geom) {
        return Err(GeomError::CoincidentPoint { index });
    }
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| {
        polar_cmp(rel[i], rel[j], tol.eps_geom)
            .unwrap_or_else(|| rel[i].norm().total_cmp(&rel[j].norm()))
            .then(i.cmp(&j))
    });
    Ok(idx)
}

/// Euclidean distance from `p` to the closed segment `ab`.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Euclidean distance between closed segments `ab` and `cd`.
pub fn segment_distance(a: Point2, b: Point2, c: Point2, d: Point2) -> f64 {
    let o1 = (b - a).cross(c - a);
    let o2 = (b - a).cross(d - a);
    let o3 = (d - c).cross(a - c);
    let o4 = (d - c).cross(b - c);
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0))
        && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0))
    {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

/// Signed area of a closed polygon (positive when counter-clockwise).
pub fn signed_area(poly: &[Point2]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| poly[i].cross(poly[(i + 1) % n]))
        .sum::<f64>()
        * 0.5
}

/// Winding number of a closed polygon around `p` (`p` must not lie on it).
pub fn winding_number(poly: &[Point2], p: Point2) -> i32 {
    let n = poly.len();
    let mut w = 0;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && (b - a).cross(p - a) > 0.0 {
                w += 1;
            }
        } else if b.y <= p.y && (b - a).cross(p - a) < 0.0 {
            w -= 1;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn midpoint_crossing() {
        let hit = seg_line_intersection(
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            &Line2::vertical(1.0),
            &tol(),
        )
        .unwrap();
        assert_eq!(hit, SegLineHit::Point(Point2::new(1.0, 0.0)));
    }

    #[test]
    fn parallel_disjoint_misses() {
        let hit = seg_line_intersection(
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            &Line2::horizontal(1.0),
            &tol(),
        )
        .unwrap();
        assert_eq!(hit, SegLineHit::Miss);
    }

    #[test]
    fn collinear_overlaps() {
        let hit = seg_line_intersection(
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            &Line2::horizontal(0.0),
            &tol(),
        )
        .unwrap();
        assert_eq!(hit, SegLineHit::Overlap);
    }

    #[test]
    fn endpoint_touch_counts() {
        let hit = seg_line_intersection(
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            &Line2::vertical(1.0),
            &tol(),
        )
        .unwrap();
        assert_eq!(hit, SegLineHit::Point(Point2::new(1.0, 1.0)));
    }

    #[test]
    fn degenerate_segment_rejected() {
        let p = Point2::new(0.5, 0.5);
        assert!(matches!(
            seg_line_intersection(p, p, &Line2::vertical(0.0), &tol()),
            Err(GeomError::DegenerateSegment { .. })
        ));
    }

    #[test]
    fn canonical_lines_compare_bitwise() {
        let l1 = Line2::new(-2.0, 0.0, -2.0).unwrap();
        let l2 = Line2::vertical(1.0);
        assert_eq!(l1, l2);
        let h1 = Line2::new(0.0, -3.0, 0.0).unwrap();
        assert_eq!(h1, Line2::horizontal(0.0));
        assert_eq!(h1.offset().to_bits(), 0.0f64.to_bits());
        assert!(Line2::new(0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn plus_side_is_right_or_above() {
        assert!(Line2::vertical(0.0).signed_distance(Point2::new(1.0, 0.0)) > 0.0);
        assert!(Line2::horizontal(0.0).signed_distance(Point2::new(0.0, 1.0)) > 0.0);
    }

    #[test]
    fn angular_order_examples() {
        let c = Point2::new(0.0, 0.0);
        let pts = [
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(-1.0, 0.0),
        ];
        assert_eq!(angular_order(c, &pts, &tol()).unwrap(), vec![0, 1, 2]);
        let pts = [Point2::new(0.0, -1.0), Point2::new(1.0, 0.0)];
        assert_eq!(angular_order(c, &pts, &tol()).unwrap(), vec![1, 0]);
        let pts = [Point2::new(2.0, 0.0), Point2::new(1.0, 0.0)];
        assert_eq!(angular_order(c, &pts, &tol()).unwrap(), vec![1, 0]);
        let pts = [Point2::new(1.0, 0.0), Point2::new(2.0, 0.0)];
        assert_eq!(angular_order(c, &pts, &tol()).unwrap(), vec![0, 1]);
    }

    #[test]
    fn angular_order_rejects_center() {
        let c = Point2::new(1.0, 1.0);
        assert_eq!(
            angular_order(c, &[Point2::new(2.0, 1.0), c], &tol()),
            Err(GeomError::CoincidentPoint { index: 1 })
        );
    }

    #[test]
    fn segment_distance_cases() {
        let o = Point2::new(0.0, 0.0);
        let x = Point2::new(2.0, 0.0);
        assert_eq!(
            segment_distance(o, x, Point2::new(1.0, -1.0), Point2::new(1.0, 1.0)),
            0.0
        );
        assert!(
            (segment_distance(o, x, Point2::new(0.0, 1.0), Point2::new(2.0, 1.0)) - 1.0).abs()
                < 1e-15
        );
    }

    #[test]
    fn winding_of_square() {
        let sq = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ];
        assert_eq!(winding_number(&sq, Point2::new(0.5, 0.5)), 1);
        assert_eq!(winding_number(&sq, Point2::new(1.5, 0.5)), 0);
        assert!((signed_area(&sq) - 1.0).abs() < 1e-15);
    }
}
