//! Polygonal Jordan domains and internal (geodesic) distances.
//!
//! Domains are simple closed polygonal chains; smooth boundaries enter as
//! polyline approximations. Shortest paths through the closed domain are
//! computed exactly on the visibility graph of the polygon vertices, so the
//! metric invariants (symmetry, triangle inequality, the convexity collapse
//! `d = |a-b|`) hold sharply rather than up to a grid constant.

mod metric;
pub mod predicates;

pub use metric::{internal_distance, quasiconvexity_constant, InternalMetric, SourceField};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A point of the plane. Plain value type; finite coordinates expected.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product (signed parallelogram area).
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn normalized(self) -> Point2 {
        let n = self.norm();
        if n == 0.0 {
            self
        } else {
            self / n
        }
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Div<f64> for Point2 {
    type Output = Point2;
    fn div(self, s: f64) -> Point2 {
        Point2::new(self.x / s, self.y / s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// An ordered polygonal chain, open or closed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Polyline {
    pub vertices: Vec<Point2>,
    pub closed: bool,
}

impl Polyline {
    pub fn open(vertices: Vec<Point2>) -> Self {
        Polyline {
            vertices,
            closed: false,
        }
    }

    pub fn closed(vertices: Vec<Point2>) -> Self {
        Polyline {
            vertices,
            closed: true,
        }
    }

    /// Number of segments.
    pub fn segment_count(&self) -> usize {
        if self.vertices.len() < 2 {
            0
        } else if self.closed {
            self.vertices.len()
        } else {
            self.vertices.len() - 1
        }
    }

    pub fn segment(&self, i: usize) -> (Point2, Point2) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn length(&self) -> f64 {
        (0..self.segment_count())
            .map(|i| {
                let (a, b) = self.segment(i);
                a.dist(b)
            })
            .sum()
    }

    /// Cumulative arclength at each vertex (length `vertices.len()` for open
    /// chains, `vertices.len() + 1` for closed ones, ending at the perimeter).
    pub fn cumulative_lengths(&self) -> Vec<f64> {
        let mut acc = vec![0.0];
        for i in 0..self.segment_count() {
            let (a, b) = self.segment(i);
            acc.push(acc.last().unwrap() + a.dist(b));
        }
        acc
    }

    /// Point at arclength `s` from the start (clamped for open chains,
    /// wrapped for closed ones).
    pub fn point_at(&self, s: f64) -> Point2 {
        let cum = self.cumulative_lengths();
        let total = *cum.last().unwrap();
        if total == 0.0 {
            return self.vertices[0];
        }
        let mut s = if self.closed {
            s.rem_euclid(total)
        } else {
            s.clamp(0.0, total)
        };
        // Binary search for the containing segment.
        let mut lo = 0usize;
        let mut hi = cum.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if cum[mid] <= s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        s -= cum[lo];
        let (a, b) = self.segment(lo);
        let len = a.dist(b);
        if len == 0.0 {
            a
        } else {
            a + (b - a) * (s / len)
        }
    }

    /// Sub-polyline between arclengths `s0 <= s1` (open chains only).
    pub fn slice(&self, s0: f64, s1: f64) -> Polyline {
        assert!(!self.closed, "slice expects an open chain");
        let cum = self.cumulative_lengths();
        let total = *cum.last().unwrap();
        let s0 = s0.clamp(0.0, total);
        let s1 = s1.clamp(0.0, total);
        let mut pts = vec![self.point_at(s0)];
        for (i, &c) in cum.iter().enumerate() {
            if c > s0 && c < s1 {
                pts.push(self.vertices[i]);
            }
        }
        pts.push(self.point_at(s1));
        pts.dedup_by(|a, b| a.dist(*b) == 0.0);
        if pts.len() < 2 {
            pts.push(self.point_at(s1));
        }
        Polyline::open(pts)
    }

    /// Basic shape validation: vertex count, finiteness, distinct neighbors.
    pub fn validate(&self) -> Result<()> {
        if self.vertices.len() < 2 {
            return Err(Error::geometry("polyline needs at least 2 vertices"));
        }
        for v in &self.vertices {
            if !v.is_finite() {
                return Err(Error::geometry("non-finite vertex coordinate"));
            }
        }
        for i in 0..self.segment_count() {
            let (a, b) = self.segment(i);
            if a.dist(b) == 0.0 {
                return Err(Error::geometry(format!(
                    "consecutive vertices {} and {} coincide",
                    i,
                    (i + 1) % self.vertices.len()
                )));
            }
        }
        Ok(())
    }
}

/// Containment classification with a boundary tolerance band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

/// A bounded Jordan domain given by a positively oriented simple polygon.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonalDomain {
    boundary: Polyline,
    vertex_arclengths: Vec<f64>,
    diameter: f64,
    eps_geom: f64,
}

impl PolygonalDomain {
    /// Build a domain from boundary vertices. The chain must be simple with
    /// at least 3 vertices; a negatively oriented input is reversed.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::geometry(
                "polygonal domain needs at least 3 boundary vertices",
            ));
        }
        let mut boundary = Polyline::closed(vertices);
        boundary.validate()?;
        if signed_area(&boundary.vertices) < 0.0 {
            boundary.vertices.reverse();
        }
        if signed_area(&boundary.vertices) <= 0.0 {
            return Err(Error::geometry("degenerate polygon (zero signed area)"));
        }
        if !is_simple(&boundary) {
            return Err(Error::geometry("boundary chain is not simple"));
        }
        let vertex_arclengths = boundary.cumulative_lengths();
        let diameter = bbox_diameter(&boundary.vertices);
        let eps_geom = 1e-9 * diameter;
        Ok(PolygonalDomain {
            boundary,
            vertex_arclengths,
            diameter,
            eps_geom,
        })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.boundary.vertices
    }

    pub fn boundary(&self) -> &Polyline {
        &self.boundary
    }

    /// Cumulative arclengths at vertices, last entry = perimeter.
    pub fn vertex_arclengths(&self) -> &[f64] {
        &self.vertex_arclengths
    }

    pub fn perimeter(&self) -> f64 {
        *self.vertex_arclengths.last().unwrap()
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Geometric tolerance: 1e-9 x domain diameter.
    pub fn eps_geom(&self) -> f64 {
        self.eps_geom
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.boundary.vertices)
    }

    /// Boundary point at (cyclic) arclength `s`.
    pub fn boundary_point(&self, s: f64) -> Point2 {
        self.boundary.point_at(s)
    }

    /// Arclength of the boundary point nearest to `p` (used by exporters).
    pub fn nearest_boundary_arclength(&self, p: Point2) -> f64 {
        let mut best = (f64::INFINITY, 0.0);
        for i in 0..self.boundary.segment_count() {
            let (a, b) = self.boundary.segment(i);
            let t = project_param(p, a, b);
            let q = a + (b - a) * t;
            let d = p.dist(q);
            if d < best.0 {
                best = (d, self.vertex_arclengths[i] + t * a.dist(b));
            }
        }
        best.1
    }

    /// Distance from `p` to the boundary chain.
    pub fn boundary_distance(&self, p: Point2) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.boundary.segment_count() {
            let (a, b) = self.boundary.segment(i);
            let t = project_param(p, a, b);
            best = best.min(p.dist(a + (b - a) * t));
        }
        best
    }

    /// Crossing-number containment with boundary tolerance `eps_geom`.
    pub fn contains(&self, p: Point2) -> Containment {
        if self.boundary_distance(p) <= self.eps_geom {
            return Containment::Boundary;
        }
        if winding_parity(&self.boundary.vertices, p) {
            Containment::Inside
        } else {
            Containment::Outside
        }
    }

    pub fn in_closure(&self, p: Point2) -> bool {
        self.contains(p) != Containment::Outside
    }

    /// Convexity check (all turns non-negative for a CCW chain).
    pub fn is_convex(&self) -> bool {
        let v = &self.boundary.vertices;
        let n = v.len();
        (0..n).all(|i| {
            let a = v[i];
            let b = v[(i + 1) % n];
            let c = v[(i + 2) % n];
            (b - a).cross(c - b) >= -self.eps_geom * (b - a).norm().max(1.0)
        })
    }
}

/// Shortest internal path realizing the internal distance.
#[derive(Debug, Clone)]
pub struct InternalPath {
    pub path: Polyline,
    pub length: f64,
}

/// Signed area of a closed vertex loop (positive = counterclockwise).
pub fn signed_area(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    let mut acc = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        acc += a.cross(b);
    }
    0.5 * acc
}

fn bbox_diameter(vertices: &[Point2]) -> f64 {
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for v in vertices {
        xmin = xmin.min(v.x);
        xmax = xmax.max(v.x);
        ymin = ymin.min(v.y);
        ymax = ymax.max(v.y);
    }
    (xmax - xmin).hypot(ymax - ymin)
}

/// Even-odd crossing test via the half-open edge rule; robust against hits on
/// vertex levels. Boundary cases are resolved before this by the tolerance band.
fn winding_parity(vertices: &[Point2], p: Point2) -> bool {
    let n = vertices.len();
    let mut inside = false;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}

fn project_param(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let den = ab.norm_sq();
    if den == 0.0 {
        0.0
    } else {
        ((p - a).dot(ab) / den).clamp(0.0, 1.0)
    }
}

/// Pairwise segment check; adjacent edges may share exactly their endpoint.
fn is_simple(chain: &Polyline) -> bool {
    let n = chain.segment_count();
    for i in 0..n {
        let (a, b) = chain.segment(i);
        for j in (i + 1)..n {
            let (c, d) = chain.segment(j);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if predicates::segments_properly_cross(a, b, c, d) {
                return false;
            }
            if !adjacent {
                // Any touching between non-adjacent edges breaks simplicity.
                if predicates::segments_touch(a, b, c, d) {
                    return false;
                }
            } else {
                // Adjacent edges share one endpoint; they must not fold back
                // onto each other beyond it.
                let (shared, u, w) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                if (predicates::on_segment(w, u, shared) && w.dist(shared) > 0.0)
                    || (predicates::on_segment(u, shared, w) && u.dist(shared) > 0.0)
                {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn unit_square() -> PolygonalDomain {
        PolygonalDomain::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn contains_classifies_square_points() {
        let sq = unit_square();
        assert_eq!(sq.contains(Point2::new(0.5, 0.5)), Containment::Inside);
        assert_eq!(sq.contains(Point2::new(0.0, 0.5)), Containment::Boundary);
        assert_eq!(sq.contains(Point2::new(2.0, 2.0)), Containment::Outside);
    }

    #[test]
    fn rejects_degenerate_and_nonsimple_chains() {
        assert!(PolygonalDomain::new(vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)]).is_err());
        // Figure eight.
        let bowtie = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ];
        assert!(PolygonalDomain::new(bowtie).is_err());
    }

    #[test]
    fn orientation_is_normalized() {
        let cw = vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 0.0),
        ];
        let dom = PolygonalDomain::new(cw).unwrap();
        assert!(dom.area() > 0.0);
    }

    #[test]
    fn point_at_walks_the_perimeter() {
        let sq = unit_square();
        let p = sq.boundary_point(2.5);
        assert!(p.dist(Point2::new(0.5, 1.0)) < 1e-12);
        let wrapped = sq.boundary_point(6.5);
        assert!(wrapped.dist(p) < 1e-12);
    }
}
