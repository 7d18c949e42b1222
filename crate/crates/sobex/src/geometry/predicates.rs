//! Exact-sign geometric predicates (adaptive orientation via the `robust`
//! crate) plus the segment relations built on them.

use super::Point2;

/// Exact sign of the orientation of (a, b, c): positive = counterclockwise.
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    )
}

pub fn orient_sign(a: Point2, b: Point2, c: Point2) -> i8 {
    let v = orient(a, b, c);
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// True iff `p` lies on the closed segment [a, b].
pub fn on_segment(p: Point2, a: Point2, b: Point2) -> bool {
    if orient_sign(a, b, p) != 0 {
        return false;
    }
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// True iff segments (a,b) and (c,d) cross at a point interior to both.
pub fn segments_properly_cross(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let o1 = orient_sign(a, b, c);
    let o2 = orient_sign(a, b, d);
    let o3 = orient_sign(c, d, a);
    let o4 = orient_sign(c, d, b);
    o1 * o2 < 0 && o3 * o4 < 0
}

/// True iff the closed segments share at least one point.
pub fn segments_touch(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    if segments_properly_cross(a, b, c, d) {
        return true;
    }
    on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d)
}

/// Intersection of two segments as parameters along (a,b), `None` when the
/// segments are disjoint. Collinear overlaps report the overlap interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentMeet {
    /// Single contact; parameters along (a,b) and along (c,d).
    Point { t: f64, u: f64 },
    /// Collinear overlap, as a parameter interval along (a,b).
    Overlap { t0: f64, t1: f64 },
}

pub fn segment_meet(a: Point2, b: Point2, c: Point2, d: Point2) -> Option<SegmentMeet> {
    let r = b - a;
    let s = d - c;
    let denom = r.cross(s);
    let qp = c - a;
    if denom != 0.0 {
        let t = qp.cross(s) / denom;
        let u = qp.cross(r) / denom;
        // Exact predicates arbitrate near-endpoint contact.
        if !segments_touch(a, b, c, d) {
            return None;
        }
        return Some(SegmentMeet::Point {
            t: t.clamp(0.0, 1.0),
            u: u.clamp(0.0, 1.0),
        });
    }
    // Parallel. Distinct lines cannot meet.
    if orient_sign(a, b, c) != 0 {
        return None;
    }
    // Collinear: project c, d on (a, b).
    let len2 = r.norm_sq();
    if len2 == 0.0 {
        return None;
    }
    let tc = (c - a).dot(r) / len2;
    let td = (d - a).dot(r) / len2;
    let (lo, hi) = (tc.min(td), tc.max(td));
    let t0 = lo.max(0.0);
    let t1 = hi.min(1.0);
    if t0 > t1 {
        None
    } else if t0 == t1 {
        Some(SegmentMeet::Point { t: t0, u: 0.0 })
    } else {
        Some(SegmentMeet::Overlap { t0, t1 })
    }
}

/// Distance between two closed segments.
pub fn segment_distance(a: Point2, b: Point2, c: Point2, d: Point2) -> f64 {
    if segments_touch(a, b, c, d) {
        return 0.0;
    }
    let pd = |p: Point2, u: Point2, v: Point2| {
        let uv = v - u;
        let den = uv.norm_sq();
        let t = if den == 0.0 {
            0.0
        } else {
            ((p - u).dot(uv) / den).clamp(0.0, 1.0)
        };
        p.dist(u + uv * t)
    };
    pd(a, c, d).min(pd(b, c, d)).min(pd(c, a, b)).min(pd(d, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proper_crossing() {
        let a = Point2::new(0.0, 0.0);
        let b = Point2::new(1.0, 1.0);
        let c = Point2::new(0.0, 1.0);
        let d = Point2::new(1.0, 0.0);
        assert!(segments_properly_cross(a, b, c, d));
        // Shared endpoint is not a proper crossing.
        assert!(!segments_properly_cross(a, b, b, d));
        assert!(segments_touch(a, b, b, d));
    }

    #[test]
    fn collinear_overlap_reported() {
        let a = Point2::new(0.0, 0.0);
        let b = Point2::new(2.0, 0.0);
        let c = Point2::new(1.0, 0.0);
        let d = Point2::new(3.0, 0.0);
        match segment_meet(a, b, c, d) {
            Some(SegmentMeet::Overlap { t0, t1 }) => {
                assert!((t0 - 0.5).abs() < 1e-15 && (t1 - 1.0).abs() < 1e-15);
            }
            other => panic!("expected overlap, got {other:?}"),
        }
    }

    #[test]
    fn segment_distance_basics() {
        let d = segment_distance(
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(1.0, 1.0),
        );
        assert!((d - 1.0).abs() < 1e-15);
    }
}
