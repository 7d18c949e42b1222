//! Numerical conformal map from the unit disk onto a polygonal target, with
//! hyperbolic geodesic tracing and the crossing predicate.
//!
//! The map is built boundary-correspondence-first: a geodesic zipper pass
//! over graded boundary samples yields the cyclic angle/arclength table, and
//! interior points are evaluated through the closed-form inverse composition.
//! Accuracy is reported as a residual (max deviation of re-evaluated boundary
//! samples from the polygon), not asserted a priori.

mod zipper;

use crate::error::{Error, Result};
use crate::geometry::{InternalMetric, Point2, PolygonalDomain, Polyline};
use num_complex::Complex64 as C;
use std::f64::consts::TAU;

/// Relative length tolerance for adaptive geodesic tracing.
const TRACE_LENGTH_TOL: f64 = 1e-4;
/// Angular separation below which a geodesic degenerates to the boundary chord.
const CHORD_CUTOFF: f64 = 1e-6;

/// One row of the boundary correspondence table.
#[derive(Debug, Clone, Copy)]
pub struct CorrespondenceRow {
    /// Disk angle in [0, 2pi).
    pub angle: f64,
    /// Target boundary arclength, unwrapped monotonically from row 0.
    pub arclength: f64,
}

/// Numerical Riemann map g: D -> Y with boundary correspondence.
pub struct ConformalMap {
    target: PolygonalDomain,
    map: zipper::Zipper,
    /// Sorted by angle; arclength unwrapped (strictly increasing, total span = perimeter).
    rows: Vec<CorrespondenceRow>,
    residual: f64,
    center: Point2,
}

impl ConformalMap {
    pub fn target(&self) -> &PolygonalDomain {
        &self.target
    }

    /// Max distance from re-evaluated boundary samples to the polygon.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Image of the disk center.
    pub fn conformal_center(&self) -> Point2 {
        self.center
    }

    pub fn correspondence(&self) -> &[CorrespondenceRow] {
        &self.rows
    }

    /// Evaluate the map at a closed-disk point.
    pub fn eval(&self, w: Point2) -> Point2 {
        self.map.eval(C::new(w.x, w.y))
    }

    pub fn eval_angle(&self, theta: f64) -> Point2 {
        self.eval(Point2::new(theta.cos(), theta.sin()))
    }

    /// Target boundary arclength of the prime end at disk angle `theta`.
    pub fn arclength_for_angle(&self, theta: f64) -> f64 {
        let perim = self.target.perimeter();
        let t = theta.rem_euclid(TAU);
        let n = self.rows.len();
        // Rows are sorted by angle; find the bracketing pair cyclically.
        let idx = self.rows.partition_point(|r| r.angle <= t);
        let (a0, s0, a1, s1) = if idx == 0 || idx == n {
            let lo = &self.rows[n - 1];
            let hi = &self.rows[0];
            (lo.angle, lo.arclength, hi.angle + TAU, hi.arclength + perim)
        } else {
            let lo = &self.rows[idx - 1];
            let hi = &self.rows[idx];
            (lo.angle, lo.arclength, hi.angle, hi.arclength)
        };
        let t = if t < a0 { t + TAU } else { t };
        let frac = if a1 > a0 { (t - a0) / (a1 - a0) } else { 0.0 };
        (s0 + frac * (s1 - s0)).rem_euclid(perim)
    }

    /// Disk angle whose prime end sits at target boundary arclength `s`.
    pub fn angle_for_arclength(&self, s: f64) -> f64 {
        let perim = self.target.perimeter();
        let base = self.rows[0].arclength;
        // Unwrap the query into [base, base + perim).
        let s = base + (s - base).rem_euclid(perim);
        let n = self.rows.len();
        let idx = self.rows.partition_point(|r| r.arclength <= s);
        let (a0, s0, a1, s1) = if idx == 0 || idx == n {
            let lo = &self.rows[n - 1];
            let hi = &self.rows[0];
            (lo.angle, lo.arclength, hi.angle + TAU, hi.arclength + perim)
        } else {
            let lo = &self.rows[idx - 1];
            let hi = &self.rows[idx];
            (lo.angle, lo.arclength, hi.angle, hi.arclength)
        };
        let frac = if s1 > s0 {
            ((s - s0) / (s1 - s0)).clamp(0.0, 1.0)
        } else {
            0.0
        };
        (a0 + frac * (a1 - a0)).rem_euclid(TAU)
    }
}

/// Build the conformal map. `resolution` is the boundary sample budget; the
/// samples are distributed by edge length and cosine-graded into the corners.
pub fn build_conformal_map(domain: &PolygonalDomain, resolution: usize) -> Result<ConformalMap> {
    if resolution < 8 {
        return Err(Error::invalid("resolution must be at least 8"));
    }
    let verts = domain.vertices();
    let arcs = domain.vertex_arclengths();
    let perim = domain.perimeter();

    // Per-edge samples, gently graded toward the corners. Full cosine
    // grading packs samples tighter than the zipper's corner accuracy floor,
    // so blend with a uniform part that keeps a healthy minimum spacing.
    let mut samples: Vec<(Point2, f64)> = Vec::with_capacity(resolution + verts.len());
    for i in 0..verts.len() {
        let a = verts[i];
        let b = verts[(i + 1) % verts.len()];
        let len = a.dist(b);
        let m = ((resolution as f64 * len / perim).round() as usize).max(2);
        for j in 0..m {
            let u = j as f64 / m as f64;
            let graded = 0.5 * (1.0 - (std::f64::consts::PI * u).cos());
            let t = 0.6 * u + 0.4 * graded;
            samples.push((a + (b - a) * t, arcs[i] + t * len));
        }
    }

    let center = interior_anchor(domain)?;
    let (map, thetas) = zipper::Zipper::build(
        &samples.iter().map(|s| s.0).collect::<Vec<_>>(),
        center,
    )?;

    // Assemble the correspondence table sorted by angle, arclength unwrapped.
    // Rows that step backwards by a noise-level amount (corner crowding) are
    // dropped; the surviving table must be strictly monotone.
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&i, &j| thetas[i].partial_cmp(&thetas[j]).unwrap());
    let mut rows: Vec<CorrespondenceRow> = Vec::with_capacity(order.len());
    let mut offset = 0.0;
    let mut dropped = 0usize;
    for &i in &order {
        let mut s = samples[i].1 + offset;
        if let Some(last) = rows.last() {
            if s < last.arclength - 0.5 * perim {
                // Genuine wrap through the arclength origin.
                offset += perim;
                s += perim;
            }
        }
        match rows.last() {
            Some(last) if !(s > last.arclength && thetas[i] > last.angle) => {
                dropped += 1;
            }
            _ => rows.push(CorrespondenceRow {
                angle: thetas[i],
                arclength: s,
            }),
        }
    }
    if dropped * 50 > samples.len() {
        return Err(Error::numeric(
            format!(
                "correspondence table lost {dropped}/{} rows to ordering noise",
                samples.len()
            ),
            dropped as f64,
        ));
    }
    let span = rows.last().unwrap().arclength - rows[0].arclength;
    if (span - perim).abs() > 0.02 * perim {
        return Err(Error::numeric("correspondence wrapped incorrectly", span));
    }

    // Residual: re-evaluate the boundary at sample angles and midpoints.
    let mut residual: f64 = 0.0;
    let stride = (rows.len() / 256).max(1);
    for i in (0..rows.len()).step_by(stride) {
        let th = rows[i].angle;
        let th_next = if i + 1 < rows.len() {
            rows[i + 1].angle
        } else {
            rows[0].angle + TAU
        };
        for t in [th, 0.5 * (th + th_next)] {
            let p = map.eval(C::new(t.cos(), t.sin()));
            residual = residual.max(domain.boundary_distance(p));
        }
    }

    let center_img = map.eval(C::new(0.0, 0.0));
    Ok(ConformalMap {
        target: domain.clone(),
        map,
        rows,
        residual,
        center: center_img,
    })
}

/// Pick a robust interior normalization point.
fn interior_anchor(domain: &PolygonalDomain) -> Result<Point2> {
    let verts = domain.vertices();
    let n = verts.len() as f64;
    let centroid = verts.iter().fold(Point2::default(), |acc, v| acc + *v) / n;
    let clearance = domain.boundary_distance(centroid);
    if domain.contains(centroid) == crate::geometry::Containment::Inside
        && clearance > 1e-3 * domain.diameter()
    {
        return Ok(centroid);
    }
    // Grid scan for the deepest interior point.
    let (mut best, mut best_d) = (centroid, -1.0);
    let steps = 40;
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for v in verts {
        xmin = xmin.min(v.x);
        xmax = xmax.max(v.x);
        ymin = ymin.min(v.y);
        ymax = ymax.max(v.y);
    }
    for i in 1..steps {
        for j in 1..steps {
            let p = Point2::new(
                xmin + (xmax - xmin) * i as f64 / steps as f64,
                ymin + (ymax - ymin) * j as f64 / steps as f64,
            );
            if domain.contains(p) == crate::geometry::Containment::Inside {
                let d = domain.boundary_distance(p);
                if d > best_d {
                    best_d = d;
                    best = p;
                }
            }
        }
    }
    if best_d <= 0.0 {
        return Err(Error::geometry("no interior anchor point found"));
    }
    Ok(best)
}

/// Traced hyperbolic geodesic of the target domain.
#[derive(Debug, Clone)]
pub struct GeodesicCurve {
    /// Target boundary endpoints.
    pub endpoints: (Point2, Point2),
    /// Disk angles of the endpoints.
    pub endpoint_angles: (f64, f64),
    pub trace: Polyline,
    pub length: f64,
}

/// Trace the image of the circular arc in D orthogonal to the unit circle
/// with endpoints at the given disk angles.
pub fn hyperbolic_geodesic(cmap: &ConformalMap, a_angle: f64, b_angle: f64) -> Result<GeodesicCurve> {
    let a = a_angle.rem_euclid(TAU);
    let b = b_angle.rem_euclid(TAU);
    let sep = cyclic_gap(a, b);
    if sep < 1e-12 {
        return Err(Error::invalid("geodesic endpoints coincide"));
    }
    let pa = cmap.eval_angle(a);
    let pb = cmap.eval_angle(b);

    if sep < CHORD_CUTOFF {
        // Nearly coincident prime ends: boundary chord replacement.
        let trace = Polyline::open(vec![pa, pb]);
        let length = pa.dist(pb);
        return Ok(GeodesicCurve {
            endpoints: (pa, pb),
            endpoint_angles: (a, b),
            trace,
            length,
        });
    }

    let arc = OrthogonalArc::new(a, b);
    let mut m = 32usize;
    let mut prev_len = f64::INFINITY;
    let mut best: Option<(Vec<Point2>, f64)> = None;
    while m <= 4096 {
        let mut pts = Vec::with_capacity(m + 1);
        pts.push(pa);
        for i in 1..m {
            let w = arc.point(i as f64 / m as f64);
            pts.push(cmap.eval(w));
        }
        pts.push(pb);
        let len: f64 = pts.windows(2).map(|w| w[0].dist(w[1])).sum();
        let done = (len - prev_len).abs() <= TRACE_LENGTH_TOL * len.max(1e-300);
        prev_len = len;
        best = Some((pts, len));
        if done {
            break;
        }
        m *= 2;
    }
    let (pts, length) = best.unwrap();
    Ok(GeodesicCurve {
        endpoints: (pa, pb),
        endpoint_angles: (a, b),
        trace: Polyline::open(pts),
        length,
    })
}

/// Geodesic between two target boundary arclengths, endpoints snapped onto
/// the polygon so downstream constructions share exact boundary points.
pub fn geodesic_between_arclengths(cmap: &ConformalMap, s_a: f64, s_b: f64) -> Result<GeodesicCurve> {
    let a = cmap.angle_for_arclength(s_a);
    let b = cmap.angle_for_arclength(s_b);
    let mut g = hyperbolic_geodesic(cmap, a, b)?;
    let pa = cmap.target().boundary_point(s_a);
    let pb = cmap.target().boundary_point(s_b);
    g.trace.vertices[0] = pa;
    *g.trace.vertices.last_mut().unwrap() = pb;
    g.endpoints = (pa, pb);
    g.length = g.trace.length();
    Ok(g)
}

/// The circular arc through e^{ia}, e^{ib} orthogonal to the unit circle.
struct OrthogonalArc {
    kind: ArcKind,
}

enum ArcKind {
    /// Diametric: straight segment.
    Segment { u: C, v: C },
    /// Circular arc with center, radius and angle sweep.
    Arc { c: C, r: f64, psi0: f64, dpsi: f64 },
}

impl OrthogonalArc {
    fn new(a: f64, b: f64) -> Self {
        let u = C::from_polar(1.0, a);
        let v = C::from_polar(1.0, b);
        let denom = 1.0 + (a - b).cos();
        if denom < 1e-9 {
            return OrthogonalArc {
                kind: ArcKind::Segment { u, v },
            };
        }
        let c = (u + v) / denom;
        let r = (c.norm_sqr() - 1.0).max(0.0).sqrt();
        let psi0 = (u - c).im.atan2((u - c).re);
        let psi1 = (v - c).im.atan2((v - c).re);
        // Two sweep choices; the geodesic is the one staying inside the disk.
        let mut dpsi = (psi1 - psi0).rem_euclid(TAU);
        let mid = c + C::from_polar(r, psi0 + 0.5 * dpsi);
        if mid.norm() > 1.0 {
            dpsi -= TAU;
        }
        OrthogonalArc {
            kind: ArcKind::Arc { c, r, psi0, dpsi },
        }
    }

    fn point(&self, t: f64) -> Point2 {
        let w = match &self.kind {
            ArcKind::Segment { u, v } => u + (v - u) * t,
            ArcKind::Arc { c, r, psi0, dpsi } => c + C::from_polar(*r, psi0 + dpsi * t),
        };
        Point2::new(w.re, w.im)
    }
}

fn cyclic_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// True iff the chords {a1,b1} and {a2,b2} interleave cyclically, i.e. the
/// hyperbolic geodesics cross at exactly one interior point.
pub fn geodesics_cross(a1: f64, b1: f64, a2: f64, b2: f64) -> Result<bool> {
    let angles = [
        a1.rem_euclid(TAU),
        b1.rem_euclid(TAU),
        a2.rem_euclid(TAU),
        b2.rem_euclid(TAU),
    ];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if cyclic_gap(angles[i], angles[j]) < 1e-12 {
                return Err(Error::invalid("geodesic crossing needs distinct angles"));
            }
        }
    }
    // Count how many of {a2, b2} fall in the (a1 -> b1) counterclockwise arc.
    let span = (angles[1] - angles[0]).rem_euclid(TAU);
    let in_arc = |x: f64| (x - angles[0]).rem_euclid(TAU) < span;
    Ok(in_arc(angles[2]) != in_arc(angles[3]))
}

/// Empirical Gehring-Hayman constant: max over the pairs of geodesic length
/// over internal distance of its endpoints.
pub fn gehring_hayman_ratio(cmap: &ConformalMap, pairs: &[(f64, f64)]) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::invalid("need at least one angle pair"));
    }
    let metric = InternalMetric::new(cmap.target());
    let mut worst: f64 = 0.0;
    for &(a, b) in pairs {
        let g = hyperbolic_geodesic(cmap, a, b)?;
        let d = metric.distance(g.endpoints.0, g.endpoints.1)?.length;
        if d > 0.0 {
            worst = worst.max(g.length / d);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk_polygon(n: usize) -> PolygonalDomain {
        PolygonalDomain::new(
            (0..n)
                .map(|i| {
                    let t = TAU * i as f64 / n as f64;
                    Point2::new(t.cos(), t.sin())
                })
                .collect(),
        )
        .unwrap()
    }

    fn unit_square() -> PolygonalDomain {
        PolygonalDomain::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn disk_map_is_near_identity() {
        let dom = disk_polygon(256);
        let cmap = build_conformal_map(&dom, 512).unwrap();
        assert!(cmap.residual() < 1e-2, "residual {}", cmap.residual());
        assert!(cmap.conformal_center().norm() < 1e-2);
        // Boundary correspondence approximately angle <-> arclength.
        for row in cmap.correspondence().iter().step_by(37) {
            let s_expected = row.angle / TAU * dom.perimeter();
            let ds = (row.arclength.rem_euclid(dom.perimeter()) - s_expected).abs();
            let ds = ds.min(dom.perimeter() - ds);
            assert!(ds < 0.05, "angle {} arclength {}", row.angle, row.arclength);
        }
        let p = cmap.eval(Point2::new(0.5, 0.0));
        assert!(p.dist(Point2::new(0.5, 0.0)) < 2e-2, "eval(0.5) = {p:?}");
    }

    #[test]
    fn square_map_has_four_fold_symmetric_correspondence() {
        let dom = unit_square();
        let cmap = build_conformal_map(&dom, 1024).unwrap();
        // Conformal center of the square is its midpoint.
        assert!(cmap.conformal_center().dist(Point2::new(0.5, 0.5)) < 5e-3);
        // Quarter-turn symmetry of the correspondence.
        let mut worst: f64 = 0.0;
        for i in 0..32 {
            let th = TAU * i as f64 / 32.0;
            let s1 = cmap.arclength_for_angle(th);
            let s2 = cmap.arclength_for_angle(th + TAU / 4.0);
            let shift = (s2 - s1).rem_euclid(4.0);
            worst = worst.max((shift - 1.0).abs());
        }
        assert!(worst < 1e-2, "symmetry error {worst}");
    }

    #[test]
    fn degenerate_chain_is_rejected() {
        assert!(PolygonalDomain::new(vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn diametric_geodesic_of_disk_is_a_diameter() {
        let dom = disk_polygon(256);
        let cmap = build_conformal_map(&dom, 512).unwrap();
        let g = hyperbolic_geodesic(&cmap, 0.0, std::f64::consts::PI).unwrap();
        assert!((g.length - 2.0).abs() < 5e-3, "length {}", g.length);
    }

    #[test]
    fn quarter_geodesic_matches_orthogonal_circle_oracle() {
        // Exact oracle: circle center (1,1), radius 1, quarter arc length pi/2.
        let dom = disk_polygon(512);
        let cmap = build_conformal_map(&dom, 1024).unwrap();
        let g = hyperbolic_geodesic(&cmap, 0.0, std::f64::consts::FRAC_PI_2).unwrap();
        assert!(
            (g.length - std::f64::consts::FRAC_PI_2).abs() < 5e-3,
            "length {}",
            g.length
        );
        // Spot-check the trace against the exact arc.
        let c = Point2::new(1.0, 1.0);
        for v in g.trace.vertices.iter().step_by(11) {
            assert!((v.dist(c) - 1.0).abs() < 5e-3);
        }
    }

    #[test]
    fn same_edge_square_geodesic_stays_inside() {
        let dom = unit_square();
        let cmap = build_conformal_map(&dom, 512).unwrap();
        let s_a = 0.2;
        let s_b = 0.8;
        let g = geodesic_between_arclengths(&cmap, s_a, s_b).unwrap();
        let pa = dom.boundary_point(s_a);
        let pb = dom.boundary_point(s_b);
        assert!(g.length >= pa.dist(pb) - 1e-9);
        for v in &g.trace.vertices {
            assert!(
                dom.contains(*v) != crate::geometry::Containment::Outside
                    || dom.boundary_distance(*v) < 1e-3,
                "trace point {v:?} left the square"
            );
        }
    }

    #[test]
    fn crossing_predicate_trivial_cases() {
        use std::f64::consts::{FRAC_PI_2, PI};
        assert!(geodesics_cross(0.0, PI, FRAC_PI_2, 1.5 * PI).unwrap());
        assert!(!geodesics_cross(0.0, FRAC_PI_2, PI, 1.5 * PI).unwrap());
        assert!(!geodesics_cross(0.0, PI, 0.25 * PI, FRAC_PI_2).unwrap());
        assert!(geodesics_cross(0.0, 0.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn crossing_predicate_matches_traced_intersections() {
        use rand::{Rng, SeedableRng};
        let dom = disk_polygon(128);
        let cmap = build_conformal_map(&dom, 256).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 40 {
            let mut a: [f64; 4] = [0.0; 4];
            for x in a.iter_mut() {
                *x = rng.gen::<f64>() * TAU;
            }
            // Keep the brute-force trace intersection well-conditioned.
            let mut ok = true;
            for i in 0..4 {
                for j in (i + 1)..4 {
                    if cyclic_gap(a[i], a[j]) < 0.05 {
                        ok = false;
                    }
                }
            }
            if !ok {
                continue;
            }
            let predicted = geodesics_cross(a[0], a[1], a[2], a[3]).unwrap();
            let g1 = hyperbolic_geodesic(&cmap, a[0], a[1]).unwrap();
            let g2 = hyperbolic_geodesic(&cmap, a[2], a[3]).unwrap();
            let crossings = trace_crossings(&g1.trace, &g2.trace);
            assert_eq!(
                predicted,
                crossings > 0,
                "angles {a:?} predicted {predicted} crossings {crossings}"
            );
            if predicted {
                assert_eq!(crossings, 1, "angles {a:?}");
            }
            checked += 1;
        }
    }

    fn trace_crossings(a: &Polyline, b: &Polyline) -> usize {
        use crate::geometry::predicates::segments_properly_cross;
        let mut count = 0;
        for i in 0..a.segment_count() {
            let (p, q) = a.segment(i);
            for j in 0..b.segment_count() {
                let (r, s) = b.segment(j);
                if segments_properly_cross(p, q, r, s) {
                    count += 1;
                }
            }
        }
        count
    }
}
