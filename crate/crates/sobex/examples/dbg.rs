use sobex::conformal::*;
use sobex::geometry::*;
use std::f64::consts::TAU;
fn main() {
    let dom = PolygonalDomain::new(vec![
        Point2::new(0.0, 0.0), Point2::new(1.0, 0.0),
        Point2::new(1.0, 1.0), Point2::new(0.0, 1.0),
    ]).unwrap();
    for res in [512usize, 1024, 2048, 4096] {
        let t0 = std::time::Instant::now();
        let cmap = build_conformal_map(&dom, res).unwrap();
        let mut worst: f64 = 0.0;
        for i in 0..64 {
            let th = TAU * i as f64 / 64.0;
            let s1 = cmap.arclength_for_angle(th);
            let s2 = cmap.arclength_for_angle(th + TAU / 4.0);
            let shift = (s2 - s1).rem_euclid(4.0);
            worst = worst.max((shift - 1.0).abs());
        }
        println!("res {res}: symmetry err {:.2e}, residual {:.2e}, center dist {:.2e}, {:?}",
            worst, cmap.residual(), cmap.conformal_center().dist(Point2::new(0.5,0.5)), t0.elapsed());
    }
}
