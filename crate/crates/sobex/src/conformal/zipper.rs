//! Geodesic zipper scheme for the numerical Riemann map.
//!
//! The forward pass unzips the boundary samples one at a time through
//! elementary maps (a Mobius transform straightening the hyperbolic geodesic
//! from 0 to the new point, followed by a vertical-slit closing square root).
//! The inverse pass composes the closed-form inverses, which is how interior
//! points of the disk are evaluated. Both directions cost O(M) per point for
//! M boundary samples.

use crate::error::{Error, Result};
use crate::geometry::Point2;
use num_complex::Complex64 as C;

#[derive(Debug, Clone, Copy)]
struct SlitStep {
    /// Pole of the straightening Mobius map; `None` means identity (pure slit).
    b: Option<f64>,
    /// Slit height: the geodesic from 0 to the zipped point maps to [0, i d].
    d: f64,
}

/// Composed conformal map between the unit disk and the sampled Jordan region.
#[derive(Debug, Clone)]
pub struct Zipper {
    z0: C,
    z1: C,
    steps: Vec<SlitStep>,
    /// Closing pole: pre-closing image of `z0` (`None` = infinity).
    xi: Option<f64>,
    /// +1: interior quadrant is {Re > 0}, F(w) = w^2; -1: F(w) = -w^2.
    quadrant_sign: f64,
    /// Image of the normalization center in the final upper half-plane.
    omega: C,
    /// Unit rotation fixed after the Cayley transform.
    rot: C,
}

/// Replace -0.0 imaginary parts so principal square roots pick the upper branch.
fn up(w: C) -> C {
    C::new(w.re, if w.im == 0.0 { 0.0 } else { w.im })
}

fn slit_fwd(w: C, b: Option<f64>, d: f64) -> C {
    let m = match b {
        Some(b) => w / (C::new(1.0, 0.0) - w / b),
        None => w,
    };
    let mut s = (up(m * m + C::new(d * d, 0.0))).sqrt();
    if s.im < 0.0 {
        s = -s;
    }
    s
}

fn slit_fwd_real(x: f64, b: Option<f64>, d: f64) -> f64 {
    let m = if x.is_infinite() {
        match b {
            Some(b) => -b,
            None => x,
        }
    } else {
        match b {
            Some(b) => x / (1.0 - x / b),
            None => x,
        }
    };
    if m.is_infinite() {
        return m;
    }
    m.signum() * m.hypot(d)
}

fn mu_fwd(w: C, xi: Option<f64>) -> C {
    match xi {
        Some(xi) => w / (C::new(1.0, 0.0) - w / xi),
        None => w,
    }
}

fn mu_fwd_real(x: f64, xi: Option<f64>) -> f64 {
    match xi {
        Some(xi) => {
            if x.is_infinite() {
                -xi
            } else {
                x / (1.0 - x / xi)
            }
        }
        None => x,
    }
}

impl Zipper {
    /// Forward construction from ordered boundary samples (counterclockwise)
    /// and an interior normalization point. Returns the zipper together with
    /// the final disk angle of each sample.
    pub fn build(points: &[Point2], center: Point2) -> Result<(Zipper, Vec<f64>)> {
        match Self::build_with_sign(points, center, -1.0) {
            Ok(ok) => Ok(ok),
            Err(first) => match Self::build_with_sign(points, center, 1.0) {
                Ok(ok) => Ok(ok),
                Err(second) => Err(Error::numeric(
                    format!("zipper failed for both base sides: [{first}] / [{second}]"),
                    f64::NAN,
                )),
            },
        }
    }

    fn build_with_sign(points: &[Point2], center: Point2, base_sign: f64) -> Result<(Zipper, Vec<f64>)> {
        let m = points.len();
        if m < 8 {
            return Err(Error::invalid("need at least 8 boundary samples"));
        }
        let z0 = C::new(points[0].x, points[0].y);
        let z1 = C::new(points[1].x, points[1].y);
        let cz = C::new(center.x, center.y);

        let init = |z: C| -> C { C::i() * (up((z - z1) / (z - z0))).sqrt() };

        // Pending interior-side images for indices 2..m, reals for zipped ones.
        let mut pending: Vec<C> = (2..m)
            .map(|j| init(C::new(points[j].x, points[j].y)))
            .collect();
        let mut center_img = init(cz);
        // zipped[j] = real image of points[j] once unzipped; z0 starts at infinity.
        let mut zipped: Vec<f64> = vec![0.0; m];
        zipped[0] = f64::INFINITY;

        let mut steps: Vec<SlitStep> = Vec::with_capacity(m - 2);
        for k in 2..m {
            let zeta = pending[k - 2];
            if !(zeta.im > 0.0) {
                return Err(Error::numeric(
                    format!("zipper sample {k} left the upper half-plane"),
                    zeta.im,
                ));
            }
            let n2 = zeta.norm_sqr();
            let b = if zeta.re == 0.0 { None } else { Some(n2 / zeta.re) };
            let d = n2 / zeta.im;
            let step = SlitStep { b, d };

            // Previous tip sits at the slit base and splits to +/- d.
            zipped[k - 1] = base_sign * d;
            for j in 0..k - 1 {
                zipped[j] = slit_fwd_real(zipped[j], b, d);
            }
            for w in pending.iter_mut().skip(k - 1) {
                let mut nw = slit_fwd(*w, b, d);
                if nw.im <= 0.0 {
                    // Rounding pushed a pending point onto the real axis.
                    if nw.im < -1e-7 * (1.0 + nw.norm()) {
                        return Err(Error::numeric(
                            format!("pending sample collapsed at step {k}"),
                            nw.im,
                        ));
                    }
                    nw = C::new(nw.re, 1e-15 * (1.0 + nw.norm()));
                }
                *w = nw;
            }
            center_img = slit_fwd(center_img, b, d);
            zipped[k] = 0.0;
            steps.push(step);
        }

        // Closing: zip the remaining gap between points[m-1] (at 0) and z0.
        let xi = if zipped[0].is_infinite() {
            None
        } else {
            Some(zipped[0])
        };
        let qc = mu_fwd(center_img, xi);
        if qc.im <= 0.0 {
            return Err(Error::numeric("center left the upper half-plane", qc.im));
        }
        let quadrant_sign = if qc.re > 0.0 { 1.0 } else { -1.0 };

        // Interior-side images must land on the interior quadrant's real side.
        // Samples mapping next to the gap endpoints (|u| tiny) carry only a
        // noise-level sign and are exempt; the cyclic monotonicity check
        // below is the hard gate.
        let us: Vec<f64> = zipped.iter().map(|&x| mu_fwd_real(x, xi)).collect();
        let scale = {
            let mut mags: Vec<f64> = us
                .iter()
                .filter(|u| u.is_finite())
                .map(|u| u.abs())
                .collect();
            mags.sort_by(|a, b| a.partial_cmp(b).unwrap());
            mags.get(mags.len() / 2).copied().unwrap_or(1.0)
        };
        let wrong = us
            .iter()
            .skip(1)
            .filter(|u| u.is_finite() && u.abs() > 1e-9 * scale && u.signum() != quadrant_sign)
            .count();
        if wrong * 50 > m {
            return Err(Error::numeric(
                format!(
                    "{wrong}/{m} boundary samples landed on the exterior side (base sign {base_sign})"
                ),
                wrong as f64,
            ));
        }

        let omega = quadrant_sign * qc * qc;
        if !(omega.im > 0.0) {
            return Err(Error::numeric("degenerate disk normalization", omega.im));
        }

        // Cayley to the disk, then rotate so the first sample keeps its
        // geometric direction as seen from the center.
        let cayley = |x: f64| -> C {
            if x.is_infinite() {
                C::new(1.0, 0.0)
            } else {
                (C::new(x, 0.0) - omega) / (C::new(x, 0.0) - omega.conj())
            }
        };
        let theta0_raw = cayley(f64::INFINITY);
        let aim = (C::new(points[0].x, points[0].y) - cz) / (C::new(points[0].x, points[0].y) - cz).norm();
        let rot = aim / theta0_raw;

        let mut thetas = Vec::with_capacity(m);
        for (j, &u) in us.iter().enumerate() {
            let x = if u.is_finite() {
                quadrant_sign * u * u
            } else {
                f64::INFINITY
            };
            let w = rot * cayley(x);
            let th = w.im.atan2(w.re).rem_euclid(std::f64::consts::TAU);
            if j > 0 && !th.is_finite() {
                return Err(Error::numeric("non-finite boundary angle", th));
            }
            thetas.push(th);
        }

        // Cyclic near-monotonicity. Samples crowded into corners sit near the
        // square-root branch points where the composition's accuracy floor is
        // ~sqrt(eps); tiny order flips there are cleaned up by the table
        // builder, but widespread disorder means the wrong side convention.
        let mut wraps = 0;
        for j in 0..m {
            let a = thetas[j];
            let b = thetas[(j + 1) % m];
            if b <= a {
                wraps += 1;
            }
        }
        if wraps > 1 + m / 50 {
            return Err(Error::numeric(
                format!("boundary correspondence not cyclically monotone ({wraps} wraps)"),
                wraps as f64,
            ));
        }

        Ok((
            Zipper {
                z0,
                z1,
                steps,
                xi,
                quadrant_sign,
                omega,
                rot,
            },
            thetas,
        ))
    }

    /// Evaluate the map at a closed-disk point (|w| <= 1).
    ///
    /// Every intermediate value lies in the closed upper half-plane, so
    /// imaginary parts that rounding pushes below zero are clamped back to
    /// +0.0 before each branch-sensitive square root.
    pub fn eval(&self, w: C) -> Point2 {
        let clamp = |w: C| C::new(w.re, if w.im <= 0.0 { 0.0 } else { w.im });
        let u = w * self.rot.conj();
        if (u - C::new(1.0, 0.0)).norm() < 1e-14 {
            return Point2::new(self.z0.re, self.z0.im);
        }
        // Inverse Cayley into the upper half-plane.
        let v = clamp((self.omega - u * self.omega.conj()) / (C::new(1.0, 0.0) - u));
        // Inverse closing square.
        let q = if self.quadrant_sign > 0.0 {
            v.sqrt()
        } else {
            -(-v).sqrt()
        };
        let mut x = match self.xi {
            Some(xi) => clamp(q * xi / (C::new(xi, 0.0) + q)),
            None => clamp(q),
        };
        // Inverse slit steps.
        for step in self.steps.iter().rev() {
            let s = (x - C::new(step.d, 0.0)).sqrt() * (x + C::new(step.d, 0.0)).sqrt();
            x = match step.b {
                Some(b) => clamp(s * b / (C::new(b, 0.0) + s)),
                None => clamp(s),
            };
        }
        // Inverse initial map.
        let r = -x * x;
        let z = (self.z1 - self.z0 * r) / (C::new(1.0, 0.0) - r);
        Point2::new(z.re, z.im)
    }
}
