//! Gauss-Legendre rules used by the Douglas term integrals.

/// Nodes and weights of the `q`-point Gauss-Legendre rule on [-1, 1].
///
/// Computed by Newton iteration on the Legendre recurrence; accurate to
/// machine precision for the orders used here (q <= 64).
pub fn gauss_legendre(q: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(q >= 1, "quadrature order must be positive");
    let mut nodes = vec![0.0; q];
    let mut weights = vec![0.0; q];
    let n = q as f64;
    for i in 0..(q + 1) / 2 {
        // Chebyshev-style initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(q, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[q - 1 - i] = x;
        weights[i] = w;
        weights[q - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_and_derivative(q: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=q {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = q as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Rule mapped onto [a, b].
pub fn gauss_legendre_on(q: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (xs, ws) = gauss_legendre(q);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        xs.iter().map(|x| mid + half * x).collect(),
        ws.iter().map(|w| w * half).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        // q-point rule is exact up to degree 2q-1.
        let (xs, ws) = gauss_legendre(4);
        let integral: f64 = xs
            .iter()
            .zip(&ws)
            .map(|(x, w)| w * (x.powi(6) + x.powi(3) - x + 2.0))
            .sum();
        // int_{-1}^{1} x^6 dx = 2/7, odd terms vanish, constant gives 4.
        assert!((integral - (2.0 / 7.0 + 4.0)).abs() < 1e-13);
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for q in [1, 2, 3, 5, 8, 16] {
            let (_, ws) = gauss_legendre_on(q, 0.25, 1.75);
            let s: f64 = ws.iter().sum();
            assert!((s - 1.5).abs() < 1e-12, "q={q} sum={s}");
        }
    }
}
