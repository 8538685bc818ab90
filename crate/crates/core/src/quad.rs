//! Gauss-Legendre quadrature nodes and weights.

/// Nodes and weights on [-1, 1], computed by Newton iteration on the
/// Legendre recurrence. Degree is small (<= 64), accuracy is machine-level.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Chebyshev-like initial guess for the i-th positive root
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and P_n' by the three-term recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            dp = n as f64 * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        // weight at zero recomputed directly
        let (mut p0, mut p1) = (1.0, 0.0);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = (-(kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (0.0 - p0) / (0.0 - 1.0);
        weights[n / 2] = 2.0 / (dp * dp);
    }
    (nodes, weights)
}

/// Integrates f over [a, b] with a fixed-degree panel rule.
pub fn integrate_panel<T, F>(a: f64, b: f64, nodes: &[f64], weights: &[f64], mut f: F) -> Vec<T>
where
    T: Clone + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
    F: FnMut(f64) -> Vec<T>,
{
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc: Vec<T> = Vec::new();
    for (x, w) in nodes.iter().zip(weights) {
        let vals = f(mid + half * x);
        if acc.is_empty() {
            acc = vec![T::default(); vals.len()];
        }
        for (s, v) in acc.iter_mut().zip(vals) {
            *s = s.clone() + v * (w * half);
        }
    }
    acc
}
