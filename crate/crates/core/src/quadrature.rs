//! Gauss-Legendre quadrature with cached nodes and adaptive drivers.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Nodes and weights on the reference interval [-1, 1].
#[derive(Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn rule_cache() -> &'static Mutex<HashMap<usize, Arc<GaussRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Legendre P_n and P_n' at x by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss-Legendre rule of the given order (cached).
pub fn gauss_legendre(order: usize) -> Arc<GaussRule> {
    assert!(order >= 1);
    if let Some(r) = rule_cache().lock().unwrap().get(&order) {
        return r.clone();
    }
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        // Tricomi initial guess, then Newton.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, dp) = legendre_with_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (dp * dp);
    }
    let rule = Arc::new(GaussRule { nodes, weights });
    rule_cache().lock().unwrap().insert(order, rule.clone());
    rule
}

/// Integrates a real function over [a, b] with a single rule.
pub fn gl_integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, order: usize) -> f64 {
    let rule = gauss_legendre(order);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        sum += w * f(mid + half * x);
    }
    sum * half
}

/// Complex-valued variant.
pub fn gl_integrate_c<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, order: usize) -> Complex64 {
    let rule = gauss_legendre(order);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = Complex64::new(0.0, 0.0);
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        sum += f(mid + half * x) * *w;
    }
    sum * half
}

/// Composite rule: `panels` equal panels of the given order.
pub fn gl_composite_c<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    order: usize,
    panels: usize,
) -> Complex64 {
    let h = (b - a) / panels as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..panels {
        sum += gl_integrate_c(|x| f(x), a + i as f64 * h, a + (i + 1) as f64 * h, order);
    }
    sum
}

/// Adaptive bisection with an embedded error estimate.
///
/// Compares one panel against its two halves; recurses until the local
/// difference is below the local tolerance share or depth runs out.
pub fn adaptive_gl_c<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> Result<(Complex64, f64)> {
    fn recurse<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Result<(Complex64, f64)> {
        let m = 0.5 * (a + b);
        let left = gl_integrate_c(|x| f(x), a, m, 16);
        let right = gl_integrate_c(|x| f(x), m, b, 16);
        let diff = (left + right - whole).norm();
        if diff <= tol || (b - a) < 1e-14 {
            return Ok((left + right, diff));
        }
        if depth == 0 {
            return Err(Error::Quadrature(format!(
                "adaptive quadrature failed on [{a}, {b}]: residual {diff:.3e} > {tol:.3e}"
            )));
        }
        let (lv, le) = recurse(f, a, m, left, 0.5 * tol, depth - 1)?;
        let (rv, re) = recurse(f, m, b, right, 0.5 * tol, depth - 1)?;
        Ok((lv + rv, le + re))
    }
    let whole = gl_integrate_c(|x| f(x), a, b, 16);
    recurse(f, a, b, whole, tol, max_depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn polynomial_exactness() {
        // Order n integrates degree 2n-1 exactly.
        let v = gl_integrate(|x| x.powi(9) + 3.0 * x.powi(4), 0.0, 1.0, 5);
        assert_abs_diff_eq!(v, 0.1 + 0.6, epsilon = 1e-14);
    }

    #[test]
    fn oscillatory_convergence() {
        let omega: f64 = 40.0;
        let exact = omega.sin() / omega;
        let v = gl_integrate(|x| (omega * x).cos(), 0.0, 1.0, 48);
        assert_abs_diff_eq!(v, exact, epsilon = 1e-13);
    }

    #[test]
    fn adaptive_handles_peaks() {
        let f = |x: f64| Complex64::new((-(x * x) * 400.0).exp(), 0.0);
        let (v, _) = adaptive_gl_c(&f, -1.0, 1.0, 1e-12, 24).unwrap();
        let exact = (std::f64::consts::PI / 400.0).sqrt();
        assert_abs_diff_eq!(v.re, exact, epsilon = 1e-10);
    }

    #[test]
    fn nodes_match_known_order_two() {
        let r = gauss_legendre(2);
        assert_abs_diff_eq!(r.nodes[1], 1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(r.weights[0], 1.0, epsilon = 1e-15);
    }
}
