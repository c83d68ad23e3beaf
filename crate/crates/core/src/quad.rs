//! Quadrature: Gauss-Legendre rules and a tanh-sinh rule for integrands with
//! endpoint singularities.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nodes and weights on (-1, 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// n-point Gauss-Legendre rule, exact for polynomials of degree 2n - 1.
    pub fn gauss_legendre(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, z);
                for j in 2..=n {
                    let jf = j as f64;
                    let p2 = ((2.0 * jf - 1.0) * z * p1 - (jf - 1.0) * p0) / jf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = nf * (z * p1 - p0) / (z * z - 1.0);
                let dz = p1 / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        QuadratureRule { nodes, weights }
    }

    pub fn order(&self) -> usize {
        2 * self.nodes.len() - 1
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(c + h * x)).sum::<f64>() * h
    }
}

/// Tanh-sinh quadrature of f over (a, b). The integrand receives the abscissa
/// and its exact distances to both ends.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64, f64, f64) -> f64,
{
    let hw = 0.5 * (b - a);
    let tmax = 6.5;
    // contribution of the abscissas at t and -t
    // returns the contribution and its magnitude
    let pair = |t: f64| -> (f64, f64) {
        let u = FRAC_PI_2 * t.sinh();
        let cu = u.cosh();
        let w = hw * FRAC_PI_2 * t.cosh() / (cu * cu);
        // distance to the nearer end, 2 hw / (exp(2u) + 1)
        let near = 2.0 * hw / ((2.0 * u).exp() + 1.0);
        if near <= 0.0 || w == 0.0 {
            return (0.0, 0.0);
        }
        let far = 2.0 * hw - near;
        let right = f(b - near, far, near);
        if t == 0.0 {
            return (w * right, (w * right).abs());
        }
        let left = f(a + near, near, far);
        (w * (right + left), w * (right.abs() + left.abs()))
    };
    let mut h = 0.5;
    let (mut total, mut mag) = (0.0, 0.0);
    let n0 = (tmax / h) as usize;
    for k in 0..=n0 {
        let (v, m) = pair(k as f64 * h);
        total += v;
        mag += m;
    }
    let mut est = total * h;
    for _ in 0..10 {
        h *= 0.5;
        let n = (tmax / h) as usize;
        for k in (1..=n).step_by(2) {
            let (v, m) = pair(k as f64 * h);
            total += v;
            mag += m;
        }
        let next = total * h;
        if !next.is_finite() {
            return Err(Error::Domain("integrand not finite".into()));
        }
        // relative to the integral of |f| so cancelling integrands converge too
        if (next - est).abs() <= tol * (mag * h).max(1e-300) {
            return Ok(next);
        }
        est = next;
    }
    Err(Error::NonConvergence { what: "tanh-sinh", iters: 10 })
}

/// Inner product of two real functions on (a, b); each receives the abscissa
/// and its distance to b.
pub fn inner_product<F, G>(f: F, g: G, a: f64, b: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
    G: Fn(f64, f64) -> f64,
{
    tanh_sinh(|x, _, db| f(x, db) * g(x, db), a, b, 1e-9)
}
