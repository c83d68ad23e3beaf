#![allow(dead_code)]

use psphere::spectral::{basis_eval, RadialProblem};
use psphere::Complex;

pub fn wronskian_factors() -> (f64, f64) {
    let v: serde_json::Value = serde_json::from_str(include_str!("../fixtures/wronskian_factor.json")).unwrap();
    (v["oscillator"].as_f64().unwrap(), v["coulomb"].as_f64().unwrap())
}

/// Residual of -(p0 u')' + (V - W) u at s from five-point differences,
/// relative to the size of its terms.
pub fn ode_residual<P: RadialProblem>(p: &P, w: Complex, s: f64, pick: fn(&psphere::spectral::BasisValues) -> Complex) -> f64 {
    let h = 1e-3 * p.outer();
    let u = |t: f64| pick(&basis_eval(p, w, t).unwrap());
    let flux = |t: f64| {
        let d = (-u(t + 2.0 * h) + 8.0 * u(t + h) - 8.0 * u(t - h) + u(t - 2.0 * h)) / (12.0 * h);
        d * p.p0(t)
    };
    let dflux = (-flux(s + 2.0 * h) + 8.0 * flux(s + h) - 8.0 * flux(s - h) + flux(s - 2.0 * h)) / (12.0 * h);
    let v = (p.potential(s) - w) * u(s);
    (v - dflux).norm() / (dflux.norm() + v.norm())
}

/// Least-squares slope of log y against log x.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}
