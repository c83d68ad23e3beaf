//! Finite-difference ground truth for the discrete spectra.
//!
//! The radial equation is written for `v` with `psi = sqrt(s) v` (oscillator,
//! s = r) or `psi = s v` with rho = s^2 (Coulomb), which turns the singular
//! boundary behaviour into a weighted Sturm-Liouville problem whose regular
//! solutions are smooth. The variable is then graded towards the outer end
//! with `s = S (1 - (1 - t)^kappa)` and discretized in flux form on a
//! cell-centred grid in t. Eigenvalues of the pencil `T v = E W v` come from
//! Sturm counts on `T - E W`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::inner_product;
use crate::spectral::{bound_state_at, Channel, Level, RadialProblem};
use crate::specfun::Complex;

const GRADING: i32 = 6;

/// Symmetric tridiagonal pencil `(T, diag(weight))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscretizedOperator {
    pub h: f64,
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    pub weight: Vec<f64>,
    /// Radial position of each cell centre.
    pub nodes: Vec<f64>,
}

impl DiscretizedOperator {
    /// Plain symmetric tridiagonal matrix with unit weights.
    pub fn from_tridiagonal(diag: Vec<f64>, off: Vec<f64>) -> Self {
        let n = diag.len();
        DiscretizedOperator { h: 1.0, weight: vec![1.0; n], nodes: (0..n).map(|i| i as f64).collect(), diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues below e (negative pivots of LDL^T of T - e W).
    pub fn count_below(&self, e: f64) -> usize {
        let mut count = 0;
        let mut piv = 1.0;
        for i in 0..self.diag.len() {
            let mut p = self.diag[i] - e * self.weight[i];
            if i > 0 {
                p -= self.off[i - 1] * self.off[i - 1] / piv;
            }
            if p == 0.0 {
                p = -1e-300;
            }
            if p < 0.0 {
                count += 1;
            }
            piv = p;
        }
        count
    }

    /// Gershgorin lower bound for the pencil.
    pub fn lower_bound(&self) -> f64 {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off[i - 1].abs() / (self.weight[i] * self.weight[i - 1]).sqrt();
            }
            if i + 1 < n {
                r += self.off[i].abs() / (self.weight[i] * self.weight[i + 1]).sqrt();
            }
            lo = lo.min(self.diag[i] / self.weight[i] - r);
        }
        lo
    }

    fn upper_bound(&self) -> f64 {
        let n = self.diag.len();
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off[i - 1].abs() / (self.weight[i] * self.weight[i - 1]).sqrt();
            }
            if i + 1 < n {
                r += self.off[i].abs() / (self.weight[i] * self.weight[i + 1]).sqrt();
            }
            hi = hi.max(self.diag[i] / self.weight[i] + r);
        }
        hi
    }

    /// The j-th eigenvalue (0-based) by bisection on the Sturm count.
    pub fn eigenvalue(&self, j: usize) -> f64 {
        let (mut lo, mut hi) = (self.lower_bound(), self.upper_bound());
        for _ in 0..300 {
            let mid = 0.5 * (lo + hi);
            if self.count_below(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-13 * mid.abs().max(1.0) {
                break;
            }
        }
        0.5 * (lo + hi)
    }
}

/// The k smallest eigenvalues.
pub fn lowest_eigenvalues(op: &DiscretizedOperator, k: usize) -> Vec<f64> {
    (0..k.min(op.len())).map(|j| op.eigenvalue(j)).collect()
}

/// Assemble the pencil on `n` cells. Only channels with a unique or a
/// pi/2 extension are supported.
pub fn assemble(ch: &Channel, n: usize) -> Result<DiscretizedOperator> {
    if n < 100 {
        return Err(Error::Config(format!("grid count {n} below 100")));
    }
    if !ch.extension().is_regular() {
        return Err(Error::Unsupported("generic extension angles are not modelled by the oracle".into()));
    }
    let kap = GRADING;
    // P_v, U_v, W_v as functions of (s, D) with D = S - s exact
    type F = Box<dyn Fn(f64, f64) -> f64>;
    let (big_s, pv, uv, wv, radius): (f64, F, F, F, Box<dyn Fn(f64) -> f64>) = match *ch {
        Channel::Oscillator(c) => {
            let (rr, q, m2) = (c.r, c.q, (c.m as f64).powi(2));
            let r4 = rr.powi(4);
            let p = move |r: f64, d: f64| (d * (rr + r)).powi(2) / r4;
            let dp = move |r: f64, d: f64| -4.0 * r * d * (rr + r) / r4;
            let u = move |r: f64, d: f64| {
                (10.0 * rr * rr * r * r - 9.0 * r.powi(4) - r4 + 4.0 * m2 * (d * (rr + r)).powi(2))
                    / (4.0 * r4 * r * r)
                    + 4.0 * (q - 1.0) * r * r / (rr * rr + r * r).powi(2)
            };
            (
                rr,
                Box::new(move |s, d| p(s, d) * s),
                Box::new(move |s, d| s * u(s, d) + p(s, d) / (4.0 * s) - dp(s, d) / 2.0),
                Box::new(|s, _| s),
                Box::new(|s| s),
            )
        }
        Channel::Coulomb(c) => {
            let (rc, g, m2) = (c.rc, c.g, (c.m as f64).powi(2));
            let sq = rc.sqrt();
            let r4 = rc.powi(4);
            let dr = move |s: f64, d: f64| d * (sq + s); // R_C - rho
            let p = move |s: f64, d: f64| (dr(s, d) * (rc + s * s)).powi(2) / r4;
            let dp = move |s: f64, d: f64| -4.0 * s * s * dr(s, d) * (rc + s * s) / r4;
            let u = move |s: f64, d: f64| {
                (10.0 * rc * rc * s.powi(4) - 9.0 * s.powi(8) - r4 + m2 * (dr(s, d) * (rc + s * s)).powi(2))
                    / (4.0 * r4 * s.powi(4))
                    + g * (rc + s * s).powi(2) / (rc * rc * s * s)
            };
            (
                sq,
                Box::new(move |s, d| p(s, d) * s / 2.0),
                Box::new(move |s, d| p(s, d) / (2.0 * s) - s * dp(s, d) + 2.0 * s.powi(3) * u(s, d)),
                Box::new(|s, _| 2.0 * s.powi(3)),
                Box::new(|s| s * s),
            )
        }
    };
    let h = 1.0 / n as f64;
    let kf = kap as f64;
    let dphi = |t: f64| big_s * kf * (1.0 - t).powi(kap - 1);
    let mut faces = vec![0.0; n + 1];
    for (j, face) in faces.iter_mut().enumerate().take(n).skip(1) {
        let t = j as f64 * h;
        let d = big_s * (1.0 - t).powi(kap);
        *face = pv(big_s - d, d) / dphi(t);
    }
    let mut diag = Vec::with_capacity(n);
    let mut weight = Vec::with_capacity(n);
    let mut nodes = Vec::with_capacity(n);
    for i in 0..n {
        let t = (i as f64 + 0.5) * h;
        let d = big_s * (1.0 - t).powi(kap);
        let s = big_s - d;
        diag.push((faces[i] + faces[i + 1]) / (h * h) + uv(s, d) * dphi(t));
        weight.push(wv(s, d) * dphi(t));
        nodes.push(radius(s));
    }
    let off = (1..n).map(|j| -faces[j] / (h * h)).collect();
    Ok(DiscretizedOperator { h, diag, off, weight, nodes })
}

/// One row of the cross-check table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckRow {
    pub analytic: f64,
    /// Eigenvalues on the successive grids.
    pub grid: Vec<f64>,
    pub extrapolated: f64,
    pub error: f64,
    pub order: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckTable {
    pub grids: Vec<usize>,
    pub rows: Vec<CrosscheckRow>,
    /// Oracle eigenvalues below threshold on the finest grid.
    pub count_below_threshold: usize,
    pub analytic_count: usize,
    pub pass: bool,
}

pub const DEFAULT_GRIDS: [usize; 3] = [2000, 4000, 8000];

/// Compare analytic levels with oracle eigenvalues on the given grids
/// (ascending, each doubling the last). Richardson uses the two finest.
pub fn crosscheck(ch: &Channel, analytic: &[f64], grids: &[usize]) -> Result<CrosscheckTable> {
    if grids.len() < 2 {
        return Err(Error::Config("crosscheck needs at least two grids".into()));
    }
    let ops: Vec<DiscretizedOperator> = grids.iter().map(|&n| assemble(ch, n)).collect::<Result<_>>()?;
    let threshold = ch.threshold();
    let count = ops.last().unwrap().count_below(threshold);
    let mut rows = Vec::new();
    for (j, &exact) in analytic.iter().enumerate() {
        let grid: Vec<f64> = ops.iter().map(|op| op.eigenvalue(j)).collect();
        let k = grid.len();
        let extrapolated = (4.0 * grid[k - 1] - grid[k - 2]) / 3.0;
        let order = if k >= 3 {
            ((grid[k - 3] - grid[k - 2]).abs() / (grid[k - 2] - grid[k - 1]).abs()).log2()
        } else {
            f64::NAN
        };
        let error = (extrapolated - exact).abs();
        rows.push(CrosscheckRow { analytic: exact, grid, extrapolated, error, order, pass: error < 1e-3 * (1.0 + exact.abs()) });
    }
    let pass = rows.iter().all(|r| r.pass) && count == analytic.len();
    Ok(CrosscheckTable { grids: grids.to_vec(), rows, count_below_threshold: count, analytic_count: analytic.len(), pass })
}

/// Gram matrix of the normalized bound states of a channel.
pub fn orthonormality_check<P: RadialProblem + ?Sized>(p: &P, levels: &[Level]) -> Result<Vec<Vec<f64>>> {
    let outer = p.outer();
    // the last stretch is added in closed form: there the product behaves
    // like d^(2 nu_i + 2 nu_j - 1), which for levels just below threshold
    // keeps weight far below any representable distance
    let eps = 1e-10 * outer;
    let nus: Vec<f64> = levels.iter().map(|l| p.exponents(Complex::new(l.e, 0.0)).nu.re).collect();
    let n = levels.len();
    let mut gram = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let f = |s: f64, d: f64| eval_or_zero(p, &levels[i], s, d + eps, outer);
            let g = |s: f64, d: f64| eval_or_zero(p, &levels[j], s, d + eps, outer);
            let body = inner_product(f, g, 0.0, outer - eps)?;
            let edge = f(outer - eps, 0.0) * g(outer - eps, 0.0) * eps / (2.0 * (nus[i] + nus[j]));
            gram[i][j] = body + edge;
            gram[j][i] = body + edge;
        }
    }
    Ok(gram)
}

fn eval_or_zero<P: RadialProblem + ?Sized>(p: &P, l: &Level, s: f64, d: f64, outer: f64) -> f64 {
    // the integrand vanishes like s^(1+2|m|) (times logs) at the origin
    if s < 1e-12 * outer || d < 1e-200 * outer {
        return 0.0;
    }
    match bound_state_at(p, l, s, d) {
        Ok(v) => v,
        Err(_) => f64::NAN,
    }
}
