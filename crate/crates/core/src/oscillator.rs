//! Oscillator-like radial problem on (0, R).
//!
//! `h = -d/dr p0 d/dr + U(r)` with `p0 = (R^2 - r^2)^2 / R^4` and the potential
//! of [`OscillatorConfig::potential`]. The coupling enters only through `q`.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::channel::{ConnectionCoeffs, Exponents, Point, SpectralParams};
use crate::error::{Error, Result};
use crate::specfun::{branch_sqrt, Complex};
use crate::spectral::{self, BasisValues, Extension, Level, RadialProblem, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorConfig {
    pub r: f64,
    pub q: f64,
    pub m: i32,
    /// Extension angle, used only for m = 0.
    pub theta: f64,
}

/// Either a discrete level or a continuum energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum State {
    Bound(Level),
    Continuum(f64),
}

/// Angles within this distance of +-pi/2 are the pi/2 extension; this
/// admits the ten-digit literal 1.5707963268.
const ANGLE_SNAP: f64 = 1e-10;

pub(crate) fn normalize_angle(a: f64) -> Result<f64> {
    if !a.is_finite() {
        return Err(Error::Config(format!("extension angle {a} is not finite")));
    }
    if (a - FRAC_PI_2).abs() <= ANGLE_SNAP || (a + FRAC_PI_2).abs() <= ANGLE_SNAP {
        return Ok(FRAC_PI_2);
    }
    if a <= -FRAC_PI_2 || a > FRAC_PI_2 {
        return Err(Error::Config(format!("extension angle {a} outside (-pi/2, pi/2]")));
    }
    Ok(a)
}

impl OscillatorConfig {
    pub fn new(r: f64, q: f64, m: i32) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Config(format!("radius R = {r} must be positive")));
        }
        if !q.is_finite() {
            return Err(Error::Config("coupling q must be finite".into()));
        }
        Ok(OscillatorConfig { r, q, m, theta: FRAC_PI_2 })
    }

    pub fn with_theta(mut self, theta: f64) -> Result<Self> {
        self.theta = normalize_angle(theta)?;
        Ok(self)
    }

    pub fn sigma(&self) -> Complex {
        if self.q >= 0.0 {
            Complex::new(self.q.sqrt() / 4.0, 0.0)
        } else {
            Complex::new(0.0, (-self.q).sqrt() / 4.0)
        }
    }

    /// Threshold coupling q_{m,k} = 4 N_{m,k}^2.
    pub fn resonant_q(m: i32, k: u32) -> f64 {
        let n = 1.0 + m.unsigned_abs() as f64 + 2.0 * k as f64;
        4.0 * n * n
    }
}

impl RadialProblem for OscillatorConfig {
    fn outer(&self) -> f64 {
        self.r
    }

    fn k(&self) -> usize {
        self.m.unsigned_abs() as usize
    }

    fn exponents(&self, big_w: Complex) -> Exponents {
        let nu = branch_sqrt(self.q - self.r * self.r * big_w) / 4.0;
        Exponents { k: self.k(), nu, sigma: self.sigma() }
    }

    fn exponents_at_nu(&self, nu: f64) -> Exponents {
        Exponents { k: self.k(), nu: Complex::new(nu, 0.0), sigma: self.sigma() }
    }

    fn energy_at_nu(&self, nu: f64) -> f64 {
        (self.q - 16.0 * nu * nu) / (self.r * self.r)
    }

    fn reduced(&self, big_w: Complex) -> Complex {
        self.r * self.r * big_w
    }

    fn pole_nu(&self, n: usize) -> Option<f64> {
        if self.q < 0.0 {
            return None;
        }
        let big_n = 1.0 + self.k() as f64 + 2.0 * n as f64;
        Some((self.q.sqrt() - 2.0 * big_n) / 4.0)
    }

    fn threshold(&self) -> f64 {
        self.q / (self.r * self.r)
    }

    fn energy_derivatives(&self, e: &Exponents) -> (Complex, Complex) {
        (-self.r * self.r / (32.0 * e.nu), Complex::new(0.0, 0.0))
    }

    fn point(&self, r: f64, delta: f64) -> Point {
        let rr = self.r * self.r;
        let diff = delta * (self.r + r); // R^2 - r^2
        let sum = rr + r * r;
        let x = 4.0 * rr * r * r / (sum * sum);
        let omx = (diff / sum).powi(2);
        let dx = 8.0 * rr * r * diff / (sum * sum * sum);
        let pref = rr * r.sqrt() / diff;
        let dpref = pref * (0.5 / r + 2.0 * r / diff);
        Point { x, omx, dx, pref, dpref }
    }

    fn half_point(&self) -> f64 {
        self.r * (SQRT_2 - 1.0)
    }

    fn p0(&self, r: f64) -> f64 {
        let rr = self.r * self.r;
        (rr - r * r).powi(2) / (rr * rr)
    }

    fn potential(&self, r: f64) -> f64 {
        let rr = self.r * self.r;
        let m2 = (self.m as f64).powi(2);
        let r2 = r * r;
        (10.0 * rr * r2 - 9.0 * r2 * r2 - rr * rr + 4.0 * m2 * (rr - r2).powi(2)) / (4.0 * rr * rr * r2)
            + 4.0 * (self.q - 1.0) * r2 / (rr + r2).powi(2)
    }

    fn wronskian_factor(&self) -> f64 {
        2.0
    }

    fn extension(&self) -> Extension {
        if self.m == 0 {
            Extension::Theta(self.theta)
        } else {
            Extension::Unique
        }
    }

    fn ladder_weight2(&self, e: &Exponents, _big_n: i64) -> f64 {
        let (a, _) = e.calligraphic_a();
        let sign = if e.k % 2 == 0 { 1.0 } else { -1.0 };
        let g1: f64 = (1..=e.k).map(|i| i as f64).product();
        16.0 * sign * a.re * e.nu.re / (self.r * self.r * g1 * g1)
    }
}

pub fn spectral_params(cfg: &OscillatorConfig, big_w: Complex) -> SpectralParams {
    spectral::spectral_params(cfg, big_w)
}

pub fn basis_eval(cfg: &OscillatorConfig, big_w: Complex, r: f64) -> Result<BasisValues> {
    spectral::basis_eval(cfg, big_w, r)
}

pub fn connection_coeffs(cfg: &OscillatorConfig, big_w: Complex) -> Result<ConnectionCoeffs> {
    spectral::connection_coeffs(cfg, big_w)
}

/// Omega(W) of the Green function.
pub fn omega_big(cfg: &OscillatorConfig, big_w: Complex) -> Result<Complex> {
    spectral::omega(cfg, big_w)
}

pub fn spectral_density(cfg: &OscillatorConfig, e: f64) -> Result<f64> {
    spectral::spectral_density(cfg, e)
}

pub fn discrete_levels(cfg: &OscillatorConfig) -> Result<Spectrum> {
    spectral::discrete_levels(cfg)
}

pub fn level_weight(cfg: &OscillatorConfig, level: &Level) -> Result<f64> {
    spectral::level_weight(cfg, level)
}

pub fn eigenfunction(cfg: &OscillatorConfig, state: State, r: f64) -> Result<f64> {
    match state {
        State::Bound(l) => spectral::bound_state(cfg, &l, r),
        State::Continuum(e) => spectral::continuum_state(cfg, e, r),
    }
}

/// Critical angle theta_0 of the m = 0 family.
pub fn theta_critical(cfg: &OscillatorConfig) -> Result<f64> {
    if cfg.m != 0 {
        return Err(Error::Config("theta_critical needs m = 0".into()));
    }
    spectral::critical_angle(cfg)
}
