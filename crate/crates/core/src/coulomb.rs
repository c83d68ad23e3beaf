//! Coulomb-like radial problem on (0, R_C), potential `g (R_C + rho)^2 / (R_C^2 rho)`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::channel::{ConnectionCoeffs, Exponents, Point, SpectralParams};
use crate::error::{Error, Result};
use crate::oscillator::{normalize_angle, State};
use crate::specfun::{branch_sqrt, Complex};
use crate::spectral::{self, BasisValues, Extension, Level, RadialProblem, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoulombConfig {
    pub rc: f64,
    pub g: f64,
    pub m: i32,
    /// Extension angle of the m = +1 channel.
    pub zeta_plus: f64,
    /// Extension angle of the m = -1 channel.
    pub zeta_minus: f64,
    /// Extension angle of the m = 0 channel.
    pub theta: f64,
}

/// Coupling g_{m,k} at which a level sits exactly on the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingThreshold {
    pub g: f64,
    #[serde(rename = "N")]
    pub big_n: u32,
}

impl CouplingThreshold {
    pub fn new(rc: f64, m: i32, k: u32) -> Self {
        let big_n = 1 + m.unsigned_abs() + 2 * k;
        CouplingThreshold { g: -((big_n * big_n) as f64) / rc, big_n }
    }
}

impl CoulombConfig {
    pub fn new(rc: f64, g: f64, m: i32) -> Result<Self> {
        if !(rc > 0.0 && rc.is_finite()) {
            return Err(Error::Config(format!("radius R_C = {rc} must be positive")));
        }
        if !g.is_finite() {
            return Err(Error::Config("coupling g must be finite".into()));
        }
        Ok(CoulombConfig { rc, g, m, zeta_plus: FRAC_PI_2, zeta_minus: FRAC_PI_2, theta: FRAC_PI_2 })
    }

    /// Sets both |m| = 1 angles.
    pub fn with_zeta(self, zeta: f64) -> Result<Self> {
        self.with_zetas(zeta, zeta)
    }

    pub fn with_zetas(mut self, plus: f64, minus: f64) -> Result<Self> {
        self.zeta_plus = normalize_angle(plus)?;
        self.zeta_minus = normalize_angle(minus)?;
        Ok(self)
    }

    pub fn with_theta(mut self, theta: f64) -> Result<Self> {
        self.theta = normalize_angle(theta)?;
        Ok(self)
    }

    fn zeta(&self) -> f64 {
        if self.m >= 0 {
            self.zeta_plus
        } else {
            self.zeta_minus
        }
    }

    /// W_0 = (1 + 4 R_C g)/R_C^2, bottom of the continuum.
    pub fn continuum_edge(&self) -> f64 {
        (1.0 + 4.0 * self.rc * self.g) / (self.rc * self.rc)
    }
}

impl RadialProblem for CoulombConfig {
    fn outer(&self) -> f64 {
        self.rc
    }

    fn k(&self) -> usize {
        self.m.unsigned_abs() as usize
    }

    fn exponents(&self, big_w: Complex) -> Exponents {
        let w = self.reduced(big_w);
        let nu = branch_sqrt(1.0 + 4.0 * self.rc * self.g - w) / 4.0;
        let sigma = branch_sqrt(1.0 - w) / 4.0;
        Exponents { k: self.k(), nu, sigma }
    }

    fn exponents_at_nu(&self, nu: f64) -> Exponents {
        let sigma = branch_sqrt(Complex::new(16.0 * nu * nu - 4.0 * self.rc * self.g, 0.0)) / 4.0;
        Exponents { k: self.k(), nu: Complex::new(nu, 0.0), sigma }
    }

    fn energy_at_nu(&self, nu: f64) -> f64 {
        (1.0 + 4.0 * self.rc * self.g - 16.0 * nu * nu) / (self.rc * self.rc)
    }

    fn reduced(&self, big_w: Complex) -> Complex {
        self.rc * self.rc * big_w
    }

    fn pole_nu(&self, n: usize) -> Option<f64> {
        if self.g >= 0.0 {
            return None;
        }
        let big_n = 1.0 + self.k() as f64 + 2.0 * n as f64;
        Some((self.rc * (-self.g) / big_n - big_n) / 4.0)
    }

    fn threshold(&self) -> f64 {
        self.continuum_edge()
    }

    fn energy_derivatives(&self, e: &Exponents) -> (Complex, Complex) {
        let rr = self.rc * self.rc;
        (-rr / (32.0 * e.nu), Complex::new(-rr / 32.0, 0.0))
    }

    fn point(&self, rho: f64, delta: f64) -> Point {
        let rc = self.rc;
        let sum = rc + rho;
        let x = 4.0 * rc * rho / (sum * sum);
        let omx = (delta / sum).powi(2);
        let dx = 4.0 * rc * delta / (sum * sum * sum);
        let diff = delta * sum; // R_C^2 - rho^2
        let pref = rc * rc * rho.sqrt() / diff;
        let dpref = pref * (0.5 / rho + 2.0 * rho / diff);
        Point { x, omx, dx, pref, dpref }
    }

    fn half_point(&self) -> f64 {
        self.rc * (3.0 - 2.0 * std::f64::consts::SQRT_2)
    }

    fn p0(&self, rho: f64) -> f64 {
        let rr = self.rc * self.rc;
        (rr - rho * rho).powi(2) / (rr * rr)
    }

    fn potential(&self, rho: f64) -> f64 {
        let rr = self.rc * self.rc;
        let m2 = (self.m as f64).powi(2);
        let p2 = rho * rho;
        (10.0 * rr * p2 - 9.0 * p2 * p2 - rr * rr + m2 * (rr - p2).powi(2)) / (4.0 * rr * rr * p2)
            + self.g * (self.rc + rho).powi(2) / (rr * rho)
    }

    fn wronskian_factor(&self) -> f64 {
        1.0
    }

    fn extension(&self) -> Extension {
        match self.k() {
            0 => Extension::Theta(self.theta),
            1 => Extension::Zeta(self.zeta()),
            _ => Extension::Unique,
        }
    }

    fn ladder_weight2(&self, e: &Exponents, big_n: i64) -> f64 {
        let (a, _) = e.calligraphic_a();
        let sign = if e.k % 2 == 0 { 1.0 } else { -1.0 };
        let g1: f64 = (1..=e.k).map(|i| i as f64).product();
        let n = big_n as f64;
        let rg = self.rc * self.g;
        4.0 * sign * a.re * (rg * rg - n.powi(4)) / (g1 * g1 * n.powi(3) * self.rc * self.rc)
    }
}

pub fn coulomb_params(cfg: &CoulombConfig, big_w: Complex) -> SpectralParams {
    spectral::spectral_params(cfg, big_w)
}

pub fn coulomb_basis_eval(cfg: &CoulombConfig, big_w: Complex, rho: f64) -> Result<BasisValues> {
    spectral::basis_eval(cfg, big_w, rho)
}

pub fn connection_coeffs(cfg: &CoulombConfig, big_w: Complex) -> Result<ConnectionCoeffs> {
    spectral::connection_coeffs(cfg, big_w)
}

/// f1(W) of the |m| = 1 channel.
pub fn f1_eval(cfg: &CoulombConfig, big_w: Complex) -> Result<Complex> {
    if cfg.k() != 1 {
        return Err(Error::Config("f1 needs |m| = 1".into()));
    }
    cfg.exponents(big_w).f1()
}

pub fn omega_big(cfg: &CoulombConfig, big_w: Complex) -> Result<Complex> {
    spectral::omega(cfg, big_w)
}

pub fn coulomb_spectral_density(cfg: &CoulombConfig, e: f64) -> Result<f64> {
    spectral::spectral_density(cfg, e)
}

pub fn coulomb_discrete_levels(cfg: &CoulombConfig) -> Result<Spectrum> {
    spectral::discrete_levels(cfg)
}

pub fn coulomb_level_weight(cfg: &CoulombConfig, level: &Level) -> Result<f64> {
    spectral::level_weight(cfg, level)
}

pub fn coulomb_eigenfunction(cfg: &CoulombConfig, state: State, rho: f64) -> Result<f64> {
    match state {
        State::Bound(l) => spectral::bound_state(cfg, &l, rho),
        State::Continuum(e) => spectral::continuum_state(cfg, e, rho),
    }
}

/// zeta_1: crossing it adds or removes one level of the |m| = 1 family.
pub fn zeta_critical(cfg: &CoulombConfig) -> Result<f64> {
    if cfg.k() != 1 {
        return Err(Error::Config("zeta_critical needs |m| = 1".into()));
    }
    spectral::critical_angle(cfg)
}

/// theta_0 of the m = 0 family.
pub fn theta_critical_c(cfg: &CoulombConfig) -> Result<f64> {
    if cfg.m != 0 {
        return Err(Error::Config("theta_critical_c needs m = 0".into()));
    }
    spectral::critical_angle(cfg)
}
