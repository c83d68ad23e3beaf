//! Map between the oscillator problem on (0, R) and the Coulomb problem on
//! (0, R_C) with `rho = kappa0 r^2` and `R_C = kappa0 R^2`.
//!
//! Under the map `x_C(rho) = x_O(r)`, the parameters satisfy
//! `W_O = -4 kappa0 g` and `R_C^2 W_C = 1 - q`, and solutions are related by
//! `C(rho) = A(rho) O(r)`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::coulomb::CoulombConfig;
use crate::error::{Error, Result};
use crate::oscillator::OscillatorConfig;
use crate::specfun::Complex;
use crate::spectral::{discrete_levels, spectral_params, RadialProblem};

/// Index pairing used throughout the verifier.
pub const PAIRING_NOTE: &str =
    "assumes the oscillator index m pairs with the Coulomb index m (m <-> m); the angular factors are not compared";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityMap {
    pub kappa0: f64,
    pub r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPointO {
    pub q: f64,
    #[serde(rename = "E")]
    pub e: f64,
    pub m: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPointC {
    pub g: f64,
    #[serde(rename = "E")]
    pub e: f64,
    pub m: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Oscillator value at r to Coulomb value at rho(r).
    OscillatorToCoulomb,
    /// Coulomb value at rho to oscillator value at r(rho).
    CoulombToOscillator,
}

impl DualityMap {
    pub fn new(kappa0: f64, r: f64) -> Result<Self> {
        if !(kappa0 > 0.0 && kappa0.is_finite()) {
            return Err(Error::Config(format!("kappa0 = {kappa0} must be positive")));
        }
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Config(format!("radius R = {r} must be positive")));
        }
        Ok(DualityMap { kappa0, r })
    }

    pub fn rc(&self) -> f64 {
        self.kappa0 * self.r * self.r
    }

    pub fn rho_of_r(&self, r: f64) -> f64 {
        self.kappa0 * r * r
    }

    pub fn r_of_rho(&self, rho: f64) -> f64 {
        (rho / self.kappa0).sqrt()
    }

    /// A(rho) in C = A O.
    pub fn a_factor(&self, rho: f64) -> f64 {
        let rc = self.rc();
        rc * (self.kappa0 * rho).powf(0.25) / (rc + rho)
    }

    /// B(r) in O = B C.
    pub fn b_factor(&self, r: f64) -> f64 {
        let rr = self.r * self.r;
        (rr + r * r) / (rr * (self.kappa0 * r).sqrt())
    }

    /// The Coulomb problem that an oscillator point maps into.
    pub fn coulomb_config(&self, p: SpectralPointO, theta: f64) -> Result<CoulombConfig> {
        let c = map_o2c(self, p);
        CoulombConfig::new(self.rc(), c.g, c.m)?.with_theta(theta)?.with_zeta(FRAC_PI_2)
    }

    /// The oscillator problem that a Coulomb point maps into.
    pub fn oscillator_config(&self, p: SpectralPointC, theta: f64) -> Result<OscillatorConfig> {
        let o = map_c2o(self, p);
        OscillatorConfig::new(self.r, o.q, o.m)?.with_theta(theta)
    }
}

pub fn map_o2c(dm: &DualityMap, p: SpectralPointO) -> SpectralPointC {
    let rc = dm.rc();
    SpectralPointC { g: -p.e / (4.0 * dm.kappa0), e: (1.0 - p.q) / (rc * rc), m: p.m }
}

pub fn map_c2o(dm: &DualityMap, p: SpectralPointC) -> SpectralPointO {
    let rc = dm.rc();
    SpectralPointO { q: 1.0 - rc * rc * p.e, e: -4.0 * dm.kappa0 * p.g, m: p.m }
}

/// Transforms a solution value between the two problems. `point` is r for
/// the oscillator-to-Coulomb direction and rho for the other one.
pub fn wavefunction_transform(dm: &DualityMap, dir: Direction, point: f64, value: f64) -> Result<f64> {
    match dir {
        Direction::OscillatorToCoulomb => {
            if !(point > 0.0 && point < dm.r) {
                return Err(Error::Domain(format!("r = {point} outside (0, {})", dm.r)));
            }
            Ok(dm.a_factor(dm.rho_of_r(point)) * value)
        }
        Direction::CoulombToOscillator => {
            if !(point > 0.0 && point < dm.rc()) {
                return Err(Error::Domain(format!("rho = {point} outside (0, {})", dm.rc())));
            }
            Ok(dm.b_factor(dm.r_of_rho(point)) * value)
        }
    }
}

/// Largest difference among mu, nu, sigma, alpha1, beta1 of the two problems
/// at an oscillator point and its image. sigma is compared up to sign since
/// the two problems pick opposite branches for q < 0 (alpha1 and beta1 then
/// swap).
pub fn parameter_gap(dm: &DualityMap, p: SpectralPointO) -> Result<f64> {
    let osc = OscillatorConfig::new(dm.r, p.q, p.m)?;
    let c = map_o2c(dm, p);
    let coul = CoulombConfig::new(dm.rc(), c.g, c.m)?;
    let po = spectral_params(&osc, Complex::new(p.e, 0.0));
    let pc = spectral_params(&coul, Complex::new(c.e, 0.0));
    let sig = (po.sigma - pc.sigma).norm().min((po.sigma + pc.sigma).norm());
    let ab = ((po.alpha1 - pc.alpha1).norm().max((po.beta1 - pc.beta1).norm()))
        .min((po.alpha1 - pc.beta1).norm().max((po.beta1 - pc.alpha1).norm()));
    Ok([(po.mu - pc.mu).abs(), (po.nu - pc.nu).norm(), sig, ab].into_iter().fold(0.0, f64::max))
}

/// One level matched against the levels of the mapped problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BijectionRow {
    /// Level of the source problem.
    pub source: f64,
    /// Coupling of the mapped problem (g or q).
    pub coupling: f64,
    /// Image of the level.
    pub mapped: f64,
    /// Nearest level of the mapped problem, None if it has none.
    pub nearest: Option<f64>,
    pub mismatch: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub assumption: String,
    pub kappa0: f64,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "Rc")]
    pub rc: f64,
    pub q: f64,
    pub m: i32,
    pub theta: f64,
    /// False for generic m = 0 angles, where the table is informational.
    pub gated: bool,
    /// Oscillator levels mapped into Coulomb problems.
    pub forward: Vec<BijectionRow>,
    /// Levels of those Coulomb problems mapped back.
    pub backward: Vec<BijectionRow>,
    pub tolerance: f64,
    pub pass: bool,
}

const BIJECTION_TOL: f64 = 1e-9;

fn nearest(levels: &[f64], e: f64) -> (Option<f64>, f64) {
    levels.iter().map(|&l| (l, (l - e).abs())).fold((None, f64::INFINITY), |best, (l, d)| {
        if d < best.1 {
            (Some(l), d)
        } else {
            best
        }
    })
}

/// Maps every level of the oscillator channel into the Coulomb problem it
/// belongs to, finds the nearest Coulomb level there, then maps every level
/// of those Coulomb problems back. The oscillator radius is taken from `dm`.
pub fn verify_level_bijection(dm: &DualityMap, osc: &OscillatorConfig) -> Result<BijectionReport> {
    let osc = OscillatorConfig::new(dm.r, osc.q, osc.m)?.with_theta(osc.theta)?;
    let gated = osc.m != 0 || osc.extension().is_regular();
    let levels = discrete_levels(&osc)?;
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for l in &levels.levels {
        let c = map_o2c(dm, SpectralPointO { q: osc.q, e: l.e, m: osc.m });
        let coul = dm.coulomb_config(SpectralPointO { q: osc.q, e: l.e, m: osc.m }, osc.theta)?;
        let ce: Vec<f64> = discrete_levels(&coul)?.levels.iter().map(|x| x.e).collect();
        let (near, mis) = nearest(&ce, c.e);
        forward.push(BijectionRow { source: l.e, coupling: c.g, mapped: c.e, nearest: near, mismatch: mis });
        for &e in &ce {
            let o = map_c2o(dm, SpectralPointC { g: c.g, e, m: osc.m });
            let back = dm.oscillator_config(SpectralPointC { g: c.g, e, m: osc.m }, osc.theta)?;
            let oe: Vec<f64> = discrete_levels(&back)?.levels.iter().map(|x| x.e).collect();
            let (near, mis) = nearest(&oe, o.e);
            backward.push(BijectionRow { source: e, coupling: o.q, mapped: o.e, nearest: near, mismatch: mis });
        }
    }
    let ok = |r: &BijectionRow| r.mismatch < BIJECTION_TOL * (1.0 + r.mapped.abs());
    let pass = forward.iter().all(ok) && backward.iter().all(ok);
    Ok(BijectionReport {
        assumption: PAIRING_NOTE.to_string(),
        kappa0: dm.kappa0,
        r: dm.r,
        rc: dm.rc(),
        q: osc.q,
        m: osc.m,
        theta: osc.theta,
        gated,
        forward,
        backward,
        tolerance: BIJECTION_TOL,
        pass,
    })
}
