//! Hypergeometric building blocks shared by both radial problems.
//!
//! In either geometry the three solutions are `P(s) * Phi_j(x(s))` with
//!
//! ```text
//! Phi_1 = x^mu (1-x)^(1/4+nu) F(a1, b1; 1+k; x)
//! Phi_3 = x^mu (1-x)^(1/4+nu) F(a1, b1; 1+2nu; 1-x)
//! Phi_4 = x^mu (1-x)^(1/4+nu) phi_2(x)
//! ```
//!
//! where `phi_2` is the logarithmic second solution at `x = 0`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::specfun::{
    digamma, falling_jet, gamma, gauss_2f1_jet, gauss_2f1_second_jet, polygamma, rgamma,
    rgamma_psi, Complex, EULER_GAMMA,
};

/// A value with its derivative along the radial variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jet {
    pub v: Complex,
    pub d: Complex,
}

impl Jet {
    pub fn new(v: Complex, d: Complex) -> Self {
        Jet { v, d }
    }

    pub fn scale(self, s: Complex) -> Self {
        Jet::new(self.v * s, self.d * s)
    }

    pub fn add(self, o: Jet) -> Self {
        Jet::new(self.v + o.v, self.d + o.d)
    }
}

/// Wronskian `p0 (u v' - v u')`.
pub fn wronskian(p0: f64, u: Jet, v: Jet) -> Complex {
    p0 * (u.v * v.d - v.v * u.d)
}

/// The exponent data (k = |m|, nu, sigma) that fixes every parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponents {
    pub k: usize,
    pub nu: Complex,
    pub sigma: Complex,
}

/// Every derived parameter at one energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralParams {
    pub big_w: Complex,
    pub w: Complex,
    pub mu: f64,
    pub nu: Complex,
    pub sigma: Complex,
    pub alpha1: Complex,
    pub alpha2: Complex,
    pub alpha4: Complex,
    pub beta1: Complex,
    pub beta2: Complex,
    pub beta4: Complex,
    pub gamma1: f64,
    pub gamma3: Complex,
    pub gamma4: Complex,
}

/// Connection data at one energy: `O3 = b O1 + c O4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConnectionCoeffs {
    /// prod_{i=1..k} (a1 - i)(b1 - i)
    pub calligraphic_a: Complex,
    pub b: Complex,
    /// For k >= 1 this is Gamma(1+2nu) Gamma(k) / Gamma(a1) Gamma(b1); for k = 0 it is -C0.
    pub c: Complex,
    /// Gamma(1+2nu) / Gamma(a1) Gamma(b1)
    pub c0: Complex,
    /// Set when b1 sits on a nonpositive integer.
    pub pole: bool,
}

impl Exponents {
    pub fn mu(&self) -> f64 {
        self.k as f64 / 2.0
    }

    pub fn alpha1(&self) -> Complex {
        0.5 + self.mu() + self.nu + self.sigma
    }

    pub fn beta1(&self) -> Complex {
        0.5 + self.mu() + self.nu - self.sigma
    }

    pub fn gamma1(&self) -> f64 {
        1.0 + self.k as f64
    }

    pub fn params(&self, big_w: Complex, w: Complex) -> SpectralParams {
        let k = self.k as f64;
        let mu = self.mu();
        SpectralParams {
            big_w,
            w,
            mu,
            nu: self.nu,
            sigma: self.sigma,
            alpha1: self.alpha1(),
            alpha2: self.alpha1() - k,
            alpha4: 0.5 + mu - self.nu + self.sigma,
            beta1: self.beta1(),
            beta2: self.beta1() - k,
            beta4: 0.5 + mu - self.nu - self.sigma,
            gamma1: 1.0 + k,
            gamma3: 1.0 + 2.0 * self.nu,
            gamma4: 1.0 - 2.0 * self.nu,
        }
    }

    /// The polynomial prod (a1 - i)(b1 - i) and its a-plus-b derivative
    /// `P_a' P_b + P_a P_b'`.
    pub fn calligraphic_a(&self) -> (Complex, Complex) {
        let (pa, dpa) = falling_jet(self.alpha1(), self.k);
        let (pb, dpb) = falling_jet(self.beta1(), self.k);
        (pa * pb, dpa * pb + pa * dpb)
    }

    /// `Gamma(a1) Gamma(b1) / Gamma(a2) Gamma(b2)` through gamma functions;
    /// only a cross-check of the polynomial form.
    pub fn calligraphic_a_by_gamma(&self) -> Result<Complex> {
        let k = self.k as f64;
        let (a, b) = (self.alpha1(), self.beta1());
        Ok(gamma(a)? * gamma(b)? * rgamma(a - k) * rgamma(b - k))
    }

    pub fn beta1_pole(&self) -> bool {
        let b = self.beta1();
        b.im.abs() < 1e-12 && b.re < 0.5 && (b.re - b.re.round()).abs() < 1e-12
    }

    pub fn connection(&self) -> Result<ConnectionCoeffs> {
        let (a, b) = (self.alpha1(), self.beta1());
        let (cal_a, dcal_a) = self.calligraphic_a();
        let g3 = gamma(1.0 + 2.0 * self.nu)?;
        let (ra, rb) = (rgamma(a), rgamma(b));
        let c0 = g3 * ra * rb;
        let pole = self.beta1_pole();
        if self.k == 0 {
            // f0 C0 written with psi/Gamma so that it stays finite at poles.
            let b0 = g3 * (2.0 * (-EULER_GAMMA) * ra * rb - rgamma_psi(a) * rb - ra * rgamma_psi(b));
            return Ok(ConnectionCoeffs { calligraphic_a: cal_a, b: b0, c: -c0, c0, pole });
        }
        let sign = if self.k % 2 == 0 { -1.0 } else { 1.0 };
        let gk = gamma(Complex::new(self.k as f64, 0.0))?;
        let inner = 2.0 * cal_a * (rgamma_psi(a) * rb + ra * rgamma_psi(b)) - dcal_a * ra * rb;
        let b_coef = sign * g3 / (2.0 * gamma(Complex::new(self.gamma1(), 0.0))?) * inner;
        Ok(ConnectionCoeffs { calligraphic_a: cal_a, b: b_coef, c: gk * c0, c0, pole })
    }

    /// `2 A (psi(a1) + psi(b1)) - (P_a' P_b + P_a P_b')`, the combination
    /// carrying the Green-function singularities for k >= 1. Returned as the
    /// digamma part and the polynomial part.
    pub fn psi_combination(&self) -> Result<(Complex, Complex)> {
        let (cal_a, dcal_a) = self.calligraphic_a();
        let s = digamma(self.alpha1())? + digamma(self.beta1())?;
        Ok((2.0 * cal_a * s, -dcal_a))
    }

    /// `f0 = 2 psi(1) - psi(a1) - psi(b1)` (k = 0 channels).
    pub fn f0(&self) -> Result<Complex> {
        Ok(-2.0 * EULER_GAMMA - digamma(self.alpha1())? - digamma(self.beta1())?)
    }

    /// `f1 = A1 (psi(a1) + psi(b1)) - nu` with `A1 = nu^2 - sigma^2` (k = 1 channels).
    pub fn f1(&self) -> Result<Complex> {
        let a1 = self.nu * self.nu - self.sigma * self.sigma;
        Ok(a1 * (digamma(self.alpha1())? + digamma(self.beta1())?) - self.nu)
    }

    /// d f0 / dE and d f1 / dE given dnu/dE and sigma dsigma/dE.
    pub fn df_de(&self, dnu: Complex, sig_dsig: Complex) -> Result<Complex> {
        let (a, b) = (self.alpha1(), self.beta1());
        let (ta, tb) = (polygamma(1, a)?, polygamma(1, b)?);
        // sigma' (psi'(a) - psi'(b)), regular as sigma -> 0
        let odd = if self.sigma.norm() < 1e-6 {
            sig_dsig * 2.0 * polygamma(2, 0.5 + self.mu() + self.nu)?
        } else {
            sig_dsig / self.sigma * (ta - tb)
        };
        let even = dnu * (ta + tb);
        match self.k {
            0 => Ok(-(even + odd)),
            1 => {
                let a1 = self.nu * self.nu - self.sigma * self.sigma;
                let da1 = 2.0 * (self.nu * dnu - sig_dsig);
                let s = digamma(a)? + digamma(b)?;
                Ok(da1 * s + a1 * (even + odd) - dnu)
            }
            _ => Err(crate::Error::Domain("extension function needs k <= 1".into())),
        }
    }

    fn envelope(&self, x: f64, omx: f64) -> (Complex, Complex) {
        // x^mu (1-x)^(1/4+nu) and its logarithmic x-derivative
        let mu = self.mu();
        let s = 0.25 + self.nu;
        let e = (s * omx.ln()).exp() * x.powf(mu);
        (e, mu / x - s / omx)
    }

    pub fn phi1(&self, x: f64, omx: f64) -> Result<Jet> {
        let (f, df) = gauss_2f1_jet(self.alpha1(), self.beta1(), Complex::new(self.gamma1(), 0.0), x, omx)?;
        let (e, dl) = self.envelope(x, omx);
        Ok(Jet::new(e * f, e * (f * dl + df)))
    }

    pub fn phi3(&self, x: f64, omx: f64) -> Result<Jet> {
        let (f, df) = gauss_2f1_jet(self.alpha1(), self.beta1(), 1.0 + 2.0 * self.nu, omx, x)?;
        let (e, dl) = self.envelope(x, omx);
        Ok(Jet::new(e * f, e * (f * dl - df)))
    }

    pub fn phi4(&self, x: f64, omx: f64) -> Result<Jet> {
        let (f, df) = gauss_2f1_second_jet(self.alpha1(), self.beta1(), self.k, x, omx)?;
        let (e, dl) = self.envelope(x, omx);
        Ok(Jet::new(e * f, e * (f * dl + df)))
    }
}

/// Map from the radial variable to the hypergeometric argument together with
/// the common prefactor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub omx: f64,
    pub dx: f64,
    pub pref: f64,
    pub dpref: f64,
}

impl Point {
    pub fn lift(&self, phi: Jet) -> Jet {
        Jet::new(self.pref * phi.v, self.dpref * phi.v + self.pref * self.dx * phi.d)
    }
}
