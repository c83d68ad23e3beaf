use std::f64::consts::{FRAC_PI_2, PI};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use psphere::coulomb::CoulombConfig;
use psphere::oscillator::OscillatorConfig;
use psphere::{Channel, Error, Result};

#[derive(Debug, Parser)]
#[command(name = "psphere", version, about = "Spectra of radial problems on the pseudosphere")]
pub struct Cli {
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Pass/fail tolerance for dual-check and oracle-check.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theory {
    Oscillator,
    Coulomb,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discrete levels and their weights.
    Levels(ChannelArgs),
    /// Spectral density samples on [emin, emax].
    Density {
        #[command(flatten)]
        ch: ChannelArgs,
        #[arg(long, allow_hyphen_values = true)]
        emin: f64,
        #[arg(long, allow_hyphen_values = true)]
        emax: f64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Normalized eigenfunction samples of a level or a continuum energy.
    Wavefunction {
        #[command(flatten)]
        ch: ChannelArgs,
        /// Position of the level in the energy-sorted list (0 = lowest).
        #[arg(long, conflicts_with = "energy")]
        level: Option<usize>,
        /// Continuum energy.
        #[arg(long, allow_hyphen_values = true)]
        energy: Option<f64>,
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
    /// Level bijection between an oscillator channel and its Coulomb images.
    DualCheck {
        #[command(flatten)]
        ch: ChannelArgs,
        #[arg(long, default_value_t = 1.0)]
        kappa0: f64,
    },
    /// Compare analytic levels with the finite-difference operator.
    OracleCheck {
        #[command(flatten)]
        ch: ChannelArgs,
        /// Grid sizes, ascending, each twice the last.
        #[arg(long, value_delimiter = ',', default_values_t = psphere::oracle::DEFAULT_GRIDS)]
        grids: Vec<usize>,
    },
    /// Levels along a grid of extension angles (theta for m = 0, zeta for
    /// Coulomb |m| = 1).
    Sweep {
        #[command(flatten)]
        ch: ChannelArgs,
        /// Number of angles; without --from/--to they are spread evenly
        /// inside (-pi/2, pi/2).
        #[arg(long, default_value_t = 41)]
        points: usize,
        /// First angle, included.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, requires = "to")]
        from: Option<f64>,
        /// Last angle, included.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, requires = "from")]
        to: Option<f64>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ChannelArgs {
    #[arg(long, value_enum, default_value_t = Theory::Oscillator)]
    pub theory: Theory,
    /// Oscillator radius (default 1).
    #[arg(long = "R")]
    pub r: Option<f64>,
    /// Coulomb radius (default 1).
    #[arg(long = "Rc")]
    pub rc: Option<f64>,
    /// Oscillator coupling.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    /// Coulomb coupling (negative is attractive).
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<f64>,
    /// Angular momentum index.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub m: i32,
    /// m = 0 extension angle in radians, or pi/2 style tokens (default pi/2).
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Coulomb |m| = 1 extension angle (default pi/2).
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub zeta: Option<f64>,
}

/// Radians, or `pi`, `pi/k`, `-pi/k`, `a*pi/k`.
pub fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    let t = s.trim().to_ascii_lowercase().replace(' ', "");
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.to_string(), b.parse::<f64>().map_err(|_| format!("bad angle '{s}'"))?),
        None => (t.clone(), 1.0),
    };
    let coef = match num.strip_suffix("pi") {
        Some("") | Some("+") => 1.0,
        Some("-") => -1.0,
        Some(c) => c.trim_end_matches('*').parse::<f64>().map_err(|_| format!("bad angle '{s}'"))?,
        None => return Err(format!("bad angle '{s}': use radians or pi/k")),
    };
    Ok(coef * PI / den)
}

impl ChannelArgs {
    pub fn channel(&self) -> Result<Channel> {
        let reject = |flag: &str, present: bool| {
            if present {
                Err(Error::Config(format!("--{flag} does not apply to the {:?} theory", self.theory).to_lowercase()))
            } else {
                Ok(())
            }
        };
        match self.theory {
            Theory::Oscillator => {
                reject("Rc", self.rc.is_some())?;
                reject("g", self.g.is_some())?;
                reject("zeta", self.zeta.is_some())?;
                let q = self.q.ok_or_else(|| Error::Config("the oscillator theory needs --q".into()))?;
                let c = OscillatorConfig::new(self.r.unwrap_or(1.0), q, self.m)?
                    .with_theta(self.theta.unwrap_or(FRAC_PI_2))?;
                Ok(Channel::Oscillator(c))
            }
            Theory::Coulomb => {
                reject("R", self.r.is_some())?;
                reject("q", self.q.is_some())?;
                let g = self.g.ok_or_else(|| Error::Config("the coulomb theory needs --g".into()))?;
                let c = CoulombConfig::new(self.rc.unwrap_or(1.0), g, self.m)?
                    .with_theta(self.theta.unwrap_or(FRAC_PI_2))?
                    .with_zeta(self.zeta.unwrap_or(FRAC_PI_2))?;
                Ok(Channel::Coulomb(c))
            }
        }
    }
}
