use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde_json::{json, Value};

use psphere::duality::{verify_level_bijection, DualityMap};
use psphere::oracle::crosscheck;
use psphere::spectral::{
    bound_state, continuum_state, critical_angle, discrete_levels, spectral_density, Extension,
};
use psphere::{Channel, Error, Level, RadialProblem, Result};

use crate::args::{ChannelArgs, Command};
use crate::render::{float, Table};

/// What a subcommand produced: the JSON data section, its CSV projection and
/// the command-specific part of the config echo.
pub struct Report {
    pub name: &'static str,
    pub config: Value,
    pub data: Value,
    pub table: Table,
}

pub fn run(cmd: &Command, tol: Option<f64>) -> Result<Report> {
    if let Some(t) = tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Config(format!("--tol {t} must be positive")));
        }
    }
    match cmd {
        Command::Levels(ch) => levels(ch),
        Command::Density { ch, emin, emax, samples } => density(ch, *emin, *emax, *samples),
        Command::Wavefunction { ch, level, energy, points } => wavefunction(ch, *level, *energy, *points),
        Command::DualCheck { ch, kappa0 } => dual_check(ch, *kappa0, tol),
        Command::OracleCheck { ch, grids } => oracle_check(ch, grids, tol),
        Command::Sweep { ch, points, from, to } => sweep(ch, *points, from.zip(*to)),
    }
}

fn level_row(l: &Level) -> Vec<String> {
    vec![l.n.to_string(), l.big_n.to_string(), float(l.e), float(l.q)]
}

fn channel_echo(ch: &Channel) -> Value {
    serde_json::to_value(ch).expect("channel serializes")
}

fn angle_family(ch: &Channel) -> Option<&'static str> {
    match ch.extension() {
        Extension::Theta(_) => Some("theta"),
        Extension::Zeta(_) => Some("zeta"),
        Extension::Unique => None,
    }
}

fn levels(args: &ChannelArgs) -> Result<Report> {
    let ch = args.channel()?;
    let s = discrete_levels(&ch)?;
    let mut table = Table::new(vec!["n", "N", "E", "Q"]);
    table.rows = s.levels.iter().map(level_row).collect();
    let mut data = json!({ "threshold": s.threshold, "levels": s.levels, "densitySamples": [] });
    if angle_family(&ch).is_some() {
        data["criticalAngle"] = json!(critical_angle(&ch)?);
    }
    Ok(Report { name: "levels", config: channel_echo(&ch), data, table })
}

fn density(args: &ChannelArgs, emin: f64, emax: f64, samples: usize) -> Result<Report> {
    let ch = args.channel()?;
    let thr = ch.threshold();
    if !(emin.is_finite() && emax.is_finite()) || emax < emin {
        return Err(Error::Config(format!("bad energy range [{emin}, {emax}]")));
    }
    if samples > 0 && emin <= thr + 1e-12 * (1.0 + thr.abs()) {
        return Err(Error::Config(format!("emin = {emin} must lie above the threshold {thr}")));
    }
    let grid: Vec<f64> = match samples {
        0 => vec![],
        1 => vec![emin],
        n => (0..n).map(|i| emin + (emax - emin) * i as f64 / (n - 1) as f64).collect(),
    };
    let values = grid.iter().map(|&e| spectral_density(&ch, e)).collect::<Result<Vec<f64>>>()?;
    let mut table = Table::new(vec!["E", "sigmaPrime"]);
    let mut pts = Vec::new();
    for (&e, &v) in grid.iter().zip(&values) {
        table.rows.push(vec![float(e), float(v)]);
        pts.push(json!({ "E": e, "sigmaPrime": v }));
    }
    let levels = discrete_levels(&ch)?.levels;
    let mut config = channel_echo(&ch);
    config["emin"] = json!(emin);
    config["emax"] = json!(emax);
    config["samples"] = json!(samples);
    let data = json!({ "threshold": thr, "levels": levels, "densitySamples": pts });
    Ok(Report { name: "density", config, data, table })
}

fn wavefunction(args: &ChannelArgs, level: Option<usize>, energy: Option<f64>, points: usize) -> Result<Report> {
    let ch = args.channel()?;
    let outer = ch.outer();
    let grid: Vec<f64> = (0..points).map(|i| outer * (i + 1) as f64 / (points + 1) as f64).collect();
    let coord = match ch {
        Channel::Oscillator(_) => "r",
        Channel::Coulomb(_) => "rho",
    };
    let (state, values) = match (level, energy) {
        (Some(i), None) => {
            let s = discrete_levels(&ch)?;
            let l = *s.levels.get(i).ok_or_else(|| {
                Error::Config(format!("level {i} requested but the channel has {} levels", s.levels.len()))
            })?;
            let v = grid.iter().map(|&x| bound_state(&ch, &l, x)).collect::<Result<Vec<f64>>>()?;
            (json!({ "kind": "bound", "level": l }), v)
        }
        (None, Some(e)) => {
            if !(e > ch.threshold()) {
                return Err(Error::Config(format!("continuum energy {e} must lie above the threshold {}", ch.threshold())));
            }
            let v = grid.iter().map(|&x| continuum_state(&ch, e, x)).collect::<Result<Vec<f64>>>()?;
            (json!({ "kind": "continuum", "E": e }), v)
        }
        _ => return Err(Error::Config("give exactly one of --level and --energy".into())),
    };
    let mut table = Table::new(vec![coord, "psi"]);
    let mut samples = Vec::new();
    for (&x, &v) in grid.iter().zip(&values) {
        table.rows.push(vec![float(x), float(v)]);
        samples.push(json!({ coord: x, "psi": v }));
    }
    let mut config = channel_echo(&ch);
    config["points"] = json!(points);
    Ok(Report { name: "wavefunction", config, data: json!({ "state": state, "samples": samples }), table })
}

fn dual_check(args: &ChannelArgs, kappa0: f64, tol: Option<f64>) -> Result<Report> {
    let cfg = match args.channel()? {
        Channel::Oscillator(c) => c,
        Channel::Coulomb(_) => {
            return Err(Error::Config("dual-check starts from the oscillator side; use --theory oscillator".into()))
        }
    };
    let dm = DualityMap::new(kappa0, cfg.r)?;
    let mut rep = verify_level_bijection(&dm, &cfg)?;
    if let Some(t) = tol {
        let ok = |r: &psphere::duality::BijectionRow| r.mismatch < t * (1.0 + r.mapped.abs());
        rep.tolerance = t;
        rep.pass = rep.forward.iter().all(ok) && rep.backward.iter().all(ok);
    }
    let mut table = Table::new(vec!["direction", "source", "coupling", "mapped", "nearest", "mismatch"]);
    for (dir, rows) in [("forward", &rep.forward), ("backward", &rep.backward)] {
        for r in rows {
            let near = r.nearest.map(float).unwrap_or_default();
            table.rows.push(vec![dir.into(), float(r.source), float(r.coupling), float(r.mapped), near, float(r.mismatch)]);
        }
    }
    let mut config = channel_echo(&Channel::Oscillator(cfg));
    config["kappa0"] = json!(kappa0);
    Ok(Report { name: "dual-check", config, data: serde_json::to_value(&rep).unwrap(), table })
}

fn oracle_check(args: &ChannelArgs, grids: &[usize], tol: Option<f64>) -> Result<Report> {
    let ch = args.channel()?;
    if grids.windows(2).any(|w| w[1] != 2 * w[0]) {
        return Err(Error::Config("grids must double at each step".into()));
    }
    let analytic: Vec<f64> = discrete_levels(&ch)?.levels.iter().map(|l| l.e).collect();
    let mut t = crosscheck(&ch, &analytic, grids)?;
    if let Some(tol) = tol {
        for r in &mut t.rows {
            r.pass = r.error < tol * (1.0 + r.analytic.abs());
        }
        t.pass = t.rows.iter().all(|r| r.pass) && t.count_below_threshold == t.analytic_count;
    }
    let mut table = Table::new(vec!["n", "analytic", "extrapolated", "error", "order", "pass"]);
    for (i, r) in t.rows.iter().enumerate() {
        table.rows.push(vec![
            i.to_string(),
            float(r.analytic),
            float(r.extrapolated),
            float(r.error),
            float(r.order),
            r.pass.to_string(),
        ]);
    }
    let mut config = channel_echo(&ch);
    config["grids"] = json!(grids);
    config["tolerance"] = json!(tol.unwrap_or(1e-3));
    Ok(Report { name: "oracle-check", config, data: serde_json::to_value(&t).unwrap(), table })
}

fn threads() -> Result<usize> {
    match std::env::var("PSPHERE_THREADS") {
        Err(_) => Ok(0),
        Ok(s) => s.trim().parse().map_err(|_| Error::Config(format!("PSPHERE_THREADS = '{s}' is not a count"))),
    }
}

fn sweep(args: &ChannelArgs, points: usize, range: Option<(f64, f64)>) -> Result<Report> {
    let ch = args.channel()?;
    let family = angle_family(&ch).ok_or_else(|| {
        Error::Config("this channel has a unique extension; sweeps need m = 0 or Coulomb |m| = 1".into())
    })?;
    let angles: Vec<f64> = match range {
        Some((a, b)) if points == 1 => vec![a.min(b)],
        Some((a, b)) => (0..points).map(|i| a + (b - a) * i as f64 / (points - 1) as f64).collect(),
        None => (0..points).map(|i| -FRAC_PI_2 + PI * (i + 1) as f64 / (points + 1) as f64).collect(),
    };
    let at = |a: f64| -> Result<Channel> {
        Ok(match ch {
            Channel::Oscillator(c) => Channel::Oscillator(c.with_theta(a)?),
            Channel::Coulomb(c) if family == "zeta" => Channel::Coulomb(c.with_zeta(a)?),
            Channel::Coulomb(c) => Channel::Coulomb(c.with_theta(a)?),
        })
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads()?)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let spectra: Vec<Result<Vec<Level>>> =
        pool.install(|| angles.par_iter().map(|&a| Ok(discrete_levels(&at(a)?)?.levels)).collect());
    let mut table = Table::new(vec![family, "n", "N", "E", "Q"]);
    let mut pts = Vec::new();
    for (&a, s) in angles.iter().zip(spectra) {
        let s = s?;
        for l in &s {
            let mut row = vec![float(a)];
            row.extend(level_row(l));
            table.rows.push(row);
        }
        pts.push(json!({ "angle": a, "levels": s }));
    }
    let mut config = channel_echo(&ch);
    config["points"] = json!(points);
    let data = json!({
        "angle": family,
        "criticalAngle": critical_angle(&ch)?,
        "threshold": ch.threshold(),
        "points": pts,
    });
    Ok(Report { name: "sweep", config, data, table })
}
