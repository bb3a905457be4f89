//! Parameter sweeps over the trapping distance, CSV export and a gnuplot
//! script for J versus L.

use std::io::{Read, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coupling::{
    classical_direct_interaction, coupling_asymptotic, level_shifts_quadrature, CouplingResult,
    Method, QuadratureSettings,
};
use crate::error::{Error, Result};
use crate::potential::{alpha, CLASSICAL_ALPHA};
use crate::trap::TrapConfig;
use crate::units::CODATA_2018;

pub const CSV_COLUMNS: [&str; 10] = [
    "species",
    "omega_xy",
    "omega_z",
    "omega_perp",
    "L",
    "alpha",
    "J_over_hbar",
    "U_over_hbar",
    "A",
    "method",
];

/// `min:max:points[:log|:lin]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRange {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub log: bool,
}

impl SweepRange {
    pub fn new(min: f64, max: f64, points: usize, log: bool) -> Result<Self> {
        if points < 2 {
            return Err(Error::invalid("points", "a sweep needs at least 2 points"));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::invalid(
                "range",
                format!("need min < max, got {min} .. {max}"),
            ));
        }
        if log && !(min > 0.0) {
            return Err(Error::invalid(
                "range",
                "log sweep needs a positive minimum",
            ));
        }
        Ok(Self {
            min,
            max,
            points,
            log,
        })
    }

    /// Parses `min:max:points[:log|:lin]`, reading the bounds with `value`.
    pub fn parse(text: &str, value: impl Fn(&str) -> Result<f64>) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(Error::invalid(
                "range",
                format!("`{text}` is not min:max:points[:log|:lin]"),
            ));
        }
        let points = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::invalid("points", format!("`{}` is not a count", parts[2])))?;
        let log = match parts.get(3).map(|s| s.trim()) {
            None | Some("lin") | Some("linear") => false,
            Some("log") => true,
            Some(other) => {
                return Err(Error::invalid(
                    "range",
                    format!("spacing `{other}` is not log or lin"),
                ))
            }
        };
        Self::new(value(parts[0])?, value(parts[1])?, points, log)
    }

    /// Strictly increasing sample values with exact end points.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points - 1;
        (0..=n)
            .map(|i| {
                if i == n {
                    return self.max;
                }
                let t = i as f64 / n as f64;
                if self.log {
                    self.min * (self.max / self.min).powf(t)
                } else {
                    self.min + (self.max - self.min) * t
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub species: String,
    pub omega_xy: f64,
    pub omega_z: f64,
    pub omega_perp: f64,
    #[serde(rename = "L")]
    pub length: f64,
    pub alpha: f64,
    #[serde(rename = "J_over_hbar")]
    pub j_over_hbar: f64,
    #[serde(rename = "U_over_hbar")]
    pub u_over_hbar: f64,
    #[serde(rename = "A")]
    pub a: f64,
    pub method: String,
}

/// Evaluates one trap with the requested method. Quadrature requests on
/// barrier-blocked traps fall back to the classical expression and say so
/// in the warnings.
pub fn evaluate(
    cfg: &TrapConfig,
    method: Method,
    settings: &QuadratureSettings,
) -> Result<CouplingResult> {
    match method {
        Method::Asymptotic => coupling_asymptotic(cfg),
        Method::Classical => classical_direct_interaction(cfg),
        Method::Quadrature => {
            let a = alpha(cfg);
            if a < CLASSICAL_ALPHA {
                let mut r = classical_direct_interaction(cfg)?;
                r.warnings.push(format!(
                    "alpha = {a:.4} < {CLASSICAL_ALPHA}: ions are barrier-blocked, switched from quadrature to classical"
                ));
                return Ok(r);
            }
            level_shifts_quadrature(cfg, settings)
        }
    }
}

pub fn row_for(cfg: &TrapConfig, r: &CouplingResult) -> SweepRow {
    let hbar = CODATA_2018.hbar;
    SweepRow {
        species: cfg.species.name.clone(),
        omega_xy: cfg.omega_xy,
        omega_z: cfg.omega_z,
        omega_perp: cfg.omega_perp(),
        length: cfg.length,
        alpha: alpha(cfg),
        j_over_hbar: r.exchange_j / hbar,
        u_over_hbar: r.direct_u / hbar,
        a: r.interference_a,
        method: r.method.as_str().to_string(),
    }
}

/// Evaluates every length in parallel; rows come back in input order.
pub fn run_sweep(
    base: &TrapConfig,
    lengths: &[f64],
    method: Method,
    settings: &QuadratureSettings,
) -> Result<Vec<SweepRow>> {
    lengths
        .par_iter()
        .map(|&l| {
            let cfg = base.with_length(l)?;
            let r = evaluate(&cfg, method, settings)?;
            Ok(row_for(&cfg, &r))
        })
        .collect()
}

fn csv_error(e: csv::Error) -> Error {
    Error::Config(format!("csv: {e}"))
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(CSV_COLUMNS).map_err(csv_error)?;
    }
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::Config(format!("csv: {e}")))?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize().map(|row| row.map_err(csv_error)).collect()
}

/// Gnuplot script plotting `J/hbar` against L on log-log axes from `csv_path`.
pub fn gnuplot_script(csv_path: &Path, image_path: &Path) -> String {
    let j_col = CSV_COLUMNS
        .iter()
        .position(|c| *c == "J_over_hbar")
        .unwrap()
        + 1;
    let l_col = CSV_COLUMNS.iter().position(|c| *c == "L").unwrap() + 1;
    format!(
        "set datafile separator ','\n\
         set key autotitle columnhead\n\
         set logscale xy\n\
         set xlabel 'L (m)'\n\
         set ylabel 'J / hbar (rad/s)'\n\
         set grid\n\
         set terminal pngcairo size 900,600\n\
         set output '{}'\n\
         plot '{}' using {l_col}:{j_col} with linespoints title 'J / hbar'\n",
        image_path.display(),
        csv_path.display(),
    )
}
