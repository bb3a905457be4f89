//! Brute-force tensor-grid evaluation of the level shifts.
//!
//! Both ion coordinates are sampled on a uniform grid and the two-particle
//! wave function `phi(z1) varphi(z2) +- varphi(z1) phi(z2)` is formed point by
//! point, so no analytic Gaussian reduction is used. The expectation value is
//! normalised by the same grid sum, averaged over the period with the
//! trapezoid rule and extrapolated in the spatial step.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{CouplingResult, Method};
use crate::error::{Error, Result};
use crate::potential::v_eff_reduced;
use crate::trap::{symmetrization_norms_reduced, TrapConfig};

/// Largest spatial grid (`N^2` pairs per time slice) the oracle will touch.
pub const MAX_GRID_PAIRS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BruteForceGrid {
    /// Coarsest spatial step, in z0.
    pub step: f64,
    /// Extra room beyond the turning points, in z0.
    pub margin: f64,
    /// Time samples per period; 0 picks `max(64, 16 L/z0)`.
    pub time_nodes: usize,
    /// Number of step halvings combined by Richardson extrapolation.
    pub levels: usize,
}

impl Default for BruteForceGrid {
    fn default() -> Self {
        Self {
            step: 0.125,
            margin: 7.0,
            time_nodes: 0,
            levels: 4,
        }
    }
}

/// Per-level raw values and the extrapolated result, reduced units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    /// `(step, V+, V-)` for each grid level, coarsest first.
    pub levels: Vec<(f64, f64, f64)>,
    pub v_plus: f64,
    pub v_minus: f64,
}

fn time_nodes_for(l: f64, requested: usize) -> usize {
    let n = if requested == 0 {
        (16.0 * l).ceil().max(64.0) as usize
    } else {
        requested
    };
    n.div_ceil(4) * 4
}

/// Period-averaged `V+-` on one grid, reduced units.
pub fn bruteforce_single_grid(
    l: f64,
    omega_perp: f64,
    step: f64,
    margin: f64,
    time_nodes: usize,
) -> Result<(f64, f64)> {
    if !(step > 0.0 && margin > 0.0 && l > 0.0) {
        return Err(Error::invalid(
            "grid",
            "step, margin and L must be positive",
        ));
    }
    let half_nodes = ((0.5 * l + margin) / step).ceil() as usize;
    let n = 2 * half_nodes + 1;
    if n.saturating_mul(n) > MAX_GRID_PAIRS {
        return Err(Error::ResourceLimit(format!(
            "{n}x{n} grid exceeds {MAX_GRID_PAIRS} pairs"
        )));
    }
    let z: Vec<f64> = (0..n)
        .map(|i| (i as f64 - half_nodes as f64) * step)
        .collect();
    let potential: Vec<f64> = (0..n)
        .map(|d| v_eff_reduced(d as f64 * step, omega_perp))
        .collect();
    let m = time_nodes_for(l, time_nodes);

    let slices: Vec<(f64, f64)> = (0..m)
        .into_par_iter()
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
            let x = 0.5 * l * theta.cos();
            let p = 0.5 * l * theta.sin();
            // phi sits at -x moving with +p, varphi at +x with -p.
            let phi: Vec<Complex64> = z
                .iter()
                .map(|&s| Complex64::from_polar((-0.5 * (s + x) * (s + x)).exp(), p * s))
                .collect();
            let varphi: Vec<Complex64> = z
                .iter()
                .map(|&s| Complex64::from_polar((-0.5 * (s - x) * (s - x)).exp(), -p * s))
                .collect();
            let (mut num_p, mut num_m, mut den_p, mut den_m) = (0.0, 0.0, 0.0, 0.0);
            for i in 0..n {
                for j in 0..n {
                    let direct = phi[i] * varphi[j];
                    let swapped = varphi[i] * phi[j];
                    let wp = (direct + swapped).norm_sqr();
                    let wm = (direct - swapped).norm_sqr();
                    let v = potential[i.abs_diff(j)];
                    num_p += wp * v;
                    num_m += wm * v;
                    den_p += wp;
                    den_m += wm;
                }
            }
            (num_p / den_p, num_m / den_m)
        })
        .collect();
    let (sp, sm) = slices
        .iter()
        .fold((0.0, 0.0), |(a, b), &(p, q)| (a + p, b + q));
    Ok((sp / m as f64, sm / m as f64))
}

/// Romberg-style elimination of the `h^2, h^4, ...` error terms from values on
/// successively halved steps.
fn richardson(values: &[f64]) -> f64 {
    let mut table = values.to_vec();
    let mut factor = 4.0;
    for level in 1..values.len() {
        for i in (level..values.len()).rev() {
            table[i] = (factor * table[i] - table[i - 1]) / (factor - 1.0);
        }
        factor *= 4.0;
    }
    *table.last().expect("at least one level")
}

pub fn bruteforce_reduced(l: f64, omega_perp: f64, grid: &BruteForceGrid) -> Result<OracleReport> {
    if grid.levels == 0 {
        return Err(Error::invalid("levels", "need at least one grid level"));
    }
    symmetrization_norms_reduced(l)?;
    let mut levels = Vec::with_capacity(grid.levels);
    let mut h = grid.step;
    for _ in 0..grid.levels {
        let (vp, vm) = bruteforce_single_grid(l, omega_perp, h, grid.margin, grid.time_nodes)?;
        levels.push((h, vp, vm));
        h *= 0.5;
    }
    let plus: Vec<f64> = levels.iter().map(|t| t.1).collect();
    let minus: Vec<f64> = levels.iter().map(|t| t.2).collect();
    Ok(OracleReport {
        v_plus: richardson(&plus),
        v_minus: richardson(&minus),
        levels,
    })
}

/// Independent check of [`super::level_shifts_quadrature`] on small grids.
pub fn level_shifts_bruteforce_oracle(
    cfg: &TrapConfig,
    grid: &BruteForceGrid,
) -> Result<CouplingResult> {
    let report = bruteforce_reduced(cfg.reduced_length(), cfg.omega_perp(), grid)?;
    let scale = cfg.coulomb_scale();
    let (vp, vm) = (report.v_plus * scale, report.v_minus * scale);
    let j = 0.5 * (vp - vm);
    let l = cfg.reduced_length();
    let a = j / scale * l.powi(3) * std::f64::consts::PI.sqrt() / cfg.omega_perp();
    let mut out = CouplingResult::from_direct_exchange(0.5 * (vp + vm), j, a, Method::Quadrature);
    out.v_plus = vp;
    out.v_minus = vm;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn richardson_removes_even_powers() {
        let f = |h: f64| 2.0 + 3.0 * h * h - 5.0 * h.powi(4);
        let vals = [f(0.4), f(0.2), f(0.1)];
        assert_relative_eq!(richardson(&vals), 2.0, max_relative = 1e-13);
    }

    #[test]
    fn time_nodes_are_multiples_of_four() {
        assert_eq!(time_nodes_for(3.0, 0), 64);
        assert_eq!(time_nodes_for(12.0, 0), 192);
        assert_eq!(time_nodes_for(12.0, 30), 32);
    }

    #[test]
    fn oversized_grid_is_refused() {
        let err = bruteforce_single_grid(500.0, 5.0, 0.01, 7.0, 64).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }

    #[test]
    fn swapping_ions_keeps_levels_ordered() {
        // Symmetric state sits above the antisymmetric one on every grid.
        let (vp, vm) = bruteforce_single_grid(4.0, 5.0, 0.125, 7.0, 64).unwrap();
        assert!(vp > vm);
    }
}
