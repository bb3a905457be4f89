//! Level shifts from the relative-coordinate reduction.
//!
//! In units where lengths are measured in z0 and energies in
//! `Q^2 / (4 pi eps0 z0)`, write `l = L / z0` and `s = omega_z t` measured from
//! the crossing. The relative coordinate of the two packets is Gaussian with
//! unit variance, so
//!
//! * direct term `D(c) = int_0^inf [g(r - c) + g(r + c)] v(r) dr` with
//!   `c = l sin s`;
//! * exchange term `E(s) = exp(-l^2 sin^2 s / 2) X(l cos s)` with
//!   `X(k) = 2 int_0^T g(r) v(r) cos(k r) dr`;
//! * `S^2 = exp(-l^2 / 2)`,
//!
//! where `g` is the unit normal density and `v` the reduced effective
//! potential. Averaging over a quarter period and projecting on the
//! (anti)symmetric states gives `V+- = (D +- E) / (1 +- S^2)`.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};

use serde::Serialize;

use super::{CouplingResult, Method, QuadratureSettings};
use crate::error::{Error, Result};
use crate::potential::{alpha, v_eff_reduced};
use crate::quadrature::{integrate, Tolerance};
use crate::special::erfcx;
use crate::trap::{symmetrization_norms_reduced, TrapConfig};

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// Above this reduced length the exchange integrand oscillates so fast that
/// runtimes grow noticeably.
pub const OSCILLATORY_WARN_LENGTH: f64 = 1e4;
/// Momenta above this use the twice-integrated-by-parts form of `X(k)`.
const BY_PARTS_MOMENTUM: f64 = 8.0;
const MAX_INTERVALS: usize = 4_000_000;

/// Time-averaged shifts in units of `Q^2 / (4 pi eps0 z0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedShifts {
    /// `U`
    pub direct: f64,
    /// `J`
    pub exchange: f64,
    /// Quarter-period average of the direct term.
    pub direct_mean: f64,
    /// Quarter-period average of the exchange term.
    pub exchange_mean: f64,
    /// `S^2`
    pub overlap_sq: f64,
}

impl ReducedShifts {
    pub fn v_plus(&self) -> f64 {
        self.direct + self.exchange
    }

    pub fn v_minus(&self) -> f64 {
        self.direct - self.exchange
    }
}

#[inline]
fn gauss(r: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * r * r).exp()
}

/// `f = g v` and its first two derivatives for `r > 0`.
fn kernel_derivatives(r: f64, omega_perp: f64) -> (f64, f64, f64) {
    let a = (0.5 * omega_perp).sqrt();
    let c1 = (0.5 * PI * omega_perp).sqrt();
    let y = a * r;
    let e = erfcx(y);
    let e1 = 2.0 * y * e - FRAC_2_SQRT_PI;
    let e2 = (2.0 + 4.0 * y * y) * e - 2.0 * y * FRAC_2_SQRT_PI;
    let g = gauss(r);
    let (v, v1, v2) = (c1 * e, c1 * a * e1, c1 * a * a * e2);
    let (g1, g2) = (-r * g, (r * r - 1.0) * g);
    (g * v, g1 * v + g * v1, g2 * v + 2.0 * g1 * v1 + g * v2)
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Kernel {
    pub omega_perp: f64,
    pub truncation: f64,
    pub inner: Tolerance,
}

impl Kernel {
    pub fn new(omega_perp: f64, truncation: f64, rel_tol: f64) -> Self {
        Self {
            omega_perp,
            truncation,
            inner: Tolerance {
                rel: (0.01 * rel_tol).max(1e-14),
                abs: 0.0,
                max_intervals: MAX_INTERVALS,
            },
        }
    }

    /// Mean of the reduced potential over a unit-variance Gaussian centred
    /// at separation `c`.
    pub fn direct(&self, c: f64) -> Result<f64> {
        let t = self.truncation;
        let wp = self.omega_perp;
        let lo = (c - t).max(0.0);
        let mut pts = vec![lo];
        if c > lo {
            pts.push(c);
        }
        pts.push(c + t);
        let f = |r: f64| (gauss(r - c) + gauss(r + c)) * v_eff_reduced(r, wp);
        Ok(integrate(f, &pts, &self.inner)?.value)
    }

    /// `X(k) = 2 int_0^T g(r) v(r) cos(k r) dr`.
    pub fn exchange(&self, k: f64) -> Result<f64> {
        let t = self.truncation;
        let wp = self.omega_perp;
        let pts = half_period_points(k, t)?;
        if k < BY_PARTS_MOMENTUM {
            let f = |r: f64| gauss(r) * v_eff_reduced(r, wp) * (k * r).cos();
            return Ok(2.0 * integrate(f, &pts, &self.inner)?.value);
        }
        // Integrating by parts twice leaves a remainder that is already
        // O(1/k^2), so large momenta do not cancel catastrophically.
        let f2 = |r: f64| kernel_derivatives(r, wp).2 * (k * r).cos();
        let rest = integrate(f2, &pts, &self.inner)?.value;
        let (_, d0, _) = kernel_derivatives(0.0, wp);
        let (ft, dt, _) = kernel_derivatives(t, wp);
        let k2 = k * k;
        let boundary = ft * (k * t).sin() / k + (dt * (k * t).cos() - d0) / k2;
        Ok(2.0 * (boundary - rest / k2))
    }
}

/// Breakpoints every half period of `cos(k r)` on `[0, t]`.
fn half_period_points(k: f64, t: f64) -> Result<Vec<f64>> {
    let n = (k * t / PI).ceil();
    if n > MAX_INTERVALS as f64 {
        return Err(Error::ResourceLimit(format!(
            "exchange integrand has {n:e} half oscillations, limit is {MAX_INTERVALS}"
        )));
    }
    if !(n > 1.0) {
        return Ok(vec![0.0, t]);
    }
    let n = n as usize;
    let step = PI / k;
    let mut pts: Vec<f64> = (0..n).map(|i| i as f64 * step).collect();
    pts.push(t);
    Ok(pts)
}

/// Phases `s = asin(c / l)` at which the packet separation reaches `c`,
/// `c = 1/4, 1/2, 1, 2, ...`, merged with `panels` uniform panels on
/// `[0, s_max]`.
fn time_breakpoints(l: f64, s_max: f64, panels: usize) -> Vec<f64> {
    let mut pts: Vec<f64> = (0..=panels)
        .map(|i| s_max * i as f64 / panels as f64)
        .collect();
    let mut c = 0.25;
    while c < l {
        let s = (c / l).asin();
        if s < s_max {
            pts.push(s);
        }
        c *= 2.0;
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * s_max);
    pts
}

fn check_reduced_inputs(l: f64, omega_perp: f64, settings: &QuadratureSettings) -> Result<()> {
    settings.validate()?;
    if !(l.is_finite() && l > 0.0) {
        return Err(Error::invalid("L/z0", "must be positive"));
    }
    if !(omega_perp.is_finite() && omega_perp >= crate::trap::QUASI_1D_WARN_RATIO) {
        return Err(Error::invalid(
            "omega_perp",
            format!("{omega_perp} < 3: quasi-1D reduction does not apply"),
        ));
    }
    Ok(())
}

/// Quarter-period average of the exchange term, `(2/pi) int E(s) ds`.
pub(crate) fn exchange_mean(
    kernel: &Kernel,
    l: f64,
    settings: &QuadratureSettings,
    abs_tol: f64,
) -> Result<f64> {
    let t = kernel.truncation;
    let s_max = (t / l).min(1.0).asin();
    // E(s) is a Gaussian of width ~1/l in s; a few panels resolve it.
    let panels = (settings.time_nodes / 8).max(2);
    let pts = time_breakpoints(l, s_max, panels);
    let tol = Tolerance {
        rel: settings.rel_tol,
        abs: abs_tol,
        max_intervals: MAX_INTERVALS,
    };
    let failure = std::cell::Cell::new(None);
    let f = |s: f64| {
        let (sin, cos) = s.sin_cos();
        match kernel.exchange(l * cos) {
            Ok(x) => (-0.5 * (l * sin).powi(2)).exp() * x,
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        }
    };
    let res = integrate(f, &pts, &tol);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(FRAC_2_PI * res?.value)
}

fn direct_mean(
    kernel: &Kernel,
    l: f64,
    settings: &QuadratureSettings,
    abs_tol: f64,
) -> Result<f64> {
    let pts = time_breakpoints(l, FRAC_PI_2, settings.time_nodes);
    let tol = Tolerance {
        rel: settings.rel_tol,
        abs: abs_tol,
        max_intervals: MAX_INTERVALS,
    };
    let failure = std::cell::Cell::new(None);
    let f = |s: f64| match kernel.direct(l * s.sin()) {
        Ok(d) => d,
        Err(e) => {
            failure.set(Some(e));
            f64::NAN
        }
    };
    let res = integrate(f, &pts, &tol);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(FRAC_2_PI * res?.value)
}

/// Level shifts for reduced length `l = L / z0` and confinement ratio
/// `omega_perp`. `settings.abs_tol` is read in units of `Q^2 / (4 pi eps0 z0)`.
pub fn level_shifts_reduced(
    l: f64,
    omega_perp: f64,
    settings: &QuadratureSettings,
) -> Result<ReducedShifts> {
    check_reduced_inputs(l, omega_perp, settings)?;
    symmetrization_norms_reduced(l)?;
    let kernel = Kernel::new(omega_perp, settings.spatial_truncation, settings.rel_tol);
    let d = direct_mean(&kernel, l, settings, settings.abs_tol)?;
    let e = exchange_mean(&kernel, l, settings, settings.abs_tol)?;
    let s2 = (-0.5 * l * l).exp();
    // 1 - S^4 without cancellation for small l.
    let denom = -(-l * l).exp_m1();
    Ok(ReducedShifts {
        direct: (d - e * s2) / denom,
        exchange: (e - d * s2) / denom,
        direct_mean: d,
        exchange_mean: e,
        overlap_sq: s2,
    })
}

/// Time-averaged level shifts `V+-`, `J` and `U` by adaptive quadrature of
/// the reduced one-dimensional integrals.
pub fn level_shifts_quadrature(
    cfg: &TrapConfig,
    settings: &QuadratureSettings,
) -> Result<CouplingResult> {
    let scale = cfg.coulomb_scale();
    let l = cfg.reduced_length();
    let wp = cfg.omega_perp();
    let reduced_settings = QuadratureSettings {
        abs_tol: settings.abs_tol / scale,
        ..*settings
    };
    let shifts = level_shifts_reduced(l, wp, &reduced_settings)?;
    let a = shifts.exchange * l.powi(3) * PI.sqrt() / wp;
    let mut out = CouplingResult::from_direct_exchange(
        shifts.direct * scale,
        shifts.exchange * scale,
        a,
        Method::Quadrature,
    );
    let alpha = alpha(cfg);
    if alpha <= 1.0 {
        out.warnings.push(format!(
            "alpha = {alpha:.4} <= 1: the ions may not pass the barrier, coherent-state collision model is questionable"
        ));
    }
    if l > OSCILLATORY_WARN_LENGTH {
        out.warnings.push(format!(
            "L/z0 = {l:.4e} > {OSCILLATORY_WARN_LENGTH:e}: exchange integrand is highly oscillatory, consider more time_nodes"
        ));
    }
    Ok(out)
}
