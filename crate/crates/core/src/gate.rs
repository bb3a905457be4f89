//! Two-qubit collision gate, its sqrt(SWAP) x phase-gate decomposition and
//! the collision count.
//!
//! Basis order is `|dd>, |du>, |ud>, |uu>` (d = down, u = up), i.e. 00, 01,
//! 10, 11.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::units::CODATA_2018;

pub type Matrix4 = [[Complex64; 4]; 4];

pub const BASIS_LABELS: [&str; 4] = ["dd", "du", "ud", "uu"];

/// Residual above which a matrix is not considered a collision gate.
pub const STRUCTURE_TOLERANCE: f64 = 1e-6;

const HALF_1_PLUS_I: Complex64 = Complex64::new(0.5, 0.5);
const HALF_1_MINUS_I: Complex64 = Complex64::new(0.5, -0.5);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateSpec {
    /// Gate time `3 pi hbar / 4 J`, s.
    pub t_g: f64,
    /// Phase-gate angle from exact matrix matching, `E0 t_g / hbar mod 2 pi`.
    pub theta: f64,
    /// Angle in the `t_g (2 E0 + U + J) / 2 hbar` convention, mod 2 pi.
    pub theta_half_sum: f64,
    /// Number of collisions `t_g omega_z / pi`.
    pub n_collisions: f64,
    pub matrix: Matrix4,
    pub e0: f64,
    pub u: f64,
    pub j: f64,
}

fn cis(phase: f64) -> Complex64 {
    Complex64::from_polar(1.0, phase)
}

fn zero() -> Matrix4 {
    [[Complex64::new(0.0, 0.0); 4]; 4]
}

/// Standard sqrt(SWAP).
pub fn sqrt_swap() -> Matrix4 {
    let mut m = zero();
    m[0][0] = Complex64::new(1.0, 0.0);
    m[1][1] = HALF_1_PLUS_I;
    m[1][2] = HALF_1_MINUS_I;
    m[2][1] = HALF_1_MINUS_I;
    m[2][2] = HALF_1_PLUS_I;
    m[3][3] = Complex64::new(1.0, 0.0);
    m
}

/// `R_theta x R_theta` with `R_theta = diag(1, e^(i theta))`.
pub fn phase_pair(theta: f64) -> Matrix4 {
    let mut m = zero();
    m[0][0] = Complex64::new(1.0, 0.0);
    m[1][1] = cis(theta);
    m[2][2] = cis(theta);
    m[3][3] = cis(2.0 * theta);
    m
}

pub fn matmul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut out = zero();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn adjoint(a: &Matrix4) -> Matrix4 {
    let mut out = zero();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

/// Largest entry modulus of `a - b`.
pub fn max_norm_diff(a: &Matrix4, b: &Matrix4) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}

/// `max |M^dagger M - I|`.
pub fn unitarity_residual(m: &Matrix4) -> f64 {
    let mut id = zero();
    for (i, row) in id.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    max_norm_diff(&matmul(&adjoint(m), m), &id)
}

pub fn apply(m: &Matrix4, v: &[Complex64; 4]) -> [Complex64; 4] {
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..4).map(|k| m[i][k] * v[k]).sum();
    }
    out
}

/// Collision gate after `t_g = 3 pi hbar / 4 J` for qubit splitting `E0`,
/// direct shift `U` and exchange `J` (all J), in a trap with longitudinal
/// frequency `omega_z`.
pub fn synthesize_gate(e0: f64, u: f64, j: f64, omega_z: f64) -> Result<GateSpec> {
    if !(j > 0.0 && j.is_finite()) {
        return Err(Error::ZeroCoupling(j));
    }
    if !(e0.is_finite() && u.is_finite()) {
        return Err(Error::invalid("E0/U", "must be finite"));
    }
    if !(omega_z > 0.0 && omega_z.is_finite()) {
        return Err(Error::invalid("omega_z", "must be positive"));
    }
    let hbar = CODATA_2018.hbar;
    let t_g = 3.0 * PI * hbar / (4.0 * j);
    // With t_g fixed by J the phases depend only on ratios. Reducing them
    // mod 2 pi before combining keeps the sqrt(SWAP) structure exact even
    // when E0 t_g / hbar is ~1e9 rad.
    let theta = (0.75 * PI * e0 / j).rem_euclid(2.0 * PI);
    let corner_low = (0.75 * PI * (u / j + 1.0)).rem_euclid(2.0 * PI);
    let global = corner_low + theta;
    let corner_high = corner_low + 2.0 * theta;
    let g = cis(global);
    let mut m = zero();
    m[0][0] = cis(corner_low);
    m[1][1] = g * HALF_1_PLUS_I;
    m[1][2] = g * HALF_1_MINUS_I;
    m[2][1] = g * HALF_1_MINUS_I;
    m[2][2] = g * HALF_1_PLUS_I;
    m[3][3] = cis(corner_high);
    Ok(GateSpec {
        t_g,
        theta,
        theta_half_sum: (0.375 * PI * (2.0 * e0 + u + j) / j).rem_euclid(2.0 * PI),
        n_collisions: t_g * omega_z / PI,
        matrix: m,
        e0,
        u,
        j,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Decomposition {
    /// `g` in `M = e^(i g) sqrt(SWAP) (R_theta x R_theta)`, in (-pi, pi].
    pub global_phase: f64,
    /// In [0, 2 pi).
    pub theta: f64,
    pub residual: f64,
}

/// Finds `g`, `theta` with `M = e^(i g) sqrt(SWAP) (R_theta x R_theta)`.
pub fn decompose_sqrt_swap(m: &Matrix4) -> Result<Decomposition> {
    let u0 = m[0][0].arg();
    let central = (m[1][1] / HALF_1_PLUS_I
        + m[2][2] / HALF_1_PLUS_I
        + m[1][2] / HALF_1_MINUS_I
        + m[2][1] / HALF_1_MINUS_I)
        .arg();
    let u2 = m[3][3].arg();
    let theta = (cis(central - u0) + cis(u2 - central)).arg();
    let global_phase = (cis(u0) + cis(central - theta) + cis(u2 - 2.0 * theta)).arg();
    let theta = theta.rem_euclid(2.0 * PI);
    let rebuilt = rebuild(global_phase, theta);
    let residual = max_norm_diff(m, &rebuilt);
    if !(residual <= STRUCTURE_TOLERANCE) {
        return Err(Error::GateStructure { residual });
    }
    Ok(Decomposition {
        global_phase,
        theta,
        residual,
    })
}

/// `e^(i g) sqrt(SWAP) (R_theta x R_theta)`.
pub fn rebuild(global_phase: f64, theta: f64) -> Matrix4 {
    let mut m = matmul(&sqrt_swap(), &phase_pair(theta));
    let g = cis(global_phase);
    for row in m.iter_mut() {
        for cell in row.iter_mut() {
            *cell *= g;
        }
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CollisionCount {
    pub value: f64,
    pub nearest: u64,
    /// `value - nearest`, in collisions.
    pub mistuning: f64,
}

/// Collisions per gate: `3 hbar omega_z / 4 J`, or `3 hbar omega_f / 8 J`
/// under a parametric drive at `omega_f`.
pub fn collision_count(j: f64, omega: f64, driven: bool) -> Result<CollisionCount> {
    if !(j > 0.0 && j.is_finite()) {
        return Err(Error::ZeroCoupling(j));
    }
    let divisor = if driven { 8.0 } else { 4.0 };
    let value = 3.0 * CODATA_2018.hbar * omega / (divisor * j);
    let nearest = value.round();
    Ok(CollisionCount {
        value,
        nearest: nearest as u64,
        mistuning: value - nearest,
    })
}
