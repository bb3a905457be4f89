//! Physical constants, the reduced unit system and a small runtime
//! dimension checker.
//!
//! All heavy numerics run in reduced units: lengths in `z0 = sqrt(hbar / m omega_z)`,
//! energies in `hbar omega_z` and times in `1 / omega_z`. SI values only appear at
//! the public API boundary.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Div, Mul};

/// CODATA 2018 constants in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J s.
    pub hbar: f64,
    /// Elementary charge, C.
    pub elementary_charge: f64,
    /// Vacuum permittivity, F/m.
    pub vacuum_permittivity: f64,
    /// Atomic mass constant, kg.
    pub atomic_mass_unit: f64,
    /// Electron mass, kg.
    pub electron_mass: f64,
    pub euler_mascheroni: f64,
}

pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    hbar: 6.626_070_15e-34 / (2.0 * PI),
    elementary_charge: 1.602_176_634e-19,
    vacuum_permittivity: 8.854_187_812_8e-12,
    atomic_mass_unit: 1.660_539_066_60e-27,
    electron_mass: 9.109_383_701_5e-31,
    euler_mascheroni: 0.577_215_664_901_532_9,
};

impl PhysicalConstants {
    /// Coulomb constant times charge squared, `Q^2 / (4 pi eps0)` in J m.
    pub fn coulomb_strength(&self, charge: f64) -> f64 {
        charge * charge / (4.0 * PI * self.vacuum_permittivity)
    }
}

/// Conversion between SI and the trap's natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedUnits {
    /// Length scale z0, m.
    pub length: f64,
    /// Energy scale hbar omega_z, J.
    pub energy: f64,
    /// Time scale 1 / omega_z, s.
    pub time: f64,
}

impl ReducedUnits {
    pub fn new(mass: f64, omega_z: f64) -> Self {
        let hbar = CODATA_2018.hbar;
        Self {
            length: (hbar / (mass * omega_z)).sqrt(),
            energy: hbar * omega_z,
            time: 1.0 / omega_z,
        }
    }

    pub fn length_to_reduced(&self, meters: f64) -> f64 {
        meters / self.length
    }

    pub fn length_to_si(&self, reduced: f64) -> f64 {
        reduced * self.length
    }

    pub fn energy_to_reduced(&self, joules: f64) -> f64 {
        joules / self.energy
    }

    pub fn energy_to_si(&self, reduced: f64) -> f64 {
        reduced * self.energy
    }

    pub fn time_to_reduced(&self, seconds: f64) -> f64 {
        seconds / self.time
    }

    pub fn time_to_si(&self, reduced: f64) -> f64 {
        reduced * self.time
    }

    /// Angular frequency in units of omega_z.
    pub fn frequency_to_reduced(&self, rad_per_s: f64) -> f64 {
        rad_per_s * self.time
    }

    pub fn frequency_to_si(&self, reduced: f64) -> f64 {
        reduced / self.time
    }
}

/// Dimension exponents of (mass, length, time, charge), stored in quarters so
/// that the fractional powers appearing in the coupling formulas stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Dim {
    quarters: [i16; 4],
}

impl Dim {
    pub const DIMENSIONLESS: Dim = Dim { quarters: [0; 4] };
    pub const MASS: Dim = Dim::new(1, 0, 0, 0);
    pub const LENGTH: Dim = Dim::new(0, 1, 0, 0);
    pub const TIME: Dim = Dim::new(0, 0, 1, 0);
    pub const CHARGE: Dim = Dim::new(0, 0, 0, 1);
    pub const ENERGY: Dim = Dim::new(1, 2, -2, 0);
    pub const FREQUENCY: Dim = Dim::new(0, 0, -1, 0);
    pub const ACTION: Dim = Dim::new(1, 2, -1, 0);
    /// F/m = C^2 / (J m).
    pub const PERMITTIVITY: Dim = Dim::new(-1, -3, 2, 2);

    pub const fn new(mass: i16, length: i16, time: i16, charge: i16) -> Self {
        Dim {
            quarters: [4 * mass, 4 * length, 4 * time, 4 * charge],
        }
    }

    pub fn is_dimensionless(&self) -> bool {
        *self == Dim::DIMENSIONLESS
    }

    fn combine(self, other: Dim, sign: i16) -> Dim {
        let mut quarters = self.quarters;
        for (q, o) in quarters.iter_mut().zip(other.quarters) {
            *q += sign * o;
        }
        Dim { quarters }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dimensionless() {
            return write!(f, "1");
        }
        let names = ["kg", "m", "s", "C"];
        let mut first = true;
        for (name, q) in names.iter().zip(self.quarters) {
            if q == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if q == 4 {
                write!(f, "{name}")?;
            } else if q % 4 == 0 {
                write!(f, "{name}^{}", q / 4)?;
            } else {
                write!(f, "{name}^({q}/4)")?;
            }
        }
        Ok(())
    }
}

/// A value tagged with its physical dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub dim: Dim,
}

impl Quantity {
    pub const fn new(value: f64, dim: Dim) -> Self {
        Self { value, dim }
    }

    pub const fn scalar(value: f64) -> Self {
        Self::new(value, Dim::DIMENSIONLESS)
    }

    /// Raise to the rational power `num / den`.
    ///
    /// Panics if the resulting exponents are not whole quarters.
    pub fn pow(self, num: i16, den: i16) -> Self {
        assert!(den > 0, "denominator must be positive");
        let mut quarters = self.dim.quarters;
        for q in quarters.iter_mut() {
            let scaled = *q * num;
            assert!(
                scaled % den == 0,
                "power {num}/{den} of {} leaves a non-quarter exponent",
                self.dim
            );
            *q = scaled / den;
        }
        Quantity {
            value: self.value.powf(num as f64 / den as f64),
            dim: Dim { quarters },
        }
    }

    pub fn sqrt(self) -> Self {
        self.pow(1, 2)
    }
}

impl Mul for Quantity {
    type Output = Quantity;
    fn mul(self, rhs: Quantity) -> Quantity {
        Quantity::new(self.value * rhs.value, self.dim.combine(rhs.dim, 1))
    }
}

impl Div for Quantity {
    type Output = Quantity;
    fn div(self, rhs: Quantity) -> Quantity {
        Quantity::new(self.value / rhs.value, self.dim.combine(rhs.dim, -1))
    }
}

impl Mul<f64> for Quantity {
    type Output = Quantity;
    fn mul(self, rhs: f64) -> Quantity {
        Quantity::new(self.value * rhs, self.dim)
    }
}

impl Div<f64> for Quantity {
    type Output = Quantity;
    fn div(self, rhs: f64) -> Quantity {
        Quantity::new(self.value / rhs, self.dim)
    }
}

/// Tagged versions of the constants, for dimension checks of derived formulas.
pub mod tagged {
    use super::{Dim, Quantity, CODATA_2018};

    pub fn hbar() -> Quantity {
        Quantity::new(CODATA_2018.hbar, Dim::ACTION)
    }

    pub fn vacuum_permittivity() -> Quantity {
        Quantity::new(CODATA_2018.vacuum_permittivity, Dim::PERMITTIVITY)
    }

    pub fn mass(kg: f64) -> Quantity {
        Quantity::new(kg, Dim::MASS)
    }

    pub fn charge(coulomb: f64) -> Quantity {
        Quantity::new(coulomb, Dim::CHARGE)
    }

    pub fn length(m: f64) -> Quantity {
        Quantity::new(m, Dim::LENGTH)
    }

    pub fn frequency(rad_per_s: f64) -> Quantity {
        Quantity::new(rad_per_s, Dim::FREQUENCY)
    }

    pub fn energy(joules: f64) -> Quantity {
        Quantity::new(joules, Dim::ENERGY)
    }
}
