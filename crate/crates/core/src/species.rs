//! Ion species registry.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::config::ConfigMap;
use crate::error::{Error, Result};
use crate::units::CODATA_2018;

/// A trapped particle: its mass, charge and (for hyperfine qubits) the qubit
/// splitting `E0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IonSpecies {
    pub name: String,
    /// kg
    pub mass: f64,
    /// C, signed
    pub charge: f64,
    /// J; `None` when the qubit is a bare spin with a field-dependent splitting.
    pub hyperfine_splitting: Option<f64>,
}

impl IonSpecies {
    pub fn new(
        name: impl Into<String>,
        mass: f64,
        charge: f64,
        hyperfine_splitting: Option<f64>,
    ) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::invalid(
                "mass",
                format!("must be positive, got {mass}"),
            ));
        }
        if !(charge.is_finite() && charge != 0.0) {
            return Err(Error::invalid("charge", "must be non-zero"));
        }
        if let Some(e0) = hyperfine_splitting {
            if !(e0.is_finite() && e0 >= 0.0) {
                return Err(Error::invalid(
                    "hyperfine_splitting",
                    "must be non-negative",
                ));
            }
        }
        Ok(Self {
            name: name.into(),
            mass,
            charge,
            hyperfine_splitting,
        })
    }

    /// Singly charged ion of the given mass in atomic mass units.
    pub fn singly_charged(name: &str, mass_u: f64, e0_hz: Option<f64>) -> Result<Self> {
        let c = CODATA_2018;
        Self::new(
            name,
            mass_u * c.atomic_mass_unit,
            c.elementary_charge,
            e0_hz.map(|f| c.hbar * 2.0 * PI * f),
        )
    }

    pub fn ytterbium_171() -> Self {
        Self::singly_charged("Yb-171", 170.936, Some(12.64e9)).expect("valid builtin")
    }

    pub fn beryllium_9() -> Self {
        Self::singly_charged("Be-9", 9.0122, Some(1.250_017_608e9)).expect("valid builtin")
    }

    pub fn electron() -> Self {
        let c = CODATA_2018;
        Self::new("electron", c.electron_mass, -c.elementary_charge, None).expect("valid builtin")
    }

    /// `Q^2 / (4 pi eps0)`, J m.
    pub fn coulomb_strength(&self) -> f64 {
        CODATA_2018.coulomb_strength(self.charge)
    }
}

/// Name-indexed collection of species. Starts with the builtins and accepts
/// user definitions from config keys `species.<name>.<field>`.
#[derive(Debug, Clone)]
pub struct SpeciesRegistry {
    species: BTreeMap<String, IonSpecies>,
}

impl Default for SpeciesRegistry {
    fn default() -> Self {
        let mut species = BTreeMap::new();
        for s in [
            IonSpecies::ytterbium_171(),
            IonSpecies::beryllium_9(),
            IonSpecies::electron(),
        ] {
            species.insert(s.name.clone(), s);
        }
        Self { species }
    }
}

impl SpeciesRegistry {
    pub fn lookup(&self, name: &str) -> Result<IonSpecies> {
        self.species
            .get(name)
            .or_else(|| {
                self.species
                    .values()
                    .find(|s| s.name.eq_ignore_ascii_case(name))
            })
            .cloned()
            .ok_or_else(|| Error::UnknownSpecies {
                name: name.to_string(),
                registered: self.names(),
            })
    }

    pub fn names(&self) -> Vec<String> {
        self.species.keys().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &IonSpecies> {
        self.species.values()
    }

    pub fn insert(&mut self, species: IonSpecies) {
        self.species.insert(species.name.clone(), species);
    }

    /// Applies `species.<name>.{mass_u, mass_kg, charge_e, e0_hz, e0_rad_s}`
    /// entries. Unknown names define new species; known names are patched.
    pub fn apply_overrides(&mut self, config: &ConfigMap) -> Result<()> {
        let mut fields: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        for (key, value) in config.iter() {
            let Some(rest) = key.strip_prefix("species.") else {
                continue;
            };
            let Some((name, field)) = rest.rsplit_once('.') else {
                return Err(Error::Config(format!(
                    "species override `{key}` must look like species.<name>.<field>"
                )));
            };
            fields
                .entry(name.to_string())
                .or_default()
                .insert(field.to_string(), value.to_string());
        }

        let c = CODATA_2018;
        for (name, entries) in fields {
            let base = self.species.get(&name).cloned();
            let mut mass = base.as_ref().map(|s| s.mass);
            let mut charge = base.as_ref().map_or(c.elementary_charge, |s| s.charge);
            let mut e0 = base.as_ref().and_then(|s| s.hyperfine_splitting);
            for (field, raw) in &entries {
                let value: f64 = raw.trim().parse().map_err(|_| {
                    Error::Config(format!("species.{name}.{field}: `{raw}` is not a number"))
                })?;
                match field.as_str() {
                    "mass_u" => mass = Some(value * c.atomic_mass_unit),
                    "mass_kg" => mass = Some(value),
                    "charge_e" => charge = value * c.elementary_charge,
                    "charge_c" => charge = value,
                    "e0_hz" => e0 = Some(c.hbar * 2.0 * PI * value),
                    "e0_rad_s" => e0 = Some(c.hbar * value),
                    "e0_j" => e0 = Some(value),
                    other => {
                        return Err(Error::Config(format!(
                            "unknown species field `{other}` (expected mass_u, mass_kg, charge_e, charge_c, e0_hz, e0_rad_s, e0_j)"
                        )))
                    }
                }
            }
            let mass = mass.ok_or_else(|| {
                Error::Config(format!("species `{name}` needs mass_u or mass_kg"))
            })?;
            self.insert(IonSpecies::new(name, mass, charge, e0)?);
        }
        Ok(())
    }
}

/// Looks up a builtin species.
pub fn lookup_species(name: &str) -> Result<IonSpecies> {
    SpeciesRegistry::default().lookup(name)
}
