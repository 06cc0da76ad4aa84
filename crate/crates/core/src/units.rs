//! Physical constants and unit conversions.
//!
//! Frequencies are angular frequencies quoted in wavenumbers, so `ħω` for a
//! value `ω̃` in cm⁻¹ is `h c ω̃`. Temperatures are in kelvin and energies in
//! kJ/mol. Every conversion factor below derives from the CODATA 2018 table in
//! [`constants`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{QtstError, Result};
use crate::real::Real;

/// CODATA 2018 constants (SI), the single source of truth for every factor.
pub mod constants {
    /// Planck constant h (J s), exact.
    pub const PLANCK: f64 = 6.626_070_15e-34;
    /// Reduced Planck constant ħ (J s).
    pub const HBAR: f64 = PLANCK / (2.0 * std::f64::consts::PI);
    /// Boltzmann constant k_B (J/K), exact.
    pub const BOLTZMANN: f64 = 1.380_649e-23;
    /// Speed of light c (m/s), exact.
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
    /// Avogadro constant N_A (1/mol), exact.
    pub const AVOGADRO: f64 = 6.022_140_76e23;
    /// Elementary charge e (C), exact.
    pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
    /// Vacuum permittivity ε₀ (F/m).
    pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
    /// Proton mass (kg).
    pub const PROTON_MASS: f64 = 1.672_621_923_69e-27;

    /// Speed of light in cm/s.
    pub const SPEED_OF_LIGHT_CM: f64 = SPEED_OF_LIGHT * 100.0;
    /// One debye in C m (10⁻²¹/c).
    pub const DEBYE: f64 = 1e-21 / SPEED_OF_LIGHT;
    /// One ångström in m.
    pub const ANGSTROM: f64 = 1e-10;
    /// One picosecond in s.
    pub const PICOSECOND: f64 = 1e-12;

    /// h c (J cm): energy of one wavenumber.
    pub const HC_J_CM: f64 = PLANCK * SPEED_OF_LIGHT_CM;
    /// h c / k_B (K cm), the second radiation constant.
    pub const HC_OVER_KB: f64 = HC_J_CM / BOLTZMANN;
    /// h c N_A in kJ/mol per cm⁻¹.
    pub const KJ_PER_MOL_PER_WAVENUMBER: f64 = HC_J_CM * AVOGADRO / 1000.0;
    /// Molar gas constant in kJ/(mol K).
    pub const GAS_CONSTANT_KJ: f64 = BOLTZMANN * AVOGADRO / 1000.0;
    /// 2πc (cm/s): rad/s per cm⁻¹.
    pub const RAD_PER_SECOND_PER_WAVENUMBER: f64 = 2.0 * std::f64::consts::PI * SPEED_OF_LIGHT_CM;
    /// ħ/(2π k_B) expressed in K per cm⁻¹: T₀ = this × μ.
    pub const CROSSOVER_K_PER_WAVENUMBER: f64 = HC_OVER_KB / (2.0 * std::f64::consts::PI);
}

/// The six units the library understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unit {
    /// cm⁻¹ (angular frequency in wavenumber units)
    Wavenumber,
    Kelvin,
    KjPerMol,
    RadianPerSecond,
    Picosecond,
    Debye,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unit::Wavenumber => "cm^-1",
            Unit::Kelvin => "K",
            Unit::KjPerMol => "kJ/mol",
            Unit::RadianPerSecond => "rad/s",
            Unit::Picosecond => "ps",
            Unit::Debye => "D",
        })
    }
}

impl Unit {
    /// Multiplier taking a value in this unit to cm⁻¹, for the energy family.
    fn to_wavenumber(self) -> Option<f64> {
        use constants::*;
        match self {
            Unit::Wavenumber => Some(1.0),
            Unit::Kelvin => Some(1.0 / HC_OVER_KB),
            Unit::KjPerMol => Some(1.0 / KJ_PER_MOL_PER_WAVENUMBER),
            Unit::RadianPerSecond => Some(1.0 / RAD_PER_SECOND_PER_WAVENUMBER),
            Unit::Picosecond | Unit::Debye => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantity<T> {
    pub value: T,
    pub unit: Unit,
}

impl<T: Real> Quantity<T> {
    pub fn new(value: T, unit: Unit) -> Self {
        Self { value, unit }
    }
}

/// Converts `q` into `target`.
///
/// Energy, wavenumber, temperature and angular frequency interconvert through
/// `h c N_A`, `h c / k_B` and `2πc`. Picoseconds and debye only convert to
/// themselves.
pub fn convert<T: Real>(q: Quantity<T>, target: Unit) -> Result<Quantity<T>> {
    if q.unit == target {
        return Ok(q);
    }
    let incompatible = QtstError::IncompatibleUnits {
        from: q.unit,
        to: target,
    };
    let (Some(to_cm), Some(target_to_cm)) = (q.unit.to_wavenumber(), target.to_wavenumber()) else {
        return Err(incompatible);
    };
    let wavenumber = q.value * T::lit(to_cm);
    Ok(Quantity::new(wavenumber / T::lit(target_to_cm), target))
}

/// Energy of a wavenumber in kJ/mol.
#[inline]
pub fn wavenumber_to_kj<T: Real>(omega: T) -> T {
    omega * T::lit(constants::KJ_PER_MOL_PER_WAVENUMBER)
}

/// Thermal energy `k_B T` in kJ/mol.
#[inline]
pub fn thermal_kj<T: Real>(temperature: T) -> T {
    temperature * T::lit(constants::GAS_CONSTANT_KJ)
}

/// `ħω / (2 k_B T)` for `omega` in cm⁻¹.
#[inline]
pub fn half_quantum_ratio<T: Real>(omega: T, temperature: T) -> T {
    omega * T::lit(constants::HC_OVER_KB) / (T::lit(2.0) * temperature)
}

/// Angular rate in s⁻¹ for a value in cm⁻¹.
#[inline]
pub fn wavenumber_to_per_second<T: Real>(omega: T) -> T {
    omega * T::lit(constants::RAD_PER_SECOND_PER_WAVENUMBER)
}

/// Hydrogen isotope of the transferred particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Isotope {
    H,
    D,
    T,
}

impl Isotope {
    pub const ALL: [Isotope; 3] = [Isotope::H, Isotope::D, Isotope::T];

    /// Unitless mass number (1, 2, 3).
    pub fn mass_number<T: Real>(self) -> T {
        T::lit(match self {
            Isotope::H => 1.0,
            Isotope::D => 2.0,
            Isotope::T => 3.0,
        })
    }

    /// Particle mass in kg, taken as mass number times the proton mass.
    pub fn mass_kg<T: Real>(self) -> T {
        self.mass_number::<T>() * T::lit(constants::PROTON_MASS)
    }

    pub fn symbol(self) -> char {
        match self {
            Isotope::H => 'H',
            Isotope::D => 'D',
            Isotope::T => 'T',
        }
    }
}

impl fmt::Display for Isotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for Isotope {
    type Err = QtstError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "H" | "h" | "P" | "p" => Ok(Isotope::H),
            "D" | "d" => Ok(Isotope::D),
            "T" | "t" => Ok(Isotope::T),
            other => Err(QtstError::Parse(format!("unknown isotope {other:?}"))),
        }
    }
}

/// Ordered (light, heavy) pair, written `H:D` in text form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IsotopePair {
    pub light: Isotope,
    pub heavy: Isotope,
}

impl IsotopePair {
    pub const H_D: IsotopePair = IsotopePair::new_unchecked(Isotope::H, Isotope::D);
    pub const H_T: IsotopePair = IsotopePair::new_unchecked(Isotope::H, Isotope::T);
    pub const D_T: IsotopePair = IsotopePair::new_unchecked(Isotope::D, Isotope::T);

    const fn new_unchecked(light: Isotope, heavy: Isotope) -> Self {
        Self { light, heavy }
    }

    /// Builds a pair; the light isotope must not be heavier than the heavy one.
    pub fn new(light: Isotope, heavy: Isotope) -> Result<Self> {
        if light > heavy {
            return Err(QtstError::UnsupportedPair(format!("{light}:{heavy}")));
        }
        Ok(Self { light, heavy })
    }
}

impl fmt::Display for IsotopePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.light, self.heavy)
    }
}

impl FromStr for IsotopePair {
    type Err = QtstError;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once([':', '/'])
            .ok_or_else(|| QtstError::Parse(format!("isotope pair {s:?} must look like H:D")))?;
        IsotopePair::new(a.parse()?, b.parse()?)
    }
}

impl Serialize for IsotopePair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IsotopePair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Frequency of isotope `iso` given the hydrogen value: `ω_H / √m`.
///
/// This is the only place isotope scaling of frequencies happens.
#[inline]
pub fn isotope_frequency<T: Real>(omega_h: T, iso: Isotope) -> T {
    omega_h / iso.mass_number::<T>().sqrt()
}
