//! Frequency-dependent friction of the environment.
//!
//! Friction is stored mass-free as `Re γ(ω)` in cm⁻¹, so the spectral density
//! is `J(ω) = M·ω·Re γ(ω)`. The Laplace kernel follows from
//! `γ̂(z) = (2z/π) ∫₀^∞ Re γ(ω) / (ω² + z²) dω` and the effective curvature
//! from `K_e/M = (2/π) ∫₀^∞ Re γ(ω) dω`, reported in cm⁻² (angular
//! wavenumber squared).

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{QtstError, Result};
use crate::numeric::{integrate_segments, Segment};
use crate::real::Real;
use crate::units::{constants, Isotope};

const QUAD_REL_TOL: f64 = 1e-10;

/// `e² / (2π ε₀ Å³ m_p (2πc)²)` in cm⁻²: cavity friction prefactor for a
/// radius in ångström and a mass in proton masses.
const CAVITY_PREFACTOR: f64 = constants::ELEMENTARY_CHARGE * constants::ELEMENTARY_CHARGE
    / (2.0
        * std::f64::consts::PI
        * constants::VACUUM_PERMITTIVITY
        * constants::ANGSTROM
        * constants::ANGSTROM
        * constants::ANGSTROM
        * constants::PROTON_MASS
        * constants::RAD_PER_SECOND_PER_WAVENUMBER
        * constants::RAD_PER_SECOND_PER_WAVENUMBER);

/// `ωτ` for `ω` in cm⁻¹ and `τ` in ps.
const OMEGA_TAU_PER_CM1_PS: f64 = constants::RAD_PER_SECOND_PER_WAVENUMBER * constants::PICOSECOND;

/// Environment coupling models.
///
/// Serialized as a JSON object with a `"kind"` discriminator; the parameter
/// keys carry their unit as a suffix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", bound = "T: Real")]
pub enum FrictionModel<T> {
    /// Memoryless friction: `γ̂(z) = γ`.
    Ohmic { gamma_cm1: T },
    /// Single-timescale regularisation with bath cutoff `ω_D`.
    Drude { gamma_cm1: T, omega_d_cm1: T },
    /// Lorentzian-like peak of height `γ_r`, width `Γ` at `ω_r`.
    Peaked {
        gamma_r_cm1: T,
        width_cm1: T,
        omega_r_cm1: T,
    },
    /// Proton in a spherical cavity of a Debye dielectric.
    DebyeDielectric(DebyeParams<T>),
    /// `Re γ(ω) = (Δγ + Aω)·exp(−ω/ω_c)`; with no cutoff the integrals diverge.
    LinearProtein {
        delta_gamma_cm1: T,
        slope: T,
        #[serde(default = "default_cutoff")]
        cutoff_cm1: Option<T>,
    },
}

fn default_cutoff<T: Real>() -> Option<T> {
    Some(T::lit(400.0))
}

impl<T: Real> FrictionModel<T> {
    /// No coupling to the environment (`γ̂ ≡ 0`).
    pub fn frictionless() -> Self {
        FrictionModel::Ohmic {
            gamma_cm1: T::zero(),
        }
    }

    pub fn ohmic(gamma: T) -> Self {
        FrictionModel::Ohmic { gamma_cm1: gamma }
    }

    pub fn drude(gamma: T, omega_d: T) -> Self {
        FrictionModel::Drude {
            gamma_cm1: gamma,
            omega_d_cm1: omega_d,
        }
    }

    pub fn peaked(gamma_r: T, width: T, omega_r: T) -> Self {
        FrictionModel::Peaked {
            gamma_r_cm1: gamma_r,
            width_cm1: width,
            omega_r_cm1: omega_r,
        }
    }

    /// Linear protein friction with the default 400 cm⁻¹ cutoff.
    pub fn linear_protein(delta_gamma: T, slope: T) -> Self {
        FrictionModel::LinearProtein {
            delta_gamma_cm1: delta_gamma,
            slope,
            cutoff_cm1: default_cutoff(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FrictionModel::Ohmic { .. } => "ohmic",
            FrictionModel::Drude { .. } => "drude",
            FrictionModel::Peaked { .. } => "peaked",
            FrictionModel::DebyeDielectric(_) => "debye_dielectric",
            FrictionModel::LinearProtein { .. } => "linear_protein",
        }
    }

    /// Checks that every parameter is finite and non-negative.
    pub fn validate(&self) -> Result<()> {
        match self {
            FrictionModel::Ohmic { gamma_cm1 } => check("gamma_cm1", *gamma_cm1),
            FrictionModel::Drude {
                gamma_cm1,
                omega_d_cm1,
            } => {
                check("gamma_cm1", *gamma_cm1)?;
                check_positive("omega_d_cm1", *omega_d_cm1)
            }
            FrictionModel::Peaked {
                gamma_r_cm1,
                width_cm1,
                omega_r_cm1,
            } => {
                check("gamma_r_cm1", *gamma_r_cm1)?;
                check("width_cm1", *width_cm1)?;
                check("omega_r_cm1", *omega_r_cm1)
            }
            FrictionModel::DebyeDielectric(p) => p.validate(),
            FrictionModel::LinearProtein {
                delta_gamma_cm1,
                slope,
                cutoff_cm1,
            } => {
                check("delta_gamma_cm1", *delta_gamma_cm1)?;
                check("slope", *slope)?;
                match cutoff_cm1 {
                    Some(c) => check_positive("cutoff_cm1", *c),
                    None => Ok(()),
                }
            }
        }
    }

    /// Breakpoints and tail scale for quadratures over the spectrum.
    fn features(&self) -> (Vec<T>, T) {
        match self {
            FrictionModel::Drude { omega_d_cm1, .. } => (vec![*omega_d_cm1], *omega_d_cm1),
            FrictionModel::Peaked {
                width_cm1,
                omega_r_cm1,
                ..
            } => {
                let (w, r) = (*width_cm1, *omega_r_cm1);
                let mut b = vec![r];
                for k in [0.5, 2.0, 10.0] {
                    b.push((r - T::lit(k) * w).max(T::zero()));
                    b.push(r + T::lit(k) * w);
                }
                (b, r.max(w))
            }
            FrictionModel::DebyeDielectric(p) => {
                let mut b: Vec<T> = p
                    .tau_ps
                    .iter()
                    .filter(|t| **t > T::zero())
                    .map(|t| T::one() / (*t * T::lit(OMEGA_TAU_PER_CM1_PS)))
                    .collect();
                b.push(p.omega_4_cm1);
                let scale = b.iter().fold(T::one(), |m, v| m.max(*v));
                (b, scale)
            }
            FrictionModel::LinearProtein { cutoff_cm1, .. } => {
                let c = cutoff_cm1.unwrap_or_else(|| T::lit(400.0));
                (vec![c, T::lit(5.0) * c], c)
            }
            FrictionModel::Ohmic { .. } => (vec![], T::one()),
        }
    }

    /// `∫₀^∞ w(ω)·Re γ(ω) dω` with breakpoints at the model's features.
    fn spectrum_integral<W: Fn(T) -> T>(&self, weight: W, extra: Option<T>) -> Result<T> {
        let (mut breaks, scale) = self.features();
        breaks.extend(extra);
        breaks.retain(|b| b.is_finite() && *b > T::zero());
        breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        breaks.dedup();
        let mut segs = Vec::with_capacity(breaks.len() + 1);
        let mut lo = T::zero();
        for b in &breaks {
            segs.push(Segment::Finite(lo, *b));
            lo = *b;
        }
        let tail_scale = if lo > T::zero() { lo } else { scale };
        segs.push(Segment::Tail {
            a: lo,
            scale: tail_scale,
        });
        let f = |w: T| weight(w) * self.spectrum_unchecked(w);
        Ok(integrate_segments(f, &segs, QUAD_REL_TOL, 0.0)?.value)
    }

    fn spectrum_unchecked(&self, omega: T) -> T {
        match self {
            FrictionModel::Ohmic { gamma_cm1 } => *gamma_cm1,
            FrictionModel::Drude {
                gamma_cm1,
                omega_d_cm1,
            } => {
                let r = omega / *omega_d_cm1;
                *gamma_cm1 / (T::one() + r * r)
            }
            FrictionModel::Peaked {
                gamma_r_cm1,
                width_cm1,
                omega_r_cm1,
            } => {
                let wg = omega * *width_cm1;
                let d = omega * omega - *omega_r_cm1 * *omega_r_cm1;
                let den = d * d + wg * wg;
                if den == T::zero() {
                    if *omega_r_cm1 == T::zero() && *width_cm1 > T::zero() {
                        *gamma_r_cm1
                    } else {
                        T::zero()
                    }
                } else {
                    *gamma_r_cm1 * wg * wg / den
                }
            }
            FrictionModel::DebyeDielectric(p) => p.friction_unchecked(omega),
            FrictionModel::LinearProtein {
                delta_gamma_cm1,
                slope,
                cutoff_cm1,
            } => {
                let base = *delta_gamma_cm1 + *slope * omega;
                match cutoff_cm1 {
                    Some(c) => base * (-omega / *c).exp(),
                    None => base,
                }
            }
        }
    }
}

fn check<T: Real>(what: &'static str, v: T) -> Result<()> {
    if v.is_finite() && v >= T::zero() {
        Ok(())
    } else {
        Err(QtstError::InvalidParameter { what, value: v.f64() })
    }
}

fn check_positive<T: Real>(what: &'static str, v: T) -> Result<()> {
    if v.is_finite() && v > T::zero() {
        Ok(())
    } else {
        Err(QtstError::NonPositive { what, value: v.f64() })
    }
}

/// Water dielectric relaxation in a spherical cavity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct DebyeParams<T> {
    /// Relaxation strengths Δε₁..Δε₄.
    #[serde(default = "water_delta_eps")]
    pub delta_eps: [T; 4],
    /// Relaxation times τ₁..τ₄ in ps.
    #[serde(default = "water_tau")]
    pub tau_ps: [T; 4],
    /// Resonance of the damped fourth term, cm⁻¹.
    #[serde(default = "water_omega_4")]
    pub omega_4_cm1: T,
    #[serde(default = "water_eps_inf")]
    pub eps_inf: T,
    /// Static dielectric constant inside the cavity.
    #[serde(default = "protein_eps_c")]
    pub eps_c: T,
    pub cavity_radius_angstrom: T,
    /// Particle mass in proton masses.
    #[serde(default = "proton")]
    pub mass_proton: T,
}

fn water_delta_eps<T: Real>() -> [T; 4] {
    [71.5, 2.8, 1.6, 0.92].map(T::lit)
}
fn water_tau<T: Real>() -> [T; 4] {
    [8.3, 1.0, 0.1, 0.025].map(T::lit)
}
fn water_omega_4<T: Real>() -> T {
    T::lit(175.0)
}
fn water_eps_inf<T: Real>() -> T {
    T::lit(1.54)
}
fn protein_eps_c<T: Real>() -> T {
    T::lit(4.0)
}
fn proton<T: Real>() -> T {
    T::one()
}

impl<T: Real> DebyeParams<T> {
    /// Room-temperature water coefficients around a proton.
    pub fn water(cavity_radius_angstrom: T) -> Self {
        Self {
            delta_eps: water_delta_eps(),
            tau_ps: water_tau(),
            omega_4_cm1: water_omega_4(),
            eps_inf: water_eps_inf(),
            eps_c: protein_eps_c(),
            cavity_radius_angstrom,
            mass_proton: proton(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for v in self.delta_eps {
            check("delta_eps", v)?;
        }
        for v in self.tau_ps {
            check("tau_ps", v)?;
        }
        check_positive("omega_4_cm1", self.omega_4_cm1)?;
        check("eps_inf", self.eps_inf)?;
        check("eps_c", self.eps_c)?;
        check_positive("cavity_radius_angstrom", self.cavity_radius_angstrom)?;
        check_positive("mass_proton", self.mass_proton)
    }

    /// `ε_s(0) = ε_∞ + ΣΔε`.
    pub fn static_permittivity(&self) -> T {
        self.delta_eps.iter().fold(self.eps_inf, |s, d| s + *d)
    }

    fn prefactor(&self) -> T {
        let a = self.cavity_radius_angstrom;
        T::lit(CAVITY_PREFACTOR) / (a * a * a * self.mass_proton)
    }

    fn friction_unchecked(&self, omega: T) -> T {
        if omega == T::zero() {
            // Im f(ε(ω)) ≈ f′(ε_s(0))·ω·Σ Δε_i τ_i as ω → 0.
            let e0 = self.static_permittivity();
            let ec = self.eps_c;
            let den = T::lit(2.0) * e0 + ec;
            let slope = self
                .delta_eps
                .iter()
                .zip(&self.tau_ps)
                .fold(T::zero(), |s, (d, t)| s + *d * *t)
                * T::lit(OMEGA_TAU_PER_CM1_PS);
            return self.prefactor() * T::lit(3.0) * ec / (den * den) * slope;
        }
        let eps = debye_dielectric(self, omega);
        let ec = Complex::new(self.eps_c, T::zero());
        let ratio = (eps - ec) / (eps * T::lit(2.0) + ec);
        self.prefactor() / omega * ratio.im
    }
}

/// Reorganisation-energy estimate of the friction felt by a transferred
/// particle near a chromophore.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ChromophoreEstimate<T> {
    pub e_r_cm1: T,
    pub delta_mu_debye: T,
    pub mass_number: T,
    /// `(ħe/Δμ)²/M` expressed in cm⁻¹.
    pub conversion_cm1: T,
    /// `K_e/M` in cm⁻².
    pub k_e_per_mass_cm2: T,
    /// `K_e` in N/m.
    pub k_e_n_per_m: T,
    /// `z*` with `γ̂(z)/z ≤ (z*/z)²`, cm⁻¹.
    pub bound_scale_cm1: T,
}

/// `γ̂(z)` in cm⁻¹ for `z > 0` in cm⁻¹.
pub fn laplace_kernel<T: Real>(model: &FrictionModel<T>, z: T) -> Result<T> {
    if !(z > T::zero() && z.is_finite()) {
        return Err(QtstError::NonPositive { what: "z", value: z.f64() });
    }
    model.validate()?;
    let v = match model {
        FrictionModel::Ohmic { gamma_cm1 } => *gamma_cm1,
        FrictionModel::Drude {
            gamma_cm1,
            omega_d_cm1,
        } => *gamma_cm1 / (T::one() + z / *omega_d_cm1),
        FrictionModel::Peaked {
            gamma_r_cm1,
            width_cm1,
            omega_r_cm1,
        } => {
            let zg = z * *width_cm1;
            *gamma_r_cm1 * zg / (z * z + *omega_r_cm1 * *omega_r_cm1 + zg)
        }
        FrictionModel::LinearProtein {
            delta_gamma_cm1,
            slope,
            cutoff_cm1: None,
        } => {
            if *slope == T::zero() {
                *delta_gamma_cm1
            } else {
                return Err(QtstError::DivergentIntegral { model: model.kind() });
            }
        }
        FrictionModel::DebyeDielectric(_) | FrictionModel::LinearProtein { .. } => {
            let z2 = z * z;
            let i = model.spectrum_integral(|w| T::one() / (w * w + z2), Some(z))?;
            T::lit(2.0) * z / T::PI() * i
        }
    };
    Ok(v)
}

/// `Re γ(ω) = J(ω)/(Mω)` in cm⁻¹ for `ω ≥ 0` in cm⁻¹.
pub fn friction_spectrum<T: Real>(model: &FrictionModel<T>, omega: T) -> Result<T> {
    if !(omega >= T::zero() && omega.is_finite()) {
        return Err(QtstError::InvalidParameter {
            what: "omega",
            value: omega.f64(),
        });
    }
    model.validate()?;
    Ok(model.spectrum_unchecked(omega))
}

/// `J(ω)/M = ω·Re γ(ω)` in cm⁻².
pub fn spectral_density_per_mass<T: Real>(model: &FrictionModel<T>, omega: T) -> Result<T> {
    Ok(omega * friction_spectrum(model, omega)?)
}

/// `K_e/M = (2/π) ∫₀^∞ Re γ(ω) dω` in cm⁻².
pub fn effective_curvature<T: Real>(model: &FrictionModel<T>) -> Result<T> {
    model.validate()?;
    let two_over_pi = T::lit(2.0) / T::PI();
    match model {
        FrictionModel::Ohmic { gamma_cm1 } if *gamma_cm1 == T::zero() => Ok(T::zero()),
        FrictionModel::Ohmic { .. } => Err(QtstError::DivergentIntegral { model: model.kind() }),
        FrictionModel::LinearProtein {
            delta_gamma_cm1,
            slope,
            cutoff_cm1,
        } => match cutoff_cm1 {
            Some(c) => Ok(two_over_pi * (*delta_gamma_cm1 * *c + *slope * *c * *c)),
            None if *delta_gamma_cm1 == T::zero() && *slope == T::zero() => Ok(T::zero()),
            None => Err(QtstError::DivergentIntegral { model: model.kind() }),
        },
        FrictionModel::Drude {
            gamma_cm1,
            omega_d_cm1,
        } => Ok(*gamma_cm1 * *omega_d_cm1),
        FrictionModel::Peaked {
            gamma_r_cm1,
            width_cm1,
            ..
        } => Ok(*gamma_r_cm1 * *width_cm1),
        FrictionModel::DebyeDielectric(_) => Ok(two_over_pi * model.spectrum_integral(|_| T::one(), None)?),
    }
}

/// `K_e` in N/m for a particle of `mass_kg`.
pub fn effective_curvature_si<T: Real>(model: &FrictionModel<T>, mass_kg: T) -> Result<T> {
    let w = T::lit(constants::RAD_PER_SECOND_PER_WAVENUMBER);
    Ok(effective_curvature(model)? * mass_kg * w * w)
}

/// Upper bound `K_e/(Mz)` on `γ̂(z)`, cm⁻¹.
pub fn kernel_upper_bound<T: Real>(model: &FrictionModel<T>, z: T) -> Result<T> {
    if !(z > T::zero() && z.is_finite()) {
        return Err(QtstError::NonPositive { what: "z", value: z.f64() });
    }
    Ok(effective_curvature(model)? / z)
}

/// Friction estimate from a chromophore's reorganisation energy `e_r` (cm⁻¹)
/// and dipole change `delta_mu` (debye), for a particle of isotope `mass`.
pub fn chromophore_estimate<T: Real>(e_r: T, delta_mu: T, mass: Isotope) -> Result<ChromophoreEstimate<T>> {
    if !(delta_mu > T::zero() && delta_mu.is_finite()) {
        return Err(QtstError::NonPositive {
            what: "delta_mu",
            value: delta_mu.f64(),
        });
    }
    check("e_r", e_r)?;
    let m = mass.mass_number::<T>();
    let mu_si = delta_mu.f64() * constants::DEBYE;
    let x_joule = (constants::HBAR * constants::ELEMENTARY_CHARGE / mu_si).powi(2) / (m.f64() * constants::PROTON_MASS);
    let conversion = T::lit(x_joule / constants::HC_J_CM);
    let k_e_per_mass = T::lit(2.0) / T::PI() * conversion * e_r;
    let w = T::lit(constants::RAD_PER_SECOND_PER_WAVENUMBER);
    Ok(ChromophoreEstimate {
        e_r_cm1: e_r,
        delta_mu_debye: delta_mu,
        mass_number: m,
        conversion_cm1: conversion,
        k_e_per_mass_cm2: k_e_per_mass,
        k_e_n_per_m: k_e_per_mass * mass.mass_kg::<T>() * w * w,
        bound_scale_cm1: k_e_per_mass.sqrt(),
    })
}

/// Complex permittivity `ε_s(ω)` of the relaxing solvent, `ω` in cm⁻¹.
///
/// Uses the loss-positive sign convention, so `Im ε_s ≥ 0` for `ω ≥ 0`.
pub fn debye_dielectric<T: Real>(params: &DebyeParams<T>, omega: T) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let mut eps = Complex::new(params.eps_inf, T::zero());
    for i in 0..3 {
        let wt = omega * params.tau_ps[i] * T::lit(OMEGA_TAU_PER_CM1_PS);
        eps = eps + Complex::new(params.delta_eps[i], T::zero()) / (one - Complex::new(T::zero(), wt));
    }
    let wt4 = omega * params.tau_ps[3] * T::lit(OMEGA_TAU_PER_CM1_PS);
    let r = omega / params.omega_4_cm1;
    eps + Complex::new(params.delta_eps[3], T::zero()) / Complex::new(T::one() - r * r, -wt4)
}

/// `Re γ(ω)` in cm⁻¹ of a particle at the centre of a dielectric cavity.
pub fn cavity_friction<T: Real>(params: &DebyeParams<T>, omega: T) -> Result<T> {
    if !(omega > T::zero() && omega.is_finite()) {
        return Err(QtstError::NonPositive {
            what: "omega",
            value: omega.f64(),
        });
    }
    params.validate()?;
    Ok(params.friction_unchecked(omega))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn log_grid(n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |i| 10f64.powf(4.0 * i as f64 / (n - 1) as f64))
    }

    #[test]
    fn ohmic_kernel_is_constant() {
        let m = FrictionModel::ohmic(50.0);
        for z in [0.1, 1.0, 1e3, 1e6] {
            assert_eq!(laplace_kernel(&m, z).unwrap(), 50.0);
        }
        assert!(laplace_kernel(&m, 0.0).is_err());
    }

    #[test]
    fn drude_kernel_and_spectrum() {
        let m = FrictionModel::drude(100.0, 100.0);
        assert_eq!(laplace_kernel(&m, 100.0).unwrap(), 50.0);
        assert_eq!(friction_spectrum(&m, 0.0).unwrap(), 100.0);
        assert_eq!(friction_spectrum(&m, 100.0).unwrap(), 50.0);
    }

    #[test]
    fn peaked_values() {
        let (g, w, r) = (30.0, 20.0, 200.0);
        let m = FrictionModel::peaked(g, w, r);
        assert_eq!(friction_spectrum(&m, r).unwrap(), g);
        // At z = ω_r = 10Γ the asymptotic γ_rΓ/z holds to order of magnitude
        // (exactly zΓ/(2z² + zΓ) = 1/2.1 of it); far above ω_r it becomes exact.
        let at_peak = laplace_kernel(&m, r).unwrap() * r / (g * w);
        assert_relative_eq!(at_peak, 1.0 / 2.1, max_relative = 1e-14);
        let z = 1000.0 * r;
        assert_relative_eq!(laplace_kernel(&m, z).unwrap(), g * w / z, max_relative = 1e-3);
    }

    #[test]
    fn peaked_kernel_agrees_with_spectrum_transform() {
        // The closed-form kernel must equal the transform of the spectrum.
        let m = FrictionModel::peaked(30.0, 45.0, 600.0);
        for z in [5.0, 300.0, 600.0, 2500.0] {
            let numeric = 2.0 * z / std::f64::consts::PI
                * m.spectrum_integral(|w| 1.0 / (w * w + z * z), Some(z)).unwrap();
            assert_relative_eq!(numeric, laplace_kernel(&m, z).unwrap(), max_relative = 1e-8);
        }
    }

    #[test]
    fn curvature() {
        assert!(matches!(
            effective_curvature(&FrictionModel::ohmic(10.0)),
            Err(QtstError::DivergentIntegral { .. })
        ));
        assert_eq!(effective_curvature(&FrictionModel::drude(40.0, 250.0)).unwrap(), 10_000.0);
        assert_eq!(effective_curvature(&FrictionModel::<f64>::frictionless()).unwrap(), 0.0);
        assert_eq!(kernel_upper_bound(&FrictionModel::<f64>::frictionless(), 3.0).unwrap(), 0.0);
        let open = FrictionModel::LinearProtein {
            delta_gamma_cm1: 20.0,
            slope: 0.38,
            cutoff_cm1: None,
        };
        assert!(effective_curvature(&open).is_err());
        assert!(laplace_kernel(&open, 100.0).is_err());
    }

    #[test]
    fn peaked_curvature_matches_trapezoid_oracle() {
        let (g, w, r) = (30.0, 45.0, 600.0);
        let m = FrictionModel::peaked(g, w, r);
        let spec = |x: f64| g * (x * w).powi(2) / ((x * x - r * r).powi(2) + (x * w).powi(2));
        // Dense trapezoid on [0, 2e5] with the analytic 1/ω² tail beyond.
        let n = 4_000_000;
        let top = 2e5;
        let h = top / n as f64;
        let mut s = 0.5 * (spec(0.0) + spec(top));
        for i in 1..n {
            s += spec(i as f64 * h);
        }
        let tail = g * w * w / top;
        let oracle = 2.0 / std::f64::consts::PI * (s * h + tail);
        let got = effective_curvature(&m).unwrap();
        assert_relative_eq!(got, oracle, max_relative = 1e-6);
        let numeric = 2.0 / std::f64::consts::PI * m.spectrum_integral(|_| 1.0, None).unwrap();
        assert_relative_eq!(numeric, got, max_relative = 1e-8);
    }

    #[test]
    fn drude_bound() {
        let m = FrictionModel::drude(40.0, 250.0);
        assert_relative_eq!(kernel_upper_bound(&m, 50.0).unwrap(), 40.0 * 250.0 / 50.0);
    }

    #[test]
    fn bound_holds_on_grid() {
        let models = [
            FrictionModel::drude(100.0, 100.0),
            FrictionModel::drude(500.0, 3000.0),
            FrictionModel::peaked(30.0, 45.0, 600.0),
            FrictionModel::peaked(300.0, 5.0, 20.0),
            FrictionModel::linear_protein(20.0, 0.38),
            FrictionModel::DebyeDielectric(DebyeParams::water(3.0)),
        ];
        for m in &models {
            for z in log_grid(41) {
                let k = laplace_kernel(m, z).unwrap();
                let b = kernel_upper_bound(m, z).unwrap();
                assert!(k <= b * (1.0 + 1e-9), "{} at z={z}: {k} > {b}", m.kind());
            }
        }
    }

    #[test]
    fn drude_approaches_ohmic() {
        let z = 10.0_f64;
        let k = laplace_kernel(&FrictionModel::drude(75.0, 1e6 * z), z).unwrap();
        assert!((k - 75.0).abs() / 75.0 < 1e-3);
    }

    #[test]
    fn linear_protein_kernel_matches_closed_curvature() {
        let m = FrictionModel::linear_protein(20.0, 0.38);
        let numeric = 2.0 / std::f64::consts::PI * m.spectrum_integral(|_| 1.0, None).unwrap();
        assert_relative_eq!(numeric, effective_curvature(&m).unwrap(), max_relative = 1e-9);
        // z·γ̂(z) → K_e/M for z far above the cutoff.
        let z = 1e6;
        assert_relative_eq!(
            z * laplace_kernel(&m, z).unwrap(),
            effective_curvature(&m).unwrap(),
            max_relative = 1e-3
        );
    }

    #[test]
    fn chromophore_conversion() {
        // (ħe/Δμ)²/M for a proton, re-derived from raw CODATA numbers.
        let hbar = 6.626_070_15e-34 / (2.0 * std::f64::consts::PI);
        let debye = 1e-21 / 299_792_458.0;
        let x = |d: f64| (hbar * 1.602_176_634e-19 / (d * debye)).powi(2) / 1.672_621_923_69e-27 / (6.626_070_15e-34 * 2.997_924_58e10);
        let one = chromophore_estimate(1000.0, 1.0, Isotope::H).unwrap();
        assert_relative_eq!(one.conversion_cm1, x(1.0), max_relative = 1e-12);
        assert_relative_eq!(one.conversion_cm1, 772.2181, max_relative = 1e-6);
        let five = chromophore_estimate(1000.0, 5.0, Isotope::H).unwrap();
        assert_relative_eq!(five.conversion_cm1, 30.8887, max_relative = 1e-5);
        assert_relative_eq!(five.bound_scale_cm1, 140.2297, max_relative = 1e-6);
        assert!(five.bound_scale_cm1 > 15.0 && five.bound_scale_cm1 < 1500.0);
        let zero = chromophore_estimate(0.0, 5.0, Isotope::H).unwrap();
        assert_eq!(zero.k_e_per_mass_cm2, 0.0);
        assert_eq!(zero.bound_scale_cm1, 0.0);
        assert!(chromophore_estimate(1000.0, 0.0, Isotope::H).is_err());
    }

    proptest! {
        #[test]
        fn chromophore_linearity(er in 1.0f64..5000.0, dmu in 0.1f64..20.0, k in 0.1f64..10.0) {
            let a = chromophore_estimate(er, dmu, Isotope::D).unwrap().k_e_per_mass_cm2;
            let b = chromophore_estimate(k * er, dmu, Isotope::D).unwrap().k_e_per_mass_cm2;
            let c = chromophore_estimate(er, dmu * k.sqrt(), Isotope::D).unwrap().k_e_per_mass_cm2;
            prop_assert!((b / a - k).abs() < 1e-10 * k);
            prop_assert!((c * k / a - 1.0).abs() < 1e-10);
        }

        #[test]
        fn spectrum_non_negative(g in 0.0f64..1e3, w in 0.0f64..500.0, r in 0.0f64..3000.0, om in 0.0f64..1e4) {
            for m in [
                FrictionModel::ohmic(g),
                FrictionModel::drude(g, w + 1.0),
                FrictionModel::peaked(g, w, r),
                FrictionModel::linear_protein(g, w / 100.0),
            ] {
                prop_assert!(friction_spectrum(&m, om).unwrap() >= 0.0);
            }
        }
    }

    #[test]
    fn dielectric_limits() {
        let p = DebyeParams::<f64>::water(3.0);
        let e0 = debye_dielectric(&p, 0.0);
        assert_relative_eq!(e0.re, 1.54 + 76.82, max_relative = 1e-14);
        assert_eq!(e0.im, 0.0);
        let inf = debye_dielectric(&p, 1e12);
        assert!((inf.re - 1.54).abs() < 1e-6 && inf.im.abs() < 1e-6);
        let w1 = 1.0 / (8.3 * OMEGA_TAU_PER_CM1_PS);
        let single = DebyeParams {
            delta_eps: [71.5, 0.0, 0.0, 0.0],
            eps_inf: 0.0,
            ..p.clone()
        };
        assert_relative_eq!(debye_dielectric(&single, w1).re, 71.5 / 2.0, max_relative = 1e-12);
        for w in log_grid(60) {
            assert!(debye_dielectric(&p, w).im >= 0.0);
        }
    }

    #[test]
    fn cavity_friction_properties() {
        let p = DebyeParams::water(3.0);
        let lossless = DebyeParams {
            tau_ps: [0.0; 4],
            ..p.clone()
        };
        assert_eq!(cavity_friction(&lossless, 100.0).unwrap(), 0.0);
        let big = DebyeParams {
            cavity_radius_angstrom: 6.0,
            ..p.clone()
        };
        assert_relative_eq!(
            cavity_friction(&big, 50.0).unwrap() * 8.0,
            cavity_friction(&p, 50.0).unwrap(),
            max_relative = 1e-14
        );
        let bad = DebyeParams {
            cavity_radius_angstrom: 0.0,
            ..p.clone()
        };
        assert!(cavity_friction(&bad, 100.0).is_err());
    }

    #[test]
    fn cavity_friction_matches_si_oracle() {
        // Direct SI evaluation: ω in rad/s, τ in s, lengths in m.
        use num_complex::Complex64;
        let c = 2.997_924_58e10;
        let wn = 100.0;
        let w = 2.0 * std::f64::consts::PI * c * wn;
        let de = [71.5, 2.8, 1.6, 0.92];
        let tau = [8.3e-12, 1.0e-12, 0.1e-12, 0.025e-12];
        let w4 = 2.0 * std::f64::consts::PI * c * 175.0;
        let mut eps = Complex64::new(1.54, 0.0);
        for i in 0..3 {
            eps += de[i] / Complex64::new(1.0, -w * tau[i]);
        }
        eps += de[3] / Complex64::new(1.0 - (w / w4).powi(2), -w * tau[3]);
        let ec = 4.0;
        let f = (eps - ec) / (2.0 * eps + ec);
        let a: f64 = 3.0e-10;
        let e = 1.602_176_634e-19;
        let gamma_si = e * e / (2.0 * std::f64::consts::PI * 8.854_187_812_8e-12 * a.powi(3) * 1.672_621_923_69e-27 * w) * f.im;
        let oracle = gamma_si / (2.0 * std::f64::consts::PI * c);
        let got = cavity_friction(&DebyeParams::water(3.0), wn).unwrap();
        assert_relative_eq!(got, oracle, max_relative = 1e-10);
    }

    #[test]
    fn debye_zero_frequency_limit_is_continuous() {
        let m = FrictionModel::DebyeDielectric(DebyeParams::water(3.0));
        let at0 = friction_spectrum(&m, 0.0).unwrap();
        let near = friction_spectrum(&m, 1e-5).unwrap();
        assert_relative_eq!(at0, near, max_relative = 1e-4);
    }

    #[test]
    fn json_round_trip() {
        let models = vec![
            FrictionModel::ohmic(50.0),
            FrictionModel::drude(10.0, 200.0),
            FrictionModel::peaked(1.0, 2.0, 3.0),
            FrictionModel::DebyeDielectric(DebyeParams::water(3.0)),
            FrictionModel::linear_protein(20.0, 0.38),
        ];
        for m in models {
            let s = serde_json::to_string(&m).unwrap();
            let back: FrictionModel<f64> = serde_json::from_str(&s).unwrap();
            assert_eq!(back, m);
        }
        let m: FrictionModel<f64> = serde_json::from_str(r#"{"kind":"drude","gamma_cm1":5,"omega_d_cm1":7}"#).unwrap();
        assert_eq!(m, FrictionModel::drude(5.0, 7.0));
        let d: FrictionModel<f64> =
            serde_json::from_str(r#"{"kind":"debye_dielectric","cavity_radius_angstrom":2.5}"#).unwrap();
        assert_eq!(d, FrictionModel::DebyeDielectric(DebyeParams::water(2.5)));
        let lp: FrictionModel<f64> =
            serde_json::from_str(r#"{"kind":"linear_protein","delta_gamma_cm1":20,"slope":0.38}"#).unwrap();
        assert_eq!(lp, FrictionModel::linear_protein(20.0, 0.38));
    }

    #[test]
    fn single_precision_kernel() {
        let m = FrictionModel::<f32>::drude(100.0, 100.0);
        assert_eq!(laplace_kernel(&m, 100.0).unwrap(), 50.0);
        let d = FrictionModel::<f32>::DebyeDielectric(DebyeParams::water(3.0));
        let k = laplace_kernel(&d, 500.0).unwrap();
        let k64 = laplace_kernel(&FrictionModel::DebyeDielectric(DebyeParams::water(3.0)), 500.0).unwrap();
        assert!((f64::from(k) / k64 - 1.0).abs() < 1e-4);
    }
}
