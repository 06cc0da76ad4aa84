//! Classical Kramers theory with memory friction.

use serde::{Deserialize, Serialize};

use crate::error::{QtstError, Result};
use crate::numeric::bisect;
use crate::real::Real;
use crate::spectral::{laplace_kernel, FrictionModel};
use crate::units::{constants, isotope_frequency, thermal_kj, wavenumber_to_per_second, Isotope};

/// Reaction-coordinate parameters. Frequencies are quoted for hydrogen and
/// scaled to `isotope` on access.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct BarrierSystem<T> {
    pub omega0_h_cm1: T,
    pub omegab_h_cm1: T,
    pub e_b_kj_mol: T,
    pub isotope: Isotope,
}

impl<T: Real> BarrierSystem<T> {
    pub fn new(omega0_h: T, omegab_h: T, e_b: T, isotope: Isotope) -> Result<Self> {
        let sys = Self {
            omega0_h_cm1: omega0_h,
            omegab_h_cm1: omegab_h,
            e_b_kj_mol: e_b,
            isotope,
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn validate(&self) -> Result<()> {
        positive("omega0_h_cm1", self.omega0_h_cm1)?;
        positive("omegab_h_cm1", self.omegab_h_cm1)?;
        if !(self.e_b_kj_mol >= T::zero() && self.e_b_kj_mol.is_finite()) {
            return Err(QtstError::InvalidParameter {
                what: "e_b_kj_mol",
                value: self.e_b_kj_mol.f64(),
            });
        }
        Ok(())
    }

    pub fn with_isotope(self, isotope: Isotope) -> Self {
        Self { isotope, ..self }
    }

    /// Well frequency of the current isotope, cm⁻¹.
    pub fn omega0(&self) -> T {
        isotope_frequency(self.omega0_h_cm1, self.isotope)
    }

    /// Barrier frequency of the current isotope, cm⁻¹.
    pub fn omegab(&self) -> T {
        isotope_frequency(self.omegab_h_cm1, self.isotope)
    }

    /// `exp(−E_b/k_BT)`.
    pub fn boltzmann(&self, temperature: T) -> T {
        (-self.e_b_kj_mol / thermal_kj(temperature)).exp()
    }
}

pub(crate) fn positive<T: Real>(what: &'static str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(QtstError::NonPositive { what, value: v.f64() })
    }
}

/// Friction-renormalised barrier frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct EffectiveBarrier<T> {
    #[serde(rename = "mu_cm1")]
    pub mu: T,
    #[serde(rename = "T0_K")]
    pub t0: T,
    /// `μ − (√(γ̂(μ)²/4 + ω_b²) − γ̂(μ)/2)` at the returned `μ`, cm⁻¹.
    pub residual: T,
}

/// Solves `μ = √(γ̂(μ)²/4 + ω_b²) − γ̂(μ)/2` for the isotope-scaled barrier.
///
/// The equivalent form `μ² + μγ̂(μ) − ω_b² = 0` is strictly increasing in `μ`
/// for any non-negative friction spectrum, so the root on `(0, ω_b]` is unique.
/// It is bracketed by bisection and polished with one Newton step. Drude
/// friction is cross-checked against the cubic [`drude_cubic_root`].
pub fn effective_barrier_frequency<T: Real>(
    sys: &BarrierSystem<T>,
    model: &FrictionModel<T>,
) -> Result<EffectiveBarrier<T>> {
    sys.validate()?;
    model.validate()?;
    let wb = sys.omegab();
    let g = |mu: T| -> Result<T> { Ok(mu * mu + mu * laplace_kernel(model, mu)? - wb * wb) };
    let g_top = g(wb)?;
    let mu = if g_top == T::zero() {
        wb
    } else {
        let lo = wb * T::epsilon();
        let mut failure = None;
        let xtol = wb * T::tol(1e-13);
        let root = bisect(
            |m| match g(m) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    T::nan()
                }
            },
            lo,
            wb,
            xtol,
            400,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        newton_polish(root?, lo, wb, &g)?
    };
    let residual = fixed_point_residual(model, wb, mu)?;
    if let FrictionModel::Drude {
        gamma_cm1,
        omega_d_cm1,
    } = model
    {
        let cubic = drude_cubic_root(wb, *gamma_cm1, *omega_d_cm1)?;
        if (cubic - mu).abs() > wb * T::tol(1e-9) {
            return Err(QtstError::SolverNonconvergence {
                lo: mu.min(cubic).f64(),
                hi: mu.max(cubic).f64(),
            });
        }
    }
    Ok(EffectiveBarrier {
        mu,
        t0: crossover_temperature(mu)?,
        residual,
    })
}

fn newton_polish<T: Real, G: Fn(T) -> Result<T>>(mu: T, lo: T, hi: T, g: &G) -> Result<T> {
    let g0 = g(mu)?;
    if g0 == T::zero() {
        return Ok(mu);
    }
    let h = mu * T::lit(1e-6);
    let slope = (g(mu + h)? - g(mu - h)?) / (h + h);
    if !(slope > T::zero()) {
        return Ok(mu);
    }
    let next = mu - g0 / slope;
    if next > lo && next <= hi && g(next)?.abs() < g0.abs() {
        Ok(next)
    } else {
        Ok(mu)
    }
}

fn fixed_point_residual<T: Real>(model: &FrictionModel<T>, wb: T, mu: T) -> Result<T> {
    let k = laplace_kernel(model, mu)?;
    let half = T::lit(0.5);
    Ok(mu - ((k * k / T::lit(4.0) + wb * wb).sqrt() - half * k))
}

/// Positive root of `μ³ + ω_Dμ² + (ω_Dγ − ω_b²)μ − ω_b²ω_D = 0`.
///
/// The cubic is convex on `μ > 0` and non-negative at `ω_b`, so Newton's
/// method started at `ω_b` decreases monotonically onto the root.
pub fn drude_cubic_root<T: Real>(omegab: T, gamma: T, omega_d: T) -> Result<T> {
    positive("omegab", omegab)?;
    positive("omega_d", omega_d)?;
    let c1 = omega_d * gamma - omegab * omegab;
    let c0 = -omegab * omegab * omega_d;
    let p = |m: T| ((m + omega_d) * m + c1) * m + c0;
    let dp = |m: T| (T::lit(3.0) * m + T::lit(2.0) * omega_d) * m + c1;
    let mut m = omegab;
    for _ in 0..200 {
        let v = p(m);
        let d = dp(m);
        if v <= T::zero() || d <= T::zero() {
            return Ok(m);
        }
        let next = m - v / d;
        if next >= m {
            return Ok(m);
        }
        m = next;
    }
    Err(QtstError::SolverNonconvergence {
        lo: 0.0,
        hi: m.f64(),
    })
}

/// `T₀ = ħμ/(2πk_B)` in kelvin for `μ` in cm⁻¹.
pub fn crossover_temperature<T: Real>(mu: T) -> Result<T> {
    if !(mu >= T::zero() && mu.is_finite()) {
        return Err(QtstError::InvalidParameter {
            what: "mu",
            value: mu.f64(),
        });
    }
    Ok(mu * T::lit(constants::CROSSOVER_K_PER_WAVENUMBER))
}

/// Classical Kramers rate in angular wavenumber units and in s⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ClassicalRate<T> {
    pub rate_cm1: T,
    pub rate_per_s: T,
    pub mu_cm1: T,
}

/// `k_cl = (μ/ω_b)(ω₀/2π) exp(−E_b/k_BT)` for the system's isotope.
pub fn classical_rate<T: Real>(
    sys: &BarrierSystem<T>,
    model: &FrictionModel<T>,
    temperature: T,
) -> Result<ClassicalRate<T>> {
    positive("temperature", temperature)?;
    let eb = effective_barrier_frequency(sys, model)?;
    let k = eb.mu / sys.omegab() * sys.omega0() / (T::lit(2.0) * T::PI()) * sys.boltzmann(temperature);
    Ok(ClassicalRate {
        rate_cm1: k,
        rate_per_s: wavenumber_to_per_second(k),
        mu_cm1: eb.mu,
    })
}

/// `(μ/ω_b)_light / (μ/ω_b)_heavy`; independent of temperature.
pub fn classical_kie<T: Real>(
    sys: &BarrierSystem<T>,
    model: &FrictionModel<T>,
    temperature: T,
    light: Isotope,
    heavy: Isotope,
) -> Result<T> {
    positive("temperature", temperature)?;
    if light > heavy {
        return Err(QtstError::UnsupportedPair(format!("{light}:{heavy}")));
    }
    let ratio = |iso: Isotope| -> Result<T> {
        let s = sys.with_isotope(iso);
        Ok(effective_barrier_frequency(&s, model)?.mu / s.omegab())
    };
    Ok(ratio(light)? / ratio(heavy)?)
}
