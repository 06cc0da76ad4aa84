//! Quantum corrections to the Kramers rate above the crossover temperature.

use serde::{Deserialize, Serialize};

use crate::error::{QtstError, Result};
use crate::kramers::{classical_rate, crossover_temperature, effective_barrier_frequency, positive, BarrierSystem};
use crate::numeric::{erfcx, sinc, sinhc};
use crate::real::Real;
use crate::spectral::{laplace_kernel, FrictionModel};
use crate::units::{constants, half_quantum_ratio, thermal_kj, wavenumber_to_kj, wavenumber_to_per_second, Isotope};

/// Temperatures below this multiple of `T₀` are flagged as near crossover.
pub const NEAR_CROSSOVER: f64 = 1.1;
/// Lower edge, as a multiple of `T₀`, of the crossover formula's regime.
pub const CROSSOVER_FORMULA_MIN: f64 = 0.9;
/// Relative distance from `T₀` inside which the closed form refuses to evaluate.
pub const DIVERGENCE_GUARD: f64 = 1e-9;

const MAX_TERMS: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    HighT,
    NearCrossover,
    InvalidBelowT0,
}

impl Regime {
    pub fn classify<T: Real>(temperature: T, t0: T) -> Self {
        if temperature <= t0 {
            Regime::InvalidBelowT0
        } else if temperature < T::lit(NEAR_CROSSOVER) * t0 {
            Regime::NearCrossover
        } else {
            Regime::HighT
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::HighT => "high_t",
            Regime::NearCrossover => "near_crossover",
            Regime::InvalidBelowT0 => "invalid_below_t0",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct CorrectionResult<T> {
    pub c_qm: T,
    pub regime: Regime,
    /// Number of Matsubara factors multiplied explicitly (0 for closed forms).
    pub terms_used: usize,
    /// Estimated contribution of the omitted factors to `ln c_qm`.
    pub tail_estimate: T,
}

/// `ν_n = 2πn k_BT/ħ` in cm⁻¹.
pub fn matsubara_frequency<T: Real>(n: usize, temperature: T) -> Result<T> {
    positive("temperature", temperature)?;
    Ok(T::lit(n as f64) * temperature / T::lit(constants::CROSSOVER_K_PER_WAVENUMBER))
}

/// `(ω_b/ω₀)·sinh(ħω₀/2k_BT)/sin(ħω_b/2k_BT)` written as `sinhc(x₀)/sinc(x_b)`.
fn sinh_sin_ratio<T: Real>(omega0: T, omegab: T, temperature: T) -> T {
    sinhc(half_quantum_ratio(omega0, temperature)) / sinc(half_quantum_ratio(omegab, temperature))
}

/// Weak-friction correction `(ω_b/ω₀)·sinh(ħω₀/2k_BT)/sin(ħω_b/2k_BT)`.
///
/// Frequencies are used as given (no isotope scaling). Fails below
/// `T₀ = ħω_b/2πk_B` and within a relative `1e-9` of it.
pub fn correction_closed<T: Real>(omega0: T, omegab: T, temperature: T) -> Result<CorrectionResult<T>> {
    nonneg("omega0", omega0)?;
    nonneg("omegab", omegab)?;
    positive("temperature", temperature)?;
    let t0 = crossover_temperature(omegab)?;
    if temperature <= t0 {
        return Err(QtstError::BelowCrossover {
            temperature: temperature.f64(),
            t0: t0.f64(),
            isotope: None,
        });
    }
    if temperature - t0 <= T::tol(DIVERGENCE_GUARD) * t0 {
        return Err(QtstError::DivergenceGuard {
            temperature: temperature.f64(),
            t0: t0.f64(),
        });
    }
    Ok(CorrectionResult {
        c_qm: sinh_sin_ratio(omega0, omegab, temperature),
        regime: Regime::classify(temperature, t0),
        terms_used: 0,
        tail_estimate: T::zero(),
    })
}

fn nonneg<T: Real>(what: &'static str, v: T) -> Result<()> {
    if v >= T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(QtstError::InvalidParameter { what, value: v.f64() })
    }
}

/// Matsubara product
/// `∏_{n≥1} (ω₀² + n²ν² + nνγ̂(nν)) / (−ω_b² + n²ν² + nνγ̂(nν))`
/// for the system's isotope.
///
/// The logarithm of each factor has the large-`n` expansion
/// `a/n² + b/n⁴ + …` with `a = (ω₀² + ω_b²)/ν²` and `b = (ω_b⁴ − ω₀⁴)/(2ν⁴)`.
/// Those two series are summed exactly (`ζ(2)`, `ζ(4)`); the remainders are
/// summed explicitly and their tail is extrapolated from the observed power-law
/// decay. Summation stops once doubling the number of terms changes `ln c_qm`
/// by less than `1e-11`.
pub fn correction_product<T: Real>(
    sys: &BarrierSystem<T>,
    model: &FrictionModel<T>,
    temperature: T,
) -> Result<CorrectionResult<T>> {
    positive("temperature", temperature)?;
    let eb = effective_barrier_frequency(sys, model)?;
    if temperature <= eb.t0 {
        return Err(QtstError::BelowCrossover {
            temperature: temperature.f64(),
            t0: eb.t0.f64(),
            isotope: Some(sys.isotope.symbol()),
        });
    }
    let w0 = sys.omega0();
    let wb = sys.omegab();
    let nu = matsubara_frequency(1, temperature)?;
    let (w02, wb2, nu2) = (w0 * w0, wb * wb, nu * nu);
    let a = (w02 + wb2) / nu2;
    let b = (wb2 * wb2 - w02 * w02) / (T::lit(2.0) * nu2 * nu2);
    let pi2 = T::PI() * T::PI();
    let zeta2 = pi2 / T::lit(6.0);
    let zeta4 = pi2 * pi2 / T::lit(90.0);
    let tol = T::tol(1e-11);
    let min_terms = {
        let scale = (w0.max(wb) / nu).to_f64().unwrap_or(0.0);
        ((8.0 * scale).ceil() as usize).max(64)
    };

    let mut sum_r = T::zero();
    let mut h2 = T::zero();
    let mut h4 = T::zero();
    let mut r_half = T::zero();
    let mut total_prev: Option<T> = None;
    let mut checkpoint = 32usize;
    let mut n = 0usize;
    loop {
        n += 1;
        let nn = T::lit(n as f64);
        let z = nn * nu;
        let s = z * z + z * laplace_kernel(model, z)?;
        let den = s - wb2;
        if den <= T::zero() {
            return Err(QtstError::NegativeDenominator {
                n,
                denominator: den.f64(),
            });
        }
        let term = ((w02 + s) / den).ln();
        let inv2 = T::one() / (nn * nn);
        let inv4 = inv2 * inv2;
        let r = term - a * inv2 - b * inv4;
        sum_r = sum_r + r;
        h2 = h2 + inv2;
        h4 = h4 + inv4;
        if n == checkpoint / 2 {
            r_half = r;
        }
        if n == checkpoint {
            let tail_r = power_law_tail(r_half, r, n);
            let tail = a * (zeta2 - h2) + b * (zeta4 - h4) + tail_r;
            let total = sum_r + a * h2 + b * h4 + tail;
            let settled = total_prev.is_some_and(|p| (total - p).abs() <= tol * T::one().max(total.abs()));
            if (settled && n >= min_terms) || n >= MAX_TERMS {
                return Ok(CorrectionResult {
                    c_qm: total.exp(),
                    regime: Regime::classify(temperature, eb.t0),
                    terms_used: n,
                    tail_estimate: tail,
                });
            }
            total_prev = Some(total);
            checkpoint *= 2;
        }
    }
}

/// Tail `Σ_{k>n} r_k` for `r_k ≈ C k^{-p}`, with `p` fitted from `r_{n/2}` and `r_n`.
fn power_law_tail<T: Real>(r_half: T, r: T, n: usize) -> T {
    if r == T::zero() || r_half == T::zero() || r.signum() != r_half.signum() {
        return T::zero();
    }
    let p = (r_half / r).ln() / T::LN_2();
    if !(p > T::lit(1.5)) || !p.is_finite() {
        return T::zero();
    }
    let nn = T::lit(n as f64);
    r * (nn / (p - T::one()) - T::lit(0.5) + p / (T::lit(12.0) * nn))
}

/// A rate in angular wavenumber units and in s⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Rate<T> {
    pub rate_cm1: T,
    pub rate_per_s: T,
}

impl<T: Real> Rate<T> {
    pub fn from_cm1(rate_cm1: T) -> Self {
        Self {
            rate_cm1,
            rate_per_s: wavenumber_to_per_second(rate_cm1),
        }
    }
}

/// Wigner's parabolic-barrier rate
/// `(ω_b/4π)·sinh(ħω₀/2k_BT)/sin(ħω_b/2k_BT)·exp(−E_b/k_BT)`.
///
/// Exposed as a diagnostic; its prefactor is half of the frictionless limit
/// of [`quantum_rate`].
pub fn wigner_rate<T: Real>(sys: &BarrierSystem<T>, temperature: T) -> Result<Rate<T>> {
    sys.validate()?;
    let w0 = sys.omega0();
    let c = correction_closed(w0, sys.omegab(), temperature).map_err(|e| tag_isotope(e, sys.isotope))?;
    let k = w0 / (T::lit(4.0) * T::PI()) * c.c_qm * sys.boltzmann(temperature);
    Ok(Rate::from_cm1(k))
}

fn tag_isotope(e: QtstError, iso: Isotope) -> QtstError {
    match e {
        QtstError::BelowCrossover { temperature, t0, .. } => QtstError::BelowCrossover {
            temperature,
            t0,
            isotope: Some(iso.symbol()),
        },
        other => other,
    }
}

/// Semiclassical rate `(k_BT/h)·exp(−(E_b − ħω₀/2)/k_BT)`.
pub fn semiclassical_rate<T: Real>(sys: &BarrierSystem<T>, temperature: T) -> Result<Rate<T>> {
    sys.validate()?;
    positive("temperature", temperature)?;
    let zpe = T::lit(0.5) * wavenumber_to_kj(sys.omega0());
    let kt_over_h = temperature / (T::lit(2.0) * T::PI() * T::lit(constants::HC_OVER_KB));
    Ok(Rate::from_cm1(kt_over_h * ((zpe - sys.e_b_kj_mol) / thermal_kj(temperature)).exp()))
}

/// Barrier anharmonicity parameters entering the crossover correction.
///
/// `c3` is in cm⁻²/Å and `c4` in cm⁻²/Å² (per-mass coefficients of the
/// `M c_k (x − x_b)^k / k` expansion, angular wavenumbers).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct CrossoverParams<T> {
    pub kappa: T,
    pub c3_cm2_per_angstrom: T,
    pub c4_cm2_per_angstrom2: T,
    pub b_cm2_per_angstrom2: T,
    pub omegab_cm1: T,
    #[serde(rename = "T0_K")]
    pub t0: T,
}

impl<T: Real> CrossoverParams<T> {
    /// `ε = (T₀ − T)/T₀`.
    pub fn epsilon(&self, temperature: T) -> T {
        (self.t0 - temperature) / self.t0
    }
}

/// `κ = ω_b²·√(8M/(B k_B T₀))` with `B = 4c₃²/(3ω_b²) + 3c₄`.
pub fn kappa_parameter<T: Real>(mass: Isotope, omegab: T, c3: T, c4: T, t0: T) -> Result<CrossoverParams<T>> {
    positive("omegab", omegab)?;
    positive("T0", t0)?;
    let b = T::lit(4.0) * c3 * c3 / (T::lit(3.0) * omegab * omegab) + T::lit(3.0) * c4;
    if !(b > T::zero() && b.is_finite()) {
        return Err(QtstError::NonPositiveB(b.f64()));
    }
    let w = constants::RAD_PER_SECOND_PER_WAVENUMBER;
    let m = mass.mass_kg::<f64>();
    let kappa = omegab * omegab * T::lit(w) * (T::lit(8.0 * m / (1e20 * constants::BOLTZMANN)) / (b * t0)).sqrt();
    Ok(CrossoverParams {
        kappa,
        c3_cm2_per_angstrom: c3,
        c4_cm2_per_angstrom2: c4,
        b_cm2_per_angstrom2: b,
        omegab_cm1: omegab,
        t0,
    })
}

/// Crossover-region correction
/// `c_qMT = [(ω_b/ω₀) sinh(ħω₀/2k_BT)/sin(ħω_b/2k_BT)]·√π·y·erfcx(y)`
/// with `y = −ε(1 − ε/2)κ` and `ε = (T₀ − T)/T₀`, `T₀ = ħω_b/2πk_B`.
///
/// Finite at `T = T₀`: for `|y| < 1e-6` the ratio `y/sin(ħω_b/2k_BT)` is
/// evaluated as `(1 − ε)(1 − ε/2)κ/(π·sinc(πε/(1 − ε)))`.
pub fn correction_crossover<T: Real>(sys: &BarrierSystem<T>, temperature: T, kappa_at_t0: T) -> Result<T> {
    sys.validate()?;
    positive("temperature", temperature)?;
    if !(kappa_at_t0 > T::zero() && kappa_at_t0.is_finite()) {
        return Err(QtstError::NonPositiveKappa(kappa_at_t0.f64()));
    }
    let w0 = sys.omega0();
    let wb = sys.omegab();
    let t0 = crossover_temperature(wb)?;
    let min = T::lit(CROSSOVER_FORMULA_MIN) * t0;
    if temperature <= min {
        return Err(QtstError::OutsideRegime {
            temperature: temperature.f64(),
            min: min.f64(),
        });
    }
    let one = T::one();
    let half = T::lit(0.5);
    let eps = (t0 - temperature) / t0;
    let y = -eps * (one - half * eps) * kappa_at_t0;
    let root_pi = T::PI().sqrt();
    if y.abs() < T::lit(1e-6) {
        let x0 = half_quantum_ratio(w0, temperature);
        let u = T::PI() * eps / (one - eps);
        let y_over_sin = (one - eps) * (one - half * eps) * kappa_at_t0 / (T::PI() * sinc(u));
        let xb = half_quantum_ratio(wb, temperature);
        Ok(xb * sinhc(x0) * y_over_sin * root_pi * erfcx(y))
    } else {
        Ok(sinh_sin_ratio(w0, wb, temperature) * root_pi * y * erfcx(y))
    }
}

/// Outcome of the equilibrium-at-the-barrier-top criterion
/// `γ̂(μ)/ω_b > k_BT/E_b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct EquilibriumCheck<T> {
    pub satisfied: bool,
    /// `γ̂(μ)/ω_b`.
    pub friction_side: T,
    /// `k_BT/E_b`.
    pub thermal_side: T,
    /// `friction_side / thermal_side`.
    pub ratio: T,
}

pub fn equilibrium_condition<T: Real>(
    sys: &BarrierSystem<T>,
    model: &FrictionModel<T>,
    temperature: T,
) -> Result<EquilibriumCheck<T>> {
    positive("temperature", temperature)?;
    if sys.e_b_kj_mol == T::zero() {
        return Err(QtstError::ZeroBarrier);
    }
    let eb = effective_barrier_frequency(sys, model)?;
    let friction_side = laplace_kernel(model, eb.mu)? / sys.omegab();
    let thermal_side = thermal_kj(temperature) / sys.e_b_kj_mol;
    Ok(EquilibriumCheck {
        satisfied: friction_side > thermal_side,
        friction_side,
        thermal_side,
        ratio: friction_side / thermal_side,
    })
}

/// Regime flags attached to a rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeFlags {
    /// Quantum correction below 1 %.
    pub classical: bool,
    /// `T > T₀`, so the rate expression applies.
    pub qtst_valid: bool,
    /// `T₀ < T < 1.1·T₀`.
    pub crossover_region: bool,
    pub below_t0: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct RateResult<T> {
    #[serde(rename = "T_K")]
    pub temperature: T,
    pub isotope: Isotope,
    pub mu_cm1: T,
    #[serde(rename = "T0_K")]
    pub t0: T,
    pub classical: Rate<T>,
    pub c_qm: T,
    pub rate: Rate<T>,
    pub regime: Regime,
    pub flags: RegimeFlags,
    pub terms_used: usize,
    /// Absent when `E_b = 0`.
    pub equilibrium: Option<EquilibriumCheck<T>>,
}

/// `k = k_cl · c_qm` with the Matsubara product correction.
pub fn quantum_rate<T: Real>(sys: &BarrierSystem<T>, model: &FrictionModel<T>, temperature: T) -> Result<RateResult<T>> {
    let cl = classical_rate(sys, model, temperature)?;
    let c = correction_product(sys, model, temperature)?;
    let t0 = crossover_temperature(cl.mu_cm1)?;
    let equilibrium = match equilibrium_condition(sys, model, temperature) {
        Ok(e) => Some(e),
        Err(QtstError::ZeroBarrier) => None,
        Err(e) => return Err(e),
    };
    Ok(RateResult {
        temperature,
        isotope: sys.isotope,
        mu_cm1: cl.mu_cm1,
        t0,
        classical: Rate::from_cm1(cl.rate_cm1),
        c_qm: c.c_qm,
        rate: Rate::from_cm1(cl.rate_cm1 * c.c_qm),
        regime: c.regime,
        flags: RegimeFlags {
            classical: c.c_qm - T::one() < T::lit(0.01),
            qtst_valid: true,
            crossover_region: c.regime == Regime::NearCrossover,
            below_t0: false,
        },
        terms_used: c.terms_used,
        equilibrium,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const HC_OVER_KB: f64 = 6.626_070_15e-34 * 2.997_924_58e10 / 1.380_649e-23;

    fn sys(w0: f64, wb: f64) -> BarrierSystem<f64> {
        BarrierSystem::new(w0, wb, 40.0, Isotope::H).unwrap()
    }

    fn closed_oracle(w0: f64, wb: f64, t: f64) -> f64 {
        let x0 = HC_OVER_KB * w0 / (2.0 * t);
        let xb = HC_OVER_KB * wb / (2.0 * t);
        wb / w0 * x0.sinh() / xb.sin()
    }

    #[test]
    fn matsubara() {
        let v: f64 = matsubara_frequency(1, 300.0).unwrap();
        assert!((v - 1310.0).abs() < 1.0);
        assert_relative_eq!(v, 2.0 * std::f64::consts::PI * 300.0 / HC_OVER_KB, max_relative = 1e-14);
        assert_eq!(matsubara_frequency(0, 300.0).unwrap(), 0.0);
        assert_eq!(matsubara_frequency(2, 150.0).unwrap(), v);
    }

    #[test]
    fn closed_form_values() {
        // sinh(7.19388438752)/(3 sin(2.39796146251)), 40-digit evaluation.
        let c = correction_closed(3000.0, 1000.0, 300.0).unwrap();
        assert_relative_eq!(c.c_qm, 327.752_938_586_548_3, max_relative = 1e-12);
        assert_eq!(c.regime, Regime::HighT);
        let hot = correction_closed(1000.0_f64, 1000.0, 1e7).unwrap();
        assert!((hot.c_qm - 1.0).abs() < 1e-8);
        let t0 = 1000.0 * HC_OVER_KB / (2.0 * std::f64::consts::PI);
        assert_eq!(correction_closed(3000.0, 1000.0, 1.05 * t0).unwrap().regime, Regime::NearCrossover);
        assert!(matches!(
            correction_closed(3000.0, 1000.0, 0.99 * t0),
            Err(QtstError::BelowCrossover { .. })
        ));
        assert!(matches!(
            correction_closed(3000.0, 1000.0, t0 * (1.0 + 1e-12)),
            Err(QtstError::DivergenceGuard { .. })
        ));
        let near = correction_closed(3000.0, 1000.0, t0 * 1.000_01).unwrap();
        assert!(near.c_qm > 1e4);
    }

    #[test]
    fn product_equals_closed_when_frictionless() {
        let s = sys(3000.0, 1000.0);
        let t0 = crossover_temperature(1000.0).unwrap();
        for i in 0..=40 {
            let t = t0 * (1.05 + 3.95 * i as f64 / 40.0);
            let p = correction_product(&s, &FrictionModel::frictionless(), t).unwrap();
            let c = closed_oracle(3000.0, 1000.0, t);
            assert!((p.c_qm / c - 1.0).abs() < 1e-9, "T={t}: {} vs {c}", p.c_qm);
        }
        let p = correction_product(&s, &FrictionModel::frictionless(), 300.0).unwrap();
        let c = correction_closed(3000.0, 1000.0, 300.0).unwrap();
        assert_relative_eq!(p.c_qm, c.c_qm, max_relative = 1e-10);
        assert!(p.terms_used > 0);
    }

    #[test]
    fn product_approaches_unity_at_high_temperature() {
        let s = sys(3000.0, 1000.0);
        let t0 = crossover_temperature(1000.0).unwrap();
        let p = correction_product(&s, &FrictionModel::frictionless(), 50.0 * t0).unwrap();
        assert!(p.c_qm >= 1.0 && p.c_qm < 1.01);
    }

    #[test]
    fn product_below_crossover_errors() {
        let s = sys(3000.0, 1000.0);
        let e = correction_product(&s, &FrictionModel::frictionless(), 200.0).unwrap_err();
        assert!(matches!(e, QtstError::BelowCrossover { isotope: Some('H'), .. }));
    }

    /// Direct product to 10⁶ factors plus the elementary `a/n²` tail.
    fn long_product(w0: f64, wb: f64, t: f64, m: &FrictionModel<f64>) -> f64 {
        let nu = 2.0 * std::f64::consts::PI * t / HC_OVER_KB;
        let n_max = 1_000_000usize;
        let mut s = 0.0;
        for n in (1..=n_max).rev() {
            let z = n as f64 * nu;
            let g = match m {
                FrictionModel::Drude { gamma_cm1, omega_d_cm1 } => gamma_cm1 / (1.0 + z / omega_d_cm1),
                FrictionModel::Ohmic { gamma_cm1 } => *gamma_cm1,
                _ => unreachable!(),
            };
            let q = z * z + z * g;
            s += ((w0 * w0 + q) / (q - wb * wb)).ln();
        }
        let a = (w0 * w0 + wb * wb) / (nu * nu);
        let nf = n_max as f64;
        s += a * (1.0 / nf - 1.0 / (2.0 * nf * nf));
        s.exp()
    }

    #[test]
    fn product_matches_long_product_under_drude() {
        let m = FrictionModel::drude(300.0, 500.0);
        let s = sys(3000.0, 1000.0);
        let p = correction_product(&s, &m, 300.0).unwrap();
        let oracle = long_product(3000.0, 1000.0, 300.0, &m);
        assert_relative_eq!(p.c_qm, oracle, max_relative = 1e-9);
        let o = FrictionModel::ohmic(1000.0);
        let p = correction_product(&s, &o, 280.0).unwrap();
        assert_relative_eq!(p.c_qm, long_product(3000.0, 1000.0, 280.0, &o), max_relative = 1e-9);
    }

    #[test]
    fn correction_exceeds_unity_on_grid() {
        for &w0 in &[1500.0, 3000.0] {
            for &wb in &[500.0, 1000.0] {
                for &g in &[0.0, 0.1, 1.0] {
                    let s = sys(w0, wb);
                    let m = FrictionModel::ohmic(g * wb);
                    let t0 = effective_barrier_frequency(&s, &m).unwrap().t0;
                    for i in 0..30 {
                        let t = t0 * (1.001 + 9.0 * i as f64 / 29.0);
                        let c = correction_product(&s, &m, t).unwrap();
                        assert!(c.c_qm >= 1.0, "w0={w0} wb={wb} g={g} T={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn lighter_isotopes_get_larger_corrections() {
        let m = FrictionModel::ohmic(100.0);
        for t in [260.0, 300.0, 350.0, 500.0] {
            let c: Vec<f64> = Isotope::ALL
                .iter()
                .map(|iso| correction_product(&sys(3000.0, 1000.0).with_isotope(*iso), &m, t).unwrap().c_qm)
                .collect();
            assert!(c[0] >= c[1] && c[1] >= c[2]);
        }
    }

    #[test]
    fn wigner_spot_value_and_semiclassical_limit() {
        let w = wigner_rate(&sys(3000.0, 1000.0), 300.0).unwrap();
        assert_relative_eq!(w.rate_cm1, 0.008_491_321_844_648_368, max_relative = 1e-11);
        assert_relative_eq!(w.rate_per_s, 1_599_469_170.119_58, max_relative = 1e-11);
        // ħω_b ≪ 2k_BT ≪ ħω₀: Wigner → half the semiclassical rate, up to
        // the sin(x_b)/x_b expansion error.
        let s = BarrierSystem::new(6000.0, 20.0, 30.0, Isotope::H).unwrap();
        let t = 300.0;
        let xb = HC_OVER_KB * 20.0 / (2.0 * t);
        let ratio = wigner_rate(&s, t).unwrap().rate_cm1 / semiclassical_rate(&s, t).unwrap().rate_cm1;
        assert!((2.0 * ratio - 1.0).abs() < xb * xb / 5.0);
        let high = BarrierSystem::new(3000.0, 1000.0, 1e6, Isotope::H).unwrap();
        assert_eq!(wigner_rate(&high, 300.0).unwrap().rate_cm1, 0.0);
    }

    #[test]
    fn semiclassical_values() {
        let zpe = 0.5 * 3000.0 * 6.626_070_15e-34 * 2.997_924_58e10 * 6.022_140_76e23 / 1000.0;
        let s = BarrierSystem::new(3000.0, 1000.0, zpe, Isotope::H).unwrap();
        let k = semiclassical_rate(&s, 300.0).unwrap();
        let kt_over_h = 1.380_649e-23 * 300.0 / 6.626_070_15e-34;
        assert_relative_eq!(k.rate_per_s, kt_over_h, max_relative = 1e-12);
        let k2 = semiclassical_rate(&s, 600.0).unwrap();
        assert_relative_eq!(k2.rate_per_s, 2.0 * k.rate_per_s, max_relative = 1e-12);
        let h = semiclassical_rate(&sys(3000.0, 1000.0), 300.0).unwrap();
        let d = semiclassical_rate(&sys(3000.0, 1000.0).with_isotope(Isotope::D), 300.0).unwrap();
        assert_relative_eq!(h.rate_cm1 / d.rate_cm1, 8.223_862_210_663_266, max_relative = 1e-12);
    }

    #[test]
    fn crossover_correction_properties() {
        let s = sys(3000.0, 1000.0);
        let t0 = crossover_temperature(1000.0).unwrap();
        let at = correction_crossover(&s, t0, 10.0).unwrap();
        assert!(at.is_finite() && at > 0.0);
        // Continuity across T₀ through the series switch.
        let below = correction_crossover(&s, t0 * (1.0 - 1e-9), 10.0).unwrap();
        let above = correction_crossover(&s, t0 * (1.0 + 1e-5), 10.0).unwrap();
        assert_relative_eq!(at, below, max_relative = 1e-6);
        assert_relative_eq!(at, above, max_relative = 1e-3);
        // √π·y·erfcx(y) at κ = 10 (40-digit evaluation).
        let expected = [(1.05, 0.553_512), (1.2, 0.918_670_8), (2.0, 0.997_792_4), (5.0, 0.999_965_28)];
        for (f, want) in expected {
            let t = f * t0;
            let r = correction_crossover(&s, t, 10.0).unwrap() / correction_closed(3000.0, 1000.0, t).unwrap().c_qm;
            assert!((r - want).abs() < 2e-6, "T/T0={f}: {r}");
        }
        assert!(matches!(correction_crossover(&s, 300.0, 0.0), Err(QtstError::NonPositiveKappa(_))));
        assert!(matches!(correction_crossover(&s, 0.8 * t0, 10.0), Err(QtstError::OutsideRegime { .. })));
    }

    #[test]
    fn crossover_correction_limit_large_y() {
        let s = sys(3000.0, 1000.0);
        let t = 600.0;
        let r = correction_crossover(&s, t, 1e6).unwrap() / correction_closed(3000.0, 1000.0, t).unwrap().c_qm;
        assert!((r - 1.0).abs() < 1e-9);
    }

    #[test]
    fn kappa_values() {
        let p = kappa_parameter(Isotope::H, 1000.0, 0.0, 2e5, 229.0).unwrap();
        assert_eq!(p.b_cm2_per_angstrom2, 6e5);
        assert!(matches!(kappa_parameter(Isotope::H, 1000.0, 0.0, 0.0, 229.0), Err(QtstError::NonPositiveB(_))));
        assert!(matches!(kappa_parameter(Isotope::H, 1000.0, 0.0, -1.0, 229.0), Err(QtstError::NonPositiveB(_))));
        // Hand evaluation in SI: ω_b = 2πc·1000 rad/s, B = 6e5·(2πc)²·1e20 s⁻²m⁻².
        let w = 2.0 * std::f64::consts::PI * 2.997_924_58e10;
        let b_si = 6e5 * w * w * 1e20;
        let m = 1.672_621_923_69e-27;
        let oracle = (1000.0 * w).powi(2) * (8.0 * m / (b_si * 1.380_649e-23 * 229.0)).sqrt();
        assert_relative_eq!(p.kappa, oracle, max_relative = 1e-12);
    }

    #[test]
    fn kappa_for_cubic_barrier() {
        // For U = ½Mω²x² − ⅓Mαx³ the barrier-top expansion has c₃ = −α, c₄ = 0
        // and κ = √(72π E_b/ħω_b) exactly.
        let (wb, eb) = (1000.0_f64, 40.0_f64);
        let w = 2.0 * std::f64::consts::PI * 2.997_924_58e10;
        let m = 1.672_621_923_69e-27;
        let eb_j = eb * 1000.0 / 6.022_140_76e23;
        let alpha_si = (m * (wb * w).powi(6) / (6.0 * eb_j)).sqrt();
        let c3 = -alpha_si / (w * w * 1e10);
        let t0 = crossover_temperature(wb).unwrap();
        let p = kappa_parameter(Isotope::H, wb, c3, 0.0, t0).unwrap();
        let hbar_wb = wb * 6.626_070_15e-34 * 2.997_924_58e10 * 6.022_140_76e23 / 1000.0;
        let expected = (72.0 * std::f64::consts::PI * eb / hbar_wb).sqrt();
        assert_relative_eq!(p.kappa, expected, max_relative = 1e-10);
        // Same order as √(E_b/ħω_b).
        let ratio = p.kappa / (eb / hbar_wb).sqrt();
        assert!(ratio > 1.0 && ratio < 100.0);
        assert!(p.epsilon(1.1 * t0) < 0.0);
    }

    #[test]
    fn equilibrium_condition_sides() {
        let s = sys(3000.0, 1000.0);
        let e = equilibrium_condition(&s, &FrictionModel::frictionless(), 300.0).unwrap();
        assert!(!e.satisfied);
        let high = BarrierSystem::new(3000.0, 1000.0, 1e9, Isotope::H).unwrap();
        assert!(equilibrium_condition(&high, &FrictionModel::ohmic(1e-3), 300.0).unwrap().satisfied);
        let zero = BarrierSystem::new(3000.0, 1000.0, 0.0, Isotope::H).unwrap();
        assert_eq!(equilibrium_condition(&zero, &FrictionModel::ohmic(1.0), 300.0), Err(QtstError::ZeroBarrier));
        // Ohmic γ = 0.1ω_b: γ̂(μ)/ω_b = 0.1, k_BT/E_b = 2.494/40.
        let e = equilibrium_condition(&s, &FrictionModel::ohmic(100.0), 300.0).unwrap();
        assert_relative_eq!(e.friction_side, 0.1, max_relative = 1e-14);
        let kt = 1.380_649e-23 * 6.022_140_76e23 * 300.0 / 1000.0;
        assert_relative_eq!(e.thermal_side, kt / 40.0, max_relative = 1e-12);
        assert!(e.satisfied);
    }

    #[test]
    fn quantum_rate_checks() {
        let s = sys(3000.0, 1000.0);
        let m = FrictionModel::frictionless();
        let r = quantum_rate(&s, &m, 300.0).unwrap();
        let cl = classical_rate(&s, &m, 300.0).unwrap();
        let c = correction_closed(3000.0, 1000.0, 300.0).unwrap().c_qm;
        assert_relative_eq!(r.rate.rate_cm1, cl.rate_cm1 * c, max_relative = 1e-10);
        // Twice Wigner's expression in the frictionless limit.
        let w = wigner_rate(&s, 300.0).unwrap();
        assert_relative_eq!(r.rate.rate_cm1, 2.0 * w.rate_cm1, max_relative = 1e-10);
        let hot = quantum_rate(&s, &m, 1e5).unwrap();
        assert!((hot.rate.rate_cm1 / hot.classical.rate_cm1 - 1.0).abs() < 1e-3);
        assert!(hot.flags.classical);
        assert!(!r.flags.classical && r.flags.qtst_valid && !r.flags.crossover_region);
        let json = serde_json::to_value(r).unwrap();
        assert_eq!(json["regime"], "high_t");
    }

    #[test]
    fn quantum_rate_increases_with_temperature() {
        for g in [0.0, 100.0, 1000.0] {
            let s = sys(3000.0, 1000.0);
            let m = FrictionModel::drude(g, 500.0);
            let t0 = effective_barrier_frequency(&s, &m).unwrap().t0;
            let mut prev = 0.0;
            for i in 0..40 {
                let t = t0 * (1.1 + 0.9 * i as f64 / 39.0);
                let k = quantum_rate(&s, &m, t).unwrap().rate.rate_cm1;
                assert!(k > prev, "g={g} T={t}");
                prev = k;
            }
        }
    }

    #[test]
    fn single_precision_product() {
        let s = BarrierSystem::<f32>::new(3000.0, 1000.0, 40.0, Isotope::H).unwrap();
        let p = correction_product(&s, &FrictionModel::frictionless(), 300.0).unwrap();
        assert!((f64::from(p.c_qm) / 327.752_938_586_548 - 1.0).abs() < 1e-4);
    }
}
