//! Kinetic isotope effects in the weak-friction quantum rate expression,
//! their apparent Arrhenius parameters, the Swain-Schaad exponent and the
//! semi-classical classification rules.

use serde::{Deserialize, Serialize};

use crate::error::{QtstError, Result};
use crate::kramers::{crossover_temperature, positive};
use crate::numeric::{ln_sinhc, sinc};
use crate::qcorr::DIVERGENCE_GUARD;
use crate::real::Real;
use crate::reference::{BellRange, KimKreevoy, Limits};
use crate::units::{half_quantum_ratio, isotope_frequency, thermal_kj, wavenumber_to_kj, Isotope, IsotopePair};

/// `k = A·exp(−E/RT)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ArrheniusParams<T> {
    #[serde(rename = "A")]
    pub a: T,
    #[serde(rename = "E_kj_mol")]
    pub e_kj_mol: T,
}

impl<T: Real> ArrheniusParams<T> {
    pub fn new(a: T, e_kj_mol: T) -> Result<Self> {
        positive("A", a)?;
        if !e_kj_mol.is_finite() {
            return Err(QtstError::InvalidParameter {
                what: "E_kj_mol",
                value: e_kj_mol.f64(),
            });
        }
        Ok(Self { a, e_kj_mol })
    }

    pub fn eval(&self, temperature: T) -> T {
        self.a * (-self.e_kj_mol / thermal_kj(temperature)).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct KiePrediction<T> {
    pub ratio: T,
    #[serde(rename = "T_K")]
    pub temperature: T,
    pub pair: IsotopePair,
    #[serde(rename = "T0_light_K")]
    pub t0_light: T,
    /// `T > T₀` of the light isotope.
    pub valid: bool,
}

/// Crossover temperature of the light isotope, the binding validity limit.
pub fn light_crossover<T: Real>(omegab_h: T, light: Isotope) -> Result<T> {
    crossover_temperature(isotope_frequency(omegab_h, light))
}

fn ratio_unchecked<T: Real>(omega0_h: T, omegab_h: T, temperature: T, pair: IsotopePair) -> T {
    let (l, h) = (pair.light, pair.heavy);
    let ml: T = l.mass_number();
    let mh: T = h.mass_number();
    let x0 = |iso| half_quantum_ratio(isotope_frequency(omega0_h, iso), temperature);
    let xb = |iso| half_quantum_ratio(isotope_frequency(omegab_h, iso), temperature);
    let log = T::lit(0.5) * (mh / ml).ln() + ln_sinhc(x0(l)) - ln_sinhc(x0(h));
    log.exp() * sinc(xb(h)) / sinc(xb(l))
}

/// `k_light/k_heavy` for frictionless quantum rates:
/// `√(m_h/m_l)·[sinh(ħω₀/2√m_l k_BT)/sinh(ħω₀/2√m_h k_BT)]·[sin(ħω_b/2√m_h k_BT)/sin(ħω_b/2√m_l k_BT)]`.
///
/// Frequencies are hydrogen values in cm⁻¹. Requires `T > T₀` of the light
/// isotope (and not within a relative `1e-9` of it).
pub fn kie_qtst<T: Real>(omega0_h: T, omegab_h: T, temperature: T, pair: IsotopePair) -> Result<KiePrediction<T>> {
    let p = kie_qtst_unchecked(omega0_h, omegab_h, temperature, pair)?;
    if !p.valid {
        return Err(QtstError::BelowCrossover {
            temperature: temperature.f64(),
            t0: p.t0_light.f64(),
            isotope: Some(pair.light.symbol()),
        });
    }
    if temperature - p.t0_light <= T::tol(DIVERGENCE_GUARD) * p.t0_light {
        return Err(QtstError::DivergenceGuard {
            temperature: temperature.f64(),
            t0: p.t0_light.f64(),
        });
    }
    Ok(p)
}

/// Like [`kie_qtst`] but reports `valid = false` instead of failing below the
/// light isotope's `T₀`; the ratio is then not meaningful.
pub fn kie_qtst_unchecked<T: Real>(
    omega0_h: T,
    omegab_h: T,
    temperature: T,
    pair: IsotopePair,
) -> Result<KiePrediction<T>> {
    nonneg("omega0_h", omega0_h)?;
    nonneg("omegab_h", omegab_h)?;
    positive("temperature", temperature)?;
    let t0_light = light_crossover(omegab_h, pair.light)?;
    let valid = temperature > t0_light;
    Ok(KiePrediction {
        ratio: ratio_unchecked(omega0_h, omegab_h, temperature, pair),
        temperature,
        pair,
        t0_light,
        valid,
    })
}

fn nonneg<T: Real>(what: &'static str, v: T) -> Result<()> {
    if v >= T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(QtstError::InvalidParameter { what, value: v.f64() })
    }
}

/// Apparent Arrhenius parameters of the isotope effect around `T_R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ApparentArrhenius<T> {
    pub pair: IsotopePair,
    #[serde(rename = "T_R_K")]
    pub reference_temperature: T,
    /// `A_light / A_heavy`.
    pub a_ratio: T,
    /// `E_heavy − E_light`, kJ/mol.
    pub delta_e_kj_mol: T,
    /// Set when `ħω₀ < 4k_BT_R` for the heavy isotope, where replacing
    /// `sinh` by an exponential is poor.
    pub expansion_warning: bool,
}

/// Arrhenius form of [`kie_qtst`] with `sinh(x) ≈ eˣ/2` and the `sin` terms
/// linearised in `1/T` around `T_R`.
///
/// With `u = ħω_b/2√m k_BT_R`:
/// `A_l/A_h = √(m_h/m_l)·sin(u_h)/sin(u_l)·exp(−(u_h cot u_h − u_l cot u_l))`,
/// `E_h − E_l = (ħω₀/2)(1/√m_l − 1/√m_h) + (ħω_b/2)(cot u_h/√m_h − cot u_l/√m_l)`.
pub fn apparent_arrhenius<T: Real>(
    omega0_h: T,
    omegab_h: T,
    reference_temperature: T,
    pair: IsotopePair,
) -> Result<ApparentArrhenius<T>> {
    kie_qtst(omega0_h, omegab_h, reference_temperature, pair)?;
    let (l, h) = (pair.light, pair.heavy);
    let sl = l.mass_number::<T>().sqrt();
    let sh = h.mass_number::<T>().sqrt();
    let half = T::lit(0.5);
    let xb = half_quantum_ratio(omegab_h, reference_temperature);
    let (ul, uh) = (xb / sl, xb / sh);
    // u·cot(u) → 1 and sin(u_h)/sin(u_l) → √(m_l/m_h) as ω_b → 0.
    let ucot = |u: T| if u.abs() < T::lit(1e-4) { T::one() - u * u / T::lit(3.0) } else { u / u.tan() };
    let sin_ratio = (sl / sh) * sinc(uh) / sinc(ul);
    let a_ratio = (sh / sl) * sin_ratio * (ucot(ul) - ucot(uh)).exp();
    let zpe = half * wavenumber_to_kj(omega0_h) * (T::one() / sl - T::one() / sh);
    let kt = thermal_kj(reference_temperature);
    let barrier = kt * (ucot(uh) - ucot(ul));
    let x0_heavy = half_quantum_ratio(isotope_frequency(omega0_h, h), reference_temperature);
    Ok(ApparentArrhenius {
        pair,
        reference_temperature,
        a_ratio,
        delta_e_kj_mol: zpe + barrier,
        expansion_warning: x0_heavy < T::lit(2.0),
    })
}

/// `ln(k_H/k_T)/ln(k_D/k_T)`; the arguments may be rates or ratios to any
/// common reference.
pub fn swain_schaad<T: Real>(k_h: T, k_d: T, k_t: T) -> Result<T> {
    positive("k_H", k_h)?;
    positive("k_D", k_d)?;
    positive("k_T", k_t)?;
    let den = (k_d / k_t).ln();
    if den.abs() <= T::epsilon() {
        return Err(QtstError::DegenerateDenominator);
    }
    Ok((k_h / k_t).ln() / den)
}

/// Exponent implied by zero-point energy alone with unit prefactor ratios:
/// `(1 − 1/√3)/(1/√2 − 1/√3)`.
pub fn swain_schaad_semiclassical<T: Real>() -> T {
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    (T::one() - T::one() / three.sqrt()) / (T::one() / two.sqrt() - T::one() / three.sqrt())
}

/// Kim-Kreevoy tunneling criteria; each flag is set when the criterion indicates tunneling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KimKreevoyFlags {
    pub kie_above: bool,
    pub delta_e_above: bool,
    pub a_ratio_below: bool,
}

impl KimKreevoyFlags {
    pub fn all(&self) -> bool {
        self.kie_above && self.delta_e_above && self.a_ratio_below
    }

    pub fn any(&self) -> bool {
        self.kie_above || self.delta_e_above || self.a_ratio_below
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BellFlags {
    pub below: bool,
    pub above: bool,
}

impl BellFlags {
    pub fn outside(&self) -> bool {
        self.below || self.above
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationInput {
    #[serde(rename = "kie_300K")]
    pub kie_300k: Option<f64>,
    pub a_ratio: Option<f64>,
    pub delta_e_kj_mol: Option<f64>,
    pub pair: IsotopePair,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferencedLimits {
    pub kim_kreevoy: Option<KimKreevoy>,
    pub bell: Option<BellRange>,
}

/// Missing inputs leave the corresponding flags unset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub input: ClassificationInput,
    /// Only defined for H:D.
    pub kim_kreevoy: Option<KimKreevoyFlags>,
    pub bell: Option<BellFlags>,
    pub referenced_limits: ReferencedLimits,
}

impl ClassificationReport {
    /// True when any criterion points away from semi-classical behaviour.
    pub fn anomalous(&self) -> bool {
        self.kim_kreevoy.is_some_and(|k| k.any()) || self.bell.is_some_and(|b| b.outside())
    }
}

/// Flags Kim-Kreevoy criteria (H:D only) and the prefactor-ratio range for the pair.
///
/// `delta_e` is `E_heavy − E_light` in kJ/mol. Pairs other than H:D, H:T and
/// D:T are rejected.
pub fn classify(
    kie_300k: Option<f64>,
    a_ratio: Option<f64>,
    delta_e: Option<f64>,
    pair: IsotopePair,
    limits: &Limits,
) -> Result<ClassificationReport> {
    if ![IsotopePair::H_D, IsotopePair::H_T, IsotopePair::D_T].contains(&pair) {
        return Err(QtstError::UnsupportedPair(pair.to_string()));
    }
    let kk = (pair == limits.kim_kreevoy.pair).then(|| &limits.kim_kreevoy);
    let kim_kreevoy = kk.map(|k| KimKreevoyFlags {
        kie_above: kie_300k.is_some_and(|v| v > k.kie_min),
        delta_e_above: delta_e.is_some_and(|v| v > k.delta_e_min_kj_mol),
        a_ratio_below: a_ratio.is_some_and(|v| v < k.a_ratio_max),
    });
    let bell_range = limits.bell_range(pair);
    let bell = bell_range.zip(a_ratio).map(|(r, a)| BellFlags {
        below: a < r.a_ratio_min,
        above: a > r.a_ratio_max,
    });
    Ok(ClassificationReport {
        input: ClassificationInput {
            kie_300k,
            a_ratio,
            delta_e_kj_mol: delta_e,
            pair,
        },
        kim_kreevoy,
        bell,
        referenced_limits: ReferencedLimits {
            kim_kreevoy: kk.cloned(),
            bell: bell_range.cloned(),
        },
    })
}
