//! Frictionless WKB barrier penetration for one-dimensional model potentials.
//!
//! Positions are in ångström, energies in kJ/mol, frequencies in cm⁻¹ and
//! masses in proton masses. Actions are returned in units of ħ.

use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{QtstError, Result};
use crate::kramers::positive;
use crate::numeric::{bisect, integrate_segments, Pchip, Segment};
use crate::real::Real;
use crate::units::constants;

/// `√(2 m_p · 1 kJ/mol) · 1 Å / ħ`.
fn action_unit<T: Real>() -> T {
    let m = constants::PROTON_MASS * 1000.0 / constants::AVOGADRO;
    T::lit((2.0 * m).sqrt() * constants::ANGSTROM / constants::HBAR)
}

/// `M ω²` in kJ/mol/Å² for `ω` in cm⁻¹ and `M` in proton masses.
pub fn force_constant<T: Real>(omega: T, mass: T) -> T {
    let w = T::lit(constants::RAD_PER_SECOND_PER_WAVENUMBER) * omega;
    let scale = constants::PROTON_MASS * constants::ANGSTROM * constants::ANGSTROM * constants::AVOGADRO / 1000.0;
    mass * w * w * T::lit(scale)
}

fn unit_mass<T: Real>() -> T {
    T::one()
}

/// Monotone-cubic interpolated potential from `(x, U)` samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TabulatedRaw<T>", into = "TabulatedRaw<T>", bound = "T: Real")]
pub struct Tabulated<T: Real> {
    interp: Pchip<T>,
    mass: T,
    top: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "T: Real")]
struct TabulatedRaw<T> {
    x_angstrom: Vec<T>,
    u_kj_mol: Vec<T>,
    #[serde(default = "unit_mass")]
    mass: T,
}

impl<T: Real> TryFrom<TabulatedRaw<T>> for Tabulated<T> {
    type Error = QtstError;

    fn try_from(r: TabulatedRaw<T>) -> Result<Self> {
        Tabulated::new(r.x_angstrom, r.u_kj_mol, r.mass)
    }
}

impl<T: Real> From<Tabulated<T>> for TabulatedRaw<T> {
    fn from(t: Tabulated<T>) -> Self {
        TabulatedRaw {
            x_angstrom: t.interp.knots().to_vec(),
            u_kj_mol: t.interp.values().to_vec(),
            mass: t.mass,
        }
    }
}

impl<T: Real> Tabulated<T> {
    pub fn new(x: Vec<T>, u: Vec<T>, mass: T) -> Result<Self> {
        positive("mass", mass)?;
        let interp = Pchip::new(x, u)?;
        let values = interp.values();
        let top = (0..values.len()).fold(0, |best, i| if values[i] > values[best] { i } else { best });
        if top == 0 || top == values.len() - 1 {
            return Err(QtstError::InvalidDataset(
                "tabulated potential has its maximum at an end point; no interior barrier".into(),
            ));
        }
        Ok(Self { interp, mass, top })
    }

    /// Reads a two-column CSV with header `x_angstrom,U_kJ_per_mol`.
    pub fn from_csv<R: Read>(reader: R, mass: T) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        let col = |name: &str| {
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| QtstError::InvalidDataset(format!("missing column {name}")))
        };
        let (ix, iu) = (col("x_angstrom")?, col("U_kJ_per_mol")?);
        let mut x = Vec::new();
        let mut u = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let parse = |i: usize| -> Result<T> {
                let s = rec.get(i).unwrap_or("");
                s.parse::<f64>()
                    .map(T::lit)
                    .map_err(|_| QtstError::InvalidDataset(format!("bad number {s:?} on line {}", line + 2)))
            };
            x.push(parse(ix)?);
            u.push(parse(iu)?);
        }
        Self::new(x, u, mass)
    }

    pub fn knots(&self) -> &[T] {
        self.interp.knots()
    }

    pub fn values(&self) -> &[T] {
        self.interp.values()
    }
}

/// One-dimensional barrier. Every variant has its barrier top at `(x_b, E_b)`
/// and a reactant side to the left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", bound = "T: Real")]
pub enum Potential1D<T: Real> {
    /// `E_b − ½Mω_b²x²`.
    Parabolic {
        e_b_kj_mol: T,
        omegab_cm1: T,
        #[serde(default = "unit_mass")]
        mass: T,
    },
    /// `V₀ / cosh²(x/w)`.
    Eckart {
        v0_kj_mol: T,
        width_angstrom: T,
        #[serde(default = "unit_mass")]
        mass: T,
    },
    /// `½Mω₀²x² − ⅓cx³` with `c` fixed by the barrier height `E_b`.
    Cubic {
        omega0_cm1: T,
        e_b_kj_mol: T,
        #[serde(default = "unit_mass")]
        mass: T,
    },
    Tabulated(Tabulated<T>),
}

impl<T: Real> Potential1D<T> {
    pub fn parabolic(e_b: T, omegab: T, mass: T) -> Result<Self> {
        let p = Potential1D::Parabolic {
            e_b_kj_mol: e_b,
            omegab_cm1: omegab,
            mass,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn eckart(v0: T, width: T, mass: T) -> Result<Self> {
        let p = Potential1D::Eckart {
            v0_kj_mol: v0,
            width_angstrom: width,
            mass,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn cubic(omega0: T, e_b: T, mass: T) -> Result<Self> {
        let p = Potential1D::Cubic {
            omega0_cm1: omega0,
            e_b_kj_mol: e_b,
            mass,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Potential1D::Parabolic { .. } => "parabolic",
            Potential1D::Eckart { .. } => "eckart",
            Potential1D::Cubic { .. } => "cubic",
            Potential1D::Tabulated(_) => "tabulated",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Potential1D::Parabolic {
                e_b_kj_mol,
                omegab_cm1,
                mass,
            } => {
                positive("e_b_kj_mol", e_b_kj_mol)?;
                positive("omegab_cm1", omegab_cm1)?;
                positive("mass", mass)
            }
            Potential1D::Eckart {
                v0_kj_mol,
                width_angstrom,
                mass,
            } => {
                positive("v0_kj_mol", v0_kj_mol)?;
                positive("width_angstrom", width_angstrom)?;
                positive("mass", mass)
            }
            Potential1D::Cubic {
                omega0_cm1,
                e_b_kj_mol,
                mass,
            } => {
                positive("omega0_cm1", omega0_cm1)?;
                positive("e_b_kj_mol", e_b_kj_mol)?;
                positive("mass", mass)
            }
            Potential1D::Tabulated(ref t) => positive("mass", t.mass),
        }
    }

    pub fn mass(&self) -> T {
        match *self {
            Potential1D::Parabolic { mass, .. } | Potential1D::Eckart { mass, .. } | Potential1D::Cubic { mass, .. } => {
                mass
            }
            Potential1D::Tabulated(ref t) => t.mass,
        }
    }

    /// Same `U(x)` carried by a particle of a different mass; frequencies of
    /// the analytic variants are rescaled by `√(m_old/m_new)`.
    pub fn with_mass(&self, new_mass: T) -> Result<Self> {
        positive("mass", new_mass)?;
        let f = (self.mass() / new_mass).sqrt();
        Ok(match self.clone() {
            Potential1D::Parabolic {
                e_b_kj_mol, omegab_cm1, ..
            } => Potential1D::Parabolic {
                e_b_kj_mol,
                omegab_cm1: omegab_cm1 * f,
                mass: new_mass,
            },
            Potential1D::Eckart {
                v0_kj_mol,
                width_angstrom,
                ..
            } => Potential1D::Eckart {
                v0_kj_mol,
                width_angstrom,
                mass: new_mass,
            },
            Potential1D::Cubic {
                omega0_cm1, e_b_kj_mol, ..
            } => Potential1D::Cubic {
                omega0_cm1: omega0_cm1 * f,
                e_b_kj_mol,
                mass: new_mass,
            },
            Potential1D::Tabulated(t) => Potential1D::Tabulated(Tabulated { mass: new_mass, ..t }),
        })
    }

    /// Cubic coefficient `c` and force constant `k`, so that `x_b = k/c`.
    fn cubic_coefficients(omega0: T, e_b: T, mass: T) -> (T, T) {
        let k = force_constant(omega0, mass);
        (k, (k * k * k / (T::lit(6.0) * e_b)).sqrt())
    }

    /// `(x_b, E_b)`.
    pub fn barrier(&self) -> (T, T) {
        match *self {
            Potential1D::Parabolic { e_b_kj_mol, .. } => (T::zero(), e_b_kj_mol),
            Potential1D::Eckart { v0_kj_mol, .. } => (T::zero(), v0_kj_mol),
            Potential1D::Cubic {
                omega0_cm1,
                e_b_kj_mol,
                mass,
            } => {
                let (k, c) = Self::cubic_coefficients(omega0_cm1, e_b_kj_mol, mass);
                (k / c, e_b_kj_mol)
            }
            Potential1D::Tabulated(ref t) => (t.knots()[t.top], t.values()[t.top]),
        }
    }

    pub fn potential(&self, x: T) -> T {
        match *self {
            Potential1D::Parabolic {
                e_b_kj_mol,
                omegab_cm1,
                mass,
            } => e_b_kj_mol - T::lit(0.5) * force_constant(omegab_cm1, mass) * x * x,
            Potential1D::Eckart {
                v0_kj_mol,
                width_angstrom,
                ..
            } => {
                let s = T::one() / (x / width_angstrom).cosh();
                v0_kj_mol * s * s
            }
            Potential1D::Cubic {
                omega0_cm1,
                e_b_kj_mol,
                mass,
            } => {
                let (k, c) = Self::cubic_coefficients(omega0_cm1, e_b_kj_mol, mass);
                x * x * (T::lit(0.5) * k - c * x / T::lit(3.0))
            }
            Potential1D::Tabulated(ref t) => t.interp.eval(x),
        }
    }

    /// `dU/dx` in kJ/mol/Å.
    pub fn derivative(&self, x: T) -> T {
        match *self {
            Potential1D::Parabolic { omegab_cm1, mass, .. } => -force_constant(omegab_cm1, mass) * x,
            Potential1D::Eckart {
                v0_kj_mol,
                width_angstrom,
                ..
            } => {
                let u = x / width_angstrom;
                let s = T::one() / u.cosh();
                -T::lit(2.0) * v0_kj_mol * s * s * u.tanh() / width_angstrom
            }
            Potential1D::Cubic {
                omega0_cm1,
                e_b_kj_mol,
                mass,
            } => {
                let (k, c) = Self::cubic_coefficients(omega0_cm1, e_b_kj_mol, mass);
                x * (k - c * x)
            }
            Potential1D::Tabulated(ref t) => t.interp.derivative(x),
        }
    }

    fn length_scale(&self) -> T {
        match *self {
            Potential1D::Parabolic {
                e_b_kj_mol,
                omegab_cm1,
                mass,
            } => (T::lit(2.0) * e_b_kj_mol / force_constant(omegab_cm1, mass)).sqrt(),
            Potential1D::Eckart { width_angstrom, .. } => width_angstrom,
            Potential1D::Cubic { .. } => self.barrier().0,
            Potential1D::Tabulated(ref t) => {
                let k = t.knots();
                k[k.len() - 1] - k[0]
            }
        }
    }

    fn bracket(&self, energy: T, left: bool) -> Result<(T, T)> {
        let (xb, _) = self.barrier();
        if let Potential1D::Tabulated(t) = self {
            let (x, u) = (t.knots(), t.values());
            let found = if left {
                (0..t.top).rev().find(|&i| u[i] < energy).map(|i| (x[i], x[i + 1]))
            } else {
                (t.top + 1..x.len()).find(|&i| u[i] < energy).map(|i| (x[i - 1], x[i]))
            };
            return found.ok_or(QtstError::NonBracketing { energy: energy.f64() });
        }
        let sign = if left { -T::one() } else { T::one() };
        let mut step = self.length_scale();
        for _ in 0..200 {
            let far = xb + sign * step;
            if self.potential(far) < energy {
                return Ok(if left { (far, xb) } else { (xb, far) });
            }
            step = step + step;
        }
        Err(QtstError::NonBracketing { energy: energy.f64() })
    }
}

fn check_energy<T: Real>(pot: &Potential1D<T>, energy: T) -> Result<()> {
    pot.validate()?;
    positive("energy", energy)?;
    let (_, eb) = pot.barrier();
    if energy >= eb {
        return Err(QtstError::NoBarrier {
            energy: energy.f64(),
            barrier: eb.f64(),
        });
    }
    Ok(())
}

/// Classical turning points `x₁ < x_b < x₂` with `U(x) = E`, by bisection.
pub fn turning_points<T: Real>(pot: &Potential1D<T>, energy: T) -> Result<(T, T)> {
    check_energy(pot, energy)?;
    let (xb, _) = pot.barrier();
    let xtol = T::tol(1e-14) * xb.abs().max(pot.length_scale());
    let f = |x: T| pot.potential(x) - energy;
    let root = |(lo, hi): (T, T)| {
        bisect(f, lo, hi, xtol, 400).map_err(|_| QtstError::NonBracketing { energy: energy.f64() })
    };
    let x1 = root(pot.bracket(energy, true)?)?;
    let x2 = root(pot.bracket(energy, false)?)?;
    Ok((x1, x2))
}

/// `S(E)/ħ = (√(2M)/ħ) ∫_{x₁}^{x₂} √(U(x) − E) dx`.
///
/// The substitution `x = x_m + Δ sin θ` removes the square-root behaviour at
/// both turning points; the θ range is split at the barrier top.
pub fn wkb_action<T: Real>(pot: &Potential1D<T>, energy: T) -> Result<T> {
    let (x1, x2) = turning_points(pot, energy)?;
    let half = T::lit(0.5);
    let xm = half * (x1 + x2);
    let delta = half * (x2 - x1);
    let (xb, _) = pot.barrier();
    let theta_b = ((xb - xm) / delta).max(-T::one()).min(T::one()).asin();
    let integrand = |theta: T| {
        let gap = pot.potential(xm + delta * theta.sin()) - energy;
        gap.max(T::zero()).sqrt() * delta * theta.cos()
    };
    let h = T::FRAC_PI_2();
    let mut segments = vec![Segment::Finite(-h, theta_b), Segment::Finite(theta_b, h)];
    segments.retain(|s| matches!(s, Segment::Finite(a, b) if b > a));
    let (_, eb) = pot.barrier();
    let floor = 1e-15 * eb.f64().sqrt() * pot.length_scale().f64();
    let q = integrate_segments(integrand, &segments, 1e-12, floor)?;
    Ok(action_unit::<T>() * pot.mass().sqrt() * q.value)
}

/// WKB transmission `exp(−2S(E)/ħ)`.
pub fn transmission<T: Real>(pot: &Potential1D<T>, energy: T) -> Result<T> {
    Ok((-T::lit(2.0) * wkb_action(pot, energy)?).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const KJ_PER_CM1: f64 = 6.626_070_15e-34 * 2.997_924_58e10 * 6.022_140_76e23 / 1000.0;

    fn parabola() -> Potential1D<f64> {
        Potential1D::parabolic(40.0, 1000.0, 1.0).unwrap()
    }

    fn sampled(p: &Potential1D<f64>, lo: f64, hi: f64, n: usize) -> Potential1D<f64> {
        let x: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
        let u = x.iter().map(|&v| p.potential(v)).collect();
        Potential1D::Tabulated(Tabulated::new(x, u, p.mass()).unwrap())
    }

    #[test]
    fn action_unit_value() {
        // √(2 m_p·1000/N_A)·1e-10/ħ at 40 digits.
        assert_relative_eq!(action_unit::<f64>(), 2.234_921_523_583_398_8, max_relative = 1e-14);
    }

    #[test]
    fn parabolic_turning_points_and_action() {
        let p = parabola();
        let k = force_constant(1000.0, 1.0);
        for f in [0.05, 0.3, 0.5, 0.8, 0.95] {
            let e = 40.0 * f;
            let (x1, x2) = turning_points(&p, e).unwrap();
            let w = (2.0 * (40.0 - e) / k).sqrt();
            assert_relative_eq!(x1, -w, max_relative = 1e-12);
            assert_relative_eq!(x2, w, max_relative = 1e-12);
            let s = wkb_action(&p, e).unwrap();
            let exact = std::f64::consts::PI * (40.0 - e) / (KJ_PER_CM1 * 1000.0);
            assert_relative_eq!(s, exact, max_relative = 1e-10);
        }
    }

    #[test]
    fn parabolic_transmission() {
        let p = parabola();
        let t = transmission(&p, 20.0).unwrap();
        let exact = (-2.0 * std::f64::consts::PI * 20.0 / (KJ_PER_CM1 * 1000.0)).exp();
        assert_relative_eq!(t, exact, max_relative = 1e-10);
        assert!(t > 0.0 && t < 1.0);
        let near = transmission(&p, 40.0 * (1.0 - 1e-9)).unwrap();
        assert!(near > 1.0 - 1e-6 && near < 1.0);
        assert!(wkb_action(&p, 40.0 * (1.0 - 1e-9)).unwrap() < 1e-7);
    }

    #[test]
    fn coalescing_turning_points() {
        let (x1, x2) = turning_points(&parabola(), 40.0 * (1.0 - 1e-12)).unwrap();
        assert!(x2 - x1 < 1e-5 && x1 <= 0.0 && x2 >= 0.0);
    }

    #[test]
    fn energy_domain_errors() {
        let p = parabola();
        assert!(matches!(wkb_action(&p, 40.0), Err(QtstError::NoBarrier { .. })));
        assert!(matches!(wkb_action(&p, 50.0), Err(QtstError::NoBarrier { .. })));
        assert!(wkb_action(&p, 0.0).is_err());
        assert!(Potential1D::parabolic(40.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn eckart_closed_form_and_trapezoid() {
        let p = Potential1D::eckart(40.0, 0.5, 1.0).unwrap();
        for (f, want) in [(0.1, 15.181_812_103_327_465), (0.5, 6.503_115_501_578_134)] {
            assert_relative_eq!(wkb_action(&p, 40.0 * f).unwrap(), want, max_relative = 1e-10);
        }
        // 10⁶-point trapezoid between the analytic turning points.
        let e = 12.0;
        let a = 0.5 * (40.0_f64 / e).sqrt().acosh();
        let n = 1_000_000;
        let h = 2.0 * a / n as f64;
        let g = |x: f64| (p.potential(x) - e).max(0.0).sqrt();
        let mut sum = 0.5 * (g(-a) + g(a));
        for i in 1..n {
            sum += g(-a + i as f64 * h);
        }
        let trap = sum * h * action_unit::<f64>();
        assert_relative_eq!(wkb_action(&p, e).unwrap(), trap, max_relative = 1e-6);
        let (x1, x2) = turning_points(&p, e).unwrap();
        assert_relative_eq!(x2, a, max_relative = 1e-12);
        assert_relative_eq!(x1, -a, max_relative = 1e-12);
    }

    #[test]
    fn cubic_reference_values() {
        // ω₀ = 1000 cm⁻¹, E_b = 40 kJ/mol, proton mass: 40-digit quadrature.
        let p = Potential1D::cubic(1000.0_f64, 40.0, 1.0).unwrap();
        let (xb, eb) = p.barrier();
        assert_relative_eq!(xb, 0.819_465_559_768_138_4, max_relative = 1e-13);
        assert_eq!(eb, 40.0);
        assert_relative_eq!(p.potential(xb), 40.0, max_relative = 1e-13);
        assert!(p.derivative(xb).abs() < 1e-10);
        let cases = [
            (0.05, 11.194_875_270_575_667, 0.110_914_960_301_757_16, 1.219_954_663_034_280_8),
            (0.1, 10.466_352_416_901_9, 0.160_451_443_186_588_23, 1.210_418_538_530_283_2),
            (0.5, 5.479_389_844_326_19, 0.409_732_779_884_069_2, 1.119_410_772_169_712_3),
            (0.9, 1.058_035_679_623_987_3, 0.659_014_116_581_550_1, 0.961_137_201_832_802_2),
        ];
        for (f, s, x1, x2) in cases {
            let e = 40.0 * f;
            assert_relative_eq!(wkb_action(&p, e).unwrap(), s, max_relative = 1e-9);
            let (a, b) = turning_points(&p, e).unwrap();
            assert_relative_eq!(a, x1, max_relative = 1e-12);
            assert_relative_eq!(b, x2, max_relative = 1e-12);
        }
        // Barrier frequency of the cubic equals ω₀, so near the top the action is parabolic.
        let e = 40.0 * (1.0 - 1e-4);
        let parabolic = std::f64::consts::PI * (40.0 - e) / (KJ_PER_CM1 * 1000.0);
        assert_relative_eq!(wkb_action(&p, e).unwrap(), parabolic, max_relative = 1e-3);
    }

    #[test]
    fn parabolic_mass_scaling() {
        let p = parabola();
        for m in [2.0, 3.0, 7.5] {
            let heavy = p.with_mass(m).unwrap();
            for e in [4.0, 20.0, 36.0] {
                assert_relative_eq!(
                    wkb_action(&heavy, e).unwrap(),
                    m.sqrt() * wkb_action(&p, e).unwrap(),
                    max_relative = 1e-11
                );
            }
            assert_relative_eq!(heavy.potential(0.3), p.potential(0.3), max_relative = 1e-14);
        }
    }

    #[test]
    fn tabulated_matches_analytic_variants() {
        let par = parabola();
        let w = par.length_scale();
        let eck = Potential1D::eckart(40.0, 0.5, 1.0).unwrap();
        let cub = Potential1D::cubic(1000.0, 40.0, 1.0).unwrap();
        let xb = cub.barrier().0;
        let cases = [
            (par.clone(), sampled(&par, -1.2 * w, 1.2 * w, 400)),
            (eck.clone(), sampled(&eck, -2.5, 2.5, 400)),
            (cub.clone(), sampled(&cub, -0.3 * xb, 1.6 * xb, 400)),
        ];
        for (exact, table) in &cases {
            for f in [0.05, 0.2, 0.5, 0.8, 0.95] {
                let e = 40.0 * f;
                let s0 = wkb_action(exact, e).unwrap();
                let s1 = wkb_action(table, e).unwrap();
                assert!((s1 / s0 - 1.0).abs() < 1e-5, "{} E/Eb={f}: {s1} vs {s0}", exact.kind());
            }
        }
        // Harmonic-mean slopes are inexact near the top of a parabola and the
        // error falls as h³, so the turning-point comparison uses a finer table.
        let fine = sampled(&par, -1.2 * w, 1.2 * w, 2001);
        for f in [0.1, 0.5, 0.9] {
            let (a, b) = turning_points(&par, 40.0 * f).unwrap();
            let (c, d) = turning_points(&fine, 40.0 * f).unwrap();
            assert!((a - c).abs() < 1e-8 * w && (b - d).abs() < 1e-8 * w, "E/Eb={f}: {} {}", (a - c) / w, (b - d) / w);
        }
    }

    #[test]
    fn tabulated_errors() {
        let x = vec![0.0, 1.0, 2.0, 3.0];
        assert!(Tabulated::new(x.clone(), vec![0.0, 1.0, 2.0, 3.0], 1.0).is_err());
        let t = Potential1D::Tabulated(Tabulated::new(x, vec![5.0, 10.0, 8.0, 6.0], 1.0).unwrap());
        assert!(matches!(turning_points(&t, 4.0), Err(QtstError::NonBracketing { .. })));
        assert!(turning_points(&t, 7.0).is_ok());
        assert!(matches!(turning_points(&t, 10.0), Err(QtstError::NoBarrier { .. })));
    }

    #[test]
    fn csv_and_serde_round_trip() {
        let csv = "x_angstrom,U_kJ_per_mol\n-1,0\n-0.5,7.5\n0,10\n0.5,7.5\n1,0\n";
        let t = Tabulated::<f64>::from_csv(csv.as_bytes(), 2.0).unwrap();
        assert_eq!(t.knots().len(), 5);
        let p = Potential1D::Tabulated(t);
        let json = serde_json::to_string(&p).unwrap();
        let back: Potential1D<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(Tabulated::<f64>::from_csv("x,U\n1,2\n".as_bytes(), 1.0).is_err());
        assert!(Tabulated::<f64>::from_csv("x_angstrom,U_kJ_per_mol\n1,abc\n".as_bytes(), 1.0).is_err());
        let par: Potential1D<f64> =
            serde_json::from_str(r#"{"kind":"parabolic","e_b_kj_mol":40,"omegab_cm1":1000}"#).unwrap();
        assert_eq!(par, parabola());
    }

    #[test]
    fn single_precision_parabola() {
        let p = Potential1D::<f32>::parabolic(40.0, 1000.0, 1.0).unwrap();
        let s = wkb_action(&p, 20.0).unwrap();
        let exact = std::f64::consts::PI * 20.0 / (KJ_PER_CM1 * 1000.0);
        assert!((f64::from(s) / exact - 1.0).abs() < 1e-4);
    }

    fn variants() -> Vec<Potential1D<f64>> {
        let cub = Potential1D::cubic(1500.0, 30.0, 1.0).unwrap();
        let xb = cub.barrier().0;
        vec![
            parabola(),
            Potential1D::eckart(40.0, 0.5, 2.0).unwrap(),
            cub.clone(),
            sampled(&cub, -0.3 * xb, 1.6 * xb, 200),
        ]
    }

    proptest! {
        #[test]
        fn action_decreases_with_energy(i in 0usize..4, a in 0.02f64..0.97, d in 0.005f64..0.02) {
            let p = &variants()[i];
            let eb = p.barrier().1;
            let (lo, hi) = (a * eb, (a + d) * eb);
            prop_assert!(wkb_action(p, hi).unwrap() < wkb_action(p, lo).unwrap());
            prop_assert!(transmission(p, hi).unwrap() > transmission(p, lo).unwrap());
        }
    }
}
