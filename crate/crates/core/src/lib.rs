//! Quantum transition state theory for hydrogen-transfer kinetics.
//!
//! Classical Kramers rates under memory friction, quantum correction factors
//! above the crossover temperature, kinetic isotope effects and their
//! apparent Arrhenius parameters, WKB tunneling for model barriers, and
//! fitting of measured isotope effects.
//!
//! Every routine is generic over a [`Real`] scalar; the `f64` aliases below
//! cover the common case.
//!
//! Units throughout: frequencies in angular wavenumbers (cm⁻¹), energies in
//! kJ/mol, temperatures in K, lengths in Å, masses in proton masses.

pub mod error;
pub mod fit;
pub mod kie;
pub mod kramers;
pub mod numeric;
pub mod qcorr;
pub mod real;
pub mod reference;
pub mod spectral;
pub mod units;
pub mod wkb;

pub use error::{QtstError, Result};
pub use fit::{fit_arrhenius, fit_kie, DatasetMeta};
pub use kie::{apparent_arrhenius, classify, kie_qtst, swain_schaad, ClassificationReport};
pub use kramers::{classical_kie, classical_rate, crossover_temperature, effective_barrier_frequency};
pub use qcorr::{correction_closed, correction_crossover, correction_product, quantum_rate, Regime};
pub use real::Real;
pub use units::{Isotope, IsotopePair, Unit};
pub use wkb::{transmission, turning_points, wkb_action};

pub type ApparentArrhenius = kie::ApparentArrhenius<f64>;
pub type ArrheniusFit = fit::ArrheniusFit<f64>;
pub type ArrheniusParams = kie::ArrheniusParams<f64>;
pub type BarrierSystem = kramers::BarrierSystem<f64>;
pub type ChromophoreEstimate = spectral::ChromophoreEstimate<f64>;
pub type ClassicalRate = kramers::ClassicalRate<f64>;
pub type CorrectionResult = qcorr::CorrectionResult<f64>;
pub type CrossoverParams = qcorr::CrossoverParams<f64>;
pub type DebyeParams = spectral::DebyeParams<f64>;
pub type EffectiveBarrier = kramers::EffectiveBarrier<f64>;
pub type EquilibriumCheck = qcorr::EquilibriumCheck<f64>;
pub type FitConfig = fit::FitConfig<f64>;
pub type FitResult = fit::FitResult<f64>;
pub type FrictionModel = spectral::FrictionModel<f64>;
pub type KieDataset = fit::KieDataset<f64>;
pub type KiePoint = fit::KiePoint<f64>;
pub type KiePrediction = kie::KiePrediction<f64>;
pub type Potential1D = wkb::Potential1D<f64>;
pub type Quantity = units::Quantity<f64>;
pub type Rate = qcorr::Rate<f64>;
pub type RateResult = qcorr::RateResult<f64>;
pub type Tabulated = wkb::Tabulated<f64>;
