use thiserror::Error;

use crate::units::Unit;

pub type Result<T, E = QtstError> = std::result::Result<T, E>;

/// Every failure mode of the library. Numeric payloads are reported as `f64`
/// regardless of the scalar type the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QtstError {
    #[error("cannot convert {from} to {to}: incompatible units")]
    IncompatibleUnits { from: Unit, to: Unit },

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("{what} must be non-negative and finite, got {value}")]
    InvalidParameter { what: &'static str, value: f64 },

    #[error("integral of the friction spectrum diverges for the {model} model")]
    DivergentIntegral { model: &'static str },

    #[error("quadrature did not reach tolerance (estimate {estimate}, error {error})")]
    Quadrature { estimate: f64, error: f64 },

    #[error("root solver did not converge; final bracket [{lo}, {hi}]")]
    SolverNonconvergence { lo: f64, hi: f64 },

    #[error("temperature {temperature} K is not above the crossover temperature {t0} K{}", isotope_suffix(.isotope))]
    BelowCrossover {
        temperature: f64,
        t0: f64,
        isotope: Option<char>,
    },

    #[error("Matsubara factor {n} has non-positive denominator {denominator}; T is at or below T0")]
    NegativeDenominator { n: usize, denominator: f64 },

    #[error("temperature {temperature} K lies too close to the crossover temperature {t0} K")]
    DivergenceGuard { temperature: f64, t0: f64 },

    #[error("temperature {temperature} K is outside the crossover formula's regime (T > {min} K)")]
    OutsideRegime { temperature: f64, min: f64 },

    #[error("kappa must be positive, got {0}")]
    NonPositiveKappa(f64),

    #[error("anharmonicity parameter B must be positive, got {0}")]
    NonPositiveB(f64),

    #[error("activation barrier is zero; the equilibrium condition is undefined")]
    ZeroBarrier,

    #[error("ln(kD/kT) vanishes; Swain-Schaad exponent undefined")]
    DegenerateDenominator,

    #[error("unsupported isotope pair {0}")]
    UnsupportedPair(String),

    #[error("energy {energy} is not below the barrier top {barrier}")]
    NoBarrier { energy: f64, barrier: f64 },

    #[error("potential does not bracket the barrier at energy {energy}")]
    NonBracketing { energy: f64 },

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("no multi-start point converged")]
    NoConvergentStart,

    #[error("every data point lies below the crossover temperature")]
    AllPointsBelowCrossover,

    #[error("regression design is degenerate: all temperatures are equal")]
    DegenerateDesign,

    #[error("unknown reference row: {0}")]
    UnknownRow(String),

    #[error("parse error: {0}")]
    Parse(String),
}

fn isotope_suffix(isotope: &Option<char>) -> String {
    match isotope {
        Some(c) => format!(" for isotope {c}"),
        None => String::new(),
    }
}

impl From<csv::Error> for QtstError {
    fn from(e: csv::Error) -> Self {
        QtstError::Parse(e.to_string())
    }
}

impl From<serde_json::Error> for QtstError {
    fn from(e: serde_json::Error) -> Self {
        QtstError::Parse(e.to_string())
    }
}
