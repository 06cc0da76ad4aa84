//! Command-line and config-file parameters. Config keys are the field names.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qtst::{Isotope, IsotopePair};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "qtst",
    version,
    about = "Quantum transition state theory for hydrogen-transfer kinetics",
    long_about = "Quantum transition state theory for hydrogen-transfer kinetics.\n\n\
        Units: frequencies in angular wavenumbers [cm⁻¹], energies in [kJ/mol], \
        temperatures in [K], lengths in [Å], masses in [proton masses].\n\n\
        Every command also reads its parameters from a JSON object given with --config; \
        keys are the long flag names with '-' replaced by '_', and flags take precedence.\n\n\
        Exit codes: 0 ok, 2 configuration error, 3 domain error, 4 fit failure."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kinetic isotope effects of the frictionless quantum rate
    #[command(subcommand)]
    Kie(KieCommand),
    /// Fit reactant-well and barrier frequencies to KIE(T) data
    Fit(FitArgs),
    /// Crossover temperature under Drude friction as a function of friction strength
    Crossover(CrossoverArgs),
    /// Flag Arrhenius parameters against semi-classical limits
    Classify(ClassifyArgs),
    /// Classical and quantum-corrected rates over a temperature grid
    Rate(RateArgs),
    /// Quantum correction factors over a temperature grid
    Correction(CorrectionArgs),
    /// Evaluate a friction model on a logarithmic frequency grid
    Spectral(SpectralArgs),
    /// WKB action and transmission of a one-dimensional barrier
    Wkb(WkbArgs),
    /// Swain-Schaad exponent from H, D and T rates
    SwainSchaad(SwainSchaadArgs),
    /// Linear Arrhenius regression of rate data
    Arrhenius(ArrheniusArgs),
}

#[derive(Debug, Subcommand)]
pub enum KieCommand {
    /// KIE curve over a temperature grid
    Predict(KiePredictArgs),
    /// Apparent Arrhenius parameters of the KIE around a reference temperature
    Apparent(ApparentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct OutputArgs {
    /// JSON file with parameters; flags given on the command line win
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the output to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a gnuplot script for the CSV output (requires --out)
    #[arg(long)]
    pub gnuplot: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct TemperatureGrid {
    /// Lowest temperature [K]
    #[arg(long)]
    pub tmin: Option<f64>,
    /// Highest temperature [K]
    #[arg(long)]
    pub tmax: Option<f64>,
    /// Temperature step [K] (default 5)
    #[arg(long)]
    pub tstep: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrictionKind {
    None,
    Ohmic,
    Drude,
    Peaked,
    LinearProtein,
    Debye,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct FrictionArgs {
    /// Friction model (default none)
    #[arg(long, value_enum)]
    pub friction: Option<FrictionKind>,
    /// Friction strength γ for ohmic and drude [cm⁻¹]
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Drude bath cutoff frequency ω_D [cm⁻¹]
    #[arg(long)]
    pub omega_d: Option<f64>,
    /// Peak height γ_r of the peaked model [cm⁻¹]
    #[arg(long)]
    pub gamma_r: Option<f64>,
    /// Peak width Γ of the peaked model [cm⁻¹]
    #[arg(long)]
    pub width: Option<f64>,
    /// Peak position ω_r of the peaked model [cm⁻¹]
    #[arg(long)]
    pub omega_r: Option<f64>,
    /// Zero-frequency offset Δγ of the linear protein model [cm⁻¹]
    #[arg(long)]
    pub delta_gamma: Option<f64>,
    /// Slope of the linear protein model [dimensionless]
    #[arg(long)]
    pub slope: Option<f64>,
    /// Exponential cutoff of the linear protein model [cm⁻¹] (default 400)
    #[arg(long)]
    pub cutoff: Option<f64>,
    /// Cavity radius of the Debye water model [Å]
    #[arg(long)]
    pub cavity_radius: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct KiePredictArgs {
    /// Reactant-well frequency of H [cm⁻¹]
    #[arg(long)]
    pub omega0: Option<f64>,
    /// Barrier frequency of H [cm⁻¹]
    #[arg(long)]
    pub omegab: Option<f64>,
    /// Isotope pair light:heavy, e.g. H:D (default H:D)
    #[arg(long)]
    pub pair: Option<IsotopePair>,
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: TemperatureGrid,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct ApparentArgs {
    /// Reactant-well frequency of H [cm⁻¹]
    #[arg(long)]
    pub omega0: Option<f64>,
    /// Barrier frequency of H [cm⁻¹]
    #[arg(long)]
    pub omegab: Option<f64>,
    /// Reference temperature T_R [K] (default 300)
    #[arg(long)]
    pub tref: Option<f64>,
    /// Comma-separated isotope pairs (default H:D,H:T,D:T)
    #[arg(long, value_delimiter = ',')]
    pub pair: Option<Vec<IsotopePair>>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct FitArgs {
    /// CSV with columns T_K,kie[,sigma]; metadata from a sibling .json file
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Bundled dataset instead of --input: fig4_mao or fig3_mcm
    #[arg(long, conflicts_with = "input")]
    pub dataset: Option<String>,
    /// Isotope pair light:heavy; overrides the metadata file
    #[arg(long)]
    pub pair: Option<IsotopePair>,
    /// Write the fitted KIE curve as CSV to this file
    #[arg(long)]
    pub curve: Option<PathBuf>,
    /// Iteration limit per multi-start point [count] (default 500)
    #[arg(long)]
    pub max_iterations: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct CrossoverArgs {
    /// Barrier frequency ω_b [cm⁻¹]
    #[arg(long)]
    pub omegab: Option<f64>,
    /// Comma-separated Drude bath frequencies ω_D [cm⁻¹]
    #[arg(long, value_delimiter = ',')]
    pub omega_d: Option<Vec<f64>>,
    /// Largest friction strength γ [cm⁻¹] (default 10·ω_b)
    #[arg(long)]
    pub gamma_max: Option<f64>,
    /// Number of friction strengths from 0 to --gamma-max [count] (default 51)
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct ClassifyArgs {
    /// Classify every row of a bundled table (only "table1")
    #[arg(long)]
    pub dataset: Option<String>,
    /// Classify the bundled row whose system name contains this text
    #[arg(long, conflicts_with = "dataset")]
    pub row: Option<String>,
    /// Isotope effect at 300 K [dimensionless]
    #[arg(long)]
    pub kie: Option<f64>,
    /// Prefactor ratio A_light/A_heavy [dimensionless]
    #[arg(long)]
    pub a_ratio: Option<f64>,
    /// Activation energy difference E_heavy − E_light [kJ/mol]
    #[arg(long)]
    pub delta_e: Option<f64>,
    /// Isotope pair light:heavy (default H:D)
    #[arg(long)]
    pub pair: Option<IsotopePair>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct RateArgs {
    /// Reactant-well frequency of H [cm⁻¹]
    #[arg(long)]
    pub omega0: Option<f64>,
    /// Barrier frequency of H [cm⁻¹]
    #[arg(long)]
    pub omegab: Option<f64>,
    /// Barrier height E_b [kJ/mol]
    #[arg(long)]
    pub eb: Option<f64>,
    /// Transferred isotope: H, D or T (default H)
    #[arg(long)]
    pub isotope: Option<Isotope>,
    #[command(flatten)]
    #[serde(flatten)]
    pub friction: FrictionArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: TemperatureGrid,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct CorrectionArgs {
    /// Reactant-well frequency of H [cm⁻¹]
    #[arg(long)]
    pub omega0: Option<f64>,
    /// Barrier frequency of H [cm⁻¹]
    #[arg(long)]
    pub omegab: Option<f64>,
    /// Transferred isotope: H, D or T (default H)
    #[arg(long)]
    pub isotope: Option<Isotope>,
    /// κ at the crossover temperature; adds the crossover-region column [dimensionless]
    #[arg(long)]
    pub kappa: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub friction: FrictionArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: TemperatureGrid,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct SpectralArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub friction: FrictionArgs,
    /// Lowest frequency of the grid [cm⁻¹] (default 1)
    #[arg(long)]
    pub zmin: Option<f64>,
    /// Highest frequency of the grid [cm⁻¹] (default 10000)
    #[arg(long)]
    pub zmax: Option<f64>,
    /// Number of logarithmically spaced frequencies [count] (default 41)
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialKind {
    Parabolic,
    Eckart,
    Cubic,
    Tabulated,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct WkbArgs {
    /// Barrier shape
    #[arg(long, value_enum)]
    pub potential: Option<PotentialKind>,
    /// Barrier height E_b for parabolic and cubic [kJ/mol]
    #[arg(long)]
    pub eb: Option<f64>,
    /// Barrier frequency of the parabolic barrier [cm⁻¹]
    #[arg(long)]
    pub omegab: Option<f64>,
    /// Well frequency of the cubic potential [cm⁻¹]
    #[arg(long)]
    pub omega0: Option<f64>,
    /// Eckart barrier height V₀ [kJ/mol]
    #[arg(long)]
    pub v0: Option<f64>,
    /// Eckart width w [Å]
    #[arg(long)]
    pub width: Option<f64>,
    /// Tunneling mass [proton masses] (default 1)
    #[arg(long)]
    pub mass: Option<f64>,
    /// Tabulated potential CSV with columns x_angstrom,U_kJ_per_mol
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Lowest energy as a fraction of the barrier height [dimensionless] (default 0.05)
    #[arg(long)]
    pub emin_frac: Option<f64>,
    /// Highest energy as a fraction of the barrier height [dimensionless] (default 0.95)
    #[arg(long)]
    pub emax_frac: Option<f64>,
    /// Number of energies [count] (default 19)
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct SwainSchaadArgs {
    /// Rate or KIE of H, in any unit shared by all three [same unit]
    #[arg(long)]
    pub kh: Option<f64>,
    /// Rate or KIE of D [same unit]
    #[arg(long)]
    pub kd: Option<f64>,
    /// Rate or KIE of T [same unit]
    #[arg(long)]
    pub kt: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct ArrheniusArgs {
    /// CSV with columns T_K,k (k in any unit)
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}
