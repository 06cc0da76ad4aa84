//! Bundled reference data: measured isotope effects, computed barrier
//! frequencies, classification thresholds and the two digitized KIE curves.

use serde::{Deserialize, Serialize};

use crate::error::{QtstError, Result};
use crate::units::IsotopePair;

pub const TABLE1_JSON: &str = include_str!("../../../data/table1_kie.json");
pub const TABLE3_JSON: &str = include_str!("../../../data/table3_omegab.json");
pub const LIMITS_JSON: &str = include_str!("../../../data/limits.json");
pub const FIG3_MCM_CSV: &str = include_str!("../../../data/fig3_mcm.csv");
pub const FIG3_MCM_META: &str = include_str!("../../../data/fig3_mcm.json");
pub const FIG4_MAO_CSV: &str = include_str!("../../../data/fig4_mao.csv");
pub const FIG4_MAO_META: &str = include_str!("../../../data/fig4_mao.json");

/// A tabulated number with optional uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measured {
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uncertainty: Option<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub approximate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Enzyme,
    NonEnzyme,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KieRow {
    pub system: String,
    pub category: Category,
    pub pair: IsotopePair,
    #[serde(rename = "kie_300K")]
    pub kie_300k: Option<Measured>,
    pub a_ratio: Option<Measured>,
    /// `E_heavy − E_light`.
    pub delta_e_kj_mol: Option<Measured>,
    pub e_light_kj_mol: Option<Measured>,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarrierFrequencyRow {
    pub system: String,
    pub method: String,
    pub omegab_cm1: f64,
    #[serde(rename = "max_t0_K")]
    pub max_t0_k: f64,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KimKreevoy {
    pub pair: IsotopePair,
    pub kie_min: f64,
    #[serde(default)]
    pub kie_min_with_secondary: Option<f64>,
    #[serde(default, rename = "kie_temperature_C")]
    pub kie_temperature_c: Option<f64>,
    pub delta_e_min_kj_mol: f64,
    pub a_ratio_max: f64,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BellRange {
    pub pair: IsotopePair,
    pub a_ratio_min: f64,
    pub a_ratio_max: f64,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemiclassicalLimit {
    /// Which published table the row belongs to (`kie` or `arrhenius`).
    pub table: String,
    pub pair: IsotopePair,
    #[serde(default)]
    pub omega0_cm1: Option<f64>,
    #[serde(default, rename = "kie_300K_max")]
    pub kie_300k_max: Option<f64>,
    pub a_ratio_min: f64,
    pub a_ratio_max: f64,
    pub delta_e_max_kj_mol: f64,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroPointValue {
    pub pair: IsotopePair,
    pub delta_e_kj_mol: f64,
    pub kie: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroPointFormula {
    #[serde(default)]
    pub description: String,
    pub omega0_cm1: f64,
    #[serde(rename = "temperature_K")]
    pub temperature_k: f64,
    pub values: Vec<ZeroPointValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Limits {
    pub schema: String,
    #[serde(default)]
    pub description: String,
    pub kim_kreevoy: KimKreevoy,
    pub bell_ranges: Vec<BellRange>,
    pub semiclassical_limits: Vec<SemiclassicalLimit>,
    pub zero_point_formula: ZeroPointFormula,
}

impl Limits {
    pub fn bell_range(&self, pair: IsotopePair) -> Option<&BellRange> {
        self.bell_ranges.iter().find(|r| r.pair == pair)
    }

    /// Parses a limits document, e.g. a user override of the bundled file.
    pub fn from_json(text: &str) -> Result<Self> {
        let l: Limits = serde_json::from_str(text)?;
        if l.schema != "qtst-limits/1" {
            return Err(QtstError::Parse(format!("unsupported limits schema {:?}", l.schema)));
        }
        Ok(l)
    }
}

#[derive(Deserialize)]
struct Rows<R> {
    schema: String,
    rows: Vec<R>,
}

fn rows<R: for<'de> Deserialize<'de>>(text: &str, schema: &str) -> Result<Vec<R>> {
    let doc: Rows<R> = serde_json::from_str(text)?;
    if doc.schema != schema {
        return Err(QtstError::Parse(format!("expected schema {schema}, found {}", doc.schema)));
    }
    Ok(doc.rows)
}

/// Measured KIE and Arrhenius parameters of hydrogen-transfer reactions.
pub fn kie_table() -> Vec<KieRow> {
    rows(TABLE1_JSON, "qtst-table1/1").expect("bundled table1_kie.json is valid")
}

/// Barrier frequencies from quantum-chemistry calculations.
pub fn barrier_frequency_table() -> Vec<BarrierFrequencyRow> {
    rows(TABLE3_JSON, "qtst-table3/1").expect("bundled table3_omegab.json is valid")
}

/// Bundled classification thresholds.
pub fn limits() -> Limits {
    Limits::from_json(LIMITS_JSON).expect("bundled limits.json is valid")
}

/// Looks up a row of [`kie_table`] by case-insensitive substring of its system name.
///
/// Fails with [`QtstError::UnknownRow`] when nothing matches.
pub fn find_kie_row(name: &str) -> Result<KieRow> {
    let needle = name.to_lowercase();
    kie_table()
        .into_iter()
        .find(|r| r.system.to_lowercase().contains(&needle))
        .ok_or_else(|| QtstError::UnknownRow(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::Isotope;

    #[test]
    fn bundled_tables_parse() {
        let t1 = kie_table();
        assert_eq!(t1.len(), 36);
        assert_eq!(t1.iter().filter(|r| r.pair == IsotopePair::H_T).count(), 6);
        let mcm = &t1[0];
        assert_eq!(mcm.system, "Methylmalonyl-CoA mutase");
        assert_eq!(mcm.kie_300k.unwrap().value, 35.6);
        assert_eq!(mcm.a_ratio.unwrap().uncertainty, Some(0.028));
        let t3 = barrier_frequency_table();
        assert_eq!(t3.len(), 13);
        assert!(t3.iter().all(|r| r.omegab_cm1 > 0.0));
    }

    #[test]
    fn table3_crossover_column_tracks_formula() {
        // The quoted maximum T₀ is the frictionless ħω_b/2πk_B, rounded; one
        // row (1229 cm⁻¹ quoted as 240 K) is inconsistent in the source table.
        let off: Vec<_> = barrier_frequency_table()
            .into_iter()
            .filter(|r| {
                let t0 = crate::kramers::crossover_temperature(r.omegab_cm1).unwrap();
                (t0 - r.max_t0_k).abs() / r.max_t0_k > 0.06
            })
            .collect();
        assert_eq!(off.len(), 1);
        assert_eq!(off[0].omegab_cm1, 1229.0);
    }

    #[test]
    fn limits_content() {
        let l = limits();
        assert_eq!(l.kim_kreevoy.kie_min, 6.4);
        assert_eq!(l.kim_kreevoy.delta_e_min_kj_mol, 5.0);
        assert_eq!(l.kim_kreevoy.a_ratio_max, 0.7);
        let ht = l.bell_range(IsotopePair::H_T).unwrap();
        assert_eq!((ht.a_ratio_min, ht.a_ratio_max), (0.3, 1.7));
        let dt = l.bell_range(IsotopePair::D_T).unwrap();
        assert_eq!((dt.a_ratio_min, dt.a_ratio_max), (0.5, 1.4));
        assert!(l.bell_range(IsotopePair::new(Isotope::H, Isotope::H).unwrap()).is_none());
    }

    #[test]
    fn zero_point_values_match_formula() {
        let l = limits();
        let z = &l.zero_point_formula;
        for v in &z.values {
            let ml: f64 = v.pair.light.mass_number();
            let mh: f64 = v.pair.heavy.mass_number();
            let de = 0.5 * crate::units::wavenumber_to_kj(z.omega0_cm1) * (1.0 / ml.sqrt() - 1.0 / mh.sqrt());
            assert!((de - v.delta_e_kj_mol).abs() < 1e-9);
            let kie = (de / crate::units::thermal_kj(z.temperature_k)).exp();
            assert!((kie - v.kie).abs() < 1e-8);
        }
        // The bare formula exceeds the tabulated H:D limit of 3.1 kJ/mol.
        let hd = z.values.iter().find(|v| v.pair == IsotopePair::H_D).unwrap();
        assert!(hd.delta_e_kj_mol > 5.0);
    }

    #[test]
    fn row_lookup() {
        assert!(find_kie_row("lipoxygenase (wild").unwrap().a_ratio.unwrap().value == 18.0);
        assert!(matches!(find_kie_row("no such enzyme"), Err(QtstError::UnknownRow(_))));
    }

    #[test]
    fn rejects_wrong_schema() {
        let bad = LIMITS_JSON.replace("qtst-limits/1", "qtst-limits/9");
        assert!(Limits::from_json(&bad).is_err());
    }
}
