//! `qtst`: command-line front end of the rate-theory library.
//!
//! Tables go to CSV (the default for curves) or schema-versioned JSON.

mod args;
mod commands;
mod config;
mod error;
mod output;

use clap::Parser;

fn main() {
    let cli = args::Cli::parse();
    if let Err(e) = commands::run(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

#[cfg(test)]
mod tests {
    use super::args::*;
    use super::config::merge;
    use qtst::IsotopePair;

    #[test]
    fn config_round_trips() {
        let a = KiePredictArgs {
            omega0: Some(3000.0),
            omegab: Some(1000.0),
            pair: Some(IsotopePair::H_T),
            grid: TemperatureGrid {
                tmin: Some(275.0),
                tmax: Some(320.5),
                tstep: Some(0.1),
            },
            output: OutputArgs {
                format: Some(Format::Json),
                ..OutputArgs::default()
            },
        };
        let text = serde_json::to_string(&a).unwrap();
        let back: KiePredictArgs = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);

        let w = WkbArgs {
            potential: Some(PotentialKind::Eckart),
            v0: Some(40.0),
            width: Some(0.5),
            n: Some(7),
            ..WkbArgs::default()
        };
        let back: WkbArgs = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn flags_override_config() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"omega0": 2500, "omegab": 900, "tmin": 280, "tmax": 300}"#).unwrap();
        let flags = KiePredictArgs {
            omega0: Some(3000.0),
            ..KiePredictArgs::default()
        };
        let m = merge(&flags, Some(&path)).unwrap();
        assert_eq!(m.omega0, Some(3000.0));
        assert_eq!(m.omegab, Some(900.0));
        assert_eq!(m.grid.tmax, Some(300.0));

        std::fs::write(&path, r#"{"omega_zero": 1}"#).unwrap();
        assert_eq!(merge(&flags, Some(&path)).unwrap_err().exit_code(), 2);
        std::fs::write(&path, "[1, 2]").unwrap();
        assert!(merge(&flags, Some(&path)).is_err());
    }
}
