use std::path::Path;

use qtst::fit::{fit_arrhenius, fit_kie, FitConfig, KieDataset};
use qtst::kie::{apparent_arrhenius, classify, kie_qtst_unchecked, swain_schaad, swain_schaad_semiclassical};
use qtst::kramers::{crossover_temperature, drude_cubic_root, effective_barrier_frequency, BarrierSystem};
use qtst::qcorr::{correction_closed, correction_crossover, correction_product, quantum_rate, Regime};
use qtst::reference::{find_kie_row, kie_table, limits, KieRow};
use qtst::spectral::{effective_curvature, friction_spectrum, kernel_upper_bound, laplace_kernel, DebyeParams, FrictionModel};
use qtst::wkb::{transmission, turning_points, wkb_action, Potential1D, Tabulated};
use qtst::{Isotope, IsotopePair, QtstError};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::*;
use crate::config::{merge, object, required};
use crate::error::{CliError, CliResult};
use crate::output::{emit, gnuplot_script, write_file, Cell, Report, Table};

pub fn run(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Kie(KieCommand::Predict(a)) => finish(a, |a| &a.output, kie_predict),
        Command::Kie(KieCommand::Apparent(a)) => finish(a, |a| &a.output, kie_apparent),
        Command::Fit(a) => finish(a, |a| &a.output, fit),
        Command::Crossover(a) => finish(a, |a| &a.output, crossover),
        Command::Classify(a) => finish(a, |a| &a.output, classify_cmd),
        Command::Rate(a) => finish(a, |a| &a.output, rate),
        Command::Correction(a) => finish(a, |a| &a.output, correction),
        Command::Spectral(a) => finish(a, |a| &a.output, spectral),
        Command::Wkb(a) => finish(a, |a| &a.output, wkb),
        Command::SwainSchaad(a) => finish(a, |a| &a.output, swain_schaad_cmd),
        Command::Arrhenius(a) => finish(a, |a| &a.output, arrhenius),
    }
}

fn finish<A>(flags: A, output: fn(&A) -> &OutputArgs, build: fn(&A) -> CliResult<Report>) -> CliResult<()>
where
    A: Serialize + serde::de::DeserializeOwned + Default + Clone,
{
    let args = merge(&flags, output(&flags).config.as_deref())?;
    let report = build(&args)?;
    emit(&report, output(&args))
}

/// Parameters echoed into JSON output; output plumbing is left out.
fn parameters<A: Serialize>(a: &A) -> CliResult<Map<String, Value>> {
    let mut m = object(a)?;
    for k in ["format", "out", "gnuplot", "curve"] {
        m.remove(k);
    }
    m.retain(|_, v| !v.is_null());
    Ok(m)
}

fn temperatures(g: &TemperatureGrid) -> CliResult<Vec<f64>> {
    let tmin = required(g.tmin, "tmin")?;
    let tmax = required(g.tmax, "tmax")?;
    let step = g.tstep.unwrap_or(5.0);
    if !(tmin > 0.0 && tmax >= tmin && step > 0.0 && tmax.is_finite()) {
        return Err(CliError::config(format!(
            "temperature grid needs 0 < tmin <= tmax and tstep > 0 (got {tmin}, {tmax}, {step})"
        )));
    }
    let n = ((tmax - tmin) / step + 1e-9).floor() as usize + 1;
    if n > 1_000_000 {
        return Err(CliError::config("temperature grid exceeds 10^6 points"));
    }
    Ok((0..n).map(|i| tmin + step * i as f64).collect())
}

fn positive(v: f64, flag: &str) -> CliResult<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::config(format!("--{flag} must be positive, got {v}")))
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

fn friction_model(f: &FrictionArgs) -> CliResult<FrictionModel<f64>> {
    let need = |v: Option<f64>, flag: &str| required(v, flag);
    let model = match f.friction.unwrap_or(FrictionKind::None) {
        FrictionKind::None => FrictionModel::frictionless(),
        FrictionKind::Ohmic => FrictionModel::ohmic(need(f.gamma, "gamma")?),
        FrictionKind::Drude => FrictionModel::drude(need(f.gamma, "gamma")?, need(f.omega_d, "omega-d")?),
        FrictionKind::Peaked => FrictionModel::peaked(
            need(f.gamma_r, "gamma-r")?,
            need(f.width, "width")?,
            need(f.omega_r, "omega-r")?,
        ),
        FrictionKind::LinearProtein => FrictionModel::LinearProtein {
            delta_gamma_cm1: need(f.delta_gamma, "delta-gamma")?,
            slope: need(f.slope, "slope")?,
            cutoff_cm1: Some(f.cutoff.unwrap_or(400.0)),
        },
        FrictionKind::Debye => FrictionModel::DebyeDielectric(DebyeParams::water(need(f.cavity_radius, "cavity-radius")?)),
    };
    model.validate().map_err(|e| CliError::config(e.to_string()))?;
    Ok(model)
}

fn kie_predict(a: &KiePredictArgs) -> CliResult<Report> {
    let w0 = required(a.omega0, "omega0")?;
    let wb = required(a.omegab, "omegab")?;
    let pair = a.pair.unwrap_or(IsotopePair::H_D);
    let mut table = Table::new(["T_K", "kie", "valid"]).plotting(&[1], false);
    let mut flagged = 0;
    let mut t0 = 0.0;
    for t in temperatures(&a.grid)? {
        let p = kie_qtst_unchecked(w0, wb, t, pair)?;
        t0 = p.t0_light;
        flagged += usize::from(!p.valid);
        table.push(vec![t.into(), p.ratio.into(), p.valid.into()]);
    }
    let mut report = Report::new("kie predict", parameters(a)?, table);
    if flagged > 0 {
        report.warn(format!(
            "{flagged} rows lie at or below the crossover temperature {t0:.2} K of {} and are flagged valid=false",
            pair.light
        ));
    }
    Ok(report)
}

fn kie_apparent(a: &ApparentArgs) -> CliResult<Report> {
    let w0 = required(a.omega0, "omega0")?;
    let wb = required(a.omegab, "omegab")?;
    let tref = a.tref.unwrap_or(300.0);
    let pairs = a.pair.clone().unwrap_or_else(|| vec![IsotopePair::H_D, IsotopePair::H_T, IsotopePair::D_T]);
    let mut table = Table::new(["pair", "T_R_K", "a_ratio", "delta_e_kj_mol", "expansion_warning"]);
    let mut results = Vec::new();
    let mut warnings = Vec::new();
    for pair in pairs {
        let r = apparent_arrhenius(w0, wb, tref, pair)?;
        if r.expansion_warning {
            warnings.push(format!("{pair}: hbar*omega0 < 4 k_B T_R for the heavy isotope; the Arrhenius expansion is poor"));
        }
        table.push(vec![
            pair.to_string().into(),
            tref.into(),
            r.a_ratio.into(),
            r.delta_e_kj_mol.into(),
            r.expansion_warning.into(),
        ]);
        results.push(r);
    }
    let mut report = Report::new("kie apparent", parameters(a)?, table).with_result(json!(results));
    report.default_format = Format::Csv;
    for w in warnings {
        report.warn(w);
    }
    Ok(report)
}

fn fit(a: &FitArgs) -> CliResult<Report> {
    let data = match (&a.input, &a.dataset) {
        (Some(path), _) => KieDataset::<f64>::load(path, a.pair)?,
        (None, Some(name)) => {
            let mut d = KieDataset::<f64>::bundled(name)?;
            if let Some(p) = a.pair {
                d.pair = p;
            }
            d
        }
        (None, None) => return Err(CliError::config("missing required parameter --input (or --dataset)")),
    };
    let mut cfg = FitConfig::default();
    if let Some(n) = a.max_iterations {
        cfg.max_iterations = n;
    }
    let f = fit_kie(&data, &cfg).map_err(|e| match e {
        QtstError::NoConvergentStart | QtstError::AllPointsBelowCrossover => CliError::Fit(format!(
            "{e} ({} points, {} to {} K, pair {}, {} starts)",
            data.points.len(),
            data.points.iter().map(|p| p.temperature).fold(f64::INFINITY, f64::min),
            data.points.iter().map(|p| p.temperature).fold(f64::NEG_INFINITY, f64::max),
            data.pair,
            cfg.omega0_starts.len() * cfg.omegab_starts.len()
        )),
        other => other.into(),
    })?;
    let (s0, sb) = f.standard_errors();
    let mut table = Table::new([
        "omega0_cm1",
        "omegab_cm1",
        "omega0_std_err",
        "omegab_std_err",
        "residual_norm",
        "implied_T0_K",
        "valid",
        "n_starts_converged",
    ]);
    table.push(vec![
        f.omega0.into(),
        f.omegab.into(),
        s0.into(),
        sb.into(),
        f.residual_norm.into(),
        f.implied_t0.into(),
        f.valid.into(),
        Cell::Int(f.n_starts_converged),
    ]);
    let dataset = json!({"label": data.label, "pair": data.pair, "source": data.source, "n_points": data.points.len()});
    let mut report = Report::new("fit", parameters(a)?, table).with_result(json!({"dataset": dataset, "fit": f}));
    if !f.valid {
        report.warn(format!(
            "lowest data temperature is not above 1.05 x implied T0 = {:.2} K; the fit is outside the validity range",
            f.implied_t0
        ));
    }
    if let Some(path) = &a.curve {
        let mut pts = data.points.clone();
        pts.sort_by(|x, y| x.temperature.total_cmp(&y.temperature));
        let (lo, hi) = (pts[0].temperature, pts[pts.len() - 1].temperature);
        let mut curve = Table::new(["T_K", "kie_model", "valid"]).plotting(&[1], false);
        for t in linspace(lo, hi, 101) {
            let p = kie_qtst_unchecked(f.omega0, f.omegab, t, data.pair)?;
            curve.push(vec![t.into(), p.ratio.into(), p.valid.into()]);
        }
        write_file(path, &curve.to_csv()?)?;
        if let Some(script) = &a.output.gnuplot {
            let points = a.input.as_deref();
            write_file(script, &gnuplot_script(&curve, path, points))?;
            report.gnuplot_written = true;
        }
    } else if a.output.gnuplot.is_some() {
        return Err(CliError::config("--gnuplot for fit needs --curve"));
    }
    Ok(report)
}

fn crossover(a: &CrossoverArgs) -> CliResult<Report> {
    let wb = positive(required(a.omegab, "omegab")?, "omegab")?;
    let wds = required(a.omega_d.clone(), "omega-d")?;
    if wds.is_empty() {
        return Err(CliError::config("--omega-d needs at least one frequency"));
    }
    for &w in &wds {
        positive(w, "omega-d")?;
    }
    let gmax = a.gamma_max.unwrap_or(10.0 * wb);
    let n = a.n.unwrap_or(51).max(2);
    let mut cols = vec!["gamma_cm1".to_string()];
    cols.extend(wds.iter().map(|w| format!("T0_K_omega_d_{w}")));
    let plot: Vec<usize> = (1..=wds.len()).collect();
    let mut table = Table::new(cols).plotting(&plot, false);
    for g in linspace(0.0, gmax, n) {
        let mut row = vec![Cell::Num(g)];
        for &wd in &wds {
            let mu = drude_cubic_root(wb, g, wd)?;
            row.push(crossover_temperature(mu)?.into());
        }
        table.push(row);
    }
    Ok(Report::new("crossover", parameters(a)?, table))
}

fn classify_cmd(a: &ClassifyArgs) -> CliResult<Report> {
    let lim = limits();
    let rows: Vec<(String, IsotopePair, Option<f64>, Option<f64>, Option<f64>)> = match (&a.dataset, &a.row) {
        (Some(name), _) if name == "table1" => kie_table().iter().map(row_input).collect(),
        (Some(name), _) => return Err(CliError::config(format!("unknown dataset {name:?} (expected table1)"))),
        (None, Some(name)) => vec![row_input(&find_kie_row(name)?)],
        (None, None) => vec![(
            "user".to_string(),
            a.pair.unwrap_or(IsotopePair::H_D),
            a.kie,
            a.a_ratio,
            a.delta_e,
        )],
    };
    let mut table = Table::new([
        "system",
        "pair",
        "kie_300K",
        "a_ratio",
        "delta_e_kj_mol",
        "kk_kie_above",
        "kk_delta_e_above",
        "kk_a_ratio_below",
        "bell_below",
        "bell_above",
        "anomalous",
    ]);
    let mut reports = Vec::new();
    for (system, pair, kie, ar, de) in rows {
        let r = classify(kie, ar, de, pair, &lim)?;
        let kk = r.kim_kreevoy;
        table.push(vec![
            system.clone().into(),
            pair.to_string().into(),
            kie.into(),
            ar.into(),
            de.into(),
            kk.map(|k| k.kie_above).into(),
            kk.map(|k| k.delta_e_above).into(),
            kk.map(|k| k.a_ratio_below).into(),
            r.bell.map(|b| b.below).into(),
            r.bell.map(|b| b.above).into(),
            r.anomalous().into(),
        ]);
        reports.push(json!({"system": system, "anomalous": r.anomalous(), "report": r}));
    }
    Ok(Report::new("classify", parameters(a)?, table).with_result(Value::Array(reports)))
}

fn row_input(r: &KieRow) -> (String, IsotopePair, Option<f64>, Option<f64>, Option<f64>) {
    (
        r.system.clone(),
        r.pair,
        r.kie_300k.map(|m| m.value),
        r.a_ratio.map(|m| m.value),
        r.delta_e_kj_mol.map(|m| m.value),
    )
}

fn barrier_system(w0: Option<f64>, wb: Option<f64>, eb: f64, iso: Option<Isotope>) -> CliResult<BarrierSystem<f64>> {
    let w0 = required(w0, "omega0")?;
    let wb = required(wb, "omegab")?;
    BarrierSystem::new(w0, wb, eb, iso.unwrap_or(Isotope::H)).map_err(|e| CliError::config(e.to_string()))
}

fn rate(a: &RateArgs) -> CliResult<Report> {
    let sys = barrier_system(a.omega0, a.omegab, required(a.eb, "eb")?, a.isotope)?;
    let model = friction_model(&a.friction)?;
    let t0 = effective_barrier_frequency(&sys, &model)?.t0;
    let mut table = Table::new(["T_K", "k_per_s", "k_classical_per_s", "c_qm", "regime"]).plotting(&[1, 2], true);
    let mut below = 0;
    for t in temperatures(&a.grid)? {
        if t <= t0 {
            below += 1;
            table.push(vec![t.into(), Cell::Empty, Cell::Empty, Cell::Empty, Regime::InvalidBelowT0.as_str().into()]);
            continue;
        }
        let r = quantum_rate(&sys, &model, t)?;
        table.push(vec![
            t.into(),
            r.rate.rate_per_s.into(),
            r.classical.rate_per_s.into(),
            r.c_qm.into(),
            r.regime.as_str().into(),
        ]);
    }
    let mut report = Report::new("rate", parameters(a)?, table);
    if below > 0 {
        report.warn(format!("{below} temperatures at or below T0 = {t0:.2} K are left empty"));
    }
    Ok(report)
}

fn correction(a: &CorrectionArgs) -> CliResult<Report> {
    let sys = barrier_system(a.omega0, a.omegab, 1.0, a.isotope)?;
    let model = friction_model(&a.friction)?;
    let t0 = effective_barrier_frequency(&sys, &model)?.t0;
    let (w0, wb) = (sys.omega0(), sys.omegab());
    let mut cols = vec!["T_K", "c_qm_closed", "c_qm_product"];
    if a.kappa.is_some() {
        cols.push("c_qMT");
    }
    cols.push("regime");
    let plot: Vec<usize> = (1..cols.len() - 1).collect();
    let mut table = Table::new(cols).plotting(&plot, true);
    let t0_bare = crossover_temperature(wb)?;
    let mut below = 0;
    for t in temperatures(&a.grid)? {
        let closed = if t > t0_bare { Some(correction_closed(w0, wb, t)?.c_qm) } else { None };
        let product = if t > t0 { Some(correction_product(&sys, &model, t)?.c_qm) } else { None };
        below += usize::from(product.is_none());
        let mut row = vec![Cell::Num(t), closed.into(), product.into()];
        if let Some(k) = a.kappa {
            row.push(correction_crossover(&sys, t, k).ok().into());
        }
        row.push(Regime::classify(t, t0).as_str().into());
        table.push(row);
    }
    let mut report = Report::new("correction", parameters(a)?, table);
    if below > 0 {
        report.warn(format!("{below} temperatures at or below T0 = {t0:.2} K have no product value"));
    }
    Ok(report)
}

fn spectral(a: &SpectralArgs) -> CliResult<Report> {
    let model = friction_model(&a.friction)?;
    let zmin = positive(a.zmin.unwrap_or(1.0), "zmin")?;
    let zmax = positive(a.zmax.unwrap_or(1e4), "zmax")?;
    if zmax < zmin {
        return Err(CliError::config("--zmax must not be below --zmin"));
    }
    let n = a.n.unwrap_or(41);
    let mut table = Table::new(["z_cm1", "re_gamma_cm1", "laplace_kernel_cm1", "kernel_upper_bound_cm1"]).plotting(&[1, 2, 3], true);
    for z in linspace(zmin.ln(), zmax.ln(), n).into_iter().map(f64::exp) {
        let bound = match kernel_upper_bound(&model, z) {
            Ok(b) => Some(b),
            Err(QtstError::DivergentIntegral { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        table.push(vec![
            z.into(),
            friction_spectrum(&model, z)?.into(),
            laplace_kernel(&model, z)?.into(),
            bound.into(),
        ]);
    }
    let curvature = match effective_curvature(&model) {
        Ok(k) => json!(k),
        Err(QtstError::DivergentIntegral { .. }) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let mut report = Report::new("spectral", parameters(a)?, table);
    report.result = Some(json!({"model": model, "effective_curvature_cm2": curvature}));
    Ok(report)
}

fn potential(a: &WkbArgs) -> CliResult<Potential1D<f64>> {
    let mass = a.mass.unwrap_or(1.0);
    let bad = |e: QtstError| CliError::config(e.to_string());
    match required(a.potential, "potential")? {
        PotentialKind::Parabolic => {
            Potential1D::parabolic(required(a.eb, "eb")?, required(a.omegab, "omegab")?, mass).map_err(bad)
        }
        PotentialKind::Eckart => Potential1D::eckart(required(a.v0, "v0")?, required(a.width, "width")?, mass).map_err(bad),
        PotentialKind::Cubic => Potential1D::cubic(required(a.omega0, "omega0")?, required(a.eb, "eb")?, mass).map_err(bad),
        PotentialKind::Tabulated => {
            let path = required(a.table.clone(), "table")?;
            let file = std::fs::File::open(&path).map_err(|e| CliError::io(&path, e))?;
            Ok(Potential1D::Tabulated(Tabulated::from_csv(file, mass)?))
        }
    }
}

fn wkb(a: &WkbArgs) -> CliResult<Report> {
    let pot = potential(a)?;
    let (_, eb) = pot.barrier();
    let lo = a.emin_frac.unwrap_or(0.05);
    let hi = a.emax_frac.unwrap_or(0.95);
    if !(lo > 0.0 && hi < 1.0 && lo <= hi) {
        return Err(CliError::config("energy fractions must satisfy 0 < emin-frac <= emax-frac < 1"));
    }
    let mut table = Table::new(["E_kj_mol", "E_over_Eb", "action", "transmission", "x1_angstrom", "x2_angstrom"])
        .plotting(&[3], true);
    for f in linspace(lo, hi, a.n.unwrap_or(19)) {
        let e = f * eb;
        let (x1, x2) = turning_points(&pot, e)?;
        table.push(vec![
            e.into(),
            f.into(),
            wkb_action(&pot, e)?.into(),
            transmission(&pot, e)?.into(),
            x1.into(),
            x2.into(),
        ]);
    }
    let mut params = parameters(a)?;
    params.insert("barrier_kj_mol".into(), json!(eb));
    Ok(Report::new("wkb", params, table))
}

fn swain_schaad_cmd(a: &SwainSchaadArgs) -> CliResult<Report> {
    let semiclassical: f64 = swain_schaad_semiclassical();
    let exponent = match (a.kh, a.kd, a.kt) {
        (Some(h), Some(d), Some(t)) => Some(swain_schaad(h, d, t)?),
        (None, None, None) => None,
        _ => return Err(CliError::config("give all of --kh, --kd and --kt, or none")),
    };
    let mut table = Table::new(["exponent", "semiclassical"]);
    table.push(vec![exponent.into(), semiclassical.into()]);
    let result = json!({"exponent": exponent, "semiclassical": semiclassical});
    Ok(Report::new("swain-schaad", parameters(a)?, table).with_result(result))
}

fn arrhenius(a: &ArrheniusArgs) -> CliResult<Report> {
    let path = required(a.input.clone(), "input")?;
    let data = read_rates(&path)?;
    let f = fit_arrhenius(&data)?;
    let mut table = Table::new(["A", "E_kj_mol", "ln_A_std_err", "E_std_err_kj_mol", "r_squared", "n_points"]);
    table.push(vec![
        f.params.a.into(),
        f.params.e_kj_mol.into(),
        f.ln_a_std_err.into(),
        f.e_std_err_kj_mol.into(),
        f.r_squared.into(),
        Cell::Int(f.n_points),
    ]);
    Ok(Report::new("arrhenius", parameters(a)?, table).with_result(json!(f)))
}

fn read_rates(path: &Path) -> CliResult<Vec<(f64, f64)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
    let headers = rdr.headers().map_err(|e| CliError::config(e.to_string()))?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::config(format!("{}: missing column {name}", path.display())))
    };
    let (it, ik) = (col("T_K")?, col("k")?);
    let mut out = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::config(e.to_string()))?;
        let num = |i: usize| {
            let s = rec.get(i).unwrap_or("");
            s.parse::<f64>()
                .map_err(|_| CliError::config(format!("{}: bad number {s:?} on line {}", path.display(), line + 2)))
        };
        out.push((num(it)?, num(ik)?));
    }
    Ok(out)
}
