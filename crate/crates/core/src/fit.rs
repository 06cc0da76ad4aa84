//! Least-squares estimation of `(ω₀, ω_b)` from temperature-dependent isotope
//! effects, and linear Arrhenius regression.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{QtstError, Result};
use crate::kie::{kie_qtst_unchecked, light_crossover, ArrheniusParams};
use crate::kramers::crossover_temperature;
use crate::real::Real;
use crate::reference;
use crate::units::{constants, IsotopePair};

/// One measured isotope effect.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct KiePoint<T> {
    #[serde(rename = "T_K")]
    pub temperature: T,
    pub kie: T,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<T>,
}

/// Sidecar metadata of a dataset CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetMeta {
    pub schema: String,
    pub label: String,
    pub pair: IsotopePair,
    #[serde(default)]
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(default)]
    pub approximate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digitization_tolerance_rel: Option<f64>,
}

impl DatasetMeta {
    pub fn new(label: impl Into<String>, pair: IsotopePair) -> Self {
        Self {
            schema: "qtst-dataset/1".into(),
            label: label.into(),
            pair,
            source: String::new(),
            provenance: None,
            approximate: false,
            note: None,
            digitization_tolerance_rel: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: DatasetMeta = serde_json::from_str(text)?;
        if m.schema != "qtst-dataset/1" {
            return Err(QtstError::Parse(format!("unsupported dataset schema {:?}", m.schema)));
        }
        Ok(m)
    }
}

/// Isotope effects measured at several temperatures for one isotope pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct KieDataset<T> {
    pub points: Vec<KiePoint<T>>,
    pub pair: IsotopePair,
    pub label: String,
    pub source: String,
}

impl<T: Real> KieDataset<T> {
    /// Needs at least three points with distinct positive temperatures,
    /// positive isotope effects and positive uncertainties where given.
    pub fn new(
        points: Vec<KiePoint<T>>,
        pair: IsotopePair,
        label: impl Into<String>,
        source: impl Into<String>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(QtstError::InvalidDataset(msg));
        if points.len() < 3 {
            return bad(format!("need at least 3 points, got {}", points.len()));
        }
        for (i, p) in points.iter().enumerate() {
            if !(p.temperature > T::zero() && p.temperature.is_finite()) {
                return bad(format!("point {i}: temperature {} is not positive", p.temperature));
            }
            if !(p.kie > T::zero() && p.kie.is_finite()) {
                return bad(format!("point {i}: kie {} is not positive", p.kie));
            }
            if let Some(s) = p.sigma {
                if !(s > T::zero() && s.is_finite()) {
                    return bad(format!("point {i}: sigma {s} is not positive"));
                }
            }
        }
        let mut t: Vec<T> = points.iter().map(|p| p.temperature).collect();
        t.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        if let Some(w) = t.windows(2).find(|w| w[0] == w[1]) {
            return bad(format!("duplicate temperature {}", w[0]));
        }
        Ok(Self {
            points,
            pair,
            label: label.into(),
            source: source.into(),
        })
    }

    /// Reads `T_K,kie[,sigma]` CSV; an empty `sigma` cell means unit weight.
    pub fn from_csv<R: Read>(reader: R, meta: &DatasetMeta) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        let col = |name: &str| headers.iter().position(|h| h == name);
        let it = col("T_K").ok_or_else(|| QtstError::InvalidDataset("missing column T_K".into()))?;
        let ik = col("kie").ok_or_else(|| QtstError::InvalidDataset("missing column kie".into()))?;
        let is = col("sigma");
        let mut points = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let parse = |i: usize| -> Result<T> {
                let s = rec.get(i).unwrap_or("");
                s.parse::<f64>()
                    .map(T::lit)
                    .map_err(|_| QtstError::InvalidDataset(format!("bad number {s:?} on line {}", line + 2)))
            };
            let sigma = match is {
                Some(i) if !rec.get(i).unwrap_or("").is_empty() => Some(parse(i)?),
                _ => None,
            };
            points.push(KiePoint {
                temperature: parse(it)?,
                kie: parse(ik)?,
                sigma,
            });
        }
        Self::new(points, meta.pair, meta.label.clone(), meta.source.clone())
    }

    /// Loads `path`, taking metadata from the sibling `.json` file when no
    /// pair is given explicitly.
    pub fn load(path: &Path, pair: Option<IsotopePair>) -> Result<Self> {
        let io = |e: std::io::Error| QtstError::InvalidDataset(format!("{}: {e}", path.display()));
        let sidecar = path.with_extension("json");
        let mut meta = if sidecar.exists() {
            DatasetMeta::from_json(&std::fs::read_to_string(&sidecar).map_err(io)?)?
        } else {
            let pair = pair.ok_or_else(|| {
                QtstError::InvalidDataset(format!("{} has no sidecar metadata; an isotope pair is required", path.display()))
            })?;
            DatasetMeta::new(path.file_stem().and_then(|s| s.to_str()).unwrap_or("dataset"), pair)
        };
        if let Some(p) = pair {
            meta.pair = p;
        }
        let file = std::fs::File::open(path).map_err(io)?;
        Self::from_csv(file, &meta)
    }

    /// A dataset shipped with the crate: `fig3_mcm` or `fig4_mao`.
    pub fn bundled(name: &str) -> Result<Self> {
        let (csv, meta) = match name {
            "fig3_mcm" => (reference::FIG3_MCM_CSV, reference::FIG3_MCM_META),
            "fig4_mao" => (reference::FIG4_MAO_CSV, reference::FIG4_MAO_META),
            other => return Err(QtstError::UnknownRow(other.to_string())),
        };
        Self::from_csv(csv.as_bytes(), &DatasetMeta::from_json(meta)?)
    }

    fn sorted_points(&self) -> Vec<KiePoint<T>> {
        let mut p = self.points.clone();
        p.sort_by(|a, b| a.temperature.partial_cmp(&b.temperature).expect("finite"));
        p
    }
}

/// Optimizer settings for [`fit_kie`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct FitConfig<T> {
    pub omega0_starts: Vec<T>,
    pub omegab_starts: Vec<T>,
    pub omega0_bounds: (T, T),
    pub omegab_bounds: (T, T),
    pub max_iterations: usize,
    /// Relative parameter change below which a start has converged.
    pub xtol: f64,
    /// Relative objective decrease below which a start has converged.
    pub ftol: f64,
    /// Relative central-difference step of the Jacobian.
    pub fd_step: f64,
    /// Strength of the penalty on points at or below `(1 + margin)·T₀`.
    pub penalty: f64,
    pub penalty_margin: f64,
}

impl<T: Real> Default for FitConfig<T> {
    fn default() -> Self {
        let grid = |lo: f64, hi: f64, step: f64| {
            let n = ((hi - lo) / step).round() as usize;
            (0..=n).map(|i| T::lit(lo + step * i as f64)).collect()
        };
        Self {
            omega0_starts: grid(1500.0, 4000.0, 500.0),
            omegab_starts: grid(300.0, 2500.0, 200.0),
            omega0_bounds: (T::lit(500.0), T::lit(5000.0)),
            omegab_bounds: (T::lit(100.0), T::lit(3000.0)),
            max_iterations: 500,
            xtol: 1e-10,
            ftol: 1e-15,
            fd_step: 1e-4,
            penalty: 100.0,
            penalty_margin: 0.01,
        }
    }
}

/// Outcome of [`fit_kie`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct FitResult<T> {
    pub pair: IsotopePair,
    /// Hydrogen reactant-well frequency, cm⁻¹.
    pub omega0: T,
    /// Hydrogen barrier frequency, cm⁻¹.
    pub omegab: T,
    /// `√Σ wᵢ(model − kieᵢ)²`.
    pub residual_norm: T,
    /// Covariance of `(ω₀, ω_b)`, cm⁻².
    pub covariance: [[T; 2]; 2],
    /// `T₀` of the fitted hydrogen barrier frequency.
    #[serde(rename = "implied_T0")]
    pub implied_t0: T,
    /// Every temperature exceeds `1.05·T₀`.
    pub valid: bool,
    pub n_starts_converged: usize,
    pub n_points: usize,
}

impl<T: Real> FitResult<T> {
    pub fn standard_errors(&self) -> (T, T) {
        (self.covariance[0][0].sqrt(), self.covariance[1][1].sqrt())
    }
}

struct Problem<'a, T> {
    points: &'a [KiePoint<T>],
    pair: IsotopePair,
    cfg: &'a FitConfig<T>,
}

impl<T: Real> Problem<'_, T> {
    /// Weighted residuals followed by the crossover penalty terms.
    fn residuals(&self, p: [T; 2]) -> Vec<T> {
        let n = self.points.len();
        let mut r = Vec::with_capacity(2 * n);
        let t0 = light_crossover(p[1], self.pair.light).unwrap_or_else(|_| T::zero());
        let floor = t0 * (T::one() + T::lit(self.cfg.penalty_margin));
        for pt in self.points {
            let t = pt.temperature.max(floor);
            let model = kie_qtst_unchecked(p[0], p[1], t, self.pair).map_or(T::nan(), |k| k.ratio);
            r.push((model - pt.kie) / pt.sigma.unwrap_or_else(T::one));
        }
        for pt in self.points {
            let gap = (floor - pt.temperature).max(T::zero()) / pt.temperature;
            r.push(T::lit(self.cfg.penalty) * gap * pt.kie / pt.sigma.unwrap_or_else(T::one));
        }
        r
    }

    fn cost(&self, p: [T; 2]) -> T {
        sum_sq(&self.residuals(p))
    }

    fn jacobian(&self, p: [T; 2]) -> Vec<[T; 2]> {
        let mut cols = [Vec::new(), Vec::new()];
        for (j, col) in cols.iter_mut().enumerate() {
            let h = T::lit(self.cfg.fd_step) * p[j].abs().max(T::one());
            let (mut lo, mut hi) = (p, p);
            lo[j] = lo[j] - h;
            hi[j] = hi[j] + h;
            let (rl, rh) = (self.residuals(lo), self.residuals(hi));
            *col = rh.iter().zip(&rl).map(|(a, b)| (*a - *b) / (h + h)).collect();
        }
        cols[0].iter().zip(&cols[1]).map(|(a, b)| [*a, *b]).collect()
    }

    fn clamp(&self, p: [T; 2]) -> [T; 2] {
        let (b0, bb) = (self.cfg.omega0_bounds, self.cfg.omegab_bounds);
        [p[0].max(b0.0).min(b0.1), p[1].max(bb.0).min(bb.1)]
    }

    /// Damped Gauss-Newton descent from `p`; returns the end point, its cost
    /// and whether a convergence test was met.
    fn descend(&self, start: [T; 2]) -> ([T; 2], T, bool) {
        let mut p = self.clamp(start);
        let mut cost = self.cost(p);
        if !cost.is_finite() {
            return (p, cost, false);
        }
        let mut lambda = T::lit(1e-3);
        let (lambda_min, lambda_max) = (T::lit(1e-12), T::lit(1e12));
        for _ in 0..self.cfg.max_iterations {
            if cost == T::zero() {
                return (p, cost, true);
            }
            let r = self.residuals(p);
            let jac = self.jacobian(p);
            let (a, g) = normal_equations(&jac, &r);
            let dmax = a[0][0].max(a[1][1]);
            let d = [a[0][0].max(dmax * T::lit(1e-12)), a[1][1].max(dmax * T::lit(1e-12))];
            let accepted = loop {
                let m = [[a[0][0] + lambda * d[0], a[0][1]], [a[1][0], a[1][1] + lambda * d[1]]];
                let trial = solve2(m, [-g[0], -g[1]]).map(|s| self.clamp([p[0] + s[0], p[1] + s[1]]));
                if let Some(q) = trial {
                    let c = self.cost(q);
                    if c < cost {
                        lambda = (lambda / T::lit(3.0)).max(lambda_min);
                        break Some((q, c));
                    }
                }
                lambda = lambda * T::lit(4.0);
                if lambda > lambda_max {
                    break None;
                }
            };
            let Some((q, c)) = accepted else {
                // No descent direction left at working precision.
                return (p, cost, true);
            };
            let xtol = T::lit(self.cfg.xtol);
            let small_step = (0..2).all(|j| (q[j] - p[j]).abs() <= xtol * p[j].abs());
            let small_gain = cost - c <= T::lit(self.cfg.ftol) * cost;
            p = q;
            cost = c;
            if small_step || small_gain {
                return (p, cost, true);
            }
        }
        (p, cost, false)
    }
}

fn sum_sq<T: Real>(r: &[T]) -> T {
    r.iter().fold(T::zero(), |s, x| s + *x * *x)
}

fn normal_equations<T: Real>(jac: &[[T; 2]], r: &[T]) -> ([[T; 2]; 2], [T; 2]) {
    let mut a = [[T::zero(); 2]; 2];
    let mut g = [T::zero(); 2];
    for (row, ri) in jac.iter().zip(r) {
        for i in 0..2 {
            g[i] = g[i] + row[i] * *ri;
            for j in 0..2 {
                a[i][j] = a[i][j] + row[i] * row[j];
            }
        }
    }
    (a, g)
}

fn solve2<T: Real>(m: [[T; 2]; 2], b: [T; 2]) -> Option<[T; 2]> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if !(det.abs() > T::zero()) || !det.is_finite() {
        return None;
    }
    Some([
        (b[0] * m[1][1] - m[0][1] * b[1]) / det,
        (m[0][0] * b[1] - m[1][0] * b[0]) / det,
    ])
}

/// Penalised weighted sum of squares minimised by [`fit_kie`].
pub fn fit_objective<T: Real>(data: &KieDataset<T>, config: &FitConfig<T>, omega0: T, omegab: T) -> T {
    let points = data.sorted_points();
    Problem {
        points: &points,
        pair: data.pair,
        cfg: config,
    }
    .cost([omega0, omegab])
}

/// Fits the frictionless quantum isotope effect to `data` over `(ω₀, ω_b)`.
///
/// Each start of the grid is refined by Levenberg-Marquardt with Marquardt
/// scaling and monotone acceptance inside the box; the lowest converged
/// objective wins, ties going to the earlier start. Points are processed in
/// temperature order, so the result does not depend on input order.
pub fn fit_kie<T: Real>(data: &KieDataset<T>, config: &FitConfig<T>) -> Result<FitResult<T>> {
    let points = data.sorted_points();
    let pair = data.pair;
    let t_max = points.last().expect("non-empty").temperature;
    if t_max <= light_crossover(config.omegab_bounds.0, pair.light)? {
        return Err(QtstError::AllPointsBelowCrossover);
    }
    let prob = Problem {
        points: &points,
        pair,
        cfg: config,
    };
    let mut best: Option<([T; 2], T)> = None;
    let mut converged = 0;
    for &w0 in &config.omega0_starts {
        for &wb in &config.omegab_starts {
            let (p, cost, ok) = prob.descend([w0, wb]);
            if !ok || !cost.is_finite() {
                continue;
            }
            converged += 1;
            if best.map_or(true, |(_, c)| cost < c) {
                best = Some((p, cost));
            }
        }
    }
    let (p, _) = best.ok_or(QtstError::NoConvergentStart)?;
    let t0_light = light_crossover(p[1], pair.light)?;
    if t_max <= t0_light {
        return Err(QtstError::AllPointsBelowCrossover);
    }

    let n = points.len();
    let r = prob.residuals(p);
    let chi2 = sum_sq(&r[..n]);
    let jac = prob.jacobian(p);
    let (a, _) = normal_equations(&jac[..n], &r[..n]);
    let s2 = chi2 / T::lit((n - 2) as f64);
    let covariance = match solve2(a, [T::one(), T::zero()]).zip(solve2(a, [T::zero(), T::one()])) {
        Some((c0, c1)) => {
            let off = T::lit(0.5) * (c0[1] + c1[0]) * s2;
            [[c0[0] * s2, off], [off, c1[1] * s2]]
        }
        None => [[T::infinity(), T::zero()], [T::zero(), T::infinity()]],
    };
    let implied_t0 = crossover_temperature(p[1])?;
    Ok(FitResult {
        pair,
        omega0: p[0],
        omegab: p[1],
        residual_norm: chi2.sqrt(),
        covariance,
        implied_t0,
        valid: points[0].temperature > T::lit(1.05) * implied_t0,
        n_starts_converged: converged,
        n_points: n,
    })
}

/// Ordinary least-squares fit of `ln k` against `1/T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ArrheniusFit<T> {
    pub params: ArrheniusParams<T>,
    /// Standard error of `ln A`; `None` with only two points.
    pub ln_a_std_err: Option<T>,
    pub e_std_err_kj_mol: Option<T>,
    /// Root sum of squared residuals in `ln k`.
    pub residual_norm: T,
    pub r_squared: T,
    pub n_points: usize,
}

/// Fits `k = A·exp(−E/RT)` to `(T, k)` pairs.
pub fn fit_arrhenius<T: Real>(data: &[(T, T)]) -> Result<ArrheniusFit<T>> {
    if data.len() < 2 {
        return Err(QtstError::InvalidDataset(format!("need at least 2 points, got {}", data.len())));
    }
    for &(t, k) in data {
        if !(t > T::zero() && t.is_finite() && k > T::zero() && k.is_finite()) {
            return Err(QtstError::InvalidDataset(format!("point ({t}, {k}) must have T > 0 and k > 0")));
        }
    }
    let nf = T::lit(data.len() as f64);
    let xs: Vec<T> = data.iter().map(|&(t, _)| T::one() / t).collect();
    let ys: Vec<T> = data.iter().map(|&(_, k)| k.ln()).collect();
    let xm = xs.iter().fold(T::zero(), |s, x| s + *x) / nf;
    let ym = ys.iter().fold(T::zero(), |s, y| s + *y) / nf;
    let sxx = xs.iter().fold(T::zero(), |s, x| s + (*x - xm) * (*x - xm));
    if !(sxx > T::epsilon() * T::epsilon() * xm * xm * nf) {
        return Err(QtstError::DegenerateDesign);
    }
    let sxy = xs.iter().zip(&ys).fold(T::zero(), |s, (x, y)| s + (*x - xm) * (*y - ym));
    let syy = ys.iter().fold(T::zero(), |s, y| s + (*y - ym) * (*y - ym));
    let slope = sxy / sxx;
    let intercept = ym - slope * xm;
    let sse = xs
        .iter()
        .zip(&ys)
        .fold(T::zero(), |s, (x, y)| s + (*y - intercept - slope * *x).powi(2));
    let r_gas = T::lit(constants::GAS_CONSTANT_KJ);
    let (ln_a_std_err, e_std_err_kj_mol) = if data.len() > 2 {
        let s2 = sse / T::lit((data.len() - 2) as f64);
        let se_slope = (s2 / sxx).sqrt();
        let se_int = (s2 * (T::one() / nf + xm * xm / sxx)).sqrt();
        (Some(se_int), Some(se_slope * r_gas))
    } else {
        (None, None)
    };
    let r_squared = if syy > T::zero() { T::one() - sse / syy } else { T::one() };
    Ok(ArrheniusFit {
        params: ArrheniusParams::new(intercept.exp(), -slope * r_gas)?,
        ln_a_std_err,
        e_std_err_kj_mol,
        residual_norm: sse.sqrt(),
        r_squared,
        n_points: data.len(),
    })
}
