//! Batch front end: a JSON run configuration, dotted-path overrides, and CSV
//! or JSON exports for external plotting.
//!
//! Every run prints one summary line, `<command> <label-or-count> <metric>`.
//! Failures print a JSON error record on stderr and map to exit status 2
//! (configuration parse), 3 (validation) or 4 (numerical failure).

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{
    classify, density_matrix, ghz_param_check, hbs_param_check, normalize, normalize_output,
    uniform_param_check, ClassificationReport, ConditionMatch, Family, DEFAULT_CLASSIFY_TOL,
    DEFAULT_MAX_INTEGER,
};
use crate::dynamics::{analytic_state_lab, analytic_trajectory, integrate_rk4, Trajectory};
use crate::error::{Error, Result};
use crate::explore::{
    dbeta_peaks, enumerate_condition_families, output_norms, search_max_fidelity_with,
    sweep_2d_hbs, sweep_c3, sweep_dbeta_z, Bounds, DbetaRule, ParamBox, SearchSettings, SweepAxis,
    SweepResult, PEAK_REL_FLOOR,
};
use crate::model::{BasisIndex, CouplerParams, StateRecord, TripletAmplitudes, DIM};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Simulate,
    SweepDbeta,
    SweepC3,
    #[serde(rename = "sweep-2d")]
    Sweep2d,
    Classify,
    Check,
    Enumerate,
    Search,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::SweepDbeta => "sweep-dbeta",
            Command::SweepC3 => "sweep-c3",
            Command::Sweep2d => "sweep-2d",
            Command::Classify => "classify",
            Command::Check => "check",
            Command::Enumerate => "enumerate",
            Command::Search => "search",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub format: Format,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            format: Format::Csv,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisConfig {
    fn to_axis(self, name: &str) -> SweepAxis {
        SweepAxis::new(name, self.min, self.max, self.count)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateConfig {
    /// Output position; defaults to the device length.
    pub z: Option<f64>,
    pub z_samples: usize,
    /// Integrate with RK4 instead of the closed form.
    pub rk4_steps: Option<usize>,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        Self {
            z: None,
            z_samples: 256,
            rk4_steps: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepDbetaConfig {
    pub axis: AxisConfig,
    pub z_samples: usize,
    pub peak_floor: f64,
}

impl Default for SweepDbetaConfig {
    fn default() -> Self {
        Self {
            axis: AxisConfig {
                min: -6.0,
                max: 6.0,
                count: 241,
            },
            z_samples: 256,
            peak_floor: PEAK_REL_FLOOR,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepC3Config {
    pub axis: AxisConfig,
    pub dbeta_rule: DbetaRule,
}

impl Default for SweepC3Config {
    fn default() -> Self {
        Self {
            axis: AxisConfig {
                min: 0.01,
                max: 4.0,
                count: 400,
            },
            dbeta_rule: DbetaRule::MinusC3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Sweep2dConfig {
    pub c1c2_axis: AxisConfig,
    pub c3_axis: AxisConfig,
}

impl Default for Sweep2dConfig {
    fn default() -> Self {
        Self {
            c1c2_axis: AxisConfig {
                min: 0.05,
                max: 4.0,
                count: 80,
            },
            c3_axis: AxisConfig {
                min: 0.05,
                max: 4.0,
                count: 80,
            },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifyConfig {
    pub state: Option<StateRecord>,
    /// A state file as written by `simulate` (JSON).
    pub state_file: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CheckConfig {
    pub max_integer: i64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            max_integer: DEFAULT_MAX_INTEGER,
        }
    }
}

fn default_box() -> ParamBox {
    ParamBox::new(Bounds::new(0.0, 4.0), Bounds::new(-4.0, 4.0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnumerateConfig {
    pub family: Family,
    pub integer_bound: i64,
    #[serde(rename = "box")]
    pub bounds: ParamBox,
}

impl Default for EnumerateConfig {
    fn default() -> Self {
        Self {
            family: Family::Hbs1,
            integer_bound: 8,
            bounds: default_box(),
        }
    }
}

/// A named ideal state or explicit amplitudes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetSpec {
    Named(String),
    State(StateRecord),
}

impl TargetSpec {
    pub fn resolve(&self) -> Result<TripletAmplitudes> {
        match self {
            TargetSpec::Named(name) => match name.as_str() {
                "ghz" => Ok(TripletAmplitudes::ghz()),
                "hbs" => Ok(TripletAmplitudes::heralded_bell()),
                "mirrored-hbs" => Ok(TripletAmplitudes::from_real(&[
                    0.0, 0.5, 0.5, 0.0, 0.0, 0.5, 0.5, 0.0,
                ])),
                "uniform" => Ok(TripletAmplitudes::from_real(&[(0.125f64).sqrt(); DIM])),
                other => Err(Error::InvalidState(format!("unknown target {other:?}"))),
            },
            TargetSpec::State(rec) => TripletAmplitudes::try_from(rec.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchConfig {
    pub target: TargetSpec,
    #[serde(rename = "box")]
    pub bounds: ParamBox,
    pub budget: usize,
    pub seed: u64,
    pub grid_per_axis: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            target: TargetSpec::Named("ghz".into()),
            bounds: ParamBox::new(Bounds::new(0.0, 2.0), Bounds::new(-2.0, 2.0)),
            budget: 2000,
            seed: 0,
            grid_per_axis: None,
        }
    }
}

/// A complete run description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default)]
    pub params: CouplerParams,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub simulate: SimulateConfig,
    #[serde(default)]
    pub sweep_dbeta: SweepDbetaConfig,
    #[serde(default)]
    pub sweep_c3: SweepC3Config,
    #[serde(default)]
    pub sweep_2d: Sweep2dConfig,
    #[serde(default)]
    pub classify: ClassifyConfig,
    #[serde(default)]
    pub check: CheckConfig,
    #[serde(default)]
    pub enumerate: EnumerateConfig,
    #[serde(default)]
    pub search: SearchConfig,
}

fn default_tolerance() -> f64 {
    DEFAULT_CLASSIFY_TOL
}

/// Why a run failed, with its exit status.
#[derive(Debug)]
pub enum Failure {
    Parse(String),
    Validation(String),
    Numerical(String),
}

impl Failure {
    pub fn status(&self) -> i32 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Validation(_) => 3,
            Failure::Numerical(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Parse(_) => "parse",
            Failure::Validation(_) => "validation",
            Failure::Numerical(_) => "numerical",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Validation(m) | Failure::Numerical(m) => m,
        }
    }

    /// One-line JSON error record.
    pub fn record(&self) -> String {
        json!({ "error": { "status": self.status(), "kind": self.kind(), "message": self.message() } })
            .to_string()
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Config(_) => Failure::Parse(msg),
            Error::Vacuum | Error::Numerical(_) => Failure::Numerical(msg),
            _ => Failure::Validation(msg),
        }
    }
}

/// Set `path = value` in a JSON tree, creating objects along the way.
fn set_path(root: &mut Value, path: &str, value: Value) -> Result<()> {
    let mut node = root;
    let keys: Vec<&str> = path.split('.').collect();
    if keys.iter().any(|k| k.is_empty()) {
        return Err(Error::Config(format!("malformed override path {path:?}")));
    }
    for key in &keys[..keys.len() - 1] {
        let obj = node.as_object_mut().ok_or_else(|| {
            Error::Config(format!("override {path:?} descends into a non-object"))
        })?;
        node = obj.entry(key.to_string()).or_insert_with(|| json!({}));
    }
    let obj = node
        .as_object_mut()
        .ok_or_else(|| Error::Config(format!("override {path:?} descends into a non-object")))?;
    obj.insert(keys[keys.len() - 1].to_string(), value);
    Ok(())
}

/// Apply `--dotted.path=value` overrides. Values parse as JSON when they
/// can and are taken as strings otherwise.
pub fn apply_overrides(config: &mut Value, overrides: &[String]) -> Result<()> {
    for raw in overrides {
        let body = raw.strip_prefix("--").ok_or_else(|| {
            Error::Config(format!("override must look like --path=value, got {raw:?}"))
        })?;
        let (path, value) = body.split_once('=').ok_or_else(|| {
            Error::Config(format!("override must look like --path=value, got {raw:?}"))
        })?;
        let parsed =
            serde_json::from_str(value).unwrap_or_else(|_| Value::String(value.to_string()));
        set_path(config, path, parsed)?;
    }
    Ok(())
}

/// Parse a config given inline (starting with `{`) or as a file path.
pub fn load_config(source: &str, overrides: &[String]) -> Result<RunConfig> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else {
        fs::read_to_string(source).map_err(|e| Error::Config(format!("{source}: {e}")))?
    };
    let mut value: Value =
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{source}: {e}")))?;
    if !value.is_object() {
        return Err(Error::Config("config must be a JSON object".into()));
    }
    apply_overrides(&mut value, overrides)?;
    serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))
}

/// Full-precision decimal, 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Numerical(format!("cannot serialize {}: {e}", path.display())))?;
    text.push('\n');
    write_text(path, &text)
}

fn write_csv(path: &Path, header: &[String], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::io(path, e.into()))?;
    w.write_record(header)
        .map_err(|e| Error::io(path, e.into()))?;
    for row in rows {
        w.write_record(row).map_err(|e| Error::io(path, e.into()))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn labels_with(prefix: &str) -> impl Iterator<Item = String> + '_ {
    BasisIndex::LABELS
        .iter()
        .map(move |l| format!("{prefix}{l}"))
}

#[derive(Serialize)]
struct DensityMatrixFile<'a> {
    basis: &'a [&'static str; DIM],
    re: [[f64; DIM]; DIM],
    im: [[f64; DIM]; DIM],
}

/// Write `ρ = ψψ†` of a unit state.
///
/// JSON: `{"basis": [...], "re": [[..]], "im": [[..]]}`. CSV: a header of
/// basis labels (`re_000..re_111, im_000..im_111`) and 8 rows of 16 values.
pub fn export_density_matrix(state: &TripletAmplitudes, path: &Path, format: Format) -> Result<()> {
    let rho = density_matrix(state)?;
    let (re, im) = (rho.real_part(), rho.imag_part());
    match format {
        Format::Json => write_json(
            path,
            &DensityMatrixFile {
                basis: &BasisIndex::LABELS,
                re,
                im,
            },
        ),
        Format::Csv => {
            let header: Vec<String> = labels_with("re_").chain(labels_with("im_")).collect();
            let rows: Vec<Vec<String>> = (0..DIM)
                .map(|i| re[i].iter().chain(&im[i]).map(|&v| fmt_f64(v)).collect())
                .collect();
            write_csv(path, &header, &rows)
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub frame: crate::model::Frame,
    pub z: f64,
    pub norm: f64,
    pub basis: Vec<String>,
    pub amps: Vec<crate::model::ReIm>,
    pub probabilities: Vec<f64>,
}

fn write_state(
    state: &TripletAmplitudes,
    z: f64,
    norm: f64,
    path: &Path,
    format: Format,
) -> Result<()> {
    let rec = StateRecord::from(state);
    match format {
        Format::Json => write_json(
            path,
            &StateFile {
                frame: rec.frame,
                z,
                norm,
                basis: rec.basis,
                amps: rec.amps,
                probabilities: state.probabilities().to_vec(),
            },
        ),
        Format::Csv => {
            let header = ["basis", "re", "im", "probability"]
                .map(String::from)
                .to_vec();
            let rows: Vec<Vec<String>> = (0..DIM)
                .map(|p| {
                    vec![
                        BasisIndex::LABELS[p].to_string(),
                        fmt_f64(state.amps[p].re),
                        fmt_f64(state.amps[p].im),
                        fmt_f64(state.amps[p].norm_sqr()),
                    ]
                })
                .collect();
            write_csv(path, &header, &rows)
        }
    }
}

/// Read a state written by `simulate` or any `{"amps": [...]}` document.
pub fn read_state(path: &Path) -> Result<TripletAmplitudes> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let rec: StateRecord = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidState(format!("{}: {e}", path.display())))?;
    TripletAmplitudes::try_from(rec)
}

fn write_report(report: &ClassificationReport, path: &Path, format: Format) -> Result<()> {
    match format {
        Format::Json => write_json(path, report),
        Format::Csv => {
            let header = [
                "label",
                "tolerance",
                "score_hbs",
                "score_mirrored_hbs",
                "score_uniform",
                "score_ghz",
            ]
            .into_iter()
            .map(String::from)
            .chain(labels_with("p_"))
            .collect::<Vec<_>>();
            let s = &report.scores;
            let row = [report.label.as_str().to_string()]
                .into_iter()
                .chain([report.tolerance, s.hbs, s.mirrored_hbs, s.uniform, s.ghz].map(fmt_f64))
                .chain(report.probabilities.iter().map(|&p| fmt_f64(p)))
                .collect();
            write_csv(path, &header, &[row])
        }
    }
}

fn write_trajectory(traj: &Trajectory, path: &Path, format: Format) -> Result<()> {
    let probs: Vec<[f64; DIM]> = traj
        .states
        .iter()
        .map(TripletAmplitudes::probabilities)
        .collect();
    match format {
        Format::Json => write_json(
            path,
            &json!({ "basis": BasisIndex::LABELS, "z": traj.z_grid, "probabilities": probs }),
        ),
        Format::Csv => {
            let header: Vec<String> = ["z".to_string()]
                .into_iter()
                .chain(labels_with("p_"))
                .collect();
            let rows: Vec<Vec<String>> = traj
                .z_grid
                .iter()
                .zip(&probs)
                .map(|(&z, p)| {
                    [fmt_f64(z)]
                        .into_iter()
                        .chain(p.iter().map(|&v| fmt_f64(v)))
                        .collect()
                })
                .collect();
            write_csv(path, &header, &rows)
        }
    }
}

fn write_sweep(result: &SweepResult, path: &Path, format: Format) -> Result<()> {
    match format {
        Format::Json => write_json(path, result),
        Format::Csv => {
            let header: Vec<String> = result
                .grid
                .axes
                .iter()
                .map(|a| a.name.clone())
                .chain(["c1", "c2", "c3", "delta_beta", "z", "norm"].map(String::from))
                .chain(labels_with("p_"))
                .chain(labels_with("raw_"))
                .chain(
                    ["branch_000_111", "branch_001_110", "branch_rest", "label"].map(String::from),
                )
                .collect();
            let rows: Vec<Vec<String>> = result
                .points
                .iter()
                .map(|pt| {
                    let p = &pt.params;
                    pt.coords
                        .iter()
                        .copied()
                        .chain([p.c1, p.c2, p.c3, p.delta_beta, pt.z, pt.norm])
                        .chain(pt.probabilities)
                        .chain(pt.raw_probabilities())
                        .chain([pt.branches.ghz, pt.branches.herald, pt.branches.rest])
                        .map(fmt_f64)
                        .chain([pt.label.as_str().to_string()])
                        .collect()
                })
                .collect();
            write_csv(path, &header, &rows)
        }
    }
}

fn write_matches(matches: &[ConditionMatch], path: &Path, format: Format) -> Result<()> {
    match format {
        Format::Json => write_json(path, &matches),
        Format::Csv => {
            let header = ["family", "m", "n", "residual", "realized"]
                .map(String::from)
                .to_vec();
            let opt = |v: Option<i64>| v.map(|k| k.to_string()).unwrap_or_default();
            let rows: Vec<Vec<String>> = matches
                .iter()
                .map(|c| {
                    vec![
                        c.family.as_str().to_string(),
                        opt(c.m),
                        opt(c.n),
                        fmt_f64(c.residual),
                        c.realized.to_string(),
                    ]
                })
                .collect();
            write_csv(path, &header, &rows)
        }
    }
}

fn write_params_list(list: &[CouplerParams], path: &Path, format: Format) -> Result<()> {
    match format {
        Format::Json => write_json(path, &list),
        Format::Csv => {
            let header = ["c1", "c2", "c3", "delta_beta"].map(String::from).to_vec();
            let rows: Vec<Vec<String>> = list
                .iter()
                .map(|p| [p.c1, p.c2, p.c3, p.delta_beta].map(fmt_f64).to_vec())
                .collect();
            write_csv(path, &header, &rows)
        }
    }
}

/// Result of a successful run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    pub command: Command,
    pub label: String,
    pub metric: String,
    pub files: Vec<PathBuf>,
}

impl RunSummary {
    /// `<command> <label-or-count> <primary-metric>`.
    pub fn line(&self) -> String {
        format!("{} {} {}", self.command.as_str(), self.label, self.metric)
    }
}

struct Outputs {
    dir: PathBuf,
    format: Format,
    files: Vec<PathBuf>,
}

impl Outputs {
    fn new(cfg: &OutputConfig) -> Result<Self> {
        fs::create_dir_all(&cfg.dir).map_err(|e| Error::io(&cfg.dir, e))?;
        Ok(Self {
            dir: cfg.dir.clone(),
            format: cfg.format,
            files: Vec::new(),
        })
    }

    fn path(&mut self, stem: &str) -> PathBuf {
        let p = self.dir.join(format!("{stem}.{}", self.format.extension()));
        self.files.push(p.clone());
        p
    }
}

fn validate_tolerance(tol: f64) -> Result<()> {
    if tol > 0.0 && tol < 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// Execute one configured command and write its artifacts.
pub fn run(config: &RunConfig) -> Result<RunSummary> {
    config.params.validate()?;
    validate_tolerance(config.tolerance)?;
    let mut out = Outputs::new(&config.output)?;
    let fmt = out.format;
    let p = &config.params;
    let tol = config.tolerance;

    let (label, metric) = match config.command {
        Command::Simulate => {
            let cfg = &config.simulate;
            let z = cfg.z.unwrap_or(p.length);
            let traj = match cfg.rk4_steps {
                Some(steps) => integrate_rk4(p, z, steps)?,
                None => analytic_trajectory(p, z, cfg.z_samples)?,
            };
            let final_state = match cfg.rk4_steps {
                Some(_) => *traj.states.last().expect("trajectory has samples"),
                None => analytic_state_lab(p, z)?,
            };
            let (unit, norm) = normalize_output(&final_state, p, z)?;
            let report = classify(&unit, tol)?;
            write_state(&unit, z, norm, &out.path("state"), fmt)?;
            write_report(&report, &out.path("classification"), fmt)?;
            export_density_matrix(&unit, &out.path("density_matrix"), fmt)?;
            write_trajectory(&traj, &out.path("trajectory"), fmt)?;
            (report.label.to_string(), fmt_f64(report.primary_score()))
        }
        Command::Classify => {
            let cfg = &config.classify;
            let state = match (&cfg.state, &cfg.state_file) {
                (Some(rec), None) => TripletAmplitudes::try_from(rec.clone())?,
                (None, Some(path)) => read_state(path)?,
                _ => {
                    return Err(Error::InvalidState(
                        "classify needs exactly one of classify.state or classify.state_file"
                            .into(),
                    ))
                }
            };
            let (unit, _) = normalize(&state)?;
            let report = classify(&unit, tol)?;
            write_report(&report, &out.path("classification"), fmt)?;
            export_density_matrix(&unit, &out.path("density_matrix"), fmt)?;
            (report.label.to_string(), fmt_f64(report.primary_score()))
        }
        Command::Check => {
            let max = config.check.max_integer;
            if max < 1 {
                return Err(Error::InvalidParams(format!(
                    "check.max_integer must be >= 1, got {max}"
                )));
            }
            let mut matches = hbs_param_check(p, max);
            matches.extend(uniform_param_check(p, max));
            let ghz = ghz_param_check(p);
            let family_hits = matches.len();
            matches.push(ghz);
            write_matches(&matches, &out.path("conditions"), fmt)?;
            (family_hits.to_string(), fmt_f64(ghz.residual))
        }
        Command::Enumerate => {
            let cfg = &config.enumerate;
            let list = enumerate_condition_families(cfg.family, cfg.integer_bound, &cfg.bounds)?;
            write_params_list(&list, &out.path(&format!("family_{}", cfg.family)), fmt)?;
            (list.len().to_string(), cfg.family.to_string())
        }
        Command::SweepDbeta => {
            let cfg = &config.sweep_dbeta;
            let result = sweep_dbeta_z(p, &cfg.axis.to_axis("delta_beta"), cfg.z_samples, tol)?;
            let peaks = dbeta_peaks(&result, cfg.peak_floor);
            write_sweep(&result, &out.path("sweep_dbeta"), fmt)?;
            let norms = output_norms(&result);
            let path = out.path("output_norm");
            match fmt {
                Format::Json => write_json(
                    &path,
                    &json!({
                        "delta_beta": norms.iter().map(|n| n.0).collect::<Vec<_>>(),
                        "output_norm_sqr": norms.iter().map(|n| n.1).collect::<Vec<_>>(),
                        "peaks": peaks,
                    }),
                )?,
                Format::Csv => {
                    let header = ["delta_beta", "output_norm_sqr", "is_peak"]
                        .map(String::from)
                        .to_vec();
                    let rows: Vec<Vec<String>> = norms
                        .iter()
                        .map(|&(db, n)| {
                            vec![fmt_f64(db), fmt_f64(n), peaks.contains(&db).to_string()]
                        })
                        .collect();
                    write_csv(&path, &header, &rows)?;
                }
            }
            let list: Vec<String> = peaks.iter().map(|x| format!("{x:.4}")).collect();
            (peaks.len().to_string(), list.join(","))
        }
        Command::SweepC3 => {
            let cfg = &config.sweep_c3;
            let result = sweep_c3(p, &cfg.axis.to_axis("c3"), cfg.dbeta_rule, tol)?;
            write_sweep(&result, &out.path("sweep_c3"), fmt)?;
            labelled_summary(&result)
        }
        Command::Sweep2d => {
            let cfg = &config.sweep_2d;
            let result = sweep_2d_hbs(
                p,
                &cfg.c1c2_axis.to_axis("c1c2"),
                &cfg.c3_axis.to_axis("c3"),
                tol,
            )?;
            write_sweep(&result, &out.path("sweep_2d"), fmt)?;
            labelled_summary(&result)
        }
        Command::Search => {
            let cfg = &config.search;
            let target = cfg.target.resolve()?;
            let settings = SearchSettings {
                budget: cfg.budget,
                seed: cfg.seed,
                grid_per_axis: cfg.grid_per_axis,
                base: *p,
            };
            let outcome = search_max_fidelity_with(&target, &cfg.bounds, &settings)?;
            let best_state = analytic_state_lab(&outcome.best, outcome.best.length)?;
            let (unit, norm) = normalize_output(&best_state, &outcome.best, outcome.best.length)?;
            match fmt {
                Format::Json => write_json(&out.path("search"), &outcome)?,
                Format::Csv => {
                    let header = ["evaluations", "fidelity", "c1", "c2", "c3", "delta_beta"]
                        .map(String::from)
                        .to_vec();
                    let rows: Vec<Vec<String>> = outcome
                        .trace
                        .iter()
                        .map(|t| {
                            let q = &t.params;
                            [t.evaluations.to_string()]
                                .into_iter()
                                .chain([t.fidelity, q.c1, q.c2, q.c3, q.delta_beta].map(fmt_f64))
                                .collect()
                        })
                        .collect();
                    write_csv(&out.path("search"), &header, &rows)?;
                }
            }
            write_state(
                &unit,
                outcome.best.length,
                norm,
                &out.path("best_state"),
                fmt,
            )?;
            (
                outcome.evaluations.to_string(),
                fmt_f64(outcome.best_fidelity),
            )
        }
    };

    Ok(RunSummary {
        command: config.command,
        label,
        metric,
        files: out.files,
    })
}

fn labelled_summary(result: &SweepResult) -> (String, String) {
    let n = result.points.len();
    let labelled = result
        .points
        .iter()
        .filter(|p| p.label != crate::analysis::StateLabel::None)
        .count();
    (n.to_string(), fmt_f64(labelled as f64 / n as f64))
}

/// Load, run, print. Returns the process exit status.
pub fn main_with(source: &str, overrides: &[String]) -> i32 {
    let result = load_config(source, overrides)
        .map_err(Failure::from)
        .and_then(|cfg| run(&cfg).map_err(Failure::from));
    match result {
        Ok(summary) => {
            println!("{}", summary.line());
            0
        }
        Err(f) => {
            eprintln!("{}", f.record());
            f.status()
        }
    }
}
