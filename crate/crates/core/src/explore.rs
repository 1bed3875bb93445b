//! Parameter sweeps over `Δβ`, `z` and the couplings, enumeration of the
//! integer condition families, and a deterministic derivative-free search for
//! parameters whose output best matches a target state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    branches, classify, hbs_param_check, normalize, normalize_output, uniform_param_check,
    Branches, Family, StateLabel,
};
use crate::dynamics::analytic_state;
use crate::error::{Error, Result};
use crate::model::{CouplerParams, TripletAmplitudes, DIM};

/// Environment variable capping sweep parallelism.
pub const THREADS_ENV: &str = "TRIPLET_WALK_THREADS";

/// Local maxima lower than this fraction of the global maximum are side lobes.
pub const PEAK_REL_FLOOR: f64 = 0.1;

/// Lower clamp on couplings inside the search.
pub const MIN_SEARCH_COUPLING: f64 = 1e-9;

/// Smallest budget accepted by [`search_max_fidelity`].
pub const MIN_SEARCH_BUDGET: usize = 27;

// Simplex coefficients.
const REFLECTION: f64 = 1.0;
const EXPANSION: f64 = 2.0;
const CONTRACTION: f64 = 0.5;
const SHRINK: f64 = 0.5;
const SIMPLEX_TOL: f64 = 1e-9;

/// One linearly spaced axis, endpoints included.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl SweepAxis {
    pub fn new(name: impl Into<String>, min: f64, max: f64, count: usize) -> Self {
        Self {
            name: name.into(),
            min,
            max,
            count,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |reason: &str| Error::InvalidAxis {
            name: self.name.clone(),
            reason: reason.into(),
        };
        if self.count < 2 {
            return Err(fail("count must be >= 2"));
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(fail("bounds must be finite"));
        }
        if self.min >= self.max {
            return Err(fail("min must be < max"));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.count - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.max
                } else {
                    self.min + k as f64 * self.step()
                }
            })
            .collect()
    }
}

/// How `Δβ` follows the swept `C₃`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DbetaRule {
    Fixed(f64),
    MinusC3,
}

impl DbetaRule {
    pub fn apply(self, c3: f64) -> f64 {
        match self {
            DbetaRule::Fixed(v) => v,
            DbetaRule::MinusC3 => -c3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub axes: Vec<SweepAxis>,
    pub rule: Option<DbetaRule>,
}

impl SweepGrid {
    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    /// Axis values, in grid axis order.
    pub coords: Vec<f64>,
    pub params: CouplerParams,
    pub z: f64,
    /// Normalized `|Ψ|²`; all zero when no triplet has been generated yet.
    pub probabilities: [f64; DIM],
    /// Raw `‖Ψ‖`.
    pub norm: f64,
    pub label: StateLabel,
    pub branches: Branches,
}

impl SweepPoint {
    /// Unnormalized `|Ψ|²`.
    pub fn raw_probabilities(&self) -> [f64; DIM] {
        let n2 = self.norm * self.norm;
        self.probabilities.map(|p| p * n2)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub grid: SweepGrid,
    /// Row-major over the axes: the last axis varies fastest.
    pub points: Vec<SweepPoint>,
}

/// Requested worker count from [`THREADS_ENV`], if set.
pub fn thread_limit() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Config(format!(
                "{THREADS_ENV} must be a positive integer, got {raw:?}"
            ))),
        },
    }
}

/// Evaluate `f(0..n)` in parallel, returning results in index order.
pub fn par_map_indexed<T, F>(n: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let run = || (0..n).into_par_iter().map(&f).collect::<Vec<T>>();
    match thread_limit()? {
        None => Ok(run()),
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(run))
        }
    }
}

fn evaluate_point(params: CouplerParams, z: f64, coords: Vec<f64>, tol: f64) -> Result<SweepPoint> {
    let raw = analytic_state(&params, z)?;
    let (probabilities, norm, label) = match normalize_output(&raw, &params, z) {
        Ok((unit, norm)) => {
            let report = classify(&unit, tol)?;
            (report.probabilities, norm, report.label)
        }
        Err(Error::Vacuum) => ([0.0; DIM], 0.0, StateLabel::None),
        Err(e) => return Err(e),
    };
    Ok(SweepPoint {
        coords,
        params,
        z,
        probabilities,
        norm,
        label,
        branches: branches(&probabilities),
    })
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol < 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// `|Ψ|²` over `(Δβ, z)`: for every `Δβ` on the axis, `z_samples` evenly
/// spaced points of `[0, L]`.
pub fn sweep_dbeta_z(
    base: &CouplerParams,
    dbeta_axis: &SweepAxis,
    z_samples: usize,
    tol: f64,
) -> Result<SweepResult> {
    base.validate()?;
    dbeta_axis.validate()?;
    check_tol(tol)?;
    let z_axis = SweepAxis::new("z", 0.0, base.length, z_samples);
    z_axis.validate()?;
    let dbetas = dbeta_axis.values();
    let zs = z_axis.values();
    let points = par_map_indexed(dbetas.len() * zs.len(), |k| {
        let (db, z) = (dbetas[k / zs.len()], zs[k % zs.len()]);
        let params = CouplerParams {
            delta_beta: db,
            ..*base
        };
        evaluate_point(params, z, vec![db, z], tol)
    })?
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        grid: SweepGrid {
            axes: vec![dbeta_axis.clone(), z_axis],
            rule: None,
        },
        points,
    })
}

/// Abscissae of 3-point local maxima of `ys` that reach at least
/// `rel_floor` times the global maximum.
pub fn local_maxima(xs: &[f64], ys: &[f64], rel_floor: f64) -> Vec<f64> {
    let top = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (1..ys.len().saturating_sub(1))
        .filter(|&i| ys[i] > ys[i - 1] && ys[i] > ys[i + 1] && ys[i] >= rel_floor * top)
        .map(|i| xs[i])
        .collect()
}

/// `(Δβ, ‖Ψ(L)‖²)` pairs from a [`sweep_dbeta_z`] result.
pub fn output_norms(result: &SweepResult) -> Vec<(f64, f64)> {
    let per_row = result.grid.axes.get(1).map_or(1, |a| a.count);
    result
        .points
        .chunks(per_row)
        .filter_map(|row| row.last())
        .map(|p| (p.params.delta_beta, p.norm * p.norm))
        .collect()
}

/// Peaks of the device-output norm along `Δβ`.
pub fn dbeta_peaks(result: &SweepResult, rel_floor: f64) -> Vec<f64> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = output_norms(result).into_iter().unzip();
    local_maxima(&xs, &ys, rel_floor)
}

/// Output state at `z = L` along `C₃`, with `Δβ` set by `rule`.
pub fn sweep_c3(
    base: &CouplerParams,
    c3_axis: &SweepAxis,
    rule: DbetaRule,
    tol: f64,
) -> Result<SweepResult> {
    base.validate()?;
    c3_axis.validate()?;
    check_tol(tol)?;
    if (base.c1 - base.c2).abs() > 1e-12 {
        return Err(Error::InvalidParams(format!(
            "C3 sweep expects C1 = C2, got {} and {}",
            base.c1, base.c2
        )));
    }
    if c3_axis.min < 0.0 {
        return Err(Error::InvalidAxis {
            name: c3_axis.name.clone(),
            reason: "C3 must be >= 0".into(),
        });
    }
    let c3s = c3_axis.values();
    let points = par_map_indexed(c3s.len(), |k| {
        let c3 = c3s[k];
        let params = CouplerParams {
            c3,
            delta_beta: rule.apply(c3),
            ..*base
        };
        evaluate_point(params, base.length, vec![c3], tol)
    })?
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        grid: SweepGrid {
            axes: vec![c3_axis.clone()],
            rule: Some(rule),
        },
        points,
    })
}

/// Output state at `z = L` over `(C₁ = C₂, C₃)` with `Δβ = −C₃`.
pub fn sweep_2d_hbs(
    base: &CouplerParams,
    c1c2_axis: &SweepAxis,
    c3_axis: &SweepAxis,
    tol: f64,
) -> Result<SweepResult> {
    base.validate()?;
    c1c2_axis.validate()?;
    c3_axis.validate()?;
    check_tol(tol)?;
    for axis in [c1c2_axis, c3_axis] {
        if axis.min < 0.0 {
            return Err(Error::InvalidAxis {
                name: axis.name.clone(),
                reason: "couplings must be >= 0".into(),
            });
        }
    }
    let cs = c1c2_axis.values();
    let c3s = c3_axis.values();
    let points = par_map_indexed(cs.len() * c3s.len(), |k| {
        let (c, c3) = (cs[k / c3s.len()], c3s[k % c3s.len()]);
        let params = CouplerParams {
            c1: c,
            c2: c,
            c3,
            delta_beta: -c3,
            ..*base
        };
        evaluate_point(params, base.length, vec![c, c3], tol)
    })?
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        grid: SweepGrid {
            axes: vec![c1c2_axis.clone(), c3_axis.clone()],
            rule: Some(DbetaRule::MinusC3),
        },
        points,
    })
}

/// Closed interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub min: f64,
    pub max: f64,
}

impl Bounds {
    pub const fn new(min: f64, max: f64) -> Self {
        Self { min, max }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.min <= x && x <= self.max
    }

    fn is_empty(&self) -> bool {
        !(self.min <= self.max)
    }

    fn width(&self) -> f64 {
        self.max - self.min
    }
}

/// Bounds on `(C₁, C₂, C₃, Δβ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamBox {
    pub c1: Bounds,
    pub c2: Bounds,
    pub c3: Bounds,
    pub delta_beta: Bounds,
}

impl ParamBox {
    /// Same bounds for every coupling.
    pub fn new(couplings: Bounds, delta_beta: Bounds) -> Self {
        Self {
            c1: couplings,
            c2: couplings,
            c3: couplings,
            delta_beta,
        }
    }

    pub fn contains(&self, p: &CouplerParams) -> bool {
        self.c1.contains(p.c1)
            && self.c2.contains(p.c2)
            && self.c3.contains(p.c3)
            && self.delta_beta.contains(p.delta_beta)
    }

    fn dims(&self) -> [Bounds; 4] {
        [self.c1, self.c2, self.c3, self.delta_beta]
    }

    fn validate_for_search(&self) -> Result<()> {
        for (name, b) in ["c1", "c2", "c3", "delta_beta"].iter().zip(self.dims()) {
            if !b.min.is_finite() || !b.max.is_finite() {
                return Err(Error::InfeasibleBox(format!(
                    "{name} bounds must be finite"
                )));
            }
            if b.is_empty() {
                return Err(Error::InfeasibleBox(format!(
                    "{name}: min {} > max {}",
                    b.min, b.max
                )));
            }
        }
        for (name, b) in [("c1", self.c1), ("c2", self.c2), ("c3", self.c3)] {
            if b.max < MIN_SEARCH_COUPLING {
                return Err(Error::InfeasibleBox(format!(
                    "{name} must admit positive couplings, max is {}",
                    b.max
                )));
            }
        }
        Ok(())
    }
}

fn nonzero(bound: i64) -> impl Iterator<Item = i64> + Clone {
    (-bound..=bound).filter(|&k| k != 0)
}

/// All members of `family` with integers up to `integer_bound` that lie in
/// `bounds` and whose mode structure realizes the family's state at `L = 2π`.
///
/// The heralded Bell families are emitted with `C₁ = C₂`; an unequal split
/// of `C₁ + C₂` leaves `Ψ₁₀₀` and `Ψ₀₁₀` nonzero.
pub fn enumerate_condition_families(
    family: Family,
    integer_bound: i64,
    bounds: &ParamBox,
) -> Result<Vec<CouplerParams>> {
    if integer_bound < 1 {
        return Err(Error::InvalidParams(format!(
            "integer bound must be >= 1, got {integer_bound}"
        )));
    }
    let b = integer_bound;
    let mut candidates: Vec<CouplerParams> = Vec::new();
    match family {
        Family::Hbs1 | Family::Hbs3 => {
            for m in nonzero(b) {
                for n in nonzero(b).filter(|&n| n != m) {
                    let q = m as f64 / 4.0;
                    let c = n as f64 / 4.0;
                    candidates.push(CouplerParams::new(c, c, q, -q));
                }
            }
        }
        Family::Hbs2 => {
            for m in nonzero(b) {
                for n in nonzero(b).filter(|&n| n != m) {
                    let c = n as f64 / 4.0;
                    for k in nonzero(b) {
                        let c3 = k as f64 / 4.0;
                        candidates.push(CouplerParams::new(c, c, c3, c3 - m as f64 / 2.0));
                    }
                }
            }
        }
        Family::Uniform => {
            for n in 0..=b {
                for m in 0..=b {
                    let (c1, c2) = (n as f64 / 2.0, m as f64 / 2.0);
                    candidates.push(CouplerParams::new(c1, c2, c1 + c2, 0.0));
                }
            }
        }
        Family::Ghz => {
            return Err(Error::InvalidParams(
                "the GHZ-like condition is a continuum, not an integer family".into(),
            ))
        }
    }
    Ok(candidates
        .into_iter()
        .filter(|p| p.c1 > 0.0 && p.c2 > 0.0 && p.c3 > 0.0 && bounds.contains(p))
        .filter(|p| {
            let hits = match family {
                Family::Uniform => uniform_param_check(p, b),
                _ => hbs_param_check(p, b),
            };
            hits.iter()
                .any(|h| h.family == family && h.residual == 0.0 && h.realized)
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub evaluations: usize,
    pub fidelity: f64,
    pub params: CouplerParams,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub best: CouplerParams,
    pub best_fidelity: f64,
    pub evaluations: usize,
    pub grid_evaluations: usize,
    pub grid_best_fidelity: f64,
    /// Every strict improvement of the running best, in order.
    pub trace: Vec<TraceEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchSettings {
    pub budget: usize,
    pub seed: u64,
    /// Grid points per axis; `None` picks [`grid_points_per_axis`].
    pub grid_per_axis: Option<usize>,
    /// Pumps, `γ` and length used for every evaluation.
    pub base: CouplerParams,
}

impl SearchSettings {
    pub fn new(budget: usize, seed: u64) -> Self {
        Self {
            budget,
            seed,
            grid_per_axis: None,
            base: CouplerParams::default(),
        }
    }
}

/// Points per axis of the coarse 4-D grid: about half the budget goes to
/// the grid, the rest to refinement.
pub fn grid_points_per_axis(budget: usize) -> usize {
    let k = ((budget as f64 / 2.0).powf(0.25) + 1e-9).floor() as usize;
    k.max(2)
}

/// Maximize `|⟨target|ψ(L)⟩|²` over the box with default settings.
pub fn search_max_fidelity(
    target: &TripletAmplitudes,
    bounds: &ParamBox,
    budget: usize,
    seed: u64,
) -> Result<SearchOutcome> {
    search_max_fidelity_with(target, bounds, &SearchSettings::new(budget, seed))
}

struct Objective<'a> {
    target: TripletAmplitudes,
    bounds: &'a ParamBox,
    base: CouplerParams,
}

impl Objective<'_> {
    /// Unit-cube coordinates to clamped parameters.
    fn params(&self, x: &[f64; 4]) -> CouplerParams {
        let dims = self.bounds.dims();
        let v: [f64; 4] = std::array::from_fn(|i| {
            let t = x[i].clamp(0.0, 1.0);
            dims[i].min + t * dims[i].width()
        });
        CouplerParams {
            c1: v[0].max(MIN_SEARCH_COUPLING),
            c2: v[1].max(MIN_SEARCH_COUPLING),
            c3: v[2].max(MIN_SEARCH_COUPLING),
            delta_beta: v[3],
            ..self.base
        }
    }

    fn fidelity(&self, x: &[f64; 4]) -> f64 {
        let p = self.params(x);
        let Ok(raw) = analytic_state(&p, p.length) else {
            return 0.0;
        };
        match normalize_output(&raw, &p, p.length) {
            Ok((unit, _)) => {
                let overlap: num_complex::Complex64 = self
                    .target
                    .amps
                    .iter()
                    .zip(&unit.amps)
                    .map(|(t, s)| t.conj() * s)
                    .sum();
                overlap.norm_sqr().min(1.0)
            }
            Err(_) => 0.0,
        }
    }
}

/// Coarse grid scan followed by simplex refinement from the best grid point.
///
/// The grid is a `k⁴` lattice of cell-interior points whose offset inside
/// each cell is drawn from `seed`. Refinement uses reflection 1, expansion 2,
/// contraction ½ and shrink ½ in unit-cube coordinates, and stops when the
/// simplex diameter drops below `1e-9` or the budget is spent.
pub fn search_max_fidelity_with(
    target: &TripletAmplitudes,
    bounds: &ParamBox,
    settings: &SearchSettings,
) -> Result<SearchOutcome> {
    bounds.validate_for_search()?;
    settings.base.validate()?;
    let (target, _) = normalize(target)?;
    let budget = settings.budget;
    if budget < MIN_SEARCH_BUDGET {
        return Err(Error::InvalidParams(format!(
            "search budget must be >= {MIN_SEARCH_BUDGET}, got {budget}"
        )));
    }
    let k = settings
        .grid_per_axis
        .unwrap_or_else(|| grid_points_per_axis(budget));
    let grid_size = k
        .checked_pow(4)
        .filter(|&g| k >= 1 && g <= budget)
        .ok_or_else(|| {
            Error::InvalidParams(format!("grid of {k}^4 points does not fit budget {budget}"))
        })?;

    let objective = Objective {
        target,
        bounds,
        base: settings.base,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let offsets: [f64; 4] = std::array::from_fn(|_| rng.gen::<f64>());
    let lattice = |idx: usize| -> [f64; 4] {
        let mut rem = idx;
        std::array::from_fn(|d| {
            let i = rem % k;
            rem /= k;
            (i as f64 + offsets[d]) / k as f64
        })
    };

    let grid_values = par_map_indexed(grid_size, |idx| objective.fidelity(&lattice(idx)))?;
    let (grid_best_idx, grid_best) =
        grid_values
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, v)| {
                if v > bv {
                    (i, v)
                } else {
                    (bi, bv)
                }
            });

    let mut state = SearchState {
        objective: &objective,
        evaluations: grid_size,
        budget,
        best_x: lattice(grid_best_idx),
        best_f: grid_best,
        trace: Vec::new(),
    };
    state.trace.push(TraceEntry {
        evaluations: grid_size,
        fidelity: grid_best,
        params: objective.params(&state.best_x),
    });

    if budget > grid_size {
        refine(&mut state, 0.5 / k as f64);
    }

    Ok(SearchOutcome {
        best: objective.params(&state.best_x),
        best_fidelity: state.best_f,
        evaluations: state.evaluations,
        grid_evaluations: grid_size,
        grid_best_fidelity: grid_best,
        trace: state.trace,
    })
}

struct SearchState<'a> {
    objective: &'a Objective<'a>,
    evaluations: usize,
    budget: usize,
    best_x: [f64; 4],
    best_f: f64,
    trace: Vec<TraceEntry>,
}

impl SearchState<'_> {
    /// `None` once the budget is spent.
    fn eval(&mut self, x: [f64; 4]) -> Option<([f64; 4], f64)> {
        if self.evaluations >= self.budget {
            return None;
        }
        let x = x.map(|v| v.clamp(0.0, 1.0));
        let f = self.objective.fidelity(&x);
        self.evaluations += 1;
        if f > self.best_f {
            self.best_f = f;
            self.best_x = x;
            self.trace.push(TraceEntry {
                evaluations: self.evaluations,
                fidelity: f,
                params: self.objective.params(&x),
            });
        }
        Some((x, f))
    }
}

fn lerp(from: &[f64; 4], to: &[f64; 4], t: f64) -> [f64; 4] {
    std::array::from_fn(|i| from[i] + t * (to[i] - from[i]))
}

fn diameter(simplex: &[([f64; 4], f64)]) -> f64 {
    let mut d = 0.0_f64;
    for (i, (a, _)) in simplex.iter().enumerate() {
        for (b, _) in &simplex[i + 1..] {
            let dist = a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).powi(2))
                .sum::<f64>()
                .sqrt();
            d = d.max(dist);
        }
    }
    d
}

/// Simplex maximization; every vertex stays inside the unit cube.
fn refine(state: &mut SearchState<'_>, step: f64) {
    let x0 = state.best_x;
    let mut simplex = vec![(x0, state.best_f)];
    for d in 0..4 {
        let mut x = x0;
        x[d] = if x[d] + step <= 1.0 {
            x[d] + step
        } else {
            x[d] - step
        };
        match state.eval(x) {
            Some(v) => simplex.push(v),
            None => return,
        }
    }

    loop {
        // best first; stable sort keeps ties in insertion order
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        if diameter(&simplex) < SIMPLEX_TOL {
            return;
        }
        let n = simplex.len() - 1;
        let (worst_x, worst_f) = simplex[n];
        let second_worst_f = simplex[n - 1].1;
        let mut centroid = [0.0; 4];
        for (x, _) in &simplex[..n] {
            for i in 0..4 {
                centroid[i] += x[i] / n as f64;
            }
        }

        let Some((xr, fr)) = state.eval(lerp(&centroid, &worst_x, -REFLECTION)) else {
            return;
        };
        if fr > simplex[0].1 {
            let Some((xe, fe)) = state.eval(lerp(&centroid, &xr, EXPANSION)) else {
                simplex[n] = (xr, fr);
                return;
            };
            simplex[n] = if fe > fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr > second_worst_f {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr > worst_f {
            let Some(v) = state.eval(lerp(&centroid, &xr, CONTRACTION)) else {
                return;
            };
            v
        } else {
            let Some(v) = state.eval(lerp(&centroid, &worst_x, CONTRACTION)) else {
                return;
            };
            v
        };
        if fc > fr.max(worst_f) {
            simplex[n] = (xc, fc);
            continue;
        }
        let best = simplex[0].0;
        for vertex in simplex.iter_mut().skip(1) {
            match state.eval(lerp(&best, &vertex.0, SHRINK)) {
                Some(v) => *vertex = v,
                None => return,
            }
        }
    }
}
