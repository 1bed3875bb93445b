//! Normalization, density matrices, fidelities, state classification and the
//! integer parameter families that produce heralded Bell and uniform states.

use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{spectrum, CouplerParams, Matrix8, TripletAmplitudes, DIM, MIRROR};

/// Allowed deviation of `‖ψ‖` from 1 for inputs that must be unit vectors.
pub const UNIT_NORM_TOL: f64 = 1e-10;

/// Default relative tolerance of [`classify`].
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-3;

/// Default search bound for the integers in the condition families.
pub const DEFAULT_MAX_INTEGER: i64 = 32;

/// Largest residual still counted as exact family membership.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Positions of `{000, 001, 110, 111}`.
pub const HBS_SUPPORT: [usize; 4] = [0, 3, 4, 7];
/// Positions of `{100, 010, 101, 011}`.
pub const MIRRORED_HBS_SUPPORT: [usize; 4] = [1, 2, 5, 6];

/// Scale to unit norm.
pub fn normalize(amps: &TripletAmplitudes) -> Result<(TripletAmplitudes, f64)> {
    let norm = amps.norm();
    if !norm.is_finite() {
        return Err(Error::Numerical(format!("state norm is {norm}")));
    }
    if norm == 0.0 {
        return Err(Error::Vacuum);
    }
    Ok((amps.scaled(C64::new(1.0 / norm, 0.0)), norm))
}

/// Simulated outputs with `‖Ψ‖` at or below this fraction of
/// `γ(|A₀| + |A₁|)z` are rounding noise around an exact zero.
pub const VACUUM_REL_TOL: f64 = 1e-10;

/// [`normalize`] for a simulated output at `z`: a norm lost in rounding
/// counts as vacuum instead of being blown up into a spurious state.
pub fn normalize_output(
    raw: &TripletAmplitudes,
    params: &CouplerParams,
    z: f64,
) -> Result<(TripletAmplitudes, f64)> {
    let scale = params.gamma.abs() * (params.a0.norm() + params.a1.norm()) * z;
    if raw.norm() <= VACUUM_REL_TOL * scale {
        return Err(Error::Vacuum);
    }
    normalize(raw)
}

fn require_unit(state: &TripletAmplitudes) -> Result<()> {
    let n = state.norm();
    if (n - 1.0).abs() > UNIT_NORM_TOL || !n.is_finite() {
        return Err(Error::NotNormalized(n));
    }
    Ok(())
}

/// Pure-state density matrix `ρ = ψψ†`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix {
    pub rho: Matrix8,
}

impl DensityMatrix {
    pub fn trace(&self) -> C64 {
        (0..DIM).map(|k| self.rho[k][k]).sum()
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..DIM {
            for j in 0..DIM {
                acc += self.rho[i][j] * self.rho[j][i];
            }
        }
        acc.re
    }

    /// Largest `|ρ_ij − conj(ρ_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..DIM {
            for j in 0..DIM {
                worst = worst.max((self.rho[i][j] - self.rho[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn real_part(&self) -> [[f64; DIM]; DIM] {
        self.rho.map(|row| row.map(|v| v.re))
    }

    pub fn imag_part(&self) -> [[f64; DIM]; DIM] {
        self.rho.map(|row| row.map(|v| v.im))
    }

    /// `⟨v|ρ|v⟩`; non-negative for every `v` when `ρ` is PSD.
    pub fn expectation(&self, v: &[C64; DIM]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..DIM {
            for j in 0..DIM {
                acc += v[i].conj() * self.rho[i][j] * v[j];
            }
        }
        acc
    }
}

pub fn density_matrix(state: &TripletAmplitudes) -> Result<DensityMatrix> {
    require_unit(state)?;
    let psi = &state.amps;
    let rho = std::array::from_fn(|i| std::array::from_fn(|j| psi[i] * psi[j].conj()));
    Ok(DensityMatrix { rho })
}

/// `|⟨target|state⟩|²`.
pub fn fidelity(state: &TripletAmplitudes, target: &TripletAmplitudes) -> Result<f64> {
    require_unit(state)?;
    require_unit(target)?;
    Ok(overlap_sqr(state, target).min(1.0))
}

fn overlap_sqr(state: &TripletAmplitudes, target: &TripletAmplitudes) -> f64 {
    target
        .amps
        .iter()
        .zip(&state.amps)
        .map(|(t, s)| t.conj() * s)
        .sum::<C64>()
        .norm_sqr()
}

/// Fidelity to the equal-weight state on `support`, maximized over the
/// relative phases: `(Σ_{p∈support} |ψ_p|)² / |support|`.
pub fn phase_free_fidelity(state: &TripletAmplitudes, support: &[usize]) -> f64 {
    let s: f64 = support.iter().map(|&p| state.amps[p].norm()).sum();
    (s * s / support.len() as f64).min(1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StateLabel {
    #[serde(rename = "HBS")]
    Hbs,
    #[serde(rename = "mirrored-HBS")]
    MirroredHbs,
    #[serde(rename = "uniform")]
    Uniform,
    #[serde(rename = "GHZ-like")]
    GhzLike,
    #[serde(rename = "none")]
    None,
}

impl StateLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            StateLabel::Hbs => "HBS",
            StateLabel::MirroredHbs => "mirrored-HBS",
            StateLabel::Uniform => "uniform",
            StateLabel::GhzLike => "GHZ-like",
            StateLabel::None => "none",
        }
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Phase-free fidelities to each ideal family state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scores {
    pub hbs: f64,
    pub mirrored_hbs: f64,
    pub uniform: f64,
    pub ghz: f64,
}

impl Scores {
    pub fn get(&self, label: StateLabel) -> Option<f64> {
        match label {
            StateLabel::Hbs => Some(self.hbs),
            StateLabel::MirroredHbs => Some(self.mirrored_hbs),
            StateLabel::Uniform => Some(self.uniform),
            StateLabel::GhzLike => Some(self.ghz),
            StateLabel::None => None,
        }
    }

    pub fn best(&self) -> f64 {
        self.hbs
            .max(self.mirrored_hbs)
            .max(self.uniform)
            .max(self.ghz)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub label: StateLabel,
    pub scores: Scores,
    pub tolerance: f64,
    pub probabilities: [f64; DIM],
}

impl ClassificationReport {
    /// Score of the assigned label, or the best score when unlabeled.
    pub fn primary_score(&self) -> f64 {
        self.scores
            .get(self.label)
            .unwrap_or_else(|| self.scores.best())
    }
}

fn spread(values: impl IntoIterator<Item = f64>) -> (f64, f64) {
    values
        .into_iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        })
}

fn four_state_pattern(p: &[f64; DIM], on: &[usize; 4], off: &[usize; 4], tol: f64) -> bool {
    let (lo, hi) = spread(on.iter().map(|&k| p[k]));
    hi - lo <= tol && lo >= tol && off.iter().all(|&k| p[k] <= tol)
}

/// Label a unit state as heralded Bell, mirrored heralded Bell, uniform or
/// GHZ-like.
///
/// Patterns, on the probabilities `p`:
/// - HBS: `p000, p001, p110, p111` within `tol` of each other and each
///   `≥ tol`; the other four `≤ tol`.
/// - mirrored HBS: the same with the two supports exchanged.
/// - uniform: every `p` within `tol` of `1/8`.
/// - GHZ-like: `p000 + p111 ≥ 1 − 6·tol` and `|p000 − p111| ≤ tol`.
///
/// Among the patterns that hold, the one with the highest score wins.
pub fn classify(state: &TripletAmplitudes, tol: f64) -> Result<ClassificationReport> {
    if !(tol > 0.0 && tol < 0.5) {
        return Err(Error::InvalidTolerance(tol));
    }
    require_unit(state)?;
    let p = state.probabilities();
    let scores = Scores {
        hbs: phase_free_fidelity(state, &HBS_SUPPORT),
        mirrored_hbs: phase_free_fidelity(state, &MIRRORED_HBS_SUPPORT),
        uniform: phase_free_fidelity(state, &[0, 1, 2, 3, 4, 5, 6, 7]),
        ghz: phase_free_fidelity(state, &[0, 7]),
    };
    let candidates = [
        (
            StateLabel::Hbs,
            four_state_pattern(&p, &HBS_SUPPORT, &MIRRORED_HBS_SUPPORT, tol),
        ),
        (
            StateLabel::MirroredHbs,
            four_state_pattern(&p, &MIRRORED_HBS_SUPPORT, &HBS_SUPPORT, tol),
        ),
        (
            StateLabel::Uniform,
            p.iter().all(|&x| (x - 0.125).abs() <= tol),
        ),
        (
            StateLabel::GhzLike,
            p[0] + p[7] >= 1.0 - 6.0 * tol && (p[0] - p[7]).abs() <= tol,
        ),
    ];
    let label = candidates
        .iter()
        .filter(|(_, holds)| *holds)
        .map(|&(label, _)| label)
        .fold(None, |best: Option<StateLabel>, label| match best {
            Some(b) if scores.get(b) >= scores.get(label) => Some(b),
            _ => Some(label),
        })
        .unwrap_or(StateLabel::None);
    Ok(ClassificationReport {
        label,
        scores,
        tolerance: tol,
        probabilities: p,
    })
}

/// Parameter families with a known closed-form output state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `C₃ = −Δβ = m/4`, `C₁ + C₂ = n/2`.
    Hbs1,
    /// `C₁ = C₂ = n/4`, `C₃ − Δβ = m/2`.
    Hbs2,
    /// `C₃ = −Δβ = m/4`, `C₁ = C₂ = n/4`.
    Hbs3,
    /// `Δβ = 0`, `C₁ = n/2`, `C₂ = m/2`, `C₃ = (n + m)/2`.
    Uniform,
    /// `Δβ = −C₃`, `C₁ = C₂ = C₃`.
    Ghz,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Hbs1 => "hbs1",
            Family::Hbs2 => "hbs2",
            Family::Hbs3 => "hbs3",
            Family::Uniform => "uniform",
            Family::Ghz => "ghz",
        }
    }

    pub fn target_label(self) -> StateLabel {
        match self {
            Family::Hbs1 | Family::Hbs2 | Family::Hbs3 => StateLabel::Hbs,
            Family::Uniform => StateLabel::Uniform,
            Family::Ghz => StateLabel::GhzLike,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hbs1" => Ok(Family::Hbs1),
            "hbs2" => Ok(Family::Hbs2),
            "hbs3" => Ok(Family::Hbs3),
            "uniform" => Ok(Family::Uniform),
            "ghz" => Ok(Family::Ghz),
            _ => Err(Error::Config(format!("unknown family {s:?}"))),
        }
    }
}

/// Outcome of testing parameters against one family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionMatch {
    pub family: Family,
    pub m: Option<i64>,
    pub n: Option<i64>,
    /// Largest absolute deviation from the family's defining equations.
    pub residual: f64,
    /// Whether the mode structure at the device length actually produces the
    /// family's state: the modes that must vanish complete whole periods
    /// (`λL/2π` a nonzero integer), the surviving modes do not, and for the
    /// heralded Bell families the `λ_a`, `λ_b` modes coincide.
    pub realized: bool,
}

/// `λ·L/2π` is a nonzero integer, so the mode returns to zero at `z = L`.
fn completes(lambda: f64, length: f64) -> bool {
    let cycles = lambda * length / std::f64::consts::TAU;
    let k = cycles.round();
    k != 0.0 && (cycles - k).abs() <= MEMBERSHIP_TOL
}

/// Mode conditions for a perfect heralded Bell state at `z = L`.
pub fn hbs_modes_realized(params: &CouplerParams) -> bool {
    let s = spectrum(params);
    let l = params.length;
    completes(s.lambda_c, l)
        && completes(s.lambda_d, l)
        && (s.lambda_a - s.lambda_b).abs() <= MEMBERSHIP_TOL
        && !completes(s.lambda_a, l)
}

/// Mode conditions for a perfect uniform state at `z = L`.
pub fn uniform_modes_realized(params: &CouplerParams) -> bool {
    let s = spectrum(params);
    let l = params.length;
    completes(s.lambda_a, l)
        && completes(s.lambda_b, l)
        && completes(s.lambda_d, l)
        && !completes(s.lambda_c, l)
}

/// Nearest integer `k` with `k/denominator ≈ value`, within `[-bound, bound]`.
fn nearest(value: f64, denominator: f64, bound: i64) -> Option<i64> {
    let k = (value * denominator).round();
    (k.abs() <= bound as f64).then_some(k as i64)
}

/// Test `params` against the three heralded Bell families over nonzero
/// integers `|m|, |n| ≤ max_integer`, `m ≠ n`. Only exact members are
/// returned.
pub fn hbs_param_check(params: &CouplerParams, max_integer: i64) -> Vec<ConditionMatch> {
    let (c1, c2, c3, db) = (params.c1, params.c2, params.c3, params.delta_beta);
    let realized = hbs_modes_realized(params);
    let mut out = Vec::new();
    let mut push = |family, m: Option<i64>, n: Option<i64>, residual: f64| {
        if let (Some(m), Some(n)) = (m, n) {
            if m != 0 && n != 0 && m != n && residual <= MEMBERSHIP_TOL {
                out.push(ConditionMatch {
                    family,
                    m: Some(m),
                    n: Some(n),
                    residual,
                    realized,
                });
            }
        }
    };

    // C₃ = −Δβ = m/4, C₁ + C₂ = n/2
    let m = nearest(c3, 4.0, max_integer);
    let n = nearest(c1 + c2, 2.0, max_integer);
    if let (Some(mi), Some(ni)) = (m, n) {
        let q = mi as f64 / 4.0;
        let r = (c3 - q)
            .abs()
            .max((db + q).abs())
            .max((c1 + c2 - ni as f64 / 2.0).abs());
        push(Family::Hbs1, m, n, r);
    }

    // C₁ = C₂ = n/4, C₃ − Δβ = m/2
    let n = nearest(0.5 * (c1 + c2), 4.0, max_integer);
    let m = nearest(c3 - db, 2.0, max_integer);
    if let (Some(mi), Some(ni)) = (m, n) {
        let q = ni as f64 / 4.0;
        let r = (c1 - q)
            .abs()
            .max((c2 - q).abs())
            .max((c3 - db - mi as f64 / 2.0).abs());
        push(Family::Hbs2, m, n, r);
    }

    // C₃ = −Δβ = m/4, C₁ = C₂ = n/4
    let m = nearest(c3, 4.0, max_integer);
    let n = nearest(0.5 * (c1 + c2), 4.0, max_integer);
    if let (Some(mi), Some(ni)) = (m, n) {
        let qm = mi as f64 / 4.0;
        let qn = ni as f64 / 4.0;
        let r = (c3 - qm)
            .abs()
            .max((db + qm).abs())
            .max((c1 - qn).abs())
            .max((c2 - qn).abs());
        push(Family::Hbs3, m, n, r);
    }
    out
}

/// Test `params` against the uniform family: `Δβ = 0`, `C₁ = n/2`,
/// `C₂ = m/2`, `C₃ = (n + m)/2` with `0 ≤ n, m ≤ max_integer`.
pub fn uniform_param_check(params: &CouplerParams, max_integer: i64) -> Vec<ConditionMatch> {
    let n = nearest(params.c1, 2.0, max_integer).filter(|&k| k >= 0);
    let m = nearest(params.c2, 2.0, max_integer).filter(|&k| k >= 0);
    let (Some(n), Some(m)) = (n, m) else {
        return Vec::new();
    };
    let residual = params
        .delta_beta
        .abs()
        .max((params.c1 - n as f64 / 2.0).abs())
        .max((params.c2 - m as f64 / 2.0).abs())
        .max((params.c3 - (n + m) as f64 / 2.0).abs());
    if residual > MEMBERSHIP_TOL {
        return Vec::new();
    }
    vec![ConditionMatch {
        family: Family::Uniform,
        m: Some(m),
        n: Some(n),
        residual,
        realized: uniform_modes_realized(params),
    }]
}

/// Distance from the GHZ-like condition `Δβ = −C₃`, `C₁ = C₂ = C₃`.
pub fn ghz_param_check(params: &CouplerParams) -> ConditionMatch {
    let residual = (params.delta_beta + params.c3)
        .abs()
        .max((params.c1 - params.c2).abs())
        .max((params.c2 - params.c3).abs());
    let s = spectrum(params);
    ConditionMatch {
        family: Family::Ghz,
        m: None,
        n: None,
        residual,
        realized: residual <= MEMBERSHIP_TOL && completes(s.lambda_d, params.length),
    }
}

/// Leading-order ratios `|Ψ_{100}|²/|Ψ_{000}|²`, `|Ψ_{010}|²/|Ψ_{000}|²`,
/// `|Ψ_{001}|²/|Ψ_{000}|²` for weak coupling: `Cᵢ²z² / (4 + Δβ²z²)`.
pub fn weak_coupling_ratios(params: &CouplerParams, z: f64) -> [f64; 3] {
    let denom = 4.0 + (params.delta_beta * z).powi(2);
    params.couplings().map(|c| c * c * z * z / denom)
}

/// Probabilities summed over the three branches that equal pumps and
/// `C₁ = C₂` produce: `{000,111}`, `{001,110}`, `{100,010,101,011}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Branches {
    pub ghz: f64,
    pub herald: f64,
    pub rest: f64,
}

pub fn branches(probabilities: &[f64; DIM]) -> Branches {
    let p = probabilities;
    Branches {
        ghz: p[0] + p[7],
        herald: p[3] + p[4],
        rest: p[1] + p[2] + p[5] + p[6],
    }
}

/// `|Ψ_{l,m,n}|² − |Ψ_{1−l,1−m,1−n}|²`, largest magnitude.
pub fn mirror_asymmetry(state: &TripletAmplitudes) -> f64 {
    (0..DIM)
        .map(|p| (state.amps[p] - state.amps[MIRROR[p]]).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::analytic_state;
    use crate::model::BasisIndex;
    use std::f64::consts::{FRAC_1_SQRT_2, TAU};

    fn output(c1: f64, c2: f64, c3: f64, db: f64) -> TripletAmplitudes {
        let raw = analytic_state(&CouplerParams::new(c1, c2, c3, db), TAU).unwrap();
        normalize(&raw).unwrap().0
    }

    #[test]
    fn normalize_examples() {
        let e = TripletAmplitudes::basis(BasisIndex::new(0, 0, 0));
        let (u, n) = normalize(&e).unwrap();
        assert_eq!(n, 1.0);
        assert_eq!(u, e);

        let mut amps = [C64::new(0.0, 0.0); DIM];
        amps[0] = C64::new(0.0, 2.0);
        amps[7] = C64::new(0.0, 2.0);
        let (u, n) = normalize(&TripletAmplitudes::new(amps, crate::model::Frame::Lab)).unwrap();
        assert!((n - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert!((u.amps[0] - C64::new(0.0, FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((u.norm() - 1.0).abs() < 1e-14);

        let zero = TripletAmplitudes::zero(crate::model::Frame::Lab);
        assert!(matches!(normalize(&zero), Err(Error::Vacuum)));
    }

    #[test]
    fn density_matrix_examples() {
        let rho = density_matrix(&TripletAmplitudes::basis(BasisIndex::new(0, 0, 0))).unwrap();
        for i in 0..DIM {
            for j in 0..DIM {
                let expect = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                assert_eq!(rho.rho[i][j], C64::new(expect, 0.0));
            }
        }
        let rho = density_matrix(&TripletAmplitudes::ghz()).unwrap();
        for &(i, j) in &[(0, 0), (0, 7), (7, 0), (7, 7)] {
            assert!((rho.rho[i][j].re - 0.5).abs() < 1e-15);
        }
        assert!((rho.trace().re - 1.0).abs() < 1e-15);
        assert!((rho.purity() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hbs_density_matrix_block() {
        let rho = density_matrix(&output(1.0, 1.0, 2.0, -2.0)).unwrap();
        for i in 0..DIM {
            for j in 0..DIM {
                let inside = HBS_SUPPORT.contains(&i) && HBS_SUPPORT.contains(&j);
                let v = rho.rho[i][j];
                if inside {
                    assert!((v.norm() - 0.25).abs() < 1e-9);
                } else {
                    assert!(v.norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn density_matrix_rejects_unnormalized() {
        let s = TripletAmplitudes::from_real(&[1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(matches!(density_matrix(&s), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn fidelity_examples() {
        let g = TripletAmplitudes::ghz();
        assert!((fidelity(&g, &g).unwrap() - 1.0).abs() < 1e-15);
        let a = TripletAmplitudes::basis(BasisIndex::new(0, 0, 0));
        let b = TripletAmplitudes::basis(BasisIndex::new(1, 0, 1));
        assert_eq!(fidelity(&a, &b).unwrap(), 0.0);
        let f = fidelity(&output(1.0, 1.0, 1.0, -1.0), &g).unwrap();
        assert!((f - 0.75).abs() < 1e-9, "{f}");
        assert!(fidelity(&(a.scaled(C64::new(2.0, 0.0))), &b).is_err());
    }

    #[test]
    fn fidelity_ignores_global_phase() {
        let s = output(0.7, 1.3, 0.2, 0.4);
        let rotated = s.scaled(C64::from_polar(1.0, 1.234));
        assert!((fidelity(&s, &rotated).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn classify_examples() {
        let r = classify(&output(1.0, 1.0, 2.0, -2.0), 1e-6).unwrap();
        assert_eq!(r.label, StateLabel::Hbs);
        assert!((r.scores.hbs - 1.0).abs() < 1e-9);

        let r = classify(&output(1.0, 1.0, 2.0, 0.0), 1e-6).unwrap();
        assert_eq!(r.label, StateLabel::Uniform);

        let r = classify(&TripletAmplitudes::ghz(), 1e-6).unwrap();
        assert_eq!(r.label, StateLabel::GhzLike);
        assert!((r.scores.ghz - 1.0).abs() < 1e-15);
        assert!((r.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn classify_mirrored_and_none() {
        let m = TripletAmplitudes::from_real(&[0.0, 0.5, -0.5, 0.0, 0.0, 0.5, 0.5, 0.0]);
        assert_eq!(classify(&m, 1e-6).unwrap().label, StateLabel::MirroredHbs);
        let e = TripletAmplitudes::basis(BasisIndex::new(1, 0, 0));
        assert_eq!(classify(&e, 1e-3).unwrap().label, StateLabel::None);
        // GHZ-like output at the degenerate point needs a loose tolerance
        let g = output(1.0, 1.0, 1.0, -1.0);
        assert_eq!(classify(&g, 1e-3).unwrap().label, StateLabel::None);
        assert_eq!(classify(&g, 0.05).unwrap().label, StateLabel::GhzLike);
    }

    #[test]
    fn classify_rejects_bad_tolerance() {
        let g = TripletAmplitudes::ghz();
        assert!(classify(&g, 0.0).is_err());
        assert!(classify(&g, 0.5).is_err());
    }

    #[test]
    fn hbs_check_examples() {
        let hits = hbs_param_check(&CouplerParams::new(1.0, 1.0, 2.0, -2.0), 32);
        let f1 = hits.iter().find(|h| h.family == Family::Hbs1).unwrap();
        assert_eq!((f1.m, f1.n, f1.residual), (Some(8), Some(4), 0.0));
        assert!(f1.realized);

        assert!(hbs_param_check(&CouplerParams::new(1.0, 1.0, 1.0, -1.0), 32).is_empty());

        let hits = hbs_param_check(&CouplerParams::new(0.3, 0.7, 1.25, -1.25), 32);
        assert_eq!(hits.len(), 1);
        assert_eq!(
            (hits[0].family, hits[0].m, hits[0].n),
            (Family::Hbs1, Some(5), Some(2))
        );
        // arithmetic member, but C₁ ≠ C₂ and m + n odd leave the herald-free
        // modes oscillating at z = L
        assert!(!hits[0].realized);
        assert_eq!(
            classify(&output(0.3, 0.7, 1.25, -1.25), 1e-6)
                .unwrap()
                .label,
            StateLabel::None
        );
    }

    #[test]
    fn hbs_check_respects_bound() {
        let p = CouplerParams::new(1.0, 1.0, 2.0, -2.0);
        assert_eq!(hbs_param_check(&p, 8).len(), 3);
        // every family needs m = 8 here
        assert!(hbs_param_check(&p, 7).is_empty());
    }

    #[test]
    fn uniform_check_examples() {
        let hits = uniform_param_check(&CouplerParams::new(1.0, 1.0, 2.0, 0.0), 32);
        assert_eq!(hits.len(), 1);
        assert_eq!((hits[0].n, hits[0].m), (Some(2), Some(2)));
        assert!(hits[0].realized);
        assert!(uniform_param_check(&CouplerParams::new(1.0, 1.0, 2.0, 0.5), 32).is_empty());
        let hits = uniform_param_check(&CouplerParams::new(0.5, 1.0, 1.5, 0.0), 32);
        assert_eq!((hits[0].n, hits[0].m), (Some(1), Some(2)));
        let probs = output(0.5, 1.0, 1.5, 0.0).probabilities();
        assert!(probs.iter().all(|&p| (p - 0.125).abs() < 1e-9));
    }

    #[test]
    fn ghz_check_examples() {
        assert_eq!(
            ghz_param_check(&CouplerParams::new(1.0, 1.0, 1.0, -1.0)).residual,
            0.0
        );
        assert_eq!(
            ghz_param_check(&CouplerParams::new(1.0, 1.0, 2.0, -2.0)).residual,
            1.0
        );
        let g = ghz_param_check(&CouplerParams::new(2.0, 2.0, 2.0, -2.0));
        assert_eq!(g.residual, 0.0);
        assert!(g.realized);
    }

    #[test]
    fn weak_coupling_examples() {
        let r = weak_coupling_ratios(&CouplerParams::new(1e-3, 1e-3, 1e-3, 0.0), TAU);
        let expect = (1e-3 * TAU).powi(2) / 4.0;
        assert!(r.iter().all(|&x| (x - expect).abs() < 1e-20));
        assert!((expect - 9.8696e-6).abs() < 1e-9);

        let r = weak_coupling_ratios(&CouplerParams::new(0.0, 0.0, 1e-3, 1e-3), TAU);
        assert_eq!(&r[..2], &[0.0, 0.0]);
    }

    #[test]
    fn weak_coupling_matches_full_solution_when_phase_matched() {
        let p = CouplerParams::new(1e-3, 2e-3, 3e-3, 0.0);
        let probs = analytic_state(&p, TAU).unwrap().probabilities();
        let predicted = weak_coupling_ratios(&p, TAU);
        for (k, pos) in [1, 2, 3].into_iter().enumerate() {
            let actual = probs[pos] / probs[0];
            assert!(
                (actual / predicted[k] - 1.0).abs() < 1e-3,
                "{actual} vs {}",
                predicted[k]
            );
        }
    }

    #[test]
    fn branches_sum_to_total() {
        let s = output(1.0, 1.0, 0.7, -0.7);
        let b = branches(&s.probabilities());
        assert!((b.ghz + b.herald + b.rest - 1.0).abs() < 1e-12);
        assert!(mirror_asymmetry(&s) < 1e-12);
    }

    #[test]
    fn rounding_noise_is_vacuum() {
        // every mode completes at 2π: the exact output is zero
        let p = CouplerParams::new(1.0, 1.0, 1.0, 0.0);
        let raw = analytic_state(&p, TAU).unwrap();
        assert!(raw.norm() < 1e-12);
        assert!(matches!(
            normalize_output(&raw, &p, TAU),
            Err(Error::Vacuum)
        ));
        let q = CouplerParams::new(1.0, 1.0, 2.0, -2.0);
        let (unit, norm) = normalize_output(&analytic_state(&q, TAU).unwrap(), &q, TAU).unwrap();
        assert!((unit.norm() - 1.0).abs() < 1e-15);
        assert!((norm - TAU).abs() < 1e-12);
    }
}
