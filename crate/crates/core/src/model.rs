//! Domain types for the two-waveguide triplet source and the rotating-frame
//! linear system `dΨ/dz = iÂΨ + B`.
//!
//! Every 8-vector in this crate uses the basis ordering
//! `[000, 100, 010, 001, 110, 101, 011, 111]`, where the three digits are the
//! waveguide indices `(l, m, n)` of photons 1, 2 and 3.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of basis states of three photons in two waveguides.
pub const DIM: usize = 8;

/// Default device length; rates are per unit `z` with `L = 2π`.
pub const DEFAULT_LENGTH: f64 = TAU;

/// 8×8 complex matrix, row-major.
pub type Matrix8 = [[C64; DIM]; DIM];

/// Below this `|x|` the sinc is evaluated from its Taylor series.
const SINC_SERIES_CUTOFF: f64 = 1e-4;

/// `1 / (2√2)`, the entry magnitude of the modal transform.
pub(crate) const MODAL_SCALE: f64 = 0.5 * FRAC_1_SQRT_2;

/// A complex number serialized as an explicit `{"re": .., "im": ..}` pair.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReIm {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for ReIm {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ReIm> for C64 {
    fn from(z: ReIm) -> Self {
        C64::new(z.re, z.im)
    }
}

/// Physical knobs of the coupler.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CouplerParams {
    /// Coupling coefficient of photon 1.
    pub c1: f64,
    /// Coupling coefficient of photon 2.
    pub c2: f64,
    /// Coupling coefficient of photon 3.
    pub c3: f64,
    /// Phase mismatch per unit length.
    pub delta_beta: f64,
    /// Nonlinear source strength.
    pub gamma: f64,
    /// Pump amplitude in waveguide 0.
    #[serde(with = "re_im")]
    pub a0: C64,
    /// Pump amplitude in waveguide 1.
    #[serde(with = "re_im")]
    pub a1: C64,
    /// Propagation length.
    pub length: f64,
}

impl Default for CouplerParams {
    fn default() -> Self {
        Self {
            c1: 1.0,
            c2: 1.0,
            c3: 1.0,
            delta_beta: 0.0,
            gamma: 1.0,
            a0: C64::new(1.0, 0.0),
            a1: C64::new(1.0, 0.0),
            length: DEFAULT_LENGTH,
        }
    }
}

impl CouplerParams {
    /// Symmetric unit pumps, `γ = 1`, `L = 2π`.
    pub fn new(c1: f64, c2: f64, c3: f64, delta_beta: f64) -> Self {
        Self {
            c1,
            c2,
            c3,
            delta_beta,
            ..Self::default()
        }
    }

    pub fn with_pumps(mut self, a0: C64, a1: C64) -> Self {
        self.a0 = a0;
        self.a1 = a1;
        self
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_length(mut self, length: f64) -> Self {
        self.length = length;
        self
    }

    pub fn couplings(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    pub fn validate(&self) -> Result<()> {
        let scalars = [
            ("c1", self.c1),
            ("c2", self.c2),
            ("c3", self.c3),
            ("delta_beta", self.delta_beta),
            ("gamma", self.gamma),
            ("a0.re", self.a0.re),
            ("a0.im", self.a0.im),
            ("a1.re", self.a1.re),
            ("a1.im", self.a1.im),
            ("length", self.length),
        ];
        for (name, v) in scalars {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} is not finite ({v})")));
            }
        }
        for (name, c) in [("c1", self.c1), ("c2", self.c2), ("c3", self.c3)] {
            if c < 0.0 {
                return Err(Error::InvalidParams(format!(
                    "{name} must be >= 0, got {c}"
                )));
            }
        }
        if self.length <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "length must be > 0, got {}",
                self.length
            )));
        }
        Ok(())
    }

    /// True when `A₀ = A₁` within `1e-12`.
    pub fn has_symmetric_pumps(&self) -> bool {
        (self.a0 - self.a1).norm() <= 1e-12
    }
}

pub(crate) mod re_im {
    use super::ReIm;
    use num_complex::Complex64 as C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        ReIm::from(*z).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        ReIm::deserialize(d).map(C64::from)
    }
}

/// Waveguide indices `(l, m, n)` of the three photons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisIndex {
    pub l: u8,
    pub m: u8,
    pub n: u8,
}

impl BasisIndex {
    /// The eight states in storage order.
    pub const ORDER: [BasisIndex; DIM] = [
        BasisIndex::new(0, 0, 0),
        BasisIndex::new(1, 0, 0),
        BasisIndex::new(0, 1, 0),
        BasisIndex::new(0, 0, 1),
        BasisIndex::new(1, 1, 0),
        BasisIndex::new(1, 0, 1),
        BasisIndex::new(0, 1, 1),
        BasisIndex::new(1, 1, 1),
    ];

    pub const LABELS: [&'static str; DIM] =
        ["000", "100", "010", "001", "110", "101", "011", "111"];

    pub const fn new(l: u8, m: u8, n: u8) -> Self {
        Self { l, m, n }
    }

    /// Parse a three-character label such as `"101"`.
    pub fn from_label(label: &str) -> Option<Self> {
        Self::LABELS
            .iter()
            .position(|&s| s == label)
            .map(|p| Self::ORDER[p])
    }

    /// Storage position in the fixed ordering.
    pub fn position(self) -> usize {
        Self::ORDER
            .iter()
            .position(|&b| b == self)
            .expect("indices are 0 or 1")
    }

    pub fn from_position(p: usize) -> Self {
        Self::ORDER[p]
    }

    /// Index of photon `photon` (0, 1 or 2).
    pub fn get(self, photon: usize) -> u8 {
        match photon {
            0 => self.l,
            1 => self.m,
            2 => self.n,
            _ => panic!("photon index out of range: {photon}"),
        }
    }

    /// Move photon `photon` to the other waveguide.
    pub fn flip(self, photon: usize) -> Self {
        let mut out = self;
        match photon {
            0 => out.l ^= 1,
            1 => out.m ^= 1,
            2 => out.n ^= 1,
            _ => panic!("photon index out of range: {photon}"),
        }
        out
    }

    /// Every photon in the other waveguide.
    pub fn mirror(self) -> Self {
        Self::new(self.l ^ 1, self.m ^ 1, self.n ^ 1)
    }

    pub fn label(self) -> &'static str {
        Self::LABELS[self.position()]
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.l, self.m, self.n)
    }
}

/// `FLIP[i][p]` is the position reached from `p` by moving photon `i`.
pub(crate) const FLIP: [[usize; DIM]; 3] = [
    [1, 0, 4, 5, 2, 3, 7, 6],
    [2, 4, 0, 6, 1, 7, 3, 5],
    [3, 5, 6, 0, 7, 1, 2, 4],
];

/// Position of the fully mirrored state.
pub(crate) const MIRROR: [usize; DIM] = [7, 6, 5, 4, 3, 2, 1, 0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    /// `Ψ_rot = Ψ_lab · e^{-iΔβz}`; the frame of the constant-coefficient system.
    Rotating,
    Lab,
}

/// The triplet wavefunction `Ψ_{l,m,n}` over the eight basis states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TripletAmplitudes {
    pub amps: [C64; DIM],
    pub frame: Frame,
}

impl TripletAmplitudes {
    pub fn new(amps: [C64; DIM], frame: Frame) -> Self {
        Self { amps, frame }
    }

    pub fn zero(frame: Frame) -> Self {
        Self::new([C64::new(0.0, 0.0); DIM], frame)
    }

    /// Unit amplitude on one basis state.
    pub fn basis(index: BasisIndex) -> Self {
        let mut amps = [C64::new(0.0, 0.0); DIM];
        amps[index.position()] = C64::new(1.0, 0.0);
        Self::new(amps, Frame::Lab)
    }

    /// `(|000⟩ + |111⟩)/√2`.
    pub fn ghz() -> Self {
        Self::from_real(&[FRAC_1_SQRT_2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, FRAC_1_SQRT_2])
    }

    /// Equal-weight heralded Bell state `(|000⟩ − |001⟩ − |110⟩ + |111⟩)/2`,
    /// with the relative signs produced by the coupler.
    pub fn heralded_bell() -> Self {
        Self::from_real(&[0.5, 0.0, 0.0, -0.5, -0.5, 0.0, 0.0, 0.5])
    }

    pub fn from_real(values: &[f64; DIM]) -> Self {
        let mut amps = [C64::new(0.0, 0.0); DIM];
        for (a, &v) in amps.iter_mut().zip(values) {
            *a = C64::new(v, 0.0);
        }
        Self::new(amps, Frame::Lab)
    }

    pub fn get(&self, index: BasisIndex) -> C64 {
        self.amps[index.position()]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `|Ψ_{l,m,n}|²`, independent of frame.
    pub fn probabilities(&self) -> [f64; DIM] {
        self.amps.map(|a| a.norm_sqr())
    }

    pub fn is_finite(&self) -> bool {
        self.amps
            .iter()
            .all(|a| a.re.is_finite() && a.im.is_finite())
    }

    /// Re-express the amplitudes sampled at position `z` in another frame.
    pub fn in_frame(self, frame: Frame, z: f64, delta_beta: f64) -> Self {
        let phase = match (self.frame, frame) {
            (Frame::Rotating, Frame::Lab) => C64::from_polar(1.0, delta_beta * z),
            (Frame::Lab, Frame::Rotating) => C64::from_polar(1.0, -delta_beta * z),
            _ => return self,
        };
        Self::new(self.amps.map(|a| a * phase), frame)
    }

    /// Largest componentwise distance, ignoring frame tags.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scaled(self, factor: C64) -> Self {
        Self::new(self.amps.map(|a| a * factor), self.frame)
    }
}

/// Serializable view of [`TripletAmplitudes`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateRecord {
    #[serde(default = "default_frame")]
    pub frame: Frame,
    pub basis: Vec<String>,
    pub amps: Vec<ReIm>,
}

fn default_frame() -> Frame {
    Frame::Lab
}

impl From<&TripletAmplitudes> for StateRecord {
    fn from(s: &TripletAmplitudes) -> Self {
        Self {
            frame: s.frame,
            basis: BasisIndex::LABELS.iter().map(|s| s.to_string()).collect(),
            amps: s.amps.iter().map(|&a| a.into()).collect(),
        }
    }
}

impl TryFrom<StateRecord> for TripletAmplitudes {
    type Error = Error;

    fn try_from(rec: StateRecord) -> Result<Self> {
        if rec.amps.len() != DIM {
            return Err(Error::InvalidState(format!(
                "expected {DIM} amplitudes, got {}",
                rec.amps.len()
            )));
        }
        let mut amps = [C64::new(0.0, 0.0); DIM];
        if rec.basis.is_empty() {
            for (a, v) in amps.iter_mut().zip(&rec.amps) {
                *a = (*v).into();
            }
        } else {
            if rec.basis.len() != DIM {
                return Err(Error::InvalidState("basis must list 8 labels".into()));
            }
            for (label, v) in rec.basis.iter().zip(&rec.amps) {
                let idx = BasisIndex::from_label(label)
                    .ok_or_else(|| Error::InvalidState(format!("unknown basis label {label:?}")))?;
                amps[idx.position()] = (*v).into();
            }
        }
        let out = TripletAmplitudes::new(amps, rec.frame);
        if !out.is_finite() {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        Ok(out)
    }
}

/// `φ(Δβ, z) = sinc(Δβz/2) · e^{-iΔβz/2}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseMatchValue {
    pub value: C64,
}

/// `sin(x)/x`, with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SINC_SERIES_CUTOFF {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}

pub fn phase_match_profile(delta_beta: f64, z: f64) -> PhaseMatchValue {
    let half = 0.5 * delta_beta * z;
    PhaseMatchValue {
        value: C64::from_polar(sinc(half), -half),
    }
}

/// Phase mismatch including discrete-diffraction shifts of the daughter
/// propagation constants: `β̃_p − Σ [β̃ᵢ + 2Cᵢ cos(kᵢ⊥)]`.
pub fn effective_phase_mismatch(
    beta_pump: f64,
    beta_tilde: [f64; 3],
    couplings: [f64; 3],
    k_perp: [f64; 3],
) -> f64 {
    let daughters: f64 = (0..3)
        .map(|i| beta_tilde[i] + 2.0 * couplings[i] * k_perp[i].cos())
        .sum();
    beta_pump - daughters
}

/// The real symmetric matrix `Â = −Δβ·I + C₁F₁ + C₂F₂ + C₃F₃`.
pub fn coupling_matrix(params: &CouplerParams) -> Matrix8 {
    let mut a = [[C64::new(0.0, 0.0); DIM]; DIM];
    let c = params.couplings();
    for p in 0..DIM {
        a[p][p] = C64::new(-params.delta_beta, 0.0);
        for (i, &ci) in c.iter().enumerate() {
            a[p][FLIP[i][p]] = C64::new(ci, 0.0);
        }
    }
    a
}

/// `B = γ(A₀, 0, 0, 0, 0, 0, 0, A₁)`.
pub fn source_vector(params: &CouplerParams) -> [C64; DIM] {
    let mut b = [C64::new(0.0, 0.0); DIM];
    b[0] = params.a0 * params.gamma;
    b[DIM - 1] = params.a1 * params.gamma;
    b
}

/// Sign pattern `(s₁, s₂, s₃)` of each diagonal slot, in the order
/// `{λ̄−λ_d, λ_a, λ_b, λ̄−λ_c, λ_c, λ̄−λ_b, λ̄−λ_a, λ_d}`.
pub const SIGN_PATTERNS: [[i8; 3]; DIM] = [
    [-1, -1, -1],
    [1, -1, -1],
    [-1, 1, -1],
    [1, 1, -1],
    [-1, -1, 1],
    [1, -1, 1],
    [-1, 1, 1],
    [1, 1, 1],
];

/// Diagonal slots carrying `λ_a, λ_b, λ_c, λ_d`.
pub const SLOT_A: usize = 1;
pub const SLOT_B: usize = 2;
pub const SLOT_C: usize = 4;
pub const SLOT_D: usize = 7;

/// Eigenvalues of `Â`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spectrum {
    pub lambda_a: f64,
    pub lambda_b: f64,
    pub lambda_c: f64,
    pub lambda_d: f64,
    /// `½(λ_a + λ_b + λ_c + λ_d)`, always `−2Δβ`.
    pub lambda_bar: f64,
    /// All eight eigenvalues, ordered as [`SIGN_PATTERNS`].
    pub diag: [f64; DIM],
}

pub fn spectrum(params: &CouplerParams) -> Spectrum {
    let (db, c1, c2, c3) = (params.delta_beta, params.c1, params.c2, params.c3);
    let lambda_a = -db + c1 - c2 - c3;
    let lambda_b = -db - c1 + c2 - c3;
    let lambda_c = -db - c1 - c2 + c3;
    let lambda_d = -db + c1 + c2 + c3;
    let lambda_bar = 0.5 * (lambda_a + lambda_b + lambda_c + lambda_d);
    Spectrum {
        lambda_a,
        lambda_b,
        lambda_c,
        lambda_d,
        lambda_bar,
        diag: [
            lambda_bar - lambda_d,
            lambda_a,
            lambda_b,
            lambda_bar - lambda_c,
            lambda_c,
            lambda_bar - lambda_b,
            lambda_bar - lambda_a,
            lambda_d,
        ],
    }
}

/// Orthogonal transform `U` with `UÂUᵀ = diag(spectrum)`.
///
/// Row `j` is the eigenvector for sign pattern `s = SIGN_PATTERNS[j]`, with
/// entry `s₁^l s₂^m s₃^n / (2√2)` at basis state `(l, m, n)`.
pub fn modal_transform() -> [[f64; DIM]; DIM] {
    let mut u = [[0.0; DIM]; DIM];
    for (j, row) in u.iter_mut().enumerate() {
        let s = SIGN_PATTERNS[j];
        for (p, entry) in row.iter_mut().enumerate() {
            let b = BasisIndex::from_position(p);
            let sign: i8 = (0..3)
                .map(|i| if b.get(i) == 1 { s[i] } else { 1 })
                .product();
            *entry = f64::from(sign) * MODAL_SCALE;
        }
    }
    u
}
