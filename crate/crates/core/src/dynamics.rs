//! Propagation of the triplet wavefunction along the coupler.
//!
//! Two independent routes: the closed-form modal solution and a classical
//! fixed-step RK4 integrator. Both start from the vacuum at `z = 0`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::model::{
    modal_transform, phase_match_profile, source_vector, spectrum, CouplerParams, Frame,
    TripletAmplitudes, DIM, FLIP, MODAL_SCALE, SLOT_A, SLOT_B, SLOT_C, SLOT_D,
};

/// RK4 steps used when the caller has no preference (for `L = 2π`).
pub const DEFAULT_STEPS: usize = 4096;

/// Modal amplitudes `Φ = UΨ` and projected source `B' = UB`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModalCoefficients {
    pub phi: [C64; DIM],
    pub b_prime: [C64; DIM],
}

/// `Φ_j(z) = B'_j · z · φ(−λ_j, z)`, i.e. `B'_j (e^{iλz} − 1)/(iλ)` written
/// so that `λ_j = 0` needs no special case.
pub fn modal_coefficients(params: &CouplerParams, z: f64) -> Result<ModalCoefficients> {
    if z < 0.0 || !z.is_finite() {
        return Err(Error::NegativeDistance(z));
    }
    let u = modal_transform();
    let b = source_vector(params);
    let lambdas = spectrum(params).diag;
    let mut b_prime = [C64::new(0.0, 0.0); DIM];
    let mut phi = [C64::new(0.0, 0.0); DIM];
    for j in 0..DIM {
        b_prime[j] = u[j].iter().zip(&b).map(|(&ujp, &bp)| bp * ujp).sum();
        phi[j] = b_prime[j] * z * phase_match_profile(-lambdas[j], z).value;
    }
    Ok(ModalCoefficients { phi, b_prime })
}

/// Closed-form rotating-frame amplitudes at `z`, for arbitrary pumps.
pub fn analytic_state(params: &CouplerParams, z: f64) -> Result<TripletAmplitudes> {
    let modal = modal_coefficients(params, z)?;
    let u = modal_transform();
    let mut amps = [C64::new(0.0, 0.0); DIM];
    for (p, amp) in amps.iter_mut().enumerate() {
        *amp = (0..DIM).map(|j| modal.phi[j] * u[j][p]).sum();
    }
    Ok(TripletAmplitudes::new(amps, Frame::Rotating))
}

/// Closed-form amplitudes in the lab frame.
pub fn analytic_state_lab(params: &CouplerParams, z: f64) -> Result<TripletAmplitudes> {
    Ok(analytic_state(params, z)?.in_frame(Frame::Lab, z, params.delta_beta))
}

/// The four surviving modal amplitudes for equal pumps and the state built
/// from them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetricSolution {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
    pub amps: TripletAmplitudes,
}

/// Equal-pump solution assembled from the `λ_a..λ_d` modes:
///
/// ```text
/// Ψ000 = Ψ111 = ( a + b + c + d)/(2√2)
/// Ψ100 = Ψ011 = ( a − b − c + d)/(2√2)
/// Ψ010 = Ψ101 = (−a + b − c + d)/(2√2)
/// Ψ001 = Ψ110 = (−a − b + c + d)/(2√2)
/// ```
pub fn symmetric_state(params: &CouplerParams, z: f64) -> Result<SymmetricSolution> {
    if !params.has_symmetric_pumps() {
        return Err(Error::AsymmetricPumps {
            a0: params.a0.to_string(),
            a1: params.a1.to_string(),
        });
    }
    let modal = modal_coefficients(params, z)?;
    let (a, b, c, d) = (
        modal.phi[SLOT_A],
        modal.phi[SLOT_B],
        modal.phi[SLOT_C],
        modal.phi[SLOT_D],
    );
    let p000 = (a + b + c + d) * MODAL_SCALE;
    let p100 = (a - b - c + d) * MODAL_SCALE;
    let p010 = (-a + b - c + d) * MODAL_SCALE;
    let p001 = (-a - b + c + d) * MODAL_SCALE;
    // order: 000 100 010 001 110 101 011 111
    let amps = [p000, p100, p010, p001, p001, p010, p100, p000];
    Ok(SymmetricSolution {
        a,
        b,
        c,
        d,
        amps: TripletAmplitudes::new(amps, Frame::Rotating),
    })
}

/// Sampled solution; every state is stored in the lab frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub z_grid: Vec<f64>,
    pub states: Vec<TripletAmplitudes>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.z_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z_grid.is_empty()
    }

    pub fn last(&self) -> Option<(f64, &TripletAmplitudes)> {
        self.z_grid.last().copied().zip(self.states.last())
    }
}

fn check_integration(params: &CouplerParams, z_max: f64, steps: usize) -> Result<f64> {
    params.validate()?;
    if !(z_max > 0.0) || !z_max.is_finite() {
        return Err(Error::InvalidIntegration(format!(
            "z_max must be > 0, got {z_max}"
        )));
    }
    if steps == 0 {
        return Err(Error::InvalidIntegration("steps must be >= 1".into()));
    }
    let h = z_max / steps as f64;
    if !h.is_normal() {
        return Err(Error::InvalidIntegration(format!(
            "step size underflows ({z_max} / {steps})"
        )));
    }
    Ok(h)
}

/// `iÂΨ + B`, using the flip structure of `Â`.
fn rotating_rhs(params: &CouplerParams, source: &[C64; DIM], psi: &[C64; DIM]) -> [C64; DIM] {
    let c = params.couplings();
    std::array::from_fn(|p| {
        let mut hop = psi[p] * -params.delta_beta;
        for i in 0..3 {
            hop += psi[FLIP[i][p]] * c[i];
        }
        C64::new(-hop.im, hop.re) + source[p]
    })
}

/// `iCΨ + B e^{iΔβz}`: the untransformed equation, no diagonal term.
fn lab_rhs(params: &CouplerParams, source: &[C64; DIM], z: f64, psi: &[C64; DIM]) -> [C64; DIM] {
    let c = params.couplings();
    let drive = C64::from_polar(1.0, params.delta_beta * z);
    std::array::from_fn(|p| {
        let mut hop = C64::new(0.0, 0.0);
        for i in 0..3 {
            hop += psi[FLIP[i][p]] * c[i];
        }
        C64::new(-hop.im, hop.re) + source[p] * drive
    })
}

fn axpy(y: &[C64; DIM], h: f64, k: &[C64; DIM]) -> [C64; DIM] {
    std::array::from_fn(|p| y[p] + k[p] * h)
}

fn rk4_step<F>(f: &F, z: f64, y: &[C64; DIM], h: f64) -> [C64; DIM]
where
    F: Fn(f64, &[C64; DIM]) -> [C64; DIM],
{
    let k1 = f(z, y);
    let k2 = f(z + 0.5 * h, &axpy(y, 0.5 * h, &k1));
    let k3 = f(z + 0.5 * h, &axpy(y, 0.5 * h, &k2));
    let k4 = f(z + h, &axpy(y, h, &k3));
    std::array::from_fn(|p| y[p] + (k1[p] + (k2[p] + k3[p]) * 2.0 + k4[p]) * (h / 6.0))
}

fn integrate<F>(
    z_max: f64,
    steps: usize,
    h: f64,
    f: F,
    to_lab: impl Fn(f64, [C64; DIM]) -> [C64; DIM],
) -> Result<Trajectory>
where
    F: Fn(f64, &[C64; DIM]) -> [C64; DIM],
{
    let mut z_grid = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut y = [C64::new(0.0, 0.0); DIM];
    z_grid.push(0.0);
    states.push(TripletAmplitudes::zero(Frame::Lab));
    for k in 0..steps {
        let z = k as f64 * h;
        y = rk4_step(&f, z, &y, h);
        // pin the last sample to z_max exactly
        let z_next = if k + 1 == steps {
            z_max
        } else {
            (k + 1) as f64 * h
        };
        z_grid.push(z_next);
        states.push(TripletAmplitudes::new(to_lab(z_next, y), Frame::Lab));
    }
    if !states.last().is_some_and(|s| s.is_finite()) {
        return Err(Error::Numerical(
            "integration produced non-finite amplitudes".into(),
        ));
    }
    Ok(Trajectory { z_grid, states })
}

/// Classical RK4 on the rotating-frame system `dΨ/dz = iÂΨ + B`.
pub fn integrate_rk4(params: &CouplerParams, z_max: f64, steps: usize) -> Result<Trajectory> {
    let h = check_integration(params, z_max, steps)?;
    let source = source_vector(params);
    let db = params.delta_beta;
    integrate(
        z_max,
        steps,
        h,
        |_, y| rotating_rhs(params, &source, y),
        |z, y| {
            let phase = C64::from_polar(1.0, db * z);
            y.map(|a| a * phase)
        },
    )
}

/// Classical RK4 directly on the lab-frame equation with its oscillating
/// source term.
pub fn integrate_rk4_lab(params: &CouplerParams, z_max: f64, steps: usize) -> Result<Trajectory> {
    let h = check_integration(params, z_max, steps)?;
    let source = source_vector(params);
    integrate(
        z_max,
        steps,
        h,
        |z, y| lab_rhs(params, &source, z, y),
        |_, y| y,
    )
}

/// Closed-form lab-frame states on `samples` evenly spaced points of `[0, z_max]`.
pub fn analytic_trajectory(
    params: &CouplerParams,
    z_max: f64,
    samples: usize,
) -> Result<Trajectory> {
    params.validate()?;
    if samples < 2 {
        return Err(Error::InvalidIntegration("need at least 2 samples".into()));
    }
    if !(z_max > 0.0) {
        return Err(Error::InvalidIntegration(format!(
            "z_max must be > 0, got {z_max}"
        )));
    }
    let z_grid: Vec<f64> = (0..samples)
        .map(|k| z_max * k as f64 / (samples - 1) as f64)
        .collect();
    let states = z_grid
        .iter()
        .map(|&z| analytic_state_lab(params, z))
        .collect::<Result<_>>()?;
    Ok(Trajectory { z_grid, states })
}

/// `|Ψ_{l,m,n}(z)|²` for every sample.
pub fn trajectory_probabilities(traj: &Trajectory) -> Vec<[f64; DIM]> {
    traj.states
        .iter()
        .map(TripletAmplitudes::probabilities)
        .collect()
}
