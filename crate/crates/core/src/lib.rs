//! Simulation and design of photon-triplet states generated by third-order
//! spontaneous parametric down-conversion in two coupled waveguides.
//!
//! The three daughter photons each walk between waveguide 0 and waveguide 1,
//! so the triplet lives in an 8-dimensional space indexed by `(l, m, n)`.
//! [`model`] holds the parameters and the linear system, [`dynamics`] solves
//! it in closed form and with RK4, [`analysis`] turns amplitudes into
//! labelled states, [`explore`] sweeps and searches parameter space, and
//! [`cli`] drives all of it from a JSON run configuration.

pub mod analysis;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod explore;
pub mod model;

pub use analysis::{
    classify, density_matrix, fidelity, normalize, ClassificationReport, ConditionMatch,
    DensityMatrix, Family, StateLabel,
};
pub use dynamics::{analytic_state, integrate_rk4, symmetric_state, Trajectory};
pub use error::{Error, Result};
pub use model::{BasisIndex, CouplerParams, Frame, Spectrum, TripletAmplitudes};
