//! Quadratic Gauss sums behind the fractional Talbot effect.
//!
//! The integer `s` of a Talbot order `p/q`, the phase sequences `x_n` and
//! their DFT, temporal self-imaging of periodic envelopes through a
//! dispersive line, and Talbot array illuminator design.

pub mod error;
pub mod gauss_phase;
pub mod io;
pub mod numtheory;
pub mod phase;
pub mod tai;
pub mod talbot_field;
pub mod talbot_s;
pub mod verify;

pub use error::{Error, Result};
pub use gauss_phase::{spectral_weights, talbot_phases, Family, PhaseSequence};
pub use num_complex::Complex64;
pub use numtheory::Int;
pub use phase::ExactPhase;
pub use tai::{tai_phases, TaiDesign};
pub use talbot_field::{propagate, reconstruct_fractional, LineSpectrum, PeriodicEnvelope};
pub use talbot_s::{compute_s, s_table, Sign, TalbotOrder, TalbotS};
