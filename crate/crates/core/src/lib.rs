//! Enantiomer-specific state transfer in cyclic three-level systems (CTLS)
//! of chiral molecules.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the numerical
//! machinery:
//!
//! - [`rotor`]: asymmetric-top rigid-rotor spectra `|J_tau M>`.
//! - [`thermal`]: two-temperature Boltzmann populations, partition sums and
//!   the pure-enantiomer yield.
//! - [`ctls`]: chirality-signed couplings and the closed-form step unitaries
//!   of the three-pulse protocol.
//! - [`envelope`] and [`propagator`]: pulse shapes, areas and time-ordered
//!   propagation of the interaction-picture Hamiltonian.
//! - [`transfer`]: thermal initial states, final states, enantiomeric excess
//!   and temperature sweeps.
//!
//! File formats and the command-line front end live in the `ctls` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod ctls;
pub mod density;
pub mod envelope;
mod error;
pub mod linalg;
pub mod propagator;
pub mod rotor;
pub mod thermal;
pub mod transfer;
pub mod units;

pub use error::{Error, Result};
pub use num_complex::Complex64;
