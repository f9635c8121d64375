//! Construction and analysis of general symmetric informationally
//! complete (SIC) measurements.
//!
//! Every orthonormal basis `{F_alpha}` of the traceless Hermitian
//! operators on a `d`-dimensional Hilbert space generates a
//! one-parameter family of general SIC POVMs
//!
//! ```text
//! P_alpha = I/d^2 + t (F - d(d+1) F_alpha),    alpha < d^2,
//! P_{d^2} = I/d^2 + t (d+1) F,                 F = sum_alpha F_alpha,
//! ```
//!
//! positive semidefinite exactly for `t` in an interval `[t0, t1]`
//! around zero determined by the extreme eigenvalues of the bracketed
//! operators. This crate builds these families from standard or rotated
//! generalized Gell-Mann bases, verifies the defining POVM properties,
//! reconstructs states from outcome frequencies through the dual frame,
//! bounds and scans the admissible interval as a function of dimension,
//! and searches the rotation group of the basis for purity-maximizing
//! measurements.

pub mod basis;
pub mod bounds;
pub mod error;
pub mod hermitian;
pub mod optimizer;
pub mod rng;
pub mod sic;
pub mod tomography;

#[cfg(test)]
pub(crate) mod test_oracles;

pub use basis::{gell_mann_basis, pauli_basis, rotate_basis, OrthogonalParam, TracelessBasis};
pub use error::{Error, Result};
pub use hermitian::{hs_inner, HermitianOp, Spectrum};
pub use sic::{construct_sic, dual_frame, make_family, max_purity_sic, verify, SicFamily, SicPovm};
