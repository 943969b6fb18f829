//! Exact computational kernel for the discrete tomography of F-type
//! icosahedral model sets.
//!
//! Everything is built over the golden-ratio field: [`qtau`] provides
//! arbitrary-precision arithmetic in `Q(tau)` with exact sign decisions,
//! [`geom`] the rank-3 module `L` over `Z[tau]`, the star map into internal
//! space and exact convex geometry, [`modelset`] cut-and-project patch
//! generation and slicing, [`tomography`] discrete parallel X-rays and
//! grids, [`reconstruction`] the two-direction window-constrained
//! reconstruction by integral flows, and [`uniqueness`] U-polygon machinery
//! for non-uniqueness witnesses and bounded determination scans.
//!
//! The crate is `no_std` (with `alloc`): all computations are pure and
//! deterministic, every predicate is an exact sign evaluation, and floating
//! point is confined to the presentation-only [`qtau::QTau::to_f64`].

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod geom;
pub mod modelset;
pub mod qtau;
pub mod reconstruction;
pub mod tomography;
pub mod uniqueness;
