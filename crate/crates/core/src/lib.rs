//! Finite truncations of Toeplitz-operator spectral triples.
//!
//! The crate builds finite matrix truncations of Toeplitz operators on two
//! families of holomorphic function spaces:
//!
//! * Hardy spaces over shrinking circles, with symbols pulled back from
//!   self-similar polygonal curves through piecewise-Möbius charts
//!   ([`ifs`], [`charts`], [`toeplitz`]);
//! * weighted Bergman spaces over the unit ball and over shrinking disks
//!   ([`bergman`]).
//!
//! On top of the truncations it verifies the exact commutator identities the
//! operators satisfy, and estimates spectral dimensions of weighted
//! direct-sum Dirac operators from their zeta series and eigenvalue counting
//! functions ([`spectral`]).
//!
//! The crate is `no_std` (with `alloc`); all IO, configuration and rendering
//! live in the companion CLI crate.

#![cfg_attr(not(test), no_std)]
// Guards of the form `!(x > 0.0)` are deliberate: they reject NaN, which the
// suggested `x <= 0.0` would silently accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bergman;
pub mod charts;
pub mod error;
pub mod ifs;
pub mod matrix;
pub mod quadrature;
pub mod spectral;
pub mod sum;
pub mod toeplitz;

pub use error::{Error, Result};
pub use matrix::CMatrix;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
