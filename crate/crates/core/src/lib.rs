//! Radii of the generalized Gosset circles of a simple Lie algebra.
//!
//! Two independent routes compute the same numbers:
//!
//! * [`kostant`] builds the rank-one-sum operator `A = Σ nⱼ w_{αⱼ} ⊗ w_{αⱼ}`
//!   (sum over the extended Dynkin diagram) as an exact rational matrix and
//!   reads the squared radii off the spectrum of `(2/h)·A`.
//! * [`apposition`] realizes the whole Lie algebra through structure
//!   constants, forms the cyclic element `x = e_{-ψ} + Σ √nᵢ e_{αᵢ}` and
//!   diagonalizes `ad x`; the moduli of its nonzero eigenvalues, scaled by
//!   `√(2/h)`, are the radii again.
//!
//! [`coxplane`] turns the spectrum of `ad x` into the Coxeter-plane picture
//! (for E8 the familiar 8 rings of 30 points), and [`verify`] runs the
//! cross-checks for one type or a whole sweep.

#![allow(clippy::needless_range_loop)]

pub mod apposition;
pub mod coxplane;
pub mod error;
pub mod kostant;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod rootsystem;
pub mod verify;

pub use error::{Error, Result};
pub use rootsystem::{build_root_system, highest_root, killing_gram, Family, LieType, RootSystem};
