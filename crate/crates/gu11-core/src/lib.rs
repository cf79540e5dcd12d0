//! Exact arithmetic for rank-2 Hermitian structures over imaginary
//! quadratic fields F = Q(√−N).
//!
//! Everything here is computed over exact rationals: fractional ideals and
//! their trace duals, class groups via reduced binary quadratic forms, the
//! alternating Hermitian pairing on F² with its similitude involution, the
//! formal Hom-algebra generated by a cyclic degree-N isogeny, p-adic types
//! of abelian surfaces with F-action, and weighted polynomial rings with
//! Fricke-type involutions and their invariant subrings.
//!
//! The crate is `no_std` (with `alloc`); IO and reporting live in the
//! companion CLI crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod linalg;
pub mod quadfield;
pub mod hermitian;
pub mod isogeny;
pub mod hondatate;
pub mod poly;
pub mod weierstrass;
pub mod graded;

pub use arith::{Int, Rat};
