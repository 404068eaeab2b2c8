//! Exact computation of Fontaine–Mazur and Greenberg–Benois L-invariants
//! from filtered (φ,N)-modules over the rationals.
//!
//! The crate is `no_std` and only needs an allocator. File formats, reports
//! and the command-line front end live in the `linv` crate.

#![no_std]

extern crate alloc;

pub mod exactlin;
pub mod instancegen;
pub mod linvariants;
pub mod phinmod;
pub mod sscoh;
