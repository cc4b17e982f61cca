//! Exact combinatorics of higher sumsets and higher energies over finite
//! abelian groups `Z/n1 x ... x Z/nd`.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs; randomized routines take an explicit seed.
//!
//! Layout:
//! - [`group`]: group arithmetic, element packing, characters.
//! - [`sets`]: subsets, tuple sets, sumsets, higher difference sets, bases,
//!   covering, magnification ratios and almost periods.
//! - [`harmonic`]: dense functions, (generalized) convolutions, the DFT.
//! - [`energy`]: the energy hierarchy `E`, `E_{k,l}`, `E_alpha`, `T_k`, `sigma_k`.
//! - [`spectral`]: weighted Cayley operators and a Jacobi eigensolver.
//! - [`constructions`]: residues, multiplicative subgroups, the Heilbronn
//!   subgroup and sum, convex integer sets.
#![no_std]

extern crate alloc;

pub mod constructions;
pub mod energy;
pub mod error;
pub mod group;
pub mod harmonic;
pub mod limits;
pub mod sets;
pub mod spectral;

pub use error::{Error, Result};
pub use group::{Character, Elem, GroupSpec};
pub use harmonic::{DenseFn, SparseTensor};
pub use num_complex::Complex64 as C64;
pub use sets::{GSet, Rational, Sign, TupleSet};
