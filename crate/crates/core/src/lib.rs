//! Exact computations for the Hermitian one-matrix model: Gaussian
//! correlators of power sums and Schur functions by Wick gluing and by
//! characters, the partition function and free energy, the KP `n`-point
//! functions built from the Bogoliubov propagator, and the Harer–Zagier
//! numbers.
//!
//! All arithmetic is exact. Polynomials in `N` carry rational coefficients
//! and the string coupling `g_s` is tracked as a single exponent per value.

pub mod characters;
pub mod combinat;
pub mod correlators;
pub mod error;
pub mod hz;
pub mod kp;
pub mod partitions;
pub mod polyalg;
pub mod verify;
pub mod wick;

pub use error::{Error, Result};
pub use partitions::Partition;
pub use polyalg::{Graded, NPoly};
