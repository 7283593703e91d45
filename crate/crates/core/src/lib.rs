#![no_std]

//! Numerical kernels for the critical strip.
//!
//! Everything here is allocation-light, pure, and free of IO so it can be
//! shared by the harness, the CLI and embedded callers alike:
//!
//! * [`zeta`]: Euler–Maclaurin ζ(s), log Γ, the completed zeta and its
//!   theta-integral route, continuous branches of ln ζ, the factor F(s).
//! * [`primes`] and [`prime_zeta`]: sieving, Möbius, the prime zeta
//!   function by direct summation and by Möbius continuation, Chernoff's
//!   pseudo-zeta, and the Q_m / F_m reflection system.
//! * [`mollifier`]: the ν_ε cutoff, the normalized bump ψ and the plateau
//!   function μ_ε.
//! * [`zeros`]: critical-line zeros, multiplicities and zero-free rectangles.
//! * [`rh`]: the kernel R(k), Cauchy projections, factorization X±, roots
//!   t_n, the Plemelj solution and the residue series.
//! * [`fourier`]: finite-interval transforms along horizontal segments.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod fourier;
pub mod mollifier;
pub mod point;
pub mod prime_zeta;
pub mod primes;
pub mod quad;
pub mod rh;
pub mod special;
pub mod zeros;
pub mod zeta;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use point::ComplexPoint;
