//! Enumeration and counting of elliptic curves over ℚ that admit a 7-isogeny.
//!
//! Every such curve is a twist of `y² = x³ + A(a,b)x + B(a,b)` for a coprime
//! pair `(a, b)` with `b > 0`, where `A = C·A₀`, `B = C·B₀` and
//! `C(a,b) = a² + ab + 7b²` is the norm form of the order `ℤ[3ζ]`. The crate
//! is organised around that parametrisation:
//!
//! - [`forms`]: exact evaluation of the parametrising polynomials, heights and
//!   (twist) minimality defects.
//! - [`normform`]: arithmetic in `ℤ[3ζ]` and tables of primitive
//!   representations by `C`.
//! - [`multfun`]: the local counting function `T(e)`, the Euler product `Q`
//!   with certified bounds, prime sieving and divisor utilities.
//! - [`census`]: the twist-height census, its brute-force oracles, the
//!   counting functions `N^tw(X)`, `N(X)` and the Möbius sieve identities.
//! - [`constants`]: `R`, `κ`, `ℓ₀`, `c₁`, `c₂` and asymptotic predictions.
//!
//! The crate is `no_std` (it needs `alloc`). The default `std` feature only
//! enables rayon-backed parallel drivers; every parallel path produces output
//! identical to the sequential one.

#![no_std]
#![deny(rust_2018_idioms)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod census;
pub mod constants;
mod error;
pub mod forms;
pub mod multfun;
pub mod normform;

pub use error::{Error, Result};
