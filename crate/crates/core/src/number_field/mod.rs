//! Finite extensions in power-basis form and their primes above the base
//! valuation ring.

pub mod extension;
pub mod prime;

pub use extension::{min_poly_in, power_basis_coords, AlgebraicElement, Extension, FunctionField, NumberField};
pub use prime::{crt_lift, split_prime, split_prime_with, CrtTarget, PrimeNode, DEFAULT_PRECISION};
