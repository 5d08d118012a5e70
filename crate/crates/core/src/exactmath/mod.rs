//! Exact integer, modular and sparse polynomial arithmetic.

pub mod arith;
pub mod poly;
pub mod resultant;

pub use arith::{crt_solve, is_prime, mod_order, primes_below, valuation, FactoredInteger};
pub use poly::{poly_eval, var_names, Monomial, MultiPoly};
pub use resultant::{resultant, sylvester_resultant, symmetric_functions};
