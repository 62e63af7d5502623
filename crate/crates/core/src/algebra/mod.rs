//! Exact arithmetic kernel: prime fields, polynomial factorization over
//! F_ell and over the integers, resultants, Graeffe transforms, composed
//! products, and Sturm-sequence real-root counting.
//!
//! Everything here is exact. Integers have unbounded magnitude; interval
//! endpoints of the form u + v*sqrt(m) are handled symbolically, never by
//! floating approximation.

mod factorz;
mod polyf;
mod polyz;
mod primes;
mod sturm;

pub use factorz::{factor_over_z, FactorizationZ};
pub use polyf::{factor_mod_l, FactorizationF, PolyF, PrimeFieldCtx};
pub use polyz::{composed_product, cyclotomic, discriminant, graeffe_power, resultant, PolyZ};
pub use primes::{is_prime_biguint, is_prime_power, is_prime_u64, primes_up_to};
pub use sturm::{eval_at_surd, sturm_roots_in_interval, sturm_sign_variations, SturmChain, Surd};

use thiserror::Error;

/// Errors for the exact-arithmetic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("zero polynomial")]
    ZeroPoly,
    #[error("degree {0} exceeds the factorization limit 16")]
    DegreeTooLarge(usize),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^62")]
    ModulusTooLarge(u64),
    #[error("empty interval: lo must be strictly below hi")]
    EmptyInterval,
    #[error("relation-search bound {0} exceeds the supported maximum 3")]
    BoundTooLarge(u32),
}
