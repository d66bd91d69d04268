//! Exact integer arithmetic: factorization, valuations, Kronecker symbols,
//! local square classes and Hilbert symbols over the completions of Q.

mod factor;
mod local;
mod symbols;

use thiserror::Error;

pub use factor::{
    factorize, factorize_wide, is_prime, is_square, is_squarefree, isqrt, prime_divisors,
    PrimeFactorization,
};
pub use local::{
    hilbert, hilbert_product, hilbert_support, is_local_square, is_square_in_extension,
    split_power, square_class, squarefree_part, valuation, valuation_int, HilbertProduct, Place,
    SquareClass,
};
pub(crate) use local::{hilbert_int, square_class_int};
pub use symbols::{kronecker, least_nonresidue, legendre};

pub type Rational = num_rational::Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero is not allowed here")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u128),
    #[error("{0} exceeds the 64-bit factorization cap; use factorize_wide")]
    TooLarge(i128),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("Hilbert product formula violated for ({a}, {b})")]
    ProductFormula { a: String, b: String },
}
