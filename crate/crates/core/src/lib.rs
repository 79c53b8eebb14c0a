//! Exact combinatorics for generalized Veronese bi-type ideals `L*_{t,s}`.
//!
//! The variables of `T = K[x_11, ..., x_nm_n]` are split into `n` blocks.
//! `L*_{t,s}` is generated by the degree-`t` monomials whose exponents are at
//! most `s` and which involve every block. Each invariant studied here has a
//! closed form in the parameters and an independent brute-force oracle:
//!
//! | invariant | closed form | oracle |
//! |---|---|---|
//! | dimension, unmixedness | [`covers::dim_formula`], [`covers::unmixed_predicate`] | minimal vertex cover enumeration |
//! | regularity | [`covers::regularity_formula`] | Betti numbers from upper Koszul complexes |
//! | associated primes | [`primes::ass_formula`] | colon-ideal search over the lcm box |
//! | sortability / quadratic Gröbner basis | Sorting relations | fiber connectivity and rewriting confluence |
//! | graph ideals | [`builders::build_generalized`] | walk enumeration |
//!
//! Exact rank computations are generic over the scalar type; see [`linalg`]
//! and [`betti::HomologyScalar`].

pub mod betti;
pub mod builders;
pub mod covers;
pub mod error;
pub mod graphs;
pub mod grid;
pub mod ideal;
pub mod limits;
pub mod linalg;
pub mod monomial;
pub mod primes;
pub mod sorting;

pub use builders::{
    build_generalized, build_generalized_by_compositions, veronese_type, IdealParameters,
};
pub use error::{Error, Result};
pub use ideal::{MonomialIdeal, PrimeSupport};
pub use limits::Limits;
pub use monomial::{BlockStructure, Exp, ExponentVector};

/// Machine integer used for fraction-free homology ranks.
pub type DefaultScalar = i64;
/// Arbitrary-precision integer scalar.
pub type BigInteger = num_bigint::BigInt;
/// Machine-width rationals.
pub type Rational = num_rational::Ratio<i64>;
/// Arbitrary-precision rationals.
pub type BigRational = num_rational::BigRational;
