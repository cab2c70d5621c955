//! Finitely presented associative algebras over the rationals or a prime
//! field: deglex Gröbner bases, dimensions and Hilbert functions.

mod automaton;
mod dsl;
mod field;
mod groebner;
pub mod linalg;
mod poly;

use thiserror::Error;

pub use automaton::StandardWords;
pub use dsl::{format_presentation, parse_presentation, DslError};
pub use field::{Field, Fp, ModMersenne, MERSENNE_31};
pub use groebner::{
    buchberger, buchberger_over, dimension, hilbert_function, Dimension, GroebnerResult,
    GroebnerStatus, Presentation, Reducer,
};
pub use poly::{deglex, FreeWord, NcPoly, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NcError {
    #[error("relation {0} is not homogeneous")]
    Inhomogeneous(usize),
}
