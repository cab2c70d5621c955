//! Deformed even-part algebras at points of the parameter torus, torus
//! rescalings, and the dimension test for flatness.

mod algebra;
mod point;

use thiserror::Error;

pub use algebra::{
    build_a_full, build_a_plus, build_a_tilde_plus, chart_polynomial, default_degree_cap,
    dim_a_plus, dim_a_plus_upper_bound, even_element_words, flatness_by_dimension, groebner_a_plus,
    pair_generator, reduce_basis_words, words_independent, DimensionVerdict, ModularBound,
};
pub use point::{apply_z, EdgeRecord, ParameterPoint, SymmetricPoint, ZElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformError {
    #[error("edge ({0}, {1}) is not a finite edge of the matrix")]
    UnexpectedEdge(usize, usize),
    #[error("finite edge ({0}, {1}) has no parameters")]
    MissingEdge(usize, usize),
    #[error("edge ({0}, {1}) listed twice")]
    DuplicateEdge(usize, usize),
    #[error("edge {edge:?} needs {expected} parameters, found {found}")]
    WrongArity {
        edge: (usize, usize),
        expected: usize,
        found: usize,
    },
    #[error("edge ({0}, {1}) has a zero parameter where an invertible one is required")]
    ZeroParameter(usize, usize),
    #[error("rescaling factors must be nonzero")]
    ZeroScale,
    #[error("the group is infinite")]
    InfiniteGroup,
    #[error("the chart is not invariant under reversing edges")]
    NotOrientationInvariant,
    #[error("Gröbner computation truncated before completion")]
    Inconclusive,
    #[error("invalid point file: {0}")]
    Json(String),
}
