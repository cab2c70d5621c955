//! Coxeter matrices, the word problem, enumeration of elements and growth
//! counts, and classification of rank-3 parabolic subgroups.

mod classify;
mod group;
mod matrix;
mod word;

use thiserror::Error;

pub use classify::{
    components, finite_rank3_order, is_finite, parabolic_index, triangle_type, triangles,
    TriangleType,
};
pub use group::{enumerate, even_elements, CoxeterGroup, GrowthCounts, LengthBound};
pub use matrix::{ConfigError, CoxeterMatrix, MatrixError, Order};
pub use word::{Element, Word, WordSolver, DEFAULT_CLASS_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("inconclusive: a braid class exceeded {cap} words")]
    Inconclusive { cap: usize },
    #[error("the group is infinite; a length bound is required")]
    InfiniteGroup,
    #[error("vertices must be three distinct members of the triangle")]
    RepeatedVertex,
    #[error("the rank-3 parabolic subgroup is infinite")]
    InfiniteTriangle,
    #[error("the edge has infinite order")]
    InfiniteEdge,
}

/// Shorthand for [`WordSolver::normal_form`] with the default cap.
pub fn normal_form(m: &CoxeterMatrix, w: &Word) -> Result<Element, CoxeterError> {
    WordSolver::new(m).normal_form(w)
}

pub fn is_reduced(m: &CoxeterMatrix, w: &Word) -> Result<bool, CoxeterError> {
    WordSolver::new(m).is_reduced(w)
}

pub fn multiply(m: &CoxeterMatrix, x: &Element, y: &Element) -> Result<Element, CoxeterError> {
    WordSolver::new(m).multiply(x, y)
}
