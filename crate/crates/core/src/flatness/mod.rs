//! The defining equations of the flat locus for each finite triangle shape,
//! the known flat tori, membership tests, the torus `Θ` of group-like points
//! with its twisted group algebras, and a numeric spin check.

mod equations;
mod lemmas;
mod membership;
mod spin;
mod theta;
mod twisted;

use thiserror::Error;

pub use equations::{tilde_equations, Symbol, SymbolMonomial, TildeEquation, TriangleCoefficients};
pub use lemmas::{
    coords_of, lemma_components, random_small_rational, ComponentKind, LocusComponent,
};
pub use membership::{
    canonical_relabeling, check_global_membership, check_tilde_membership,
    coefficients_from_eigenvalues, coefficients_under, sample_off_locus, GlobalVerdict,
    TriangleVerdict,
};
pub use spin::{clifford_generators, verify_spin_numeric, SpinReport};
pub use theta::{sample_theta, theta_membership, theta_torus, theta_triangle_product, ThetaPoint};
pub use twisted::{
    build_twisted_algebra, build_twisted_with, eta, matches_presentation, z_orbit_witness,
    BraidRewriting, EdgeMonomial, Transition, TwistedAlgebra, TwistedElement,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlatnessError {
    #[error("the triangle has an edge of infinite order or an infinite group")]
    InfiniteTriangle,
    #[error("an edge polynomial has zero constant coefficient")]
    ZeroConstant,
    #[error("the group is infinite")]
    InfiniteGroup,
    #[error("the point does not lie on the torus of group-like points")]
    NotInTheta,
    #[error("rewriting is not confluent: loop monomial {0} is not one")]
    NonConfluent(String),
    #[error(
        "Clifford power identity off by {deviation:e} on edge ({i}, {j}), tolerance {tolerance:e}"
    )]
    SpinTolerance {
        i: usize,
        j: usize,
        deviation: f64,
        tolerance: f64,
    },
    #[error("rank {0} is too large for the dense Clifford representation")]
    RankTooLarge(usize),
}
