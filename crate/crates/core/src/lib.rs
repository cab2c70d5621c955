//! Exact computations with flat deformations of the group algebras of even
//! subgroups of Coxeter groups.

pub mod additive;
pub mod cli;
pub mod coxeter;
pub mod deform;
pub mod exact;
pub mod flatness;
pub mod hecke;
pub mod ncalg;
