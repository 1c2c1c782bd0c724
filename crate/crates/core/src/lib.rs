//! Exact models of continuous affine logic over finite residuated lattices.

pub mod calculus;
pub mod cli;
pub mod dyadic;
pub mod lattice;
pub mod semantics;
pub mod syntax;
pub mod usc;
