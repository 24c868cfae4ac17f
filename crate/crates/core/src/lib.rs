//! Exact Floer cohomology of torus fibers in toric manifolds against the real
//! Lagrangian, with coefficients in the Novikov field over GF(2^m).
//!
//! Layers, bottom up: [`gf2bar`] finite fields, [`novikov`] polynomials and
//! matrix rank, [`polytope`] input data, [`potential`] obstruction and
//! critical points, [`floer`] complexes and ranks, [`cli`] the command line.

pub mod cli;
pub mod corpus;
pub mod floer;
pub mod gf2bar;
pub mod novikov;
pub mod polytope;
pub mod potential;
pub mod rational;
pub mod selftest;
