//! Combinatorial diagrams of knots and knot-with-tunnel spatial graphs,
//! Wirtinger presentations of their exterior groups, finite-quotient
//! analysis of finitely presented groups, and Heegaard genus bound
//! arithmetic, with an end-to-end pipeline for the tunnel experiments on
//! the 2-bridge knot 6_3.

pub mod casestudy;
pub mod diagram;
pub mod genus;
pub mod group;
pub mod wirtinger;

pub use group::*;
