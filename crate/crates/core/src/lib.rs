//! Quasi-elliptic quartic curves over F_q(t) in characteristic 2.

pub mod acceptance;
pub mod algebra;
pub mod cli;
pub mod families;
pub mod fibres;
pub mod rng;
pub mod tower;
pub mod isomorphisms;
pub mod resolution;
