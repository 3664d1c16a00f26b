//! Exact computations with graded Hopf algebras over F2: truncated power
//! series, packed F2 linear algebra, structured Hopf algebras with their
//! Verschiebung, divided power coalgebras, bar-construction Tor, and the
//! Ravenel–Wilson model with its consistency checks.

pub mod bar_tor;
pub mod divided_power;
pub mod f2linalg;
pub mod hopf;
pub mod series;
pub mod rw_model;
pub mod cli;
