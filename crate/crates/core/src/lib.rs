//! Moment graphs, structure sheaves and Demazure operators for flag
//! varieties, computed with exact arithmetic.

#![allow(clippy::needless_range_loop)]

pub mod demazure;
pub mod error;
pub mod fga;
pub mod linalg;
pub mod moment_graph;
pub mod rational;
pub mod root_system;
pub mod scalar;
pub mod sections;
pub mod weyl;

pub use error::{Error, Result};
pub use rational::Rational;
pub use root_system::{Kind, RootSystem, SimpleSubset};
pub use scalar::Scalar;
pub use weyl::{CosetTable, DoubleCosetTable, WeylElement, WeylGroup};
pub use demazure::{Cofunction, TwistedElement};
pub use fga::{Fga, Law, Lattice, QElement, SElement};
pub use moment_graph::{LabelPolicy, MomentGraph};
pub use sections::{SectionTuple, Sheaf};
