//! Progressive-exploration algorithms for distance-r domination and
//! independence problems, together with the bipartite complexity measures
//! (ladder, semi-ladder and co-matching indices, Helly properties) used to
//! check their round bounds on small instances.

pub mod bench;
pub mod error;
pub mod formula;
pub mod graph;
pub mod lab;
pub mod oracle;
pub mod profiles;
pub mod solvers;

pub use error::{Error, Result};
