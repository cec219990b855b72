//! Exact arithmetic, linear programming and flow primitives.

pub mod coverage;
pub mod flow;
pub mod lp;
mod rational;

pub use rational::*;
