//! Robust proportionality for multiwinner elections.
//!
//! The crate covers approval, weak-order and strict-ranking profiles,
//! greedy and budget-based voting rules, exact verifiers for EJR+, PJR+
//! and their rank-based and classical relatives, statistical cultures,
//! query-model simulators, participatory budgeting, and an experiment
//! harness. All group-size comparisons are exact.

pub mod axioms;
pub mod error;
pub mod exactmath;
pub mod experiments;
pub mod gallery;
pub mod io;
pub mod pb;
pub mod pricing;
pub mod profile;
pub mod query;
pub mod rules;
pub mod sampling;

pub use error::{Error, Result};
pub use profile::{
    ApprovalInstance, ApprovalProfile, Candidate, Committee, Instance, WeakInstance, WeakProfile,
};
