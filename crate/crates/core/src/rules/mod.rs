//! Multiwinner voting rules.
//!
//! Every rule returns a [`RuleOutput`] carrying the committee, the order in
//! which candidates were elected, the payment log of the budget-based
//! rules, and an event trace.

mod ear;
mod gjcr;
mod monotone;
mod pav;
mod phragmen;
mod stv;

pub use ear::{ear, mes_approval, mes_rho, EarVariant};
pub use gjcr::gjcr;
pub use monotone::{ejrp_monotone_pair, MonotonePair};
pub use pav::{ls_pav, pav_exact, pav_score, PAV_NODE_LIMIT};
pub use phragmen::seq_phragmen;
pub use stv::stv;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{format_rational, Rational};
use crate::profile::{Candidate, Committee};

/// Deterministic resolution of ties between candidates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Smaller candidate index wins.
    #[default]
    Lexicographic,
    /// Earlier position in the list wins. Must be a permutation of all candidates.
    Priority(Vec<Candidate>),
}

impl TieBreak {
    pub fn priority(order: Vec<Candidate>, m: usize) -> Result<Self> {
        let mut seen = vec![false; m];
        for c in &order {
            if c.0 >= m || std::mem::replace(&mut seen[c.0], true) {
                return Err(Error::invalid(format!(
                    "priority list is not a permutation: bad entry {c}"
                )));
            }
        }
        if order.len() != m {
            return Err(Error::invalid(format!(
                "priority list has {} entries, expected {m}",
                order.len()
            )));
        }
        Ok(TieBreak::Priority(order))
    }

    /// Position of every candidate, smaller is preferred.
    pub fn positions(&self, m: usize) -> Vec<usize> {
        match self {
            TieBreak::Lexicographic => (0..m).collect(),
            TieBreak::Priority(order) => {
                let mut pos = vec![usize::MAX; m];
                for (i, c) in order.iter().enumerate() {
                    pos[c.0] = i;
                }
                pos
            }
        }
    }

    /// The preferred candidate among `cands`.
    pub fn best(&self, cands: impl IntoIterator<Item = Candidate>, m: usize) -> Option<Candidate> {
        let pos = self.positions(m);
        cands.into_iter().min_by_key(|c| pos[c.0])
    }
}

/// A single payment `voter -> candidate`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Payment {
    pub voter: usize,
    pub candidate: Candidate,
    #[serde(with = "crate::exactmath::serde_string")]
    pub amount: Rational,
}

/// Per-voter budgets together with the log of everything spent.
#[derive(Clone, Debug)]
pub struct BudgetState {
    pub budgets: Vec<Rational>,
    pub log: Vec<Payment>,
}

impl BudgetState {
    pub fn uniform(n: usize, each: Rational) -> Self {
        BudgetState {
            budgets: vec![each; n],
            log: Vec::new(),
        }
    }

    pub fn charge(&mut self, voter: usize, candidate: Candidate, amount: Rational) {
        debug_assert!(amount <= self.budgets[voter], "overspent budget");
        self.budgets[voter] -= &amount;
        self.log.push(Payment {
            voter,
            candidate,
            amount,
        });
    }

    pub fn available(&self, voters: &[usize]) -> Rational {
        voters.iter().map(|&i| &self.budgets[i]).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Elected {
        candidate: Candidate,
        #[serde(skip_serializing_if = "Option::is_none")]
        rank: Option<u32>,
        #[serde(skip_serializing_if = "Option::is_none")]
        ell: Option<usize>,
        /// Per-voter price `rho`, or the Phragmén load, as an exact fraction.
        #[serde(skip_serializing_if = "Option::is_none")]
        price: Option<String>,
        supporters: usize,
    },
    Eliminated {
        candidate: Candidate,
        #[serde(with = "crate::exactmath::serde_string")]
        support: Rational,
    },
}

impl TraceEvent {
    pub(crate) fn price(q: &Rational) -> Option<String> {
        Some(format_rational(q))
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RuleOutput {
    pub committee: Committee,
    /// Elected candidates in selection order.
    pub order: Vec<Candidate>,
    pub payments: Vec<Payment>,
    pub trace: Vec<TraceEvent>,
}

impl RuleOutput {
    pub(crate) fn elect(&mut self, c: Candidate) {
        self.committee.insert(c);
        self.order.push(c);
    }

    /// Total paid by every voter.
    pub fn spent(&self, n: usize) -> Vec<Rational> {
        let mut out = vec![Rational::default(); n];
        for p in &self.payments {
            out[p.voter] += &p.amount;
        }
        out
    }
}
