//! Verifiers for proportionality axioms.
//!
//! Each check returns [`Verdict::Satisfied`] or a [`Witness`] that can be
//! replayed against the definition with [`Witness::replays`].

mod approval;
mod cohesive;
mod rank;
mod represent;
mod solid;

pub use approval::{check_ejrp, check_pjrp, check_pjrp_brute};
pub use cohesive::{check_ejr_brute, check_pjr_brute, COHESIVE_NODE_LIMIT};
pub use rank::{check_rank_lifted, RankBase};
pub use represent::{check_representative, full_degree, half_degree};
pub use solid::{check_gpsc_brute, check_ipsc_brute, check_psc, SOLID_SET_LIMIT};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::profile::{group_quota, Candidate, Committee, Instance, WeakInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    #[serde(rename = "ejr+")]
    EjrPlus,
    #[serde(rename = "pjr+")]
    PjrPlus,
    #[serde(rename = "ejr")]
    Ejr,
    #[serde(rename = "pjr")]
    Pjr,
    #[serde(rename = "psc")]
    Psc,
    #[serde(rename = "gpsc")]
    GeneralizedPsc,
    #[serde(rename = "ipsc")]
    Ipsc,
    #[serde(rename = "rank-pjr+")]
    RankPjrPlus,
    #[serde(rename = "rank-ejr+")]
    RankEjrPlus,
    #[serde(rename = "rank-pjr")]
    RankPjr,
    #[serde(rename = "representative")]
    Representative,
    #[serde(rename = "pb-ejr+")]
    PbEjrPlus,
    #[serde(rename = "pb-pjr+")]
    PbPjrPlus,
}

impl Axiom {
    pub const ALL: [Axiom; 13] = [
        Axiom::EjrPlus,
        Axiom::PjrPlus,
        Axiom::Ejr,
        Axiom::Pjr,
        Axiom::Psc,
        Axiom::GeneralizedPsc,
        Axiom::Ipsc,
        Axiom::RankPjrPlus,
        Axiom::RankEjrPlus,
        Axiom::RankPjr,
        Axiom::Representative,
        Axiom::PbEjrPlus,
        Axiom::PbPjrPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::EjrPlus => "ejr+",
            Axiom::PjrPlus => "pjr+",
            Axiom::Ejr => "ejr",
            Axiom::Pjr => "pjr",
            Axiom::Psc => "psc",
            Axiom::GeneralizedPsc => "gpsc",
            Axiom::Ipsc => "ipsc",
            Axiom::RankPjrPlus => "rank-pjr+",
            Axiom::RankEjrPlus => "rank-ejr+",
            Axiom::RankPjr => "rank-pjr",
            Axiom::Representative => "representative",
            Axiom::PbEjrPlus => "pb-ejr+",
            Axiom::PbPjrPlus => "pb-pjr+",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> std::result::Result<Self, Error> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown axiom '{s}'")))
    }
}

/// A violation certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub axiom: Axiom,
    /// The unelected candidate the group agrees on.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate: Option<Candidate>,
    /// Rank of the approval expansion the violation lives in.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<u32>,
    /// The group `N'` (0-based voter indices, sorted).
    pub voters: Vec<usize>,
    /// Zero for participatory-budgeting witnesses.
    pub ell: usize,
    /// Commonly approved candidates for cohesiveness-based axioms, or the
    /// solidly supported set `C'`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates: Option<Vec<Candidate>>,
    /// Objective value attached to the certificate (the coverage function
    /// value for PJR+, the group average for representativeness).
    #[serde(
        skip_serializing_if = "Option::is_none",
        with = "crate::exactmath::serde_string_opt"
    )]
    pub value: Option<Rational>,
    /// Required average `f(ell)` for representativeness.
    #[serde(
        skip_serializing_if = "Option::is_none",
        with = "crate::exactmath::serde_string_opt"
    )]
    pub bound: Option<Rational>,
}

impl Witness {
    pub(crate) fn new(axiom: Axiom, voters: Vec<usize>, ell: usize) -> Self {
        Witness {
            axiom,
            candidate: None,
            rank: None,
            voters,
            ell,
            candidates: None,
            value: None,
            bound: None,
        }
    }

    pub(crate) fn with_candidate(mut self, c: Candidate) -> Self {
        self.candidate = Some(c);
        self
    }

    pub(crate) fn with_candidates(mut self, cs: Vec<Candidate>) -> Self {
        self.candidates = Some(cs);
        self
    }

    /// Re-evaluates the defining inequalities on `instance` and reports
    /// whether they describe a genuine violation by `committee`. Approval
    /// instances are passed through [`crate::profile::ApprovalInstance::to_weak`].
    /// Participatory-budgeting witnesses are replayed by
    /// [`crate::pb::replay`] instead and return `false` here.
    pub fn replays(&self, instance: &WeakInstance, committee: &Committee) -> bool {
        let profile = &instance.profile;
        let (n, k) = (instance.n(), instance.k);
        let quota = group_quota(self.ell, n, k);
        let distinct: BTreeSet<usize> = self.voters.iter().copied().collect();
        if distinct.len() != self.voters.len()
            || self.voters.iter().any(|&i| i >= n)
            || self.ell == 0
            || !quota.admits(self.voters.len())
        {
            return false;
        }
        let r = self.rank.unwrap_or(u32::MAX);
        let approves = |i: usize, c: Candidate| profile.rank(i, c).is_some_and(|x| x <= r);
        let sat = |i: usize| committee.iter().filter(|&c| approves(i, c)).count();
        let covered = || {
            committee
                .iter()
                .filter(|&c| self.voters.iter().any(|&i| approves(i, c)))
                .count()
        };
        let common_unelected = |c: Option<Candidate>| {
            c.is_some_and(|c| !committee.contains(c) && self.voters.iter().all(|&i| approves(i, c)))
        };
        let cohesive = || {
            self.candidates.as_ref().is_some_and(|cs| {
                cs.len() >= self.ell
                    && cs.iter().collect::<BTreeSet<_>>().len() == cs.len()
                    && cs.iter().all(|&c| self.voters.iter().all(|&i| approves(i, c)))
            })
        };
        match self.axiom {
            Axiom::EjrPlus | Axiom::RankEjrPlus => {
                common_unelected(self.candidate) && self.voters.iter().all(|&i| sat(i) < self.ell)
            }
            Axiom::PjrPlus | Axiom::RankPjrPlus => common_unelected(self.candidate) && covered() < self.ell,
            Axiom::Ejr => cohesive() && self.voters.iter().all(|&i| sat(i) < self.ell),
            Axiom::Pjr | Axiom::RankPjr => cohesive() && covered() < self.ell,
            Axiom::Psc | Axiom::GeneralizedPsc | Axiom::Ipsc => {
                let Some(cs) = &self.candidates else { return false };
                let Some(contour) = solid::upper_contour(profile, &self.voters, cs) else {
                    return false;
                };
                let g = contour.iter().filter(|&&c| committee.contains(c)).count();
                match self.axiom {
                    Axiom::Ipsc => !cs.iter().all(|&c| committee.contains(c)) && g < self.ell,
                    _ => g < self.ell.min(cs.len()),
                }
            }
            Axiom::Representative => {
                let (Some(avg), Some(bound)) = (&self.value, &self.bound) else {
                    return false;
                };
                let total: usize = self.voters.iter().map(|&i| sat(i)).sum();
                let actual = Rational::new(total.into(), self.voters.len().into());
                common_unelected(self.candidate) && actual == *avg && actual < *bound
            }
            Axiom::PbEjrPlus | Axiom::PbPjrPlus => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Satisfied,
    Violated(Witness),
}

impl Verdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, Verdict::Satisfied)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Satisfied => None,
            Verdict::Violated(w) => Some(w),
        }
    }
}

/// Runs the verifier for `axiom`. Approval axioms need a dichotomous
/// profile and representativeness uses `f(ell) = (ell - 1) / 2`.
/// Participatory-budgeting axioms are checked in [`crate::pb`].
pub fn check(axiom: Axiom, instance: &WeakInstance, committee: &Committee) -> Result<Verdict> {
    instance.check_feasible(committee)?;
    let approval = || -> Result<_> { Instance::new(instance.profile.to_approval()?, instance.k) };
    Ok(match axiom {
        Axiom::EjrPlus => check_ejrp(&approval()?, committee),
        Axiom::PjrPlus => check_pjrp(&approval()?, committee),
        Axiom::Ejr => check_ejr_brute(&approval()?, committee)?,
        Axiom::Pjr => check_pjr_brute(&approval()?, committee)?,
        Axiom::Psc => check_psc(instance, committee)?,
        Axiom::GeneralizedPsc => check_gpsc_brute(instance, committee)?,
        Axiom::Ipsc => check_ipsc_brute(instance, committee)?,
        Axiom::RankPjrPlus => check_rank_lifted(instance, committee, RankBase::PjrPlus)?,
        Axiom::RankEjrPlus => check_rank_lifted(instance, committee, RankBase::EjrPlus)?,
        Axiom::RankPjr => check_rank_lifted(instance, committee, RankBase::Pjr)?,
        Axiom::Representative => check_representative(&approval()?, committee, &half_degree(instance.k))?,
        Axiom::PbEjrPlus | Axiom::PbPjrPlus => {
            return Err(Error::invalid(format!("{axiom} needs a participatory budgeting instance")))
        }
    })
}
