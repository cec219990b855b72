//! Participatory budgeting with cost utilities.
//!
//! Projects are [`Candidate`]s with positive costs; an outcome is feasible
//! when its total cost stays within the budget limit `b`. A voter's utility
//! is the total cost of the selected projects it approves.

use num_traits::{Signed, Zero};

use crate::axioms::{Axiom, Verdict, Witness};
use crate::error::{Error, Result};
use crate::exactmath::coverage::min_coverage_minus_modular;
use crate::exactmath::{format_rational, from_usize, Rational};
use crate::profile::{ApprovalInstance, ApprovalProfile, Candidate, Committee};
use crate::rules::{mes_rho, BudgetState, RuleOutput, TieBreak, TraceEvent};

#[derive(Clone, Debug, PartialEq)]
pub struct PbInstance {
    pub profile: ApprovalProfile,
    pub costs: Vec<Rational>,
    pub budget: Rational,
}

impl PbInstance {
    pub fn new(profile: ApprovalProfile, costs: Vec<Rational>, budget: Rational) -> Result<Self> {
        if costs.len() != profile.m() {
            return Err(Error::invalid(format!(
                "{} costs given for {} projects",
                costs.len(),
                profile.m()
            )));
        }
        if let Some(j) = costs.iter().position(|c| !c.is_positive()) {
            return Err(Error::invalid(format!(
                "project {} has non-positive cost {}",
                Candidate(j),
                format_rational(&costs[j])
            )));
        }
        if !budget.is_positive() {
            return Err(Error::invalid("budget limit must be positive"));
        }
        Ok(PbInstance {
            profile,
            costs,
            budget,
        })
    }

    /// Unit costs with budget limit `k`.
    pub fn from_committee_instance(instance: &ApprovalInstance) -> Self {
        PbInstance {
            profile: instance.profile.clone(),
            costs: vec![from_usize(1); instance.m()],
            budget: from_usize(instance.k),
        }
    }

    pub fn n(&self) -> usize {
        self.profile.n()
    }

    pub fn m(&self) -> usize {
        self.profile.m()
    }

    pub fn cost(&self, p: Candidate) -> &Rational {
        &self.costs[p.0]
    }

    pub fn total_cost(&self, projects: impl IntoIterator<Item = Candidate>) -> Rational {
        projects.into_iter().map(|p| &self.costs[p.0]).sum()
    }

    /// `b / n`, the initial share of every voter.
    pub fn share(&self) -> Rational {
        &self.budget / from_usize(self.n().max(1))
    }

    pub fn check_feasible(&self, outcome: &Committee) -> Result<()> {
        if let Some(p) = outcome.iter().find(|p| p.0 >= self.m()) {
            return Err(Error::invalid(format!("project {} out of range", p.0)));
        }
        let total = self.total_cost(outcome.iter());
        if total > self.budget {
            return Err(Error::invalid(format!(
                "outcome costs {} but the budget limit is {}",
                format_rational(&total),
                format_rational(&self.budget)
            )));
        }
        Ok(())
    }

    /// Cost of the selected projects voter `i` approves.
    pub fn utility(&self, i: usize, outcome: &Committee) -> Rational {
        self.profile
            .ballot(i)
            .iter()
            .filter(|p| outcome.contains(**p))
            .map(|p| &self.costs[p.0])
            .sum()
    }
}

/// Method of equal shares for cost utilities. Every voter starts with
/// `b / n`; the project whose supporters can cover its cost at the lowest
/// per-unit price `rho` is bought next, each supporter paying
/// `min(b_i, rho * c(p))`. Stops when nothing is affordable.
pub fn mes_pb(pb: &PbInstance, tiebreak: &TieBreak) -> RuleOutput {
    let (n, m) = (pb.n(), pb.m());
    let pos = tiebreak.positions(m);
    let mut budget = BudgetState::uniform(n, pb.share());
    let mut out = RuleOutput::default();
    loop {
        let choice = (0..m)
            .map(Candidate)
            .filter(|&p| !out.committee.contains(p))
            .filter_map(|p| {
                let group = pb.profile.approvers(p);
                let cap = mes_rho(group.iter().map(|&i| &budget.budgets[i]), pb.cost(p))?;
                let rho = &cap / pb.cost(p);
                Some((p, cap, rho))
            })
            .min_by(|(p, _, x), (q, _, y)| x.cmp(y).then(pos[p.0].cmp(&pos[q.0])));
        let Some((p, cap, rho)) = choice else { break };
        let group = pb.profile.approvers(p);
        for &i in group {
            let pay = cap.clone().min(budget.budgets[i].clone());
            if !pay.is_zero() {
                budget.charge(i, p, pay);
            }
        }
        out.elect(p);
        out.trace.push(TraceEvent::Elected {
            candidate: p,
            rank: None,
            ell: None,
            price: Some(format_rational(&rho)),
            supporters: group.len(),
        });
    }
    out.payments = budget.log;
    out
}

/// EJR+ up to any project: no unselected `p` and group `N' ⊆ N_p` with
/// `u_i(W) + c(p) <= |N'| b / n` for every member. For a fixed size the
/// group with the smallest utilities is the hardest to satisfy, so only
/// prefixes of the approvers sorted by utility are tested.
pub fn check_pb_ejrp_upto(pb: &PbInstance, outcome: &Committee) -> Result<Verdict> {
    pb.check_feasible(outcome)?;
    let share = pb.share();
    let util: Vec<Rational> = (0..pb.n()).map(|i| pb.utility(i, outcome)).collect();
    for p in outcome.complement(pb.m()) {
        let mut group: Vec<usize> = pb.profile.approvers(p).to_vec();
        group.sort_by(|&a, &b| util[a].cmp(&util[b]).then(a.cmp(&b)));
        for s in 1..=group.len() {
            let bound = &share * from_usize(s) - pb.cost(p);
            if util[group[s - 1]] <= bound {
                let mut voters = group[..s].to_vec();
                voters.sort_unstable();
                let mut w = Witness::new(Axiom::PbEjrPlus, voters, 0).with_candidate(p);
                w.value = Some(util[group[s - 1]].clone());
                w.bound = Some(bound);
                return Ok(Verdict::Violated(w));
            }
        }
    }
    Ok(Verdict::Satisfied)
}

/// PJR+ up to any project: no unselected `p` and group `N' ⊆ N_p` whose
/// jointly approved selected projects cost at most `|N'| b / n - c(p)`.
/// Decided per project by a minimum cut.
pub fn check_pb_pjrp_upto(pb: &PbInstance, outcome: &Committee) -> Result<Verdict> {
    pb.check_feasible(outcome)?;
    let share = pb.share();
    let mut slot = vec![None; pb.m()];
    for (j, p) in outcome.iter().enumerate() {
        slot[p.0] = Some(j);
    }
    let weights: Vec<Rational> = outcome.iter().map(|p| pb.cost(p).clone()).collect();
    for p in outcome.complement(pb.m()) {
        let approvers = pb.profile.approvers(p);
        if approvers.is_empty() {
            continue;
        }
        let items: Vec<Vec<usize>> = approvers
            .iter()
            .map(|&i| pb.profile.ballot(i).iter().filter_map(|d| slot[d.0]).collect())
            .collect();
        let best = min_coverage_minus_modular(&items, &weights, &share);
        if best.value <= -pb.cost(p).clone() {
            let voters: Vec<usize> = best.argmin.iter().map(|&v| approvers[v]).collect();
            let mut w = Witness::new(Axiom::PbPjrPlus, voters.clone(), 0).with_candidate(p);
            w.value = Some(covered_cost(pb, outcome, &voters));
            w.bound = Some(&share * from_usize(voters.len()) - pb.cost(p));
            return Ok(Verdict::Violated(w));
        }
    }
    Ok(Verdict::Satisfied)
}

fn covered_cost(pb: &PbInstance, outcome: &Committee, voters: &[usize]) -> Rational {
    pb.total_cost(
        outcome
            .iter()
            .filter(|&p| voters.iter().any(|&i| pb.profile.approves(i, p))),
    )
}

/// Re-evaluates a participatory-budgeting witness against the definition.
pub fn replay(pb: &PbInstance, outcome: &Committee, witness: &Witness) -> bool {
    let Some(p) = witness.candidate else {
        return false;
    };
    let voters = &witness.voters;
    let mut sorted = voters.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if voters.is_empty()
        || sorted.len() != voters.len()
        || p.0 >= pb.m()
        || outcome.contains(p)
        || !voters.iter().all(|&i| i < pb.n() && pb.profile.approves(i, p))
    {
        return false;
    }
    let bound = pb.share() * from_usize(voters.len()) - pb.cost(p);
    match witness.axiom {
        Axiom::PbEjrPlus => voters.iter().all(|&i| pb.utility(i, outcome) <= bound),
        Axiom::PbPjrPlus => covered_cost(pb, outcome, voters) <= bound,
        _ => false,
    }
}
