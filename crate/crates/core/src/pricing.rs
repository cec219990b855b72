//! Price systems for committees, found by an exact LP.
//!
//! Every candidate costs 1. Voter `i` pays only for elected candidates it
//! finds acceptable, spends at most `B/n`, and no unelected candidate may
//! be affordable from the leftover money of its supporters. The rank
//! variant counts, for every rank `r`, the money a supporter spent on
//! candidates it ranks worse than `r` as still available.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::exactmath::lp::{lp_maximize, Direction, LinearProgram, LpStatus, Relation};
use crate::exactmath::{format_rational, from_usize, Rational};
use crate::profile::{ApprovalInstance, Candidate, Committee, WeakInstance, WeakProfile};
use crate::rules::Payment;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PriceSystem {
    #[serde(with = "crate::exactmath::serde_string")]
    pub budget: Rational,
    /// Non-zero payments only.
    pub payments: Vec<Payment>,
}

impl PriceSystem {
    pub fn spent(&self, n: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for p in &self.payments {
            out[p.voter] += &p.amount;
        }
        out
    }

    /// Checks every price-system constraint from scratch. With `ranked`,
    /// the unelected-candidate condition is checked at every rank.
    pub fn validate(
        &self,
        profile: &WeakProfile,
        committee: &Committee,
        ranked: bool,
    ) -> std::result::Result<(), String> {
        let n = profile.n();
        if !self.budget.is_positive() {
            return Err(format!("budget {} is not positive", format_rational(&self.budget)));
        }
        let share = &self.budget / from_usize(n);
        let mut received = vec![Rational::zero(); profile.m()];
        for p in &self.payments {
            if p.voter >= n || p.candidate.0 >= profile.m() {
                return Err(format!("payment {} -> {} out of range", p.voter, p.candidate));
            }
            if p.amount.is_negative() {
                return Err(format!("negative payment {} -> {}", p.voter, p.candidate));
            }
            if profile.rank(p.voter, p.candidate).is_none() {
                return Err(format!(
                    "voter {} pays for unacceptable {}",
                    p.voter, p.candidate
                ));
            }
            if !committee.contains(p.candidate) && !p.amount.is_zero() {
                return Err(format!("voter {} pays for unelected {}", p.voter, p.candidate));
            }
            received[p.candidate.0] += &p.amount;
        }
        let spent = self.spent(n);
        if let Some(i) = (0..n).find(|&i| spent[i] > share) {
            return Err(format!("voter {i} spends more than B/n"));
        }
        if let Some(c) = committee.iter().find(|c| !received[c.0].is_one()) {
            return Err(format!(
                "{c} receives {} instead of 1",
                format_rational(&received[c.0])
            ));
        }

        let ranks: Vec<u32> = if ranked {
            (1..=profile.max_rank()).collect()
        } else {
            vec![u32::MAX]
        };
        for c in (0..profile.m()).map(Candidate) {
            if committee.contains(c) {
                continue;
            }
            for &r in &ranks {
                let mut available = Rational::zero();
                for i in 0..n {
                    if profile.rank(i, c).is_none_or(|rc| rc > r) {
                        continue;
                    }
                    available += &share - &spent[i];
                    for p in self.payments.iter().filter(|p| p.voter == i) {
                        if profile.rank(i, p.candidate).is_none_or(|rp| rp > r) {
                            available += &p.amount;
                        }
                    }
                }
                if available > Rational::one() {
                    let at = if ranked { format!(" at rank {r}") } else { String::new() };
                    return Err(format!(
                        "supporters of {c} have {} left{at}",
                        format_rational(&available)
                    ));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Priceability {
    /// Priceable for some `B > k`. The system uses the largest feasible
    /// budget, or `k + 1` when the budget is unbounded.
    AboveK { system: PriceSystem, bounded: bool },
    /// Priceable, but the largest feasible budget is at most `k`.
    AtMostK { system: PriceSystem },
    NotPriceable,
}

impl Priceability {
    pub fn system(&self) -> Option<&PriceSystem> {
        match self {
            Priceability::AboveK { system, .. } | Priceability::AtMostK { system } => Some(system),
            Priceability::NotPriceable => None,
        }
    }

    pub fn satisfies(&self, require_b_gt_k: bool) -> bool {
        match self {
            Priceability::AboveK { .. } => true,
            Priceability::AtMostK { .. } => !require_b_gt_k,
            Priceability::NotPriceable => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PriceCheck {
    pub satisfied: bool,
    #[serde(flatten)]
    pub outcome: Priceability,
}

/// Priceability of `committee` on an approval profile.
pub fn check_priceable(
    instance: &ApprovalInstance,
    committee: &Committee,
    require_b_gt_k: bool,
) -> Result<PriceCheck> {
    instance.check_feasible(committee)?;
    let weak = instance.profile.to_weak();
    let outcome = solve(&weak, instance.k, committee, false)?;
    Ok(PriceCheck {
        satisfied: outcome.satisfies(require_b_gt_k),
        outcome,
    })
}

/// Rank-priceability of `committee` on a weak-order profile.
pub fn check_rank_priceable(
    instance: &WeakInstance,
    committee: &Committee,
    require_b_gt_k: bool,
) -> Result<PriceCheck> {
    instance.check_feasible(committee)?;
    let outcome = solve(&instance.profile, instance.k, committee, true)?;
    Ok(PriceCheck {
        satisfied: outcome.satisfies(require_b_gt_k),
        outcome,
    })
}

fn solve(profile: &WeakProfile, k: usize, committee: &Committee, ranked: bool) -> Result<Priceability> {
    let n = profile.n();
    let mut lp = LinearProgram::new();
    // q = B/n
    let q = lp.add_nonneg();
    let mut vars: Vec<(usize, Candidate, usize)> = Vec::new();
    let mut by_voter: Vec<Vec<(Candidate, usize)>> = vec![Vec::new(); n];
    for (i, ballot) in profile.ballots().iter().enumerate() {
        for &(c, _) in ballot.entries() {
            if committee.contains(c) {
                let v = lp.add_nonneg();
                vars.push((i, c, v));
                by_voter[i].push((c, v));
            }
        }
    }
    let one = Rational::one;
    for row in by_voter.iter().filter(|row| !row.is_empty()) {
        let mut coeffs: Vec<_> = row.iter().map(|&(_, v)| (v, one())).collect();
        coeffs.push((q, -one()));
        lp.add_constraint(coeffs, Relation::Le, Rational::zero());
    }
    for c in committee.iter() {
        let coeffs: Vec<_> = vars
            .iter()
            .filter(|&&(_, d, _)| d == c)
            .map(|&(_, _, v)| (v, one()))
            .collect();
        lp.add_constraint(coeffs, Relation::Eq, one());
    }
    for c in (0..profile.m()).map(Candidate).filter(|c| !committee.contains(*c)) {
        // Between two consecutive ranks at which c gains supporters the
        // constraint only loosens, so those ranks suffice.
        let mut ranks: Vec<u32> = (0..n)
            .filter_map(|i| profile.rank(i, c))
            .map(|r| if ranked { r } else { u32::MAX })
            .collect();
        ranks.sort_unstable();
        ranks.dedup();
        for r in ranks {
            let supporters: Vec<usize> = (0..n)
                .filter(|&i| profile.rank(i, c).is_some_and(|rc| rc <= r))
                .collect();
            let mut coeffs = vec![(q, from_usize(supporters.len()))];
            for &i in &supporters {
                for &(d, v) in &by_voter[i] {
                    if profile.rank(i, d).is_some_and(|rd| rd <= r) {
                        coeffs.push((v, -one()));
                    }
                }
            }
            lp.add_constraint(coeffs, Relation::Le, one());
        }
    }
    lp.set_objective(Direction::Maximize, vec![(q, one())]);

    let mut solution = lp_maximize(&lp)?;
    let mut bounded = true;
    if solution.status == LpStatus::Unbounded {
        bounded = false;
        let cap = from_usize(k + 1) / from_usize(n);
        lp.add_constraint(vec![(q, one())], Relation::Le, cap);
        solution = lp_maximize(&lp)?;
    }
    if solution.status != LpStatus::Optimal {
        return Ok(Priceability::NotPriceable);
    }
    let x = &solution.assignment;
    let budget = &x[q] * from_usize(n);
    let payments = vars
        .iter()
        .filter(|&&(_, _, v)| !x[v].is_zero())
        .map(|&(voter, candidate, v)| Payment {
            voter,
            candidate,
            amount: x[v].clone(),
        })
        .collect();
    let above = budget > from_usize(k);
    let system = PriceSystem { budget, payments };
    Ok(if above {
        Priceability::AboveK { system, bounded }
    } else {
        Priceability::AtMostK { system }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;
    use crate::gallery;
    use crate::profile::{ApprovalProfile, Instance};
    use proptest::prelude::*;

    fn budget(check: &PriceCheck) -> Rational {
        check.outcome.system().unwrap().budget.clone()
    }

    #[test]
    fn shared_favourite_budget_three() {
        let inst = gallery::shared_favourite();
        let w = Committee::from_indices([1, 2]);
        let check = check_priceable(&inst, &w, true).unwrap();
        assert!(check.satisfied);
        assert_eq!(budget(&check), int(3));
        check
            .outcome
            .system()
            .unwrap()
            .validate(&inst.profile.to_weak(), &w, false)
            .unwrap();
    }

    #[test]
    fn empty_committee_with_unanimous_candidate() {
        let p = ApprovalProfile::new(3, vec![vec![0], vec![0, 1], vec![0, 2]]).unwrap();
        let inst = Instance::new(p, 2).unwrap();
        let check = check_priceable(&inst, &Committee::empty(), true).unwrap();
        assert!(!check.satisfied);
        assert!(matches!(check.outcome, Priceability::AtMostK { .. }));
        assert_eq!(budget(&check), int(1));
    }

    #[test]
    fn price_gap_tops_out_at_k() {
        let inst = gallery::price_gap();
        let w = Committee::from_indices([0, 3, 4]);
        let check = check_rank_priceable(&inst, &w, true).unwrap();
        assert!(!check.satisfied);
        assert_eq!(budget(&check), int(3));
        check
            .outcome
            .system()
            .unwrap()
            .validate(&inst.profile, &w, true)
            .unwrap();
    }

    #[test]
    fn top_choice_caps_budget() {
        let p = WeakProfile::from_rankings(2, &[vec![0, 1], vec![0, 1]]).unwrap();
        let inst = Instance::new(p, 1).unwrap();
        let w = Committee::from_indices([1]);
        let ranked = check_rank_priceable(&inst, &w, true).unwrap();
        assert!(!ranked.satisfied);
        assert_eq!(budget(&ranked), int(1));
        // Ignoring ranks, the money spent on c2 counts against c1.
        let approval = Instance::new(inst.profile.acceptable_sets(), 1).unwrap();
        let plain = check_priceable(&approval, &w, true).unwrap();
        assert!(plain.satisfied);
        assert_eq!(budget(&plain), int(2));
    }

    #[test]
    fn whole_candidate_set_is_unbounded() {
        let p = ApprovalProfile::new(2, vec![vec![0], vec![1]]).unwrap();
        let inst = Instance::new(p, 2).unwrap();
        let check = check_priceable(&inst, &Committee::from_indices([0, 1]), true).unwrap();
        assert!(matches!(
            check.outcome,
            Priceability::AboveK { bounded: false, .. }
        ));
        assert_eq!(budget(&check), int(3));
    }

    #[test]
    fn unsupported_member_is_not_priceable() {
        let p = ApprovalProfile::new(3, vec![vec![0], vec![1]]).unwrap();
        let inst = Instance::new(p, 2).unwrap();
        let check = check_priceable(&inst, &Committee::from_indices([2]), false).unwrap();
        assert_eq!(check.outcome, Priceability::NotPriceable);
        assert!(!check.satisfied);
    }

    #[test]
    fn validator_rejects_tampering() {
        let inst = gallery::shared_favourite();
        let w = Committee::from_indices([1, 2]);
        let check = check_priceable(&inst, &w, true).unwrap();
        let mut system = check.outcome.system().unwrap().clone();
        system.budget = int(4);
        assert!(system
            .validate(&inst.profile.to_weak(), &w, false)
            .is_err());
    }

    fn weak_instance() -> impl Strategy<Value = (WeakInstance, Committee)> {
        (2usize..6, 1usize..6).prop_flat_map(|(m, n)| {
            (
                proptest::collection::vec(
                    proptest::collection::vec(proptest::option::of(1u32..4), m),
                    n,
                ),
                1..=m,
                proptest::collection::vec(any::<bool>(), m),
            )
                .prop_map(move |(raw, k, mask)| {
                    let ballots: Vec<Vec<(usize, u32)>> = raw
                        .iter()
                        .map(|row| {
                            // Compact arbitrary levels into competition ranks.
                            let mut levels: Vec<(usize, u32)> = row
                                .iter()
                                .enumerate()
                                .filter_map(|(c, l)| l.map(|l| (c, l)))
                                .collect();
                            levels.sort_by_key(|&(c, l)| (l, c));
                            let mut out = Vec::new();
                            for (pos, &(c, l)) in levels.iter().enumerate() {
                                let rank = match out.last() {
                                    Some(&(_, r)) if levels[pos - 1].1 == l => r,
                                    _ => pos as u32 + 1,
                                };
                                out.push((c, rank));
                            }
                            out
                        })
                        .collect();
                    let p = WeakProfile::from_ranks(m, ballots).unwrap();
                    let w: Committee = mask
                        .iter()
                        .enumerate()
                        .filter(|&(_, &b)| b)
                        .map(|(c, _)| Candidate(c))
                        .take(k)
                        .collect();
                    (Instance::new(p, k).unwrap(), w)
                })
        })
    }

    proptest! {
        #[test]
        fn returned_systems_replay((inst, w) in weak_instance()) {
            let ranked = check_rank_priceable(&inst, &w, false).unwrap();
            if let Some(system) = ranked.outcome.system() {
                prop_assert_eq!(system.validate(&inst.profile, &w, true), Ok(()));
                // The rank condition implies the plain one.
                prop_assert_eq!(system.validate(&inst.profile, &w, false), Ok(()));
            }
            let plain = solve(&inst.profile, inst.k, &w, false).unwrap();
            if let Some(system) = plain.system() {
                prop_assert_eq!(system.validate(&inst.profile, &w, false), Ok(()));
                let ranked_budget = ranked.outcome.system().map(|s| s.budget.clone());
                // Dropping constraints can only raise the optimum.
                if let Some(b) = ranked_budget {
                    prop_assert!(system.budget >= b);
                }
            } else {
                prop_assert!(ranked.outcome.system().is_none());
            }
        }
    }
}
