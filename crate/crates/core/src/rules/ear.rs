use num_traits::{One, Zero};

use crate::exactmath::Rational;
use crate::profile::{ApprovalInstance, Candidate, WeakInstance};

use super::{BudgetState, RuleOutput, TieBreak, TraceEvent};

/// How an expanding-approvals run picks the next candidate and splits its price.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EarVariant {
    /// First affordable candidate by tie-break order; each supporter pays in
    /// proportion to their remaining budget.
    #[default]
    Proportional,
    /// Equal shares: the candidate affordable at the smallest per-voter
    /// price `rho` wins and supporters pay `min(rho, b_i)`.
    Mes,
}

/// The smallest `rho` with `sum min(rho, b_i) = price`, or `None` when the
/// budgets fall short.
pub fn mes_rho<'a>(budgets: impl IntoIterator<Item = &'a Rational>, price: &Rational) -> Option<Rational> {
    let mut b: Vec<&Rational> = budgets.into_iter().filter(|b| !b.is_zero()).collect();
    b.sort();
    let mut remaining = price.clone();
    for (j, bj) in b.iter().enumerate() {
        let rho = &remaining / Rational::from_integer((b.len() - j).into());
        if rho <= **bj {
            return Some(rho);
        }
        remaining -= *bj;
    }
    None
}

/// Expanding approvals rule over weak preferences.
///
/// Every voter starts with `k / n`. For `r = 1, 2, ...`, candidates that the
/// voters ranking them at `r` or better can jointly afford at price 1 are
/// bought until none remains. Ranks beyond the largest finite rank change
/// nothing, so the sweep stops there.
pub fn ear(instance: &WeakInstance, variant: EarVariant, tiebreak: &TieBreak) -> RuleOutput {
    let profile = &instance.profile;
    let (n, m, k) = (instance.n(), instance.m(), instance.k);
    let pos = tiebreak.positions(m);
    let mut budget = BudgetState::uniform(n, Rational::new(k.into(), n.max(1).into()));
    let mut out = RuleOutput::default();
    let one = Rational::one();

    let mut supporters: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut by_rank: Vec<Vec<(usize, Candidate)>> = vec![Vec::new(); profile.max_rank() as usize + 1];
    for (i, ballot) in profile.ballots().iter().enumerate() {
        for &(c, r) in ballot.entries() {
            by_rank[r as usize].push((i, c));
        }
    }

    for r in 1..by_rank.len() {
        for &(i, c) in &by_rank[r] {
            supporters[c.0].push(i);
        }
        loop {
            let affordable = (0..m)
                .map(Candidate)
                .filter(|&c| !out.committee.contains(c) && budget.available(&supporters[c.0]) >= one);
            let choice = match variant {
                EarVariant::Proportional => affordable.min_by_key(|c| pos[c.0]).map(|c| (c, None)),
                EarVariant::Mes => affordable
                    .map(|c| {
                        let rho = mes_rho(supporters[c.0].iter().map(|&i| &budget.budgets[i]), &one)
                            .expect("affordable candidate has a price");
                        (c, Some(rho))
                    })
                    .min_by(|(c, x), (d, y)| x.cmp(y).then(pos[c.0].cmp(&pos[d.0]))),
            };
            let Some((c, rho)) = choice else { break };
            let group = &supporters[c.0];
            match &rho {
                Some(rho) => {
                    for &i in group {
                        let pay = rho.clone().min(budget.budgets[i].clone());
                        if !pay.is_zero() {
                            budget.charge(i, c, pay);
                        }
                    }
                }
                None => {
                    let total = budget.available(group);
                    for &i in group {
                        let pay = &budget.budgets[i] / &total;
                        if !pay.is_zero() {
                            budget.charge(i, c, pay);
                        }
                    }
                }
            }
            out.elect(c);
            out.trace.push(TraceEvent::Elected {
                candidate: c,
                rank: Some(r as u32),
                ell: None,
                price: rho.as_ref().and_then(TraceEvent::price),
                supporters: group.len(),
            });
        }
    }
    out.payments = budget.log;
    out
}

/// Method of equal shares on approval ballots, without completion.
pub fn mes_approval(instance: &ApprovalInstance, tiebreak: &TieBreak) -> RuleOutput {
    ear(&instance.to_weak(), EarVariant::Mes, tiebreak)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::gallery::{self, trap};
    use crate::profile::{ApprovalProfile, Committee, Instance, WeakProfile};

    #[test]
    fn rho_examples() {
        assert_eq!(mes_rho(&[rat(1, 2), rat(1, 2)], &rat(1, 1)), Some(rat(1, 2)));
        assert_eq!(mes_rho(&[rat(1, 10), rat(1, 1)], &rat(1, 1)), Some(rat(9, 10)));
        assert_eq!(mes_rho(&[rat(1, 10), rat(1, 2)], &rat(1, 1)), None);
    }

    #[test]
    fn unanimous_single_candidate_splits_evenly() {
        let n = 5;
        let p = ApprovalProfile::new(3, vec![vec![0]; n]).unwrap();
        let out = mes_approval(&Instance::new(p, 1).unwrap(), &TieBreak::Lexicographic);
        assert_eq!(out.committee, Committee::from_indices([0]));
        assert!(out.payments.iter().all(|p| p.amount == rat(1, 5)));
        assert_eq!(out.payments.len(), n);
    }

    #[test]
    fn disjoint_halves() {
        let p = ApprovalProfile::new(2, vec![vec![0], vec![0], vec![1], vec![1]]).unwrap();
        let out = mes_approval(&Instance::new(p, 2).unwrap(), &TieBreak::Lexicographic);
        assert_eq!(out.committee, Committee::from_indices([0, 1]));
        assert!(out.payments.iter().all(|p| p.amount == rat(1, 2)));
    }

    #[test]
    fn trap_instance_mes() {
        let inst = gallery::stv_trap();
        let out = ear(&inst, EarVariant::Mes, &TieBreak::Lexicographic);
        assert_eq!(out.committee, Committee::from_indices([trap::E1, trap::E2, trap::C1]));
        let mut order: Vec<Candidate> = (0..8).map(Candidate).collect();
        order.swap(0, trap::C3);
        let tb = TieBreak::priority(order, 8).unwrap();
        let out = ear(&inst, EarVariant::Mes, &tb);
        assert_eq!(out.committee, Committee::from_indices([trap::E1, trap::E2, trap::C3]));
    }

    #[test]
    fn no_solid_coalition_contains_c2_or_c3() {
        for variant in [EarVariant::Proportional, EarVariant::Mes] {
            let out = ear(&gallery::no_solid_coalition(), variant, &TieBreak::Lexicographic);
            assert!(out.committee.contains(Candidate(1)) || out.committee.contains(Candidate(2)));
        }
    }

    #[test]
    fn sole_voter_top_choice() {
        let p = WeakProfile::from_rankings(2, &[vec![0, 1]]).unwrap();
        let out = ear(&Instance::new(p, 1).unwrap(), EarVariant::Proportional, &TieBreak::Lexicographic);
        assert_eq!(out.committee, Committee::from_indices([0]));
    }
}
