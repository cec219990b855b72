use crate::exactmath::Rational;
use crate::profile::{ApprovalInstance, Candidate};

use super::{BudgetState, RuleOutput, TieBreak, TraceEvent};

/// Greedy justified candidate rule.
///
/// For `ell = k, ..., 1`, repeatedly adds a candidate `c` whose approvers with
/// fewer than `ell` committee members number at least `ell * n / k`. The
/// price of each pick is split evenly among that group, which shows the
/// committee never exceeds `k` members.
pub fn gjcr(instance: &ApprovalInstance, tiebreak: &TieBreak) -> RuleOutput {
    let profile = &instance.profile;
    let (n, m, k) = (instance.n(), instance.m(), instance.k);
    let pos = tiebreak.positions(m);
    let mut out = RuleOutput::default();
    let mut budget = BudgetState::uniform(n, Rational::new(k.into(), n.max(1).into()));
    let mut sat = vec![0usize; n];

    for ell in (1..=k).rev() {
        let quota = instance.quota(ell);
        loop {
            let pick = (0..m)
                .map(Candidate)
                .filter(|&c| !out.committee.contains(c))
                .filter(|&c| {
                    let group = profile.approvers(c).iter().filter(|&&i| sat[i] < ell).count();
                    quota.admits(group)
                })
                .min_by_key(|c| pos[c.0]);
            let Some(c) = pick else { break };
            let group: Vec<usize> = profile
                .approvers(c)
                .iter()
                .copied()
                .filter(|&i| sat[i] < ell)
                .collect();
            let share = Rational::new(1.into(), group.len().into());
            for &i in &group {
                budget.charge(i, c, share.clone());
            }
            for &i in profile.approvers(c) {
                sat[i] += 1;
            }
            out.elect(c);
            out.trace.push(TraceEvent::Elected {
                candidate: c,
                rank: None,
                ell: Some(ell),
                price: TraceEvent::price(&share),
                supporters: group.len(),
            });
        }
    }
    out.payments = budget.log;
    out
}
