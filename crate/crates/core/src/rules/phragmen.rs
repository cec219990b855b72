use crate::exactmath::Rational;
use crate::profile::{ApprovalInstance, Candidate};

use super::{Payment, RuleOutput, TieBreak, TraceEvent};

/// Sequential Phragmén.
///
/// Each round elects the candidate whose approvers, after taking on a new
/// unit of load, would end with the smallest common load
/// `t_c = (1 + sum_{i in N_c} x_i) / |N_c|`. Voter `i` pays `t_c - x_i`.
/// Stops at `k` members or when no approved candidate is left.
pub fn seq_phragmen(instance: &ApprovalInstance, tiebreak: &TieBreak) -> RuleOutput {
    let profile = &instance.profile;
    let (n, m, k) = (instance.n(), instance.m(), instance.k);
    let pos = tiebreak.positions(m);
    let mut load = vec![Rational::default(); n];
    let mut out = RuleOutput::default();

    while out.committee.len() < k {
        let best = (0..m)
            .map(Candidate)
            .filter(|&c| !out.committee.contains(c) && !profile.approvers(c).is_empty())
            .map(|c| {
                let group = profile.approvers(c);
                let total: Rational = group.iter().map(|&i| &load[i]).sum::<Rational>() + Rational::from_integer(1.into());
                (c, total / Rational::from_integer(group.len().into()))
            })
            .min_by(|(c, x), (d, y)| x.cmp(y).then(pos[c.0].cmp(&pos[d.0])));
        let Some((c, t)) = best else { break };
        for &i in profile.approvers(c) {
            let amount = &t - &load[i];
            if amount > Rational::default() {
                out.payments.push(Payment {
                    voter: i,
                    candidate: c,
                    amount,
                });
            }
            load[i] = t.clone();
        }
        out.elect(c);
        out.trace.push(TraceEvent::Elected {
            candidate: c,
            rank: None,
            ell: None,
            price: TraceEvent::price(&t),
            supporters: profile.approvers(c).len(),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{ApprovalProfile, Committee, Instance};

    #[test]
    fn disjoint_halves() {
        let p = ApprovalProfile::new(4, vec![vec![0, 1], vec![0, 1], vec![2, 3], vec![2, 3]]).unwrap();
        let out = seq_phragmen(&Instance::new(p, 2).unwrap(), &TieBreak::Lexicographic);
        assert_eq!(out.committee, Committee::from_indices([0, 2]));
    }

    #[test]
    fn single_approver_each() {
        let p = ApprovalProfile::new(2, vec![vec![0], vec![1]]).unwrap();
        let out = seq_phragmen(&Instance::new(p, 2).unwrap(), &TieBreak::Lexicographic);
        assert_eq!(out.committee, Committee::from_indices([0, 1]));
    }
}
