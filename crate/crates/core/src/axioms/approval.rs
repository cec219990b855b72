use num_traits::One;

use crate::exactmath::coverage::min_coverage_minus_modular;
use crate::exactmath::Rational;
use crate::profile::{ApprovalInstance, Committee};

use super::{Axiom, Verdict, Witness};

/// EJR+: no unelected `c` approved by `ell * n / k` voters who each have
/// fewer than `ell` approved members. The witness group is every approver
/// of `c` below `ell`.
pub fn check_ejrp(instance: &ApprovalInstance, committee: &Committee) -> Verdict {
    let profile = &instance.profile;
    let sat = profile.satisfactions(committee);
    for c in committee.complement(instance.m()) {
        let approvers = profile.approvers(c);
        for ell in 1..=instance.k {
            let group: Vec<usize> = approvers.iter().copied().filter(|&i| sat[i] < ell).collect();
            if instance.quota(ell).admits(group.len()) {
                return Verdict::Violated(Witness::new(Axiom::EjrPlus, group, ell).with_candidate(c));
            }
        }
    }
    Verdict::Satisfied
}

/// PJR+ via minimum cuts: for every unelected `c`, minimizes
/// `|cov(N') ∩ W| - |N'| k / n` over `N' ⊆ N_c`. A value of at most `-1`
/// is a violation with `ell = |cov(N') ∩ W| + 1`.
pub fn check_pjrp(instance: &ApprovalInstance, committee: &Committee) -> Verdict {
    let profile = &instance.profile;
    let (n, k) = (instance.n(), instance.k);
    let slot: Vec<Option<usize>> = {
        let mut slot = vec![None; instance.m()];
        for (j, c) in committee.iter().enumerate() {
            slot[c.0] = Some(j);
        }
        slot
    };
    let weights = vec![Rational::one(); committee.len()];
    let alpha = Rational::new(k.into(), n.max(1).into());
    let minus_one = -Rational::one();
    for c in committee.complement(instance.m()) {
        let approvers = profile.approvers(c);
        if !instance.quota(1).admits(approvers.len()) {
            continue;
        }
        let items: Vec<Vec<usize>> = approvers
            .iter()
            .map(|&i| profile.ballot(i).iter().filter_map(|d| slot[d.0]).collect())
            .collect();
        let best = min_coverage_minus_modular(&items, &weights, &alpha);
        if best.value <= minus_one {
            let voters: Vec<usize> = best.argmin.iter().map(|&v| approvers[v]).collect();
            let covered = covered_count(instance, committee, &voters);
            let mut w = Witness::new(Axiom::PjrPlus, voters, covered + 1).with_candidate(c);
            w.value = Some(best.value);
            return Verdict::Violated(w);
        }
    }
    Verdict::Satisfied
}

pub(crate) fn covered_count(instance: &ApprovalInstance, committee: &Committee, voters: &[usize]) -> usize {
    committee
        .iter()
        .filter(|&c| voters.iter().any(|&i| instance.profile.approves(i, c)))
        .count()
}

/// PJR+ by enumerating every subset of every `N_c`. Exponential; meant as
/// a test oracle for small electorates.
pub fn check_pjrp_brute(instance: &ApprovalInstance, committee: &Committee) -> Verdict {
    let profile = &instance.profile;
    for c in committee.complement(instance.m()) {
        let approvers = profile.approvers(c);
        assert!(approvers.len() < 26, "brute-force PJR+ oracle limited to 25 approvers");
        for mask in 1u32..(1 << approvers.len()) {
            let voters: Vec<usize> = (0..approvers.len())
                .filter(|&j| mask >> j & 1 == 1)
                .map(|j| approvers[j])
                .collect();
            let covered = covered_count(instance, committee, &voters);
            if instance.quota(covered + 1).admits(voters.len()) {
                return Verdict::Violated(Witness::new(Axiom::PjrPlus, voters, covered + 1).with_candidate(c));
            }
        }
    }
    Verdict::Satisfied
}
