//! Brute-force EJR and PJR through a search for cohesive groups.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::profile::{ApprovalInstance, Candidate, Committee};

use super::{Axiom, Verdict, Witness};

/// Search nodes allowed per check before reporting [`Error::TooLarge`].
pub const COHESIVE_NODE_LIMIT: u64 = 20_000_000;

struct Miner {
    approvers: Vec<FixedBitSet>,
    nodes: u64,
}

impl Miner {
    fn new(instance: &ApprovalInstance) -> Self {
        let n = instance.n();
        let approvers = (0..instance.m())
            .map(|c| {
                let mut set = FixedBitSet::with_capacity(n);
                for &i in instance.profile.approvers(Candidate(c)) {
                    set.insert(i);
                }
                set
            })
            .collect();
        Miner { approvers, nodes: 0 }
    }

    /// Some `ell` candidates approved in common by at least `threshold`
    /// voters of `pool`, together with that common support.
    fn find(&mut self, pool: &FixedBitSet, ell: usize, threshold: usize) -> Result<Option<(Vec<Candidate>, FixedBitSet)>> {
        let frequent: Vec<(usize, FixedBitSet)> = self
            .approvers
            .iter()
            .enumerate()
            .filter_map(|(c, a)| {
                let mut s = a.clone();
                s.intersect_with(pool);
                (s.count_ones(..) >= threshold).then_some((c, s))
            })
            .collect();
        if frequent.len() < ell {
            return Ok(None);
        }
        let mut chosen = Vec::with_capacity(ell);
        self.dfs(&frequent, 0, pool.clone(), ell, threshold, &mut chosen)
    }

    fn dfs(
        &mut self,
        frequent: &[(usize, FixedBitSet)],
        start: usize,
        support: FixedBitSet,
        ell: usize,
        threshold: usize,
        chosen: &mut Vec<Candidate>,
    ) -> Result<Option<(Vec<Candidate>, FixedBitSet)>> {
        if chosen.len() == ell {
            return Ok(Some((chosen.clone(), support)));
        }
        let need = ell - chosen.len();
        for j in start..frequent.len() {
            if frequent.len() - j < need {
                break;
            }
            self.nodes += 1;
            if self.nodes > COHESIVE_NODE_LIMIT {
                return Err(Error::TooLarge {
                    what: "cohesive group search",
                    detail: format!("more than {COHESIVE_NODE_LIMIT} nodes"),
                    hint: Some("the polynomial EJR+ and PJR+ checks imply EJR and PJR"),
                });
            }
            let mut next = support.clone();
            next.intersect_with(&frequent[j].1);
            if next.count_ones(..) < threshold {
                continue;
            }
            chosen.push(Candidate(frequent[j].0));
            let found = self.dfs(frequent, j + 1, next, ell, threshold, chosen)?;
            chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

fn group_witness(axiom: Axiom, support: FixedBitSet, ell: usize, common: Vec<Candidate>) -> Verdict {
    Verdict::Violated(Witness::new(axiom, support.ones().collect(), ell).with_candidates(common))
}

/// EJR: every `ell`-cohesive group has a member with at least `ell`
/// approved committee members. Exponential in the worst case.
pub fn check_ejr_brute(instance: &ApprovalInstance, committee: &Committee) -> Result<Verdict> {
    let n = instance.n();
    let sat = instance.profile.satisfactions(committee);
    let mut miner = Miner::new(instance);
    for ell in 1..=instance.k.min(instance.m()) {
        let threshold = instance.quota(ell).min_size();
        let mut pool = FixedBitSet::with_capacity(n);
        pool.extend((0..n).filter(|&i| sat[i] < ell));
        if pool.count_ones(..) < threshold {
            continue;
        }
        if let Some((common, support)) = miner.find(&pool, ell, threshold)? {
            return Ok(group_witness(Axiom::Ejr, support, ell, common));
        }
    }
    Ok(Verdict::Satisfied)
}

/// PJR: every `ell`-cohesive group jointly approves at least `ell`
/// committee members. For each `ell`, every set `S ⊆ W` of size `ell - 1`
/// is tried as the group's coverage bound.
pub fn check_pjr_brute(instance: &ApprovalInstance, committee: &Committee) -> Result<Verdict> {
    let n = instance.n();
    let profile = &instance.profile;
    let members = committee.members();
    assert!(members.len() < 64, "committee too large for PJR enumeration");
    let slot_masks: Vec<u64> = (0..n)
        .map(|i| {
            members
                .iter()
                .enumerate()
                .filter(|(_, &c)| profile.approves(i, c))
                .fold(0u64, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    let mut miner = Miner::new(instance);
    for ell in 1..=instance.k.min(instance.m()) {
        let threshold = instance.quota(ell).min_size();
        let size = (ell - 1).min(members.len());
        let mut tried = std::collections::HashSet::new();
        for s in subsets_of_size(members.len(), size) {
            let mut pool = FixedBitSet::with_capacity(n);
            pool.extend((0..n).filter(|&i| slot_masks[i] & !s == 0));
            if pool.count_ones(..) < threshold || !tried.insert(pool.clone()) {
                continue;
            }
            if let Some((common, support)) = miner.find(&pool, ell, threshold)? {
                return Ok(group_witness(Axiom::Pjr, support, ell, common));
            }
        }
    }
    Ok(Verdict::Satisfied)
}

/// Bitmasks over `0..len` with exactly `size` bits set.
fn subsets_of_size(len: usize, size: usize) -> impl Iterator<Item = u64> {
    let limit = (1u64 << len) - 1;
    let first = if size == 0 { 0 } else { (1u64 << size) - 1 };
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            let following = (((r ^ cur) >> 2) / c) | r;
            (r != 0 && following <= limit).then_some(following)
        };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::profile::{ApprovalProfile, Instance};
    use proptest::prelude::*;

    /// Definition-level EJR/PJR by enumerating every voter subset.
    fn naive(instance: &ApprovalInstance, committee: &Committee, pjr: bool) -> bool {
        let n = instance.n();
        let p = &instance.profile;
        for mask in 1u32..(1 << n) {
            let group: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let common = (0..instance.m())
                .filter(|&c| group.iter().all(|&i| p.approves(i, Candidate(c))))
                .count();
            for ell in 1..=instance.k {
                if common < ell || !instance.quota(ell).admits(group.len()) {
                    continue;
                }
                let ok = if pjr {
                    super::super::approval::covered_count(instance, committee, &group) >= ell
                } else {
                    group.iter().any(|&i| p.satisfaction(i, committee) >= ell)
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn gosper_counts() {
        assert_eq!(subsets_of_size(5, 2).count(), 10);
        assert_eq!(subsets_of_size(4, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(3, 3).collect::<Vec<_>>(), vec![7]);
    }

    #[test]
    fn gallery_committees_satisfy_ejr() {
        let inst = gallery::laminar_eight();
        assert!(check_ejr_brute(&inst, &Committee::from_indices([0, 2, 4, 6])).unwrap().is_satisfied());
        let inst = gallery::near_cohesive_eight();
        assert!(check_ejr_brute(&inst, &Committee::from_indices([0, 1, 2, 6])).unwrap().is_satisfied());
    }

    #[test]
    fn empty_committee_with_cohesive_group() {
        let inst = gallery::shared_favourite();
        let v = check_ejr_brute(&inst, &Committee::empty()).unwrap();
        assert!(v.witness().unwrap().replays(&inst.to_weak(), &Committee::empty()));
        assert!(!check_pjr_brute(&inst, &Committee::empty()).unwrap().is_satisfied());
    }

    proptest! {
        #[test]
        fn agrees_with_definition(
            sets in prop::collection::vec(prop::collection::vec(0usize..6, 0..5), 1..10),
            k in 1usize..5,
            members in prop::collection::vec(0usize..6, 0..5),
        ) {
            let inst = Instance::new(ApprovalProfile::new(6, sets).unwrap(), k).unwrap();
            let committee = Committee::from_indices(members.into_iter().take(k));
            let ejr = check_ejr_brute(&inst, &committee).unwrap();
            let pjr = check_pjr_brute(&inst, &committee).unwrap();
            prop_assert_eq!(ejr.is_satisfied(), naive(&inst, &committee, false));
            prop_assert_eq!(pjr.is_satisfied(), naive(&inst, &committee, true));
            for v in [ejr, pjr] {
                if let Some(w) = v.witness() {
                    prop_assert!(w.replays(&inst.to_weak(), &committee));
                }
            }
        }
    }
}
