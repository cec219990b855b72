//! Solid-coalition axioms: PSC for strict profiles, and brute-force
//! generalized PSC and IPSC for weak profiles.
//!
//! A voter is solid over `C'` when every member of `C'` is acceptable to
//! them and nothing outside `C'` is ranked strictly above a member of
//! `C'`. Such a `C'` consists of all candidates ranked strictly better than
//! some class together with a non-empty part of that class, so enumerating
//! these sets per voter covers every coalition that has at least one
//! supporter.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::profile::{seats_deserved, Candidate, Committee, WeakInstance, WeakProfile};

use super::{Axiom, Verdict, Witness};

/// Maximum number of distinct candidate sets examined by the brute-force checks.
pub const SOLID_SET_LIMIT: usize = 200_000;

/// `C̄'(N')` if every voter in `voters` is solid over `cs`, `None` otherwise.
pub(crate) fn upper_contour(profile: &WeakProfile, voters: &[usize], cs: &[Candidate]) -> Option<Vec<Candidate>> {
    if cs.is_empty() {
        return None;
    }
    let mut contour = vec![false; profile.m()];
    for &i in voters {
        let ballot = profile.ballot(i);
        let worst = cs.iter().map(|&c| ballot.rank_of(c)).collect::<Option<Vec<u32>>>()?;
        let worst = *worst.iter().max().unwrap();
        for &(c, r) in ballot.entries() {
            if r < worst && !cs.contains(&c) {
                return None;
            }
            if r <= worst {
                contour[c.0] = true;
            }
        }
    }
    Some((0..profile.m()).filter(|&c| contour[c]).map(Candidate).collect())
}

/// PSC for strict profiles. With strict orders every solid coalition is a
/// common top-`t` set, so grouping voters by prefix sets finds the largest
/// coalition for every `C'`.
pub fn check_psc(instance: &WeakInstance, committee: &Committee) -> Result<Verdict> {
    let profile = &instance.profile;
    if !profile.is_strict() {
        return Err(Error::invalid("PSC requires strict preferences; use gpsc or ipsc"));
    }
    let (n, m, k) = (instance.n(), instance.m(), instance.k);
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut groups: Vec<(FixedBitSet, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let mut prefix = FixedBitSet::with_capacity(m);
        for &(c, _) in profile.ballot(i).entries() {
            prefix.insert(c.0);
            let slot = *index.entry(prefix.clone()).or_insert_with(|| {
                groups.push((prefix.clone(), Vec::new()));
                groups.len() - 1
            });
            groups[slot].1.push(i);
        }
    }
    for (set, voters) in groups {
        let size = set.count_ones(..);
        let ell = seats_deserved(voters.len(), n, k);
        let hit = set.ones().filter(|&c| committee.contains(Candidate(c))).count();
        if hit < size.min(ell) {
            let cs = set.ones().map(Candidate).collect();
            return Ok(Verdict::Violated(Witness::new(Axiom::Psc, voters, ell).with_candidates(cs)));
        }
    }
    Ok(Verdict::Satisfied)
}

/// Generalized PSC by enumeration.
pub fn check_gpsc_brute(instance: &WeakInstance, committee: &Committee) -> Result<Verdict> {
    solid_brute(instance, committee, Axiom::GeneralizedPsc)
}

/// IPSC by enumeration. A violation over `C' = P ∪ T` persists when `T`
/// shrinks to a single unelected member (or any member when `P ⊄ W`), since
/// that only enlarges the coalition and leaves each voter's contour
/// unchanged, so singletons `T` suffice.
pub fn check_ipsc_brute(instance: &WeakInstance, committee: &Committee) -> Result<Verdict> {
    solid_brute(instance, committee, Axiom::Ipsc)
}

fn solid_brute(instance: &WeakInstance, committee: &Committee, axiom: Axiom) -> Result<Verdict> {
    let profile = &instance.profile;
    let (n, m, k) = (instance.n(), instance.m(), instance.k);
    let members = committee.members();
    if members.len() > 20 {
        return Err(Error::TooLarge {
            what: "solid coalition enumeration",
            detail: format!("committee of size {}", members.len()),
            hint: None,
        });
    }
    let ranks = profile.rank_table();
    let too_large = || Error::TooLarge {
        what: "solid coalition enumeration",
        detail: format!("more than {SOLID_SET_LIMIT} candidate sets"),
        hint: None,
    };

    // Candidate sets supported by at least one voter, in discovery order.
    let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
    let mut sets: Vec<FixedBitSet> = Vec::new();
    for i in 0..n {
        let mut prefix = FixedBitSet::with_capacity(m);
        for (_, class) in profile.ballot(i).classes() {
            let parts: Vec<Vec<Candidate>> = if axiom == Axiom::Ipsc {
                class.iter().map(|&c| vec![c]).collect()
            } else {
                if class.len() > 16 {
                    return Err(too_large());
                }
                (1u32..(1 << class.len()))
                    .map(|mask| (0..class.len()).filter(|&j| mask >> j & 1 == 1).map(|j| class[j]).collect())
                    .collect()
            };
            for part in parts {
                let mut set = prefix.clone();
                for c in part {
                    set.insert(c.0);
                }
                if seen.insert(set.clone(), ()).is_none() {
                    sets.push(set);
                    if sets.len() > SOLID_SET_LIMIT {
                        return Err(too_large());
                    }
                }
            }
            for c in class {
                prefix.insert(c.0);
            }
        }
    }

    for set in sets {
        let cs: Vec<Candidate> = set.ones().map(Candidate).collect();
        // Supporters and their contour restricted to W, as slot masks.
        let mut supporters: Vec<(usize, u32)> = Vec::new();
        for i in 0..n {
            let Some(worst) = cs.iter().map(|c| ranks[i][c.0]).collect::<Option<Vec<u32>>>() else {
                continue;
            };
            let worst = *worst.iter().max().unwrap();
            let solid = (0..m).all(|c| set.contains(c) || ranks[i][c].is_none_or(|r| r >= worst));
            if !solid {
                continue;
            }
            let mask = members
                .iter()
                .enumerate()
                .filter(|(_, c)| ranks[i][c.0].is_some_and(|r| r <= worst))
                .fold(0u32, |acc, (j, _)| acc | 1 << j);
            supporters.push((i, mask));
        }
        if supporters.is_empty() {
            continue;
        }
        let inside = cs.iter().all(|&c| committee.contains(c));
        if axiom == Axiom::Ipsc && inside {
            continue;
        }
        for x in 0u32..(1 << members.len()) {
            let group: Vec<usize> = supporters.iter().filter(|(_, u)| u & !x == 0).map(|&(i, _)| i).collect();
            if group.is_empty() {
                continue;
            }
            let covered = supporters
                .iter()
                .filter(|(_, u)| u & !x == 0)
                .fold(0u32, |acc, (_, u)| acc | u)
                .count_ones() as usize;
            let ell = seats_deserved(group.len(), n, k);
            let violated = match axiom {
                Axiom::Ipsc => covered < ell,
                _ => covered < ell.min(cs.len()),
            };
            if violated {
                return Ok(Verdict::Violated(Witness::new(axiom, group, ell).with_candidates(cs)));
            }
        }
    }
    Ok(Verdict::Satisfied)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::profile::{Instance, WeakProfile};
    use proptest::prelude::*;

    #[test]
    fn contour_gap_splits_gpsc_and_ipsc() {
        let inst = gallery::contour_gap();
        let committee = Committee::from_indices([0, 2, 4, 6, 7, 8]);
        assert!(check_gpsc_brute(&inst, &committee).unwrap().is_satisfied());
        let v = check_ipsc_brute(&inst, &committee).unwrap();
        let w = v.witness().expect("IPSC violation");
        assert!(w.replays(&inst, &committee));
        let named = Witness::new(Axiom::Ipsc, vec![0, 1], 4).with_candidates(vec![Candidate(0), Candidate(1)]);
        assert!(named.replays(&inst, &committee));
    }

    #[test]
    fn no_solid_coalition_everything_passes() {
        let inst = gallery::no_solid_coalition();
        for a in 0..6 {
            for b in a + 1..6 {
                let w = Committee::from_indices([a, b]);
                assert!(check_ipsc_brute(&inst, &w).unwrap().is_satisfied());
                assert!(check_psc(&inst, &w).unwrap().is_satisfied());
            }
        }
    }

    #[test]
    fn unanimous_ranking_bottom_two_fails() {
        let p = WeakProfile::from_rankings(4, &vec![vec![0, 1, 2, 3]; 3]).unwrap();
        let inst = Instance::new(p, 2).unwrap();
        assert!(check_psc(&inst, &Committee::from_indices([0, 1])).unwrap().is_satisfied());
        let bad = Committee::from_indices([2, 3]);
        let v = check_psc(&inst, &bad).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(w.candidates.as_deref(), Some(&[Candidate(0)][..]));
        assert!(w.replays(&inst, &bad));
    }

    #[test]
    fn psc_rejects_ties() {
        assert!(check_psc(&gallery::contour_gap(), &Committee::empty()).is_err());
    }

    proptest! {
        #[test]
        fn strict_equivalence(
            perms in prop::collection::vec(Just((0..6).collect::<Vec<usize>>()).prop_shuffle(), 1..8),
            cut in prop::collection::vec(1usize..=6, 8),
            k in 1usize..5,
            members in prop::collection::vec(0usize..6, 0..5),
        ) {
            let rankings: Vec<Vec<usize>> = perms.iter().zip(&cut).map(|(p, &t)| p[..t].to_vec()).collect();
            let inst = Instance::new(WeakProfile::from_rankings(6, &rankings).unwrap(), k).unwrap();
            let w = Committee::from_indices(members.into_iter().take(k));
            let psc = check_psc(&inst, &w).unwrap();
            let ipsc = check_ipsc_brute(&inst, &w).unwrap();
            let gpsc = check_gpsc_brute(&inst, &w).unwrap();
            prop_assert_eq!(psc.is_satisfied(), ipsc.is_satisfied());
            prop_assert_eq!(psc.is_satisfied(), gpsc.is_satisfied());
            for v in [psc, ipsc, gpsc] {
                if let Some(wit) = v.witness() {
                    prop_assert!(wit.replays(&inst, &w));
                }
            }
        }
    }
}
