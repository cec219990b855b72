use std::str::FromStr;

use crate::error::{Error, Result};
use crate::profile::{Committee, WeakInstance};

use super::{check_ejrp, check_pjr_brute, check_pjrp, Axiom, Verdict};

/// Approval axiom applied to every rank expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankBase {
    PjrPlus,
    EjrPlus,
    Pjr,
}

impl RankBase {
    pub fn axiom(self) -> Axiom {
        match self {
            RankBase::PjrPlus => Axiom::RankPjrPlus,
            RankBase::EjrPlus => Axiom::RankEjrPlus,
            RankBase::Pjr => Axiom::RankPjr,
        }
    }
}

impl FromStr for RankBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pjr+" => Ok(RankBase::PjrPlus),
            "ejr+" => Ok(RankBase::EjrPlus),
            "pjr" => Ok(RankBase::Pjr),
            _ => Err(Error::Parse(format!("unknown rank base axiom '{s}'"))),
        }
    }
}

/// Runs the base check on the approval expansion at every rank where some
/// voter's approval set grows, smallest rank first, and reports the first
/// failure with its rank.
pub fn check_rank_lifted(instance: &WeakInstance, committee: &Committee, base: RankBase) -> Result<Verdict> {
    let profile = &instance.profile;
    let mut ranks: Vec<u32> = profile
        .ballots()
        .iter()
        .flat_map(|b| b.entries().iter().map(|&(_, r)| r))
        .collect();
    ranks.sort_unstable();
    ranks.dedup();
    for r in ranks {
        let expanded = instance.expand(r)?;
        let verdict = match base {
            RankBase::PjrPlus => check_pjrp(&expanded, committee),
            RankBase::EjrPlus => check_ejrp(&expanded, committee),
            RankBase::Pjr => check_pjr_brute(&expanded, committee)?,
        };
        if let Verdict::Violated(mut w) = verdict {
            w.axiom = base.axiom();
            w.rank = Some(r);
            return Ok(Verdict::Violated(w));
        }
    }
    Ok(Verdict::Satisfied)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{self, trap};
    use crate::profile::Candidate;

    #[test]
    fn c4_c6_fails_at_rank_two() {
        let inst = gallery::no_solid_coalition();
        let w = Committee::from_indices([3, 5]);
        let v = check_rank_lifted(&inst, &w, RankBase::PjrPlus).unwrap();
        let wit = v.witness().unwrap();
        assert_eq!(wit.rank, Some(2));
        assert_eq!(wit.candidate, Some(Candidate(1)));
        assert_eq!(wit.voters, vec![0, 1]);
        assert!(wit.replays(&inst, &w));
    }

    #[test]
    fn rank_pjrp_allowed_pairs() {
        // Either c2 with one of c3, c4, c6, or c3 with one of c1, c2, c5.
        let inst = gallery::no_solid_coalition();
        for a in 0..6 {
            for b in a + 1..6 {
                let ok = check_rank_lifted(&inst, &Committee::from_indices([a, b]), RankBase::PjrPlus)
                    .unwrap()
                    .is_satisfied();
                let has = |c: usize| a == c || b == c;
                let expected = (has(1) && (has(2) || has(3) || has(5))) || (has(2) && (has(0) || has(1) || has(4)));
                assert_eq!(ok, expected, "committee c{} c{}", a + 1, b + 1);
            }
        }
    }

    #[test]
    fn trap_committee_fails() {
        let inst = gallery::stv_trap();
        let w = Committee::from_indices([trap::E1, trap::E2, trap::E3]);
        let v = check_rank_lifted(&inst, &w, RankBase::PjrPlus).unwrap();
        let c = v.witness().unwrap().candidate.unwrap().0;
        assert!([trap::C1, trap::C2, trap::C3].contains(&c));
    }

    #[test]
    fn rank_ejrp_unsatisfiable() {
        let inst = gallery::rank_ejrp_empty();
        for a in 0..4 {
            for b in a + 1..4 {
                let w = Committee::from_indices([a, b]);
                let v = check_rank_lifted(&inst, &w, RankBase::EjrPlus).unwrap();
                assert!(v.witness().unwrap().replays(&inst, &w));
            }
        }
    }
}
