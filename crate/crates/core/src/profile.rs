//! Preference profiles, committees, and the Hare quota.
//!
//! A [`WeakProfile`] stores for every voter the acceptable candidates
//! together with their rank, where the rank of a candidate is one plus the
//! number of candidates the voter strictly prefers to it. Unacceptable
//! candidates are simply absent. Approval profiles are the special case in
//! which every acceptable candidate has rank 1; they get their own type,
//! [`ApprovalProfile`], which additionally indexes approvers per candidate.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{BallotError, BallotErrorKind, Error, Result};
use crate::exactmath::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Candidate(pub usize);

impl Candidate {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0 + 1)
    }
}

/// One voter's weak order over the acceptable candidates.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Ballot {
    /// Sorted by rank, then by candidate.
    entries: Vec<(Candidate, u32)>,
}

impl Ballot {
    pub fn entries(&self) -> &[(Candidate, u32)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rank_of(&self, c: Candidate) -> Option<u32> {
        self.entries.iter().find(|(d, _)| *d == c).map(|&(_, r)| r)
    }

    /// Candidates with rank at most `r`, in rank order.
    pub fn prefix(&self, r: u32) -> impl Iterator<Item = Candidate> + '_ {
        self.entries
            .iter()
            .take_while(move |&&(_, rank)| rank <= r)
            .map(|&(c, _)| c)
    }

    pub fn max_rank(&self) -> u32 {
        self.entries.last().map_or(0, |&(_, r)| r)
    }

    pub fn is_strict(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].1 != w[1].1)
    }

    pub fn is_dichotomous(&self) -> bool {
        self.entries.iter().all(|&(_, r)| r == 1)
    }

    /// The indifference classes in rank order.
    pub fn classes(&self) -> Vec<(u32, Vec<Candidate>)> {
        let mut out: Vec<(u32, Vec<Candidate>)> = Vec::new();
        for &(c, r) in &self.entries {
            match out.last_mut() {
                Some((rank, class)) if *rank == r => class.push(c),
                _ => out.push((r, vec![c])),
            }
        }
        out
    }
}

/// A profile of weak orders, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakProfile {
    m: usize,
    ballots: Vec<Ballot>,
}

impl WeakProfile {
    /// Validates raw `(candidate, rank)` lists, one per voter.
    ///
    /// Every voter's ranks must satisfy `rank(c) = |{c' : rank(c') < rank(c)}| + 1`.
    /// All offending voters are reported at once.
    pub fn from_ranks(m: usize, raw: Vec<Vec<(usize, u32)>>) -> Result<Self> {
        let mut errors = Vec::new();
        let mut ballots = Vec::with_capacity(raw.len());
        for (voter, mut entries) in raw.into_iter().enumerate() {
            let before = errors.len();
            let mut seen = BTreeSet::new();
            for &(c, r) in &entries {
                if c >= m {
                    errors.push(BallotError {
                        voter,
                        kind: BallotErrorKind::UnknownCandidate { candidate: c },
                    });
                } else if !seen.insert(c) {
                    errors.push(BallotError {
                        voter,
                        kind: BallotErrorKind::DuplicateCandidate { candidate: c },
                    });
                }
                if r == 0 {
                    errors.push(BallotError {
                        voter,
                        kind: BallotErrorKind::ZeroRank { candidate: c },
                    });
                }
            }
            if errors.len() > before {
                continue;
            }
            entries.sort_by_key(|&(c, r)| (r, c));
            let mut better = 0u32;
            let mut i = 0;
            while i < entries.len() {
                let r = entries[i].1;
                let mut j = i;
                while j < entries.len() && entries[j].1 == r {
                    if r != better + 1 {
                        errors.push(BallotError {
                            voter,
                            kind: BallotErrorKind::InconsistentRank {
                                candidate: entries[j].0,
                                rank: r,
                                expected: better + 1,
                            },
                        });
                    }
                    j += 1;
                }
                better += (j - i) as u32;
                i = j;
            }
            ballots.push(Ballot {
                entries: entries.into_iter().map(|(c, r)| (Candidate(c), r)).collect(),
            });
        }
        if errors.is_empty() {
            Ok(WeakProfile { m, ballots })
        } else {
            Err(Error::InvalidProfile(errors))
        }
    }

    /// Builds a profile from orders given as indifference classes, best first.
    pub fn from_orders(m: usize, orders: &[Vec<Vec<usize>>]) -> Result<Self> {
        let raw = orders
            .iter()
            .map(|classes| {
                let mut rank = 1u32;
                let mut entries = Vec::new();
                for class in classes {
                    entries.extend(class.iter().map(|&c| (c, rank)));
                    rank += class.len() as u32;
                }
                entries
            })
            .collect();
        Self::from_ranks(m, raw)
    }

    /// Builds a strict profile from rankings, best first.
    pub fn from_rankings(m: usize, rankings: &[Vec<usize>]) -> Result<Self> {
        let raw = rankings
            .iter()
            .map(|order| {
                order
                    .iter()
                    .enumerate()
                    .map(|(pos, &c)| (c, pos as u32 + 1))
                    .collect()
            })
            .collect();
        Self::from_ranks(m, raw)
    }

    pub fn n(&self) -> usize {
        self.ballots.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ballots(&self) -> &[Ballot] {
        &self.ballots
    }

    pub fn ballot(&self, voter: usize) -> &Ballot {
        &self.ballots[voter]
    }

    pub fn rank(&self, voter: usize, c: Candidate) -> Option<u32> {
        self.ballots[voter].rank_of(c)
    }

    pub fn is_strict(&self) -> bool {
        self.ballots.iter().all(Ballot::is_strict)
    }

    pub fn is_dichotomous(&self) -> bool {
        self.ballots.iter().all(Ballot::is_dichotomous)
    }

    /// Largest finite rank used by any voter (0 for an all-empty profile).
    pub fn max_rank(&self) -> u32 {
        self.ballots.iter().map(Ballot::max_rank).max().unwrap_or(0)
    }

    /// Dense `voter × candidate` rank table, `None` for unacceptable.
    pub fn rank_table(&self) -> Vec<Vec<Option<u32>>> {
        self.ballots
            .iter()
            .map(|b| {
                let mut row = vec![None; self.m];
                for &(c, r) in &b.entries {
                    row[c.0] = Some(r);
                }
                row
            })
            .collect()
    }

    /// The approval profile `A_i^r = {c : rank(i, c) <= r}`.
    pub fn expand(&self, r: u32) -> Result<ApprovalProfile> {
        if r == 0 || r as usize > self.m.max(1) {
            return Err(Error::invalid(format!(
                "rank {r} outside 1..={}",
                self.m
            )));
        }
        let sets = self
            .ballots
            .iter()
            .map(|b| b.prefix(r).collect())
            .collect();
        Ok(ApprovalProfile::from_candidate_sets(self.m, sets))
    }

    /// Reinterprets a dichotomous profile as an approval profile.
    pub fn to_approval(&self) -> Result<ApprovalProfile> {
        if !self.is_dichotomous() {
            return Err(Error::invalid("profile is not dichotomous"));
        }
        Ok(self.acceptable_sets())
    }

    /// The acceptable sets `A_i`, regardless of the internal order.
    pub fn acceptable_sets(&self) -> ApprovalProfile {
        let sets = self
            .ballots
            .iter()
            .map(|b| b.entries.iter().map(|&(c, _)| c).collect())
            .collect();
        ApprovalProfile::from_candidate_sets(self.m, sets)
    }

    /// Raw `(candidate, rank)` lists, the inverse of [`WeakProfile::from_ranks`].
    pub fn to_ranks(&self) -> Vec<Vec<(usize, u32)>> {
        self.ballots
            .iter()
            .map(|b| b.entries.iter().map(|&(c, r)| (c.0, r)).collect())
            .collect()
    }
}

/// Dichotomous preferences, indexed both ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApprovalProfile {
    m: usize,
    ballots: Vec<Vec<Candidate>>,
    approvers: Vec<Vec<usize>>,
}

impl ApprovalProfile {
    /// Builds from approval sets given as candidate indices.
    pub fn new(m: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        for (voter, set) in sets.iter().enumerate() {
            if let Some(&c) = set.iter().find(|&&c| c >= m) {
                return Err(Error::InvalidProfile(vec![BallotError {
                    voter,
                    kind: BallotErrorKind::UnknownCandidate { candidate: c },
                }]));
            }
        }
        Ok(Self::from_candidate_sets(
            m,
            sets.into_iter()
                .map(|s| s.into_iter().map(Candidate).collect())
                .collect(),
        ))
    }

    pub(crate) fn from_candidate_sets(m: usize, sets: Vec<Vec<Candidate>>) -> Self {
        let mut approvers = vec![Vec::new(); m];
        let ballots: Vec<Vec<Candidate>> = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        for (i, b) in ballots.iter().enumerate() {
            for c in b {
                approvers[c.0].push(i);
            }
        }
        ApprovalProfile {
            m,
            ballots,
            approvers,
        }
    }

    pub fn n(&self) -> usize {
        self.ballots.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ballot(&self, voter: usize) -> &[Candidate] {
        &self.ballots[voter]
    }

    pub fn ballots(&self) -> &[Vec<Candidate>] {
        &self.ballots
    }

    /// `N_c`, sorted ascending.
    pub fn approvers(&self, c: Candidate) -> &[usize] {
        &self.approvers[c.0]
    }

    pub fn approves(&self, voter: usize, c: Candidate) -> bool {
        self.ballots[voter].binary_search(&c).is_ok()
    }

    /// `|A_i ∩ W|`.
    pub fn satisfaction(&self, voter: usize, committee: &Committee) -> usize {
        self.ballots[voter]
            .iter()
            .filter(|&&c| committee.contains(c))
            .count()
    }

    pub fn satisfactions(&self, committee: &Committee) -> Vec<usize> {
        (0..self.n())
            .map(|i| self.satisfaction(i, committee))
            .collect()
    }

    pub fn to_weak(&self) -> WeakProfile {
        WeakProfile {
            m: self.m,
            ballots: self
                .ballots
                .iter()
                .map(|b| Ballot {
                    entries: b.iter().map(|&c| (c, 1)).collect(),
                })
                .collect(),
        }
    }

    pub fn to_sets(&self) -> Vec<Vec<usize>> {
        self.ballots
            .iter()
            .map(|b| b.iter().map(|c| c.0).collect())
            .collect()
    }
}

/// A set of candidates. Kept sorted and free of duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Committee {
    members: Vec<Candidate>,
}

impl Committee {
    pub fn new(members: impl IntoIterator<Item = Candidate>) -> Self {
        let mut members: Vec<_> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Committee { members }
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Self::new(indices.into_iter().map(Candidate))
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn contains(&self, c: Candidate) -> bool {
        self.members.binary_search(&c).is_ok()
    }

    pub fn insert(&mut self, c: Candidate) -> bool {
        match self.members.binary_search(&c) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, c);
                true
            }
        }
    }

    pub fn remove(&mut self, c: Candidate) -> bool {
        match self.members.binary_search(&c) {
            Ok(pos) => {
                self.members.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Candidate] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Candidate> + '_ {
        self.members.iter().copied()
    }

    pub fn mask(&self, m: usize) -> Vec<bool> {
        let mut mask = vec![false; m];
        for c in &self.members {
            mask[c.0] = true;
        }
        mask
    }

    /// Candidates of `0..m` outside the committee.
    pub fn complement(&self, m: usize) -> impl Iterator<Item = Candidate> + '_ {
        (0..m).map(Candidate).filter(move |&c| !self.contains(c))
    }

    pub fn indices(&self) -> Vec<usize> {
        self.members.iter().map(|c| c.0).collect()
    }
}

impl FromIterator<Candidate> for Committee {
    fn from_iter<T: IntoIterator<Item = Candidate>>(iter: T) -> Self {
        Committee::new(iter)
    }
}

impl fmt::Display for Committee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.members.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

/// A profile together with the target committee size `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance<P> {
    pub profile: P,
    pub k: usize,
}

pub type ApprovalInstance = Instance<ApprovalProfile>;
pub type WeakInstance = Instance<WeakProfile>;

pub trait Profile {
    fn voters(&self) -> usize;
    fn candidates(&self) -> usize;
}

impl Profile for WeakProfile {
    fn voters(&self) -> usize {
        self.n()
    }
    fn candidates(&self) -> usize {
        self.m()
    }
}

impl Profile for ApprovalProfile {
    fn voters(&self) -> usize {
        self.n()
    }
    fn candidates(&self) -> usize {
        self.m()
    }
}

impl<P: Profile> Instance<P> {
    pub fn new(profile: P, k: usize) -> Result<Self> {
        let m = profile.candidates();
        if k == 0 || k > m {
            return Err(Error::invalid(format!(
                "committee size k = {k} must satisfy 1 <= k <= m = {m}"
            )));
        }
        Ok(Instance { profile, k })
    }

    pub fn n(&self) -> usize {
        self.profile.voters()
    }

    pub fn m(&self) -> usize {
        self.profile.candidates()
    }

    pub fn quota(&self, ell: usize) -> Quota {
        group_quota(ell, self.n(), self.k)
    }

    pub fn check_feasible(&self, committee: &Committee) -> Result<()> {
        if committee.len() > self.k {
            return Err(Error::invalid(format!(
                "committee has {} members but k = {}",
                committee.len(),
                self.k
            )));
        }
        if let Some(c) = committee.iter().find(|c| c.0 >= self.m()) {
            return Err(Error::invalid(format!("candidate {} out of range", c.0)));
        }
        Ok(())
    }
}

impl WeakInstance {
    pub fn expand(&self, r: u32) -> Result<ApprovalInstance> {
        Ok(Instance {
            profile: self.profile.expand(r)?,
            k: self.k,
        })
    }

    pub fn to_approval(&self) -> Result<ApprovalInstance> {
        Ok(Instance {
            profile: self.profile.to_approval()?,
            k: self.k,
        })
    }
}

impl ApprovalInstance {
    pub fn to_weak(&self) -> WeakInstance {
        Instance {
            profile: self.profile.to_weak(),
            k: self.k,
        }
    }
}

/// The group size `ell * n / k` entitling a group to `ell` seats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quota {
    ell: usize,
    n: usize,
    k: usize,
}

pub fn group_quota(ell: usize, n: usize, k: usize) -> Quota {
    assert!(k > 0, "committee size must be positive");
    Quota { ell, n, k }
}

impl Quota {
    pub fn value(&self) -> Rational {
        Rational::new(
            BigInt::from(self.ell) * BigInt::from(self.n),
            BigInt::from(self.k),
        )
    }

    /// Exact test `size >= ell * n / k`.
    #[inline]
    pub fn admits(&self, size: usize) -> bool {
        (size as u128) * (self.k as u128) >= (self.ell as u128) * (self.n as u128)
    }

    /// Smallest group size meeting the quota, `ceil(ell * n / k)`.
    pub fn min_size(&self) -> usize {
        (self.ell * self.n).div_ceil(self.k)
    }

    pub fn ell(&self) -> usize {
        self.ell
    }
}

/// Largest `ell` with `size >= ell * n / k`, i.e. `floor(size * k / n)`.
pub fn seats_deserved(size: usize, n: usize, k: usize) -> usize {
    if n == 0 {
        0
    } else {
        size * k / n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_2_1() -> WeakProfile {
        WeakProfile::from_orders(
            6,
            &[
                vec![vec![0], vec![1, 2, 3]],
                vec![vec![1, 2]],
                vec![vec![4], vec![3], vec![2]],
            ],
        )
        .unwrap()
    }

    #[test]
    fn ranks_follow_strictly_better_count() {
        let p = example_2_1();
        assert_eq!(p.rank(0, Candidate(0)), Some(1));
        for c in 1..4 {
            assert_eq!(p.rank(0, Candidate(c)), Some(2));
        }
        assert_eq!(p.rank(0, Candidate(4)), None);
        assert!(!p.is_strict());
        assert!(!p.is_dichotomous());
        assert!(p.ballot(1).is_dichotomous());
        assert!(p.ballot(2).is_strict());
    }

    #[test]
    fn expansion_at_rank_one() {
        let p = example_2_1();
        let a = p.expand(1).unwrap();
        assert_eq!(a.ballot(0), &[Candidate(0)]);
        assert_eq!(a.ballot(1), &[Candidate(1), Candidate(2)]);
        assert_eq!(a.ballot(2), &[Candidate(4)]);
    }

    #[test]
    fn expansion_of_dichotomous_profile_is_identity() {
        let a = ApprovalProfile::new(5, vec![vec![0, 3], vec![], vec![1, 2, 4]]).unwrap();
        let w = a.to_weak();
        for r in 1..=5 {
            assert_eq!(w.expand(r).unwrap(), a);
        }
    }

    #[test]
    fn full_expansion_of_strict_ranking() {
        let p = WeakProfile::from_rankings(4, &[vec![2, 0, 3, 1]]).unwrap();
        assert_eq!(p.expand(4).unwrap().ballot(0).len(), 4);
    }

    #[test]
    fn expansion_rank_out_of_range() {
        let p = example_2_1();
        assert!(matches!(p.expand(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(p.expand(7), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn competition_ranks_after_tie() {
        // Three candidates beat c4, so its rank is 4; rank 3 would be inconsistent.
        assert!(WeakProfile::from_ranks(4, vec![vec![(0, 1), (1, 2), (2, 2), (3, 4)]]).is_ok());
        let err = WeakProfile::from_ranks(4, vec![vec![(0, 1), (1, 2), (2, 2), (3, 3)]]).unwrap_err();
        match err {
            Error::InvalidProfile(errors) => {
                assert_eq!(
                    errors,
                    vec![BallotError {
                        voter: 0,
                        kind: BallotErrorKind::InconsistentRank {
                            candidate: 3,
                            rank: 3,
                            expected: 4
                        }
                    }]
                );
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn accepts_tie_and_empty_ballot() {
        let p = WeakProfile::from_ranks(3, vec![vec![(0, 1), (1, 2), (2, 2)], vec![]]).unwrap();
        assert_eq!(p.n(), 2);
        assert!(p.ballot(1).is_empty());
        assert!(p.acceptable_sets().ballot(1).is_empty());
    }

    #[test]
    fn reports_every_bad_voter() {
        let err = WeakProfile::from_ranks(
            3,
            vec![vec![(0, 0)], vec![(0, 1)], vec![(1, 1), (1, 2)], vec![(5, 1)]],
        )
        .unwrap_err();
        let Error::InvalidProfile(errors) = err else {
            panic!()
        };
        let voters: Vec<usize> = errors.iter().map(|e| e.voter).collect();
        assert_eq!(voters, vec![0, 2, 3]);
    }

    #[test]
    fn quota_values() {
        assert_eq!(group_quota(3, 8, 4).value(), Rational::from_integer(6.into()));
        assert_eq!(group_quota(1, 4, 2).value(), Rational::from_integer(2.into()));
        assert_eq!(group_quota(5, 7, 5).value(), Rational::from_integer(7.into()));
        let q = group_quota(1, 10, 3);
        assert!(!q.admits(3));
        assert!(q.admits(4));
        assert_eq!(q.min_size(), 4);
    }

    #[test]
    fn instance_bounds() {
        let a = ApprovalProfile::new(3, vec![vec![0]]).unwrap();
        assert!(Instance::new(a.clone(), 0).is_err());
        assert!(Instance::new(a.clone(), 4).is_err());
        assert!(Instance::new(a, 3).is_ok());
    }
}
