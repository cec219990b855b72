//! Query-model simulators for the greedy justified candidate rule.
//!
//! The simulators see the electorate only through a query interface. In
//! the exact model a query on `C'` returns, for every subset of `C'`, the
//! number of voters whose approvals inside `C'` are exactly that subset.
//! In the noisy model a query returns `A_i ∩ C'` for one voter `i` drawn
//! uniformly at random.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::check_ejrp;
use crate::error::{Error, Result};
use crate::profile::{group_quota, ApprovalInstance, ApprovalProfile, Candidate, Committee};
use crate::rules::TieBreak;
use crate::sampling::stream_rng;

/// Exact-model access to a hidden profile.
pub trait ExactQuery {
    fn candidates(&self) -> usize;
    /// Voter counts per exact intersection pattern; patterns are sorted.
    fn query(&mut self, subset: &[Candidate]) -> Vec<(Vec<Candidate>, usize)>;
}

/// Noisy-model access to a hidden profile.
pub trait NoisyQuery {
    fn candidates(&self) -> usize;
    /// `A_i ∩ subset` for a uniformly random voter `i`, sorted.
    fn query(&mut self, subset: &[Candidate]) -> Vec<Candidate>;
}

/// A profile behind both query interfaces. The noisy model draws voters
/// from its own seeded generator.
pub struct HiddenProfile<'a> {
    profile: &'a ApprovalProfile,
    rng: ChaCha8Rng,
    mask: Vec<bool>,
}

impl<'a> HiddenProfile<'a> {
    pub fn new(profile: &'a ApprovalProfile, seed: u64) -> Self {
        Self::with_rng(profile, ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn with_rng(profile: &'a ApprovalProfile, rng: ChaCha8Rng) -> Self {
        HiddenProfile {
            profile,
            rng,
            mask: vec![false; profile.m()],
        }
    }

    fn intersect(&mut self, voter: usize, subset: &[Candidate]) -> Vec<Candidate> {
        for c in subset {
            self.mask[c.0] = true;
        }
        let out = self
            .profile
            .ballot(voter)
            .iter()
            .copied()
            .filter(|c| self.mask[c.0])
            .collect();
        for c in subset {
            self.mask[c.0] = false;
        }
        out
    }
}

impl ExactQuery for HiddenProfile<'_> {
    fn candidates(&self) -> usize {
        self.profile.m()
    }

    fn query(&mut self, subset: &[Candidate]) -> Vec<(Vec<Candidate>, usize)> {
        let mut counts: BTreeMap<Vec<Candidate>, usize> = BTreeMap::new();
        for i in 0..self.profile.n() {
            *counts.entry(self.intersect(i, subset)).or_default() += 1;
        }
        counts.into_iter().collect()
    }
}

impl NoisyQuery for HiddenProfile<'_> {
    fn candidates(&self) -> usize {
        self.profile.m()
    }

    fn query(&mut self, subset: &[Candidate]) -> Vec<Candidate> {
        let i = self.rng.random_range(0..self.profile.n());
        self.intersect(i, subset)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryMode {
    Exact,
    Noisy,
}

/// One queried set and how many times it was queried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QueryBatch {
    pub size: usize,
    pub repetitions: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QueryLedger {
    pub mode: QueryMode,
    pub batches: Vec<QueryBatch>,
}

impl QueryLedger {
    fn new(mode: QueryMode) -> Self {
        QueryLedger {
            mode,
            batches: Vec::new(),
        }
    }

    pub fn total(&self) -> u64 {
        self.batches.iter().map(|b| b.repetitions).sum()
    }

    pub fn max_size(&self) -> usize {
        self.batches.iter().map(|b| b.size).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QueryOutcome {
    pub committee: Committee,
    /// Elected candidates in order, each with the `ell` it was elected at.
    pub picks: Vec<(Candidate, usize)>,
    pub ledger: QueryLedger,
    /// Number of partition rounds performed.
    pub rounds: usize,
}

/// `ceil((m - i) / (k - i))` sets of at most `k - i` candidates each.
fn partition(rest: &[Candidate], i: usize, k: usize) -> Vec<&[Candidate]> {
    rest.chunks(k - i).collect()
}

/// `sum_{i < rounds} ceil((m - i) / (k - i))`, the exact-model query count
/// after `rounds` rounds.
pub fn exact_query_count(m: usize, k: usize, rounds: usize) -> u64 {
    (0..rounds.min(k)).map(|i| (m - i).div_ceil(k - i) as u64).sum()
}

/// The greedy justified candidate rule run through exact queries of size
/// at most `k`. Each round partitions the unelected candidates, queries
/// every cell together with the committee, and elects what the rule would
/// elect next; the result equals [`crate::rules::gjcr`] with the same
/// tie-break.
pub fn exact_query_gjcr(oracle: &mut impl ExactQuery, k: usize, tiebreak: &TieBreak) -> QueryOutcome {
    let m = oracle.candidates();
    let pos = tiebreak.positions(m);
    let mut out = QueryOutcome {
        committee: Committee::empty(),
        picks: Vec::new(),
        ledger: QueryLedger::new(QueryMode::Exact),
        rounds: 0,
    };
    let mut ell = k;
    while out.committee.len() < k && ell >= 1 {
        let i = out.committee.len();
        let rest: Vec<Candidate> = out.committee.complement(m).collect();
        if rest.is_empty() {
            break;
        }
        out.rounds += 1;
        // supporters[c][s]: voters approving c with exactly s members of W.
        let mut supporters: Vec<Vec<usize>> = vec![vec![0; i + 1]; m];
        let mut n = 0;
        for cell in partition(&rest, i, k) {
            let mut subset: Vec<Candidate> = out.committee.members().to_vec();
            subset.extend_from_slice(cell);
            out.ledger.batches.push(QueryBatch {
                size: subset.len(),
                repetitions: 1,
            });
            n = 0;
            for (pattern, count) in oracle.query(&subset) {
                n += count;
                let s = pattern.iter().filter(|c| out.committee.contains(**c)).count();
                for c in pattern.iter().filter(|c| !out.committee.contains(**c)) {
                    supporters[c.0][s] += count;
                }
            }
        }
        let pick = (1..=ell).rev().find_map(|l| {
            let quota = group_quota(l, n, k);
            rest.iter()
                .copied()
                .filter(|c| quota.admits(supporters[c.0][..l.min(i + 1)].iter().sum()))
                .min_by_key(|c| pos[c.0])
                .map(|c| (c, l))
        });
        let Some((c, l)) = pick else { break };
        ell = l;
        out.committee.insert(c);
        out.picks.push((c, l));
    }
    out
}

/// Samples per queried set: `ceil(2 ln(m k / delta) (2 k (k + 1))^2)`.
pub fn noisy_sample_count(m: usize, k: usize, delta: f64) -> u64 {
    let kk = (2 * k * (k + 1)) as f64;
    (2.0 * ((m * k) as f64 / delta).ln() * kk * kk).ceil() as u64
}

/// The noisy greedy justified candidate rule. Every round queries each
/// partition cell `h` times; `a_c` counts sampled approvers of `c` with
/// fewer than `ell` committee members. A candidate with
/// `a_c / h >= ell (2k + 1) / (2k (k + 1))` is elected (the tie-break picks
/// among several); otherwise `ell` drops, against the same counts, until
/// some candidate passes, and the next round samples afresh.
pub fn noisy_gjcr(oracle: &mut impl NoisyQuery, k: usize, delta: f64, tiebreak: &TieBreak) -> Result<QueryOutcome> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid(format!("delta = {delta} must lie in (0, 1)")));
    }
    let m = oracle.candidates();
    let pos = tiebreak.positions(m);
    let h = noisy_sample_count(m, k, delta);
    let mut out = QueryOutcome {
        committee: Committee::empty(),
        picks: Vec::new(),
        ledger: QueryLedger::new(QueryMode::Noisy),
        rounds: 0,
    };
    // a_c / h >= ell (2k+1) / (2k(k+1))  <=>  a_c 2k(k+1) >= ell (2k+1) h
    let passes = |a: u64, ell: usize| {
        a as u128 * (2 * k * (k + 1)) as u128 >= (ell * (2 * k + 1)) as u128 * h as u128
    };
    let mut ell = k;
    while ell >= 1 && out.committee.len() < k {
        let i = out.committee.len();
        let rest: Vec<Candidate> = out.committee.complement(m).collect();
        if rest.is_empty() {
            break;
        }
        out.rounds += 1;
        let mut a = vec![0u64; m];
        for cell in partition(&rest, i, k) {
            let mut subset: Vec<Candidate> = out.committee.members().to_vec();
            subset.extend_from_slice(cell);
            out.ledger.batches.push(QueryBatch {
                size: subset.len(),
                repetitions: h,
            });
            for _ in 0..h {
                let answer = oracle.query(&subset);
                let s = answer.iter().filter(|c| out.committee.contains(**c)).count();
                if s < ell {
                    for c in answer.iter().filter(|c| !out.committee.contains(**c)) {
                        a[c.0] += 1;
                    }
                }
            }
        }
        let best = |ell: usize| {
            rest.iter()
                .copied()
                .filter(|c| passes(a[c.0], ell))
                .min_by_key(|c| pos[c.0])
        };
        if let Some(c) = best(ell) {
            out.committee.insert(c);
            out.picks.push((c, ell));
        } else {
            while ell >= 1 && best(ell).is_none() {
                ell -= 1;
            }
        }
    }
    Ok(out)
}

/// One simulated run on a hidden instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trial {
    pub trial: usize,
    pub committee: Committee,
    pub ejrp: bool,
    pub queries: u64,
    pub max_query_size: usize,
}

/// Runs `trials` independent simulations in parallel. Trial `t` uses
/// stream `t` of `seed`, so results do not depend on the thread count.
pub fn simulate(
    instance: &ApprovalInstance,
    mode: QueryMode,
    delta: f64,
    trials: usize,
    seed: u64,
    tiebreak: &TieBreak,
) -> Result<Vec<Trial>> {
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut oracle = HiddenProfile::with_rng(&instance.profile, stream_rng(seed, t as u64));
            let out = match mode {
                QueryMode::Exact => exact_query_gjcr(&mut oracle, instance.k, tiebreak),
                QueryMode::Noisy => noisy_gjcr(&mut oracle, instance.k, delta, tiebreak)?,
            };
            Ok(Trial {
                trial: t,
                ejrp: check_ejrp(instance, &out.committee).is_satisfied(),
                queries: out.ledger.total(),
                max_query_size: out.ledger.max_size(),
                committee: out.committee,
            })
        })
        .collect()
}
