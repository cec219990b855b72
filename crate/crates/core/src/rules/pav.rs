//! Proportional approval voting: exact branch and bound, and local search.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::profile::{ApprovalInstance, Candidate, Committee};

use super::{RuleOutput, TraceEvent};

/// Search nodes explored by [`pav_exact`] before giving up.
pub const PAV_NODE_LIMIT: u64 = 20_000_000;

/// Harmonic weights `L / j` for `j = 1..=k`, with `L = lcm(1..=k)`.
fn harmonic_weights(k: usize) -> (u128, Vec<u128>) {
    let l = (1..=k as u128).fold(1u128, |a, j| a.lcm(&j));
    (l, (1..=k as u128).map(|j| l / j).collect())
}

/// PAV score `sum_i H(|A_i ∩ W|)` as an exact rational.
pub fn pav_score(instance: &ApprovalInstance, committee: &Committee) -> Rational {
    instance
        .profile
        .satisfactions(committee)
        .into_iter()
        .map(|s| (1..=s).map(|j| Rational::new(1.into(), j.into())).sum::<Rational>())
        .sum()
}

struct Search<'a> {
    instance: &'a ApprovalInstance,
    weights: Vec<u128>,
    sat: Vec<usize>,
    chosen: Vec<Candidate>,
    best: u128,
    optima: Vec<Vec<Candidate>>,
    nodes: u64,
}

impl Search<'_> {
    fn gain(&self, c: Candidate) -> u128 {
        self.instance
            .profile
            .approvers(c)
            .iter()
            .map(|&i| self.weights.get(self.sat[i]).copied().unwrap_or(0))
            .sum()
    }

    fn run(&mut self, next: usize, score: u128) -> Result<()> {
        self.nodes += 1;
        if self.nodes > PAV_NODE_LIMIT {
            return Err(Error::TooLarge {
                what: "exact PAV search",
                detail: format!(
                    "more than {PAV_NODE_LIMIT} nodes for m = {}, k = {}",
                    self.instance.m(),
                    self.instance.k
                ),
                hint: Some("use ls-pav for a local-search committee"),
            });
        }
        let k = self.instance.k;
        let m = self.instance.m();
        let need = k - self.chosen.len();
        if need == 0 {
            if score > self.best {
                self.best = score;
                self.optima.clear();
            }
            if score == self.best {
                self.optima.push(self.chosen.clone());
            }
            return Ok(());
        }
        if m - next < need {
            return Ok(());
        }
        // Marginal gains only shrink as the committee grows, so the best
        // `need` current gains bound any completion.
        let mut gains: Vec<u128> = (next..m).map(|c| self.gain(Candidate(c))).collect();
        gains.sort_unstable_by(|a, b| b.cmp(a));
        let bound: u128 = score + gains[..need].iter().sum::<u128>();
        if bound < self.best {
            return Ok(());
        }
        let c = Candidate(next);
        let g = self.gain(c);
        for &i in self.instance.profile.approvers(c) {
            self.sat[i] += 1;
        }
        self.chosen.push(c);
        let res = self.run(next + 1, score + g);
        self.chosen.pop();
        for &i in self.instance.profile.approvers(c) {
            self.sat[i] -= 1;
        }
        res?;
        self.run(next + 1, score)
    }
}

/// All committees of size exactly `k` maximizing the PAV score, in
/// lexicographic order.
pub fn pav_exact(instance: &ApprovalInstance) -> Result<Vec<Committee>> {
    let (_, weights) = harmonic_weights(instance.k);
    let mut search = Search {
        instance,
        weights,
        sat: vec![0; instance.n()],
        chosen: Vec::new(),
        best: 0,
        optima: Vec::new(),
        nodes: 0,
    };
    search.run(0, 0)?;
    let mut out: Vec<Committee> = search.optima.into_iter().map(Committee::new).collect();
    out.sort();
    Ok(out)
}

/// Local-search PAV: start from sequential PAV, then apply single swaps
/// while one improves the score by more than `n / k^2`.
pub fn ls_pav(instance: &ApprovalInstance) -> RuleOutput {
    let profile = &instance.profile;
    let (n, m, k) = (instance.n(), instance.m(), instance.k);
    let (l, weights) = harmonic_weights(k);
    let w = |s: usize| weights.get(s).copied().unwrap_or(0);
    let mut sat = vec![0usize; n];
    let mut members = vec![false; m];
    let mut out = RuleOutput::default();

    for _ in 0..k {
        let c = (0..m)
            .filter(|&c| !members[c])
            .max_by(|&a, &b| {
                let ga: u128 = profile.approvers(Candidate(a)).iter().map(|&i| w(sat[i])).sum();
                let gb: u128 = profile.approvers(Candidate(b)).iter().map(|&i| w(sat[i])).sum();
                ga.cmp(&gb).then(b.cmp(&a))
            })
            .expect("k <= m");
        members[c] = true;
        for &i in profile.approvers(Candidate(c)) {
            sat[i] += 1;
        }
    }

    // Improvement threshold n / k^2 in units of 1 / l.
    let k2 = (k * k) as u128;
    let threshold_num = n as u128 * l;
    let score = |sat: &[usize]| -> u128 { sat.iter().map(|&s| (0..s).map(w).sum::<u128>()).sum() };
    let mut current = score(&sat);
    'improve: loop {
        for out_c in (0..m).filter(|&c| members[c]) {
            for &i in profile.approvers(Candidate(out_c)) {
                sat[i] -= 1;
            }
            for in_c in (0..m).filter(|&c| !members[c]) {
                for &i in profile.approvers(Candidate(in_c)) {
                    sat[i] += 1;
                }
                let s = score(&sat);
                if s > current && (s - current) * k2 > threshold_num {
                    members[out_c] = false;
                    members[in_c] = true;
                    current = s;
                    continue 'improve;
                }
                for &i in profile.approvers(Candidate(in_c)) {
                    sat[i] -= 1;
                }
            }
            for &i in profile.approvers(Candidate(out_c)) {
                sat[i] += 1;
            }
        }
        break;
    }
    for c in (0..m).filter(|&c| members[c]) {
        out.elect(Candidate(c));
        out.trace.push(TraceEvent::Elected {
            candidate: Candidate(c),
            rank: None,
            ell: None,
            price: None,
            supporters: profile.approvers(Candidate(c)).len(),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::gallery;
    use crate::profile::{ApprovalProfile, Instance};

    fn brute_force(instance: &ApprovalInstance) -> Vec<Committee> {
        let m = instance.m();
        let mut best = Rational::default();
        let mut out = Vec::new();
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize != instance.k {
                continue;
            }
            let w = Committee::from_indices((0..m).filter(|&c| mask >> c & 1 == 1));
            let s = pav_score(instance, &w);
            if out.is_empty() || s > best {
                best = s;
                out = vec![w];
            } else if s == best {
                out.push(w);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn shared_favourite_optima() {
        let inst = gallery::shared_favourite();
        assert_eq!(pav_score(&inst, &Committee::from_indices([0, 1])), rat(5, 2));
        assert_eq!(pav_score(&inst, &Committee::from_indices([1, 2])), rat(2, 1));
        assert_eq!(
            pav_exact(&inst).unwrap(),
            vec![Committee::from_indices([0, 1]), Committee::from_indices([0, 2])]
        );
    }

    #[test]
    fn disjoint_halves() {
        let p = ApprovalProfile::new(2, vec![vec![0], vec![0], vec![1], vec![1]]).unwrap();
        let inst = Instance::new(p, 2).unwrap();
        assert_eq!(pav_exact(&inst).unwrap(), vec![Committee::from_indices([0, 1])]);
    }

    #[test]
    fn matches_enumeration_on_gallery() {
        for inst in [gallery::laminar_eight(), gallery::near_cohesive_eight()] {
            assert_eq!(pav_exact(&inst).unwrap(), brute_force(&inst));
        }
    }

    #[test]
    fn ls_pav_fixed_points() {
        let p = ApprovalProfile::new(5, vec![vec![1, 3]; 4]).unwrap();
        let out = ls_pav(&Instance::new(p, 2).unwrap());
        assert_eq!(out.committee, Committee::from_indices([1, 3]));
        let p = ApprovalProfile::new(5, vec![vec![]; 3]).unwrap();
        let inst = Instance::new(p, 3).unwrap();
        let out = ls_pav(&inst);
        assert_eq!(out.committee.len(), 3);
        assert_eq!(pav_score(&inst, &out.committee), rat(0, 1));
    }

    #[test]
    fn ls_pav_is_near_optimal() {
        for inst in [gallery::laminar_eight(), gallery::near_cohesive_eight()] {
            let best = pav_score(&inst, &pav_exact(&inst).unwrap()[0]);
            let got = pav_score(&inst, &ls_pav(&inst).committee);
            assert!(got <= best);
        }
    }

    proptest::proptest! {
        #[test]
        fn exact_matches_enumeration(
            sets in proptest::collection::vec(proptest::collection::vec(0usize..7, 0..4), 1..9),
            k in 1usize..5,
        ) {
            let inst = Instance::new(ApprovalProfile::new(7, sets).unwrap(), k).unwrap();
            proptest::prop_assert_eq!(pav_exact(&inst).unwrap(), brute_force(&inst));
        }
    }
}
