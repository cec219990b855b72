use crate::error::{Error, Result};
use crate::profile::{ApprovalInstance, Candidate, Committee, Instance};

use super::{gjcr, TieBreak};

/// A committee for size `k` and one extra candidate for size `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonePair {
    pub committee: Committee,
    pub extra: Candidate,
}

/// Builds `W` (EJR+ at size `k`) and `c` such that `W ∪ {c}` is EJR+ at
/// size `k + 1`, from a greedy justified run at size `k + 1`. If that run
/// fills all `k + 1` seats, its last pick becomes `c`; otherwise the run
/// is padded to `k` members and any remaining candidate serves as `c`.
pub fn ejrp_monotone_pair(instance: &ApprovalInstance, tiebreak: &TieBreak) -> Result<MonotonePair> {
    let (m, k) = (instance.m(), instance.k);
    if k >= m {
        return Err(Error::invalid(format!("need k < m, got k = {k}, m = {m}")));
    }
    let bigger = Instance::new(instance.profile.clone(), k + 1)?;
    let run = gjcr(&bigger, tiebreak);
    let pos = tiebreak.positions(m);
    if run.order.len() == k + 1 {
        let extra = run.order[k];
        return Ok(MonotonePair {
            committee: Committee::new(run.order[..k].iter().copied()),
            extra,
        });
    }
    let mut committee = run.committee;
    let mut rest: Vec<Candidate> = (0..m).map(Candidate).filter(|&c| !committee.contains(c)).collect();
    rest.sort_by_key(|c| pos[c.0]);
    let mut rest = rest.into_iter();
    while committee.len() < k {
        committee.insert(rest.next().expect("k < m"));
    }
    let extra = rest.next().expect("k < m");
    Ok(MonotonePair { committee, extra })
}
