use num_traits::One;

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::profile::{Candidate, WeakInstance};

use super::{BudgetState, RuleOutput, TieBreak, TraceEvent};

/// Single transferable vote with the Hare quota and fractional transfer.
///
/// Voters start with `k / n` and support their top remaining candidate.
/// Candidates whose supporters hold at least 1 are elected and paid for in
/// proportion to remaining budgets; otherwise the candidate with the least
/// support is eliminated. Both choices among equals follow `tiebreak`.
pub fn stv(instance: &WeakInstance, tiebreak: &TieBreak) -> Result<RuleOutput> {
    let profile = &instance.profile;
    if !profile.is_strict() {
        return Err(Error::invalid("STV requires strict preferences"));
    }
    let (n, m, k) = (instance.n(), instance.m(), instance.k);
    let pos = tiebreak.positions(m);
    let mut budget = BudgetState::uniform(n, Rational::new(k.into(), n.max(1).into()));
    let mut out = RuleOutput::default();
    let mut remaining = vec![true; m];
    let one = Rational::one();

    let top = |remaining: &[bool], i: usize| {
        profile
            .ballot(i)
            .entries()
            .iter()
            .map(|&(c, _)| c)
            .find(|c| remaining[c.0])
    };

    while remaining.iter().any(|&r| r) {
        loop {
            let mut support = vec![Rational::default(); m];
            let mut backers: Vec<Vec<usize>> = vec![Vec::new(); m];
            for i in 0..n {
                if let Some(c) = top(&remaining, i) {
                    support[c.0] += &budget.budgets[i];
                    backers[c.0].push(i);
                }
            }
            let elected = (0..m)
                .map(Candidate)
                .filter(|&c| remaining[c.0] && support[c.0] >= one)
                .min_by_key(|c| pos[c.0]);
            if let Some(c) = elected {
                let total = &support[c.0];
                for &i in &backers[c.0] {
                    let pay = &budget.budgets[i] / total;
                    budget.charge(i, c, pay);
                }
                remaining[c.0] = false;
                out.elect(c);
                out.trace.push(TraceEvent::Elected {
                    candidate: c,
                    rank: None,
                    ell: None,
                    price: None,
                    supporters: backers[c.0].len(),
                });
                continue;
            }
            let loser = (0..m)
                .map(Candidate)
                .filter(|c| remaining[c.0])
                .min_by(|c, d| support[c.0].cmp(&support[d.0]).then(pos[c.0].cmp(&pos[d.0])));
            if let Some(c) = loser {
                remaining[c.0] = false;
                out.trace.push(TraceEvent::Eliminated {
                    candidate: c,
                    support: support[c.0].clone(),
                });
            }
            break;
        }
    }
    out.payments = budget.log;
    Ok(out)
}
