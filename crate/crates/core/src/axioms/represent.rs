use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::profile::{ApprovalInstance, Committee};

use super::{Axiom, Verdict, Witness};

/// Checks that every unelected `c` is `(f(ell), ell)`-represented: no group
/// of at least `ell * n / k` approvers of `c` averages fewer than `f(ell)`
/// approved committee members. The `ceil(ell * n / k)` least satisfied
/// approvers form the hardest group. `f[ell - 1]` holds `f(ell)`.
pub fn check_representative(instance: &ApprovalInstance, committee: &Committee, f: &[Rational]) -> Result<Verdict> {
    let k = instance.k;
    if f.len() < k {
        return Err(Error::invalid(format!("f table has {} entries, need one per ell in 1..={k}", f.len())));
    }
    let profile = &instance.profile;
    let sat = profile.satisfactions(committee);
    for c in committee.complement(instance.m()) {
        let mut group: Vec<usize> = profile.approvers(c).to_vec();
        group.sort_by_key(|&i| (sat[i], i));
        for ell in 1..=k {
            let size = instance.quota(ell).min_size();
            if size > group.len() || size == 0 {
                break;
            }
            let total: usize = group[..size].iter().map(|&i| sat[i]).sum();
            let avg = Rational::new(total.into(), size.into());
            if avg < f[ell - 1] {
                let mut voters = group[..size].to_vec();
                voters.sort_unstable();
                let mut w = Witness::new(Axiom::Representative, voters, ell).with_candidate(c);
                w.value = Some(avg);
                w.bound = Some(f[ell - 1].clone());
                return Ok(Verdict::Violated(w));
            }
        }
    }
    Ok(Verdict::Satisfied)
}

/// `f(ell) = (ell - 1) / 2` for `ell = 1..=k`.
pub fn half_degree(k: usize) -> Vec<Rational> {
    (1..=k).map(|l| Rational::new((l as i64 - 1).into(), 2.into())).collect()
}

/// `f(ell) = ell - 1` for `ell = 1..=k`.
pub fn full_degree(k: usize) -> Vec<Rational> {
    (1..=k).map(|l| Rational::from_integer((l as i64 - 1).into())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::profile::{ApprovalProfile, Instance};

    #[test]
    fn empty_committee_witness() {
        let p = ApprovalProfile::new(2, vec![vec![0], vec![0], vec![1], vec![]]).unwrap();
        let inst = Instance::new(p, 2).unwrap();
        let f = vec![rat(1, 2), rat(1, 1)];
        let v = check_representative(&inst, &Committee::empty(), &f).unwrap();
        let w = v.witness().unwrap();
        assert!(w.replays(&inst.to_weak(), &Committee::empty()));
        assert_eq!(w.value, Some(rat(0, 1)));
    }

    #[test]
    fn short_table_rejected() {
        let p = ApprovalProfile::new(2, vec![vec![0]]).unwrap();
        let inst = Instance::new(p, 2).unwrap();
        assert!(check_representative(&inst, &Committee::empty(), &[rat(0, 1)]).is_err());
    }
}
