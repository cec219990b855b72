//! Small hand-made instances with known verdicts, used by tests, docs and
//! the CLI. Candidate `c1` is index 0 throughout.

use crate::profile::{ApprovalInstance, ApprovalProfile, Instance, WeakInstance, WeakProfile};

/// Approval profile given per candidate as lists of 1-based voter ids.
fn by_candidate(n: usize, approvers: &[&[usize]]) -> ApprovalProfile {
    let mut sets = vec![Vec::new(); n];
    for (c, voters) in approvers.iter().enumerate() {
        for &v in *voters {
            sets[v - 1].push(c);
        }
    }
    ApprovalProfile::new(approvers.len(), sets).expect("valid gallery profile")
}

/// Eight voters, seven candidates, `k = 4`. `{c1, c3, c5, c7}` satisfies EJR
/// but not EJR+ (witness `c4`, voters 2, 3, 5, 6, 7, 8, `ell = 3`); the
/// greedy justified rule elects `{c3, c4}`. Here `c3` is approved by voters
/// 1 to 6; see [`laminar_eight_wide`] for the variant where voter 7 also
/// approves it.
pub fn laminar_eight() -> ApprovalInstance {
    laminar(6)
}

/// [`laminar_eight`] with `c3` approved by voters 1 to 7. Voter 7 then has
/// three members of `{c1, c3, c5, c7}`, and that committee satisfies EJR+.
pub fn laminar_eight_wide() -> ApprovalInstance {
    laminar(7)
}

fn laminar(c3_last: usize) -> ApprovalInstance {
    let c3: Vec<usize> = (1..=c3_last).collect();
    let p = by_candidate(
        8,
        &[
            &[1, 2, 3, 4],
            &[1, 2, 3, 4],
            &c3,
            &[2, 3, 4, 5, 6, 7, 8],
            &[4, 5, 6, 7, 8],
            &[6, 7, 8],
            &[7, 8],
        ],
    );
    Instance::new(p, 4).unwrap()
}

/// Eight voters, seven candidates, `k = 4`. `{c1, c2, c3, c7}` satisfies EJR
/// but not EJR+ (witness `c5`, voters 4 to 7, `ell = 2`).
pub fn near_cohesive_eight() -> ApprovalInstance {
    let p = by_candidate(
        8,
        &[
            &[1, 2, 3],
            &[2, 3],
            &[3, 4, 5, 6],
            &[3, 4, 5, 6],
            &[4, 5, 6, 7],
            &[7, 8],
            &[8],
        ],
    );
    Instance::new(p, 4).unwrap()
}

/// `A_1 = {c1, c2}`, `A_2 = {c1, c3}`, `k = 2`. `{c2, c3}` is in the core
/// and PJR+ but violates EJR+ through `c1`.
pub fn shared_favourite() -> ApprovalInstance {
    let p = ApprovalProfile::new(3, vec![vec![0, 1], vec![0, 2]]).unwrap();
    Instance::new(p, 2).unwrap()
}

/// Three voters over six candidates with ties and unacceptable candidates:
/// `c1 > {c2, c3, c4}`, `{c2, c3}`, `c5 > c4 > c3`. Uses `k = 2`.
pub fn mixed_weak_three() -> WeakInstance {
    let p = WeakProfile::from_orders(
        6,
        &[
            vec![vec![0], vec![1, 2, 3]],
            vec![vec![1, 2]],
            vec![vec![4], vec![3], vec![2]],
        ],
    )
    .unwrap();
    Instance::new(p, 2).unwrap()
}

/// Three voters, nine candidates, `k = 6`. The committee
/// `{c1, c3, c5, c7, c8, c9}` satisfies generalized PSC but not IPSC.
pub fn contour_gap() -> WeakInstance {
    let p = WeakProfile::from_orders(
        9,
        &[
            vec![vec![0], vec![1, 2, 3], vec![6], vec![7]],
            vec![vec![0], vec![1, 4, 5], vec![7], vec![6]],
            vec![vec![6], vec![7], vec![8]],
        ],
    )
    .unwrap();
    Instance::new(p, 6).unwrap()
}

/// Four voters with strict rankings, `k = 2`, and no non-trivial solid
/// coalition. STV can elect `{c4, c6}`, which violates rank-PJR+.
pub fn no_solid_coalition() -> WeakInstance {
    let p = WeakProfile::from_rankings(
        6,
        &[
            vec![0, 1, 2, 3, 4, 5],
            vec![4, 1, 2, 3, 5, 0],
            vec![3, 2, 1, 5, 0, 4],
            vec![5, 2, 1, 4, 0, 3],
        ],
    )
    .unwrap();
    Instance::new(p, 2).unwrap()
}

/// Two voters, six candidates (c6 unranked), `k = 3`. `{c1, c4, c5}`
/// satisfies rank-PJR+ but admits no rank price system with `B > k`.
pub fn price_gap() -> WeakInstance {
    let p = WeakProfile::from_rankings(6, &[vec![0, 1, 3, 4, 2], vec![0, 2, 3, 4, 1]]).unwrap();
    Instance::new(p, 3).unwrap()
}

/// Candidate indices of [`stv_trap`].
pub mod trap {
    pub const C1: usize = 0;
    pub const C2: usize = 1;
    pub const C3: usize = 2;
    pub const D1: usize = 3;
    pub const E1: usize = 4;
    pub const E2: usize = 5;
    pub const E3: usize = 6;
    pub const E4: usize = 7;
}

/// Nine voters, `k = 3`: three voters share the candidates `c1, c2, c3`
/// in cyclic order, six voters rank `e1 > e2 > e3 > e4` first. Only
/// `{e1, e2}` plus one of `c1, c2, c3, d1` satisfies rank-PJR+.
pub fn stv_trap() -> WeakInstance {
    use trap::*;
    let e_block = vec![E1, E2, E3, E4, C1, C2, C3, D1];
    let mut rankings = vec![
        vec![C1, C2, C3, E1, E2, E3, E4, D1],
        vec![C2, C3, C1, E1, E2, E3, E4, D1],
        vec![C3, C1, D1, C2, E1, E2, E3, E4],
    ];
    rankings.extend(std::iter::repeat_n(e_block, 6));
    let p = WeakProfile::from_rankings(8, &rankings).unwrap();
    Instance::new(p, 3).unwrap()
}

/// Two voters with opposite extremes: `c1 > c2 > c3 > c4` and
/// `c4 > c2 > c3 > c1`, `k = 2`. No committee satisfies rank-EJR+.
pub fn rank_ejrp_empty() -> WeakInstance {
    let p = WeakProfile::from_rankings(4, &[vec![0, 1, 2, 3], vec![3, 1, 2, 0]]).unwrap();
    Instance::new(p, 2).unwrap()
}
