//! Minimization of `w(union of item sets) - alpha * |S|` over subsets `S`
//! of a ground set, via a project-selection minimum cut.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::flow::FlowNetwork;
use super::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageMinimum {
    pub value: Rational,
    /// Inclusion-minimal minimizer, as sorted indices into the ground set.
    pub argmin: Vec<usize>,
}

/// Minimizes `f(S) = sum_{j in U(S)} weights[j] - alpha * |S|` where
/// `U(S)` is the union of `items[g]` for `g` in `S`. Weights and `alpha`
/// must be non-negative. The empty set gives `f = 0`, so the minimum is at
/// most zero.
pub fn min_coverage_minus_modular(
    items: &[Vec<usize>],
    weights: &[Rational],
    alpha: &Rational,
) -> CoverageMinimum {
    assert!(!alpha.is_negative(), "alpha must be non-negative");
    assert!(weights.iter().all(|w| !w.is_negative()), "negative weight");
    let ground = items.len();
    if ground == 0 || alpha.is_zero() {
        return CoverageMinimum {
            value: Rational::zero(),
            argmin: Vec::new(),
        };
    }

    let scale = weights
        .iter()
        .chain(std::iter::once(alpha))
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled = |q: &Rational| q.numer() * (&scale / q.denom());
    let total: BigInt =
        weights.iter().map(&scaled).sum::<BigInt>() + scaled(alpha) * BigInt::from(ground);

    let (cut, selected) = if total < BigInt::from(i64::MAX / 4) {
        let w: Vec<i64> = weights.iter().map(|q| scaled(q).to_i64().unwrap()).collect();
        let a = scaled(alpha).to_i64().unwrap();
        let (cut, sel) = solve(items, &w, a, total.to_i64().unwrap() + 1);
        (Rational::new(BigInt::from(cut), scale), sel)
    } else {
        let big = weights.iter().sum::<Rational>()
            + alpha * Rational::from_integer(BigInt::from(ground))
            + Rational::one();
        solve(items, weights, alpha.clone(), big)
    };

    CoverageMinimum {
        value: cut - alpha * Rational::from_integer(BigInt::from(ground)),
        argmin: selected,
    }
}

fn solve<T: super::flow::Capacity>(
    items: &[Vec<usize>],
    weights: &[T],
    alpha: T,
    infinity: T,
) -> (T, Vec<usize>) {
    let ground = items.len();
    let source = ground + weights.len();
    let sink = source + 1;
    let mut g = FlowNetwork::new(sink + 1, source, sink);
    for (v, its) in items.iter().enumerate() {
        g.add_arc(source, v, alpha.clone());
        for &j in its {
            g.add_arc(v, ground + j, infinity.clone());
        }
    }
    for (j, w) in weights.iter().enumerate() {
        if !w.is_zero() {
            g.add_arc(ground + j, sink, w.clone());
        }
    }
    let cut = g.max_flow();
    let side = g.source_side();
    (cut, (0..ground).filter(|&v| side[v]).collect())
}
