//! Seeded statistical cultures for approval ballots and strict rankings.
//!
//! Every sampler draws from a [`ChaCha8Rng`] seeded with the culture's seed,
//! so equal cultures give equal profiles on every platform and thread count.
//! Experiments derive per-instance generators with [`stream_rng`].

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::profile::{ApprovalProfile, Committee, Instance, Profile, WeakProfile};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Model {
    /// Each approval is kept from a central ballot of size `floor(p m)`
    /// with probability `1 - phi`, otherwise redrawn as Bernoulli(`p`).
    Resampling { p: f64, phi: f64 },
    /// Resampling around one of `g` near-even blocks of candidates, chosen
    /// uniformly per voter.
    Disjoint { p: f64, phi: f64, g: usize },
    /// Ballots drawn with probability proportional to `phi^d`, `d` the
    /// Hamming distance to a central ballot of size `floor(p m)`.
    Noise { p: f64, phi: f64 },
    /// Urn rankings truncated to their top `floor(p m)`.
    TruncatedUrn { p: f64, alpha: f64 },
    /// Mallows rankings around the identity with dispersion `phi`.
    Mallows { phi: f64 },
    /// Pólya-Eggenberger urn: each drawn ranking adds `alpha * m!` copies.
    Urn { alpha: f64 },
    /// Voters and candidates uniform in the unit `dim`-ball, ranked by distance.
    Sphere { dim: usize },
    /// Voters and candidates uniform in `[0, 1]^dim`, ranked by distance.
    Cube { dim: usize },
}

/// Optional parameters, as collected from a command line or config file.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ModelParams {
    pub p: Option<f64>,
    pub phi: Option<f64>,
    pub g: Option<usize>,
    pub alpha: Option<f64>,
    pub dim: Option<usize>,
}

impl Model {
    pub const NAMES: [&'static str; 8] = [
        "resampling",
        "disjoint",
        "noise",
        "truncated_urn",
        "mallows",
        "urn",
        "sphere",
        "cube",
    ];

    pub fn build(name: &str, params: &ModelParams) -> Result<Model> {
        fn need<T>(v: Option<T>, name: &str, model: &str) -> Result<T> {
            v.ok_or_else(|| Error::invalid(format!("model {model} needs --{name}")))
        }
        let model = match name {
            "resampling" => Model::Resampling {
                p: need(params.p, "p", name)?,
                phi: need(params.phi, "phi", name)?,
            },
            "disjoint" => Model::Disjoint {
                p: need(params.p, "p", name)?,
                phi: need(params.phi, "phi", name)?,
                g: need(params.g, "g", name)?,
            },
            "noise" => Model::Noise {
                p: need(params.p, "p", name)?,
                phi: need(params.phi, "phi", name)?,
            },
            "truncated_urn" => Model::TruncatedUrn {
                p: need(params.p, "p", name)?,
                alpha: need(params.alpha, "alpha", name)?,
            },
            "mallows" => Model::Mallows {
                phi: need(params.phi, "phi", name)?,
            },
            "urn" => Model::Urn {
                alpha: need(params.alpha, "alpha", name)?,
            },
            "sphere" => Model::Sphere {
                dim: need(params.dim, "dim", name)?,
            },
            "cube" => Model::Cube {
                dim: need(params.dim, "dim", name)?,
            },
            _ => {
                return Err(Error::invalid(format!(
                    "unknown model '{name}', expected one of {}",
                    Model::NAMES.join(", ")
                )))
            }
        };
        model.validate()?;
        Ok(model)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::Resampling { .. } => "resampling",
            Model::Disjoint { .. } => "disjoint",
            Model::Noise { .. } => "noise",
            Model::TruncatedUrn { .. } => "truncated_urn",
            Model::Mallows { .. } => "mallows",
            Model::Urn { .. } => "urn",
            Model::Sphere { .. } => "sphere",
            Model::Cube { .. } => "cube",
        }
    }

    /// Whether the model produces approval ballots rather than rankings.
    pub fn is_approval(&self) -> bool {
        matches!(
            self,
            Model::Resampling { .. } | Model::Disjoint { .. } | Model::Noise { .. } | Model::TruncatedUrn { .. }
        )
    }

    pub fn params(&self) -> ModelParams {
        let mut out = ModelParams::default();
        match *self {
            Model::Resampling { p, phi } | Model::Noise { p, phi } => {
                out.p = Some(p);
                out.phi = Some(phi);
            }
            Model::Disjoint { p, phi, g } => {
                out.p = Some(p);
                out.phi = Some(phi);
                out.g = Some(g);
            }
            Model::TruncatedUrn { p, alpha } => {
                out.p = Some(p);
                out.alpha = Some(alpha);
            }
            Model::Mallows { phi } => out.phi = Some(phi),
            Model::Urn { alpha } => out.alpha = Some(alpha),
            Model::Sphere { dim } | Model::Cube { dim } => out.dim = Some(dim),
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.params();
        let unit = |v: Option<f64>, what: &str| match v {
            Some(x) if !(0.0..=1.0).contains(&x) => {
                Err(Error::invalid(format!("{what} = {x} must lie in [0, 1]")))
            }
            _ => Ok(()),
        };
        unit(p.p, "p")?;
        unit(p.phi, "phi")?;
        if let Some(a) = p.alpha {
            if !(a >= 0.0 && a.is_finite()) {
                return Err(Error::invalid(format!("alpha = {a} must be non-negative")));
            }
        }
        if p.g == Some(0) {
            return Err(Error::invalid("g must be at least 1"));
        }
        if p.dim == Some(0) {
            return Err(Error::invalid("dim must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CultureSpec {
    #[serde(flatten)]
    pub model: Model,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

impl CultureSpec {
    pub fn new(model: Model, n: usize, m: usize, seed: u64) -> Result<Self> {
        model.validate()?;
        if n == 0 || m == 0 {
            return Err(Error::invalid("n and m must be positive"));
        }
        if let Model::Disjoint { g, .. } = model {
            if g > m {
                return Err(Error::invalid(format!("g = {g} exceeds m = {m}")));
            }
        }
        Ok(CultureSpec { model, n, m, seed })
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// A generator for sub-stream `stream` of `seed`. Distinct streams are
/// independent and do not depend on how many values other streams drew.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A profile drawn from either family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sampled {
    Approval(ApprovalProfile),
    Ranking(WeakProfile),
}

pub fn sample(spec: &CultureSpec) -> Result<Sampled> {
    if spec.model.is_approval() {
        sample_approval(spec).map(Sampled::Approval)
    } else {
        sample_ranking(spec).map(Sampled::Ranking)
    }
}

fn approval_size(p: f64, m: usize) -> usize {
    ((p * m as f64).floor() as usize).min(m)
}

fn random_ballot(rng: &mut impl Rng, m: usize, size: usize) -> Vec<bool> {
    let mut ballot = vec![false; m];
    for c in index::sample(rng, m, size) {
        ballot[c] = true;
    }
    ballot
}

fn resample(rng: &mut impl Rng, center: &[bool], p: f64, phi: f64) -> Vec<usize> {
    (0..center.len())
        .filter(|&c| {
            if rng.random_bool(phi) {
                rng.random_bool(p)
            } else {
                center[c]
            }
        })
        .collect()
}

/// Blocks of sizes `floor(m/g)` or `ceil(m/g)` over a random permutation.
pub fn near_even_blocks(rng: &mut impl Rng, m: usize, g: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    let (base, extra) = (m / g, m % g);
    let mut out = Vec::with_capacity(g);
    let mut start = 0;
    for j in 0..g {
        let len = base + usize::from(j < extra);
        let mut block = perm[start..start + len].to_vec();
        block.sort_unstable();
        out.push(block);
        start += len;
    }
    out
}

pub fn sample_approval(spec: &CultureSpec) -> Result<ApprovalProfile> {
    let (n, m) = (spec.n, spec.m);
    let mut rng = spec.rng();
    let sets: Vec<Vec<usize>> = match spec.model {
        Model::Resampling { p, phi } => {
            let center = random_ballot(&mut rng, m, approval_size(p, m));
            (0..n).map(|_| resample(&mut rng, &center, p, phi)).collect()
        }
        Model::Disjoint { p, phi, g } => {
            let blocks = near_even_blocks(&mut rng, m, g);
            let centers: Vec<Vec<bool>> = blocks
                .iter()
                .map(|b| (0..m).map(|c| b.contains(&c)).collect())
                .collect();
            (0..n)
                .map(|_| {
                    let j = rng.random_range(0..g);
                    resample(&mut rng, &centers[j], p, phi)
                })
                .collect()
        }
        Model::Noise { p, phi } => {
            // phi^d over Hamming distance factorizes into independent flips.
            let flip = phi / (1.0 + phi);
            let center = random_ballot(&mut rng, m, approval_size(p, m));
            (0..n)
                .map(|_| (0..m).filter(|&c| center[c] != rng.random_bool(flip)).collect())
                .collect()
        }
        Model::TruncatedUrn { p, alpha } => {
            let size = approval_size(p, m);
            urn_rankings(&mut rng, n, m, alpha)
                .into_iter()
                .map(|r| {
                    let mut top = r[..size].to_vec();
                    top.sort_unstable();
                    top
                })
                .collect()
        }
        _ => {
            return Err(Error::invalid(format!(
                "{} does not produce approval ballots",
                spec.model.name()
            )))
        }
    };
    ApprovalProfile::new(m, sets)
}

pub fn sample_ranking(spec: &CultureSpec) -> Result<WeakProfile> {
    let (n, m) = (spec.n, spec.m);
    let mut rng = spec.rng();
    let rankings = match spec.model {
        Model::Mallows { phi } => (0..n).map(|_| mallows_ranking(&mut rng, m, phi)).collect(),
        Model::Urn { alpha } => urn_rankings(&mut rng, n, m, alpha),
        Model::Sphere { .. } | Model::Cube { .. } => {
            let (voters, cands) = euclidean_points(spec)?;
            voters.iter().map(|v| rank_by_distance(v, &cands)).collect()
        }
        _ => {
            return Err(Error::invalid(format!(
                "{} does not produce rankings",
                spec.model.name()
            )))
        }
    };
    WeakProfile::from_rankings(m, &rankings)
}

/// Repeated insertion: the `i`-th reference candidate is placed `j` slots
/// before the end with probability proportional to `phi^j`.
fn mallows_ranking(rng: &mut impl Rng, m: usize, phi: f64) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(m);
    for i in 0..m {
        let weights: Vec<f64> = (0..=i).map(|j| phi.powi((i - j) as i32)).collect();
        let pos = WeightedIndex::new(&weights).expect("positive weight at the end").sample(rng);
        out.insert(pos, i);
    }
    out
}

/// Voter `j` (0-based) copies an earlier voter's ranking with probability
/// `alpha j / (1 + alpha j)`, otherwise draws a fresh uniform one.
fn urn_rankings(rng: &mut impl Rng, n: usize, m: usize, alpha: f64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(n);
    for j in 0..n {
        let weight = alpha * j as f64;
        if j > 0 && rng.random_bool(weight / (1.0 + weight)) {
            let src = rng.random_range(0..j);
            out.push(out[src].clone());
        } else {
            let mut r: Vec<usize> = (0..m).collect();
            r.shuffle(rng);
            out.push(r);
        }
    }
    out
}

/// Voter and candidate positions of a Euclidean spec, in that order.
pub fn euclidean_points(spec: &CultureSpec) -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    let mut rng = spec.rng();
    let (dim, ball) = match spec.model {
        Model::Sphere { dim } => (dim, true),
        Model::Cube { dim } => (dim, false),
        _ => return Err(Error::invalid(format!("{} is not Euclidean", spec.model.name()))),
    };
    let point = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        if ball {
            let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let radius = rng.random::<f64>().powf(1.0 / dim as f64);
            v.into_iter().map(|x| x / norm * radius).collect()
        } else {
            (0..dim).map(|_| rng.random::<f64>()).collect()
        }
    };
    let voters = (0..spec.n).map(|_| point(&mut rng)).collect();
    let cands = (0..spec.m).map(|_| point(&mut rng)).collect();
    Ok((voters, cands))
}

/// Candidates by increasing distance; equal distances by index.
pub fn rank_by_distance(voter: &[f64], cands: &[Vec<f64>]) -> Vec<usize> {
    let dist: Vec<f64> = cands
        .iter()
        .map(|c| c.iter().zip(voter).map(|(a, b)| (a - b) * (a - b)).sum())
        .collect();
    let mut order: Vec<usize> = (0..cands.len()).collect();
    order.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));
    order
}

/// A uniformly random committee of exactly `k` candidates.
pub fn sample_committee<P: Profile>(instance: &Instance<P>, seed: u64) -> Committee {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_committee(&mut rng, instance.m(), instance.k)
}

pub fn random_committee(rng: &mut impl Rng, m: usize, k: usize) -> Committee {
    Committee::from_indices(index::sample(rng, m, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(model: Model, n: usize, m: usize, seed: u64) -> CultureSpec {
        CultureSpec::new(model, n, m, seed).unwrap()
    }

    fn sizes(p: &ApprovalProfile) -> Vec<usize> {
        p.ballots().iter().map(|b| b.len()).collect()
    }

    fn mean(xs: &[usize]) -> f64 {
        xs.iter().sum::<usize>() as f64 / xs.len() as f64
    }

    #[test]
    fn resampling_without_noise_copies_center() {
        let p = sample_approval(&spec(Model::Resampling { p: 0.4, phi: 0.0 }, 30, 50, 1)).unwrap();
        assert!(p.ballots().iter().all(|b| b == &p.ballots()[0]));
        assert_eq!(p.ballot(0).len(), 20);
    }

    #[test]
    fn resampling_mean_size() {
        // Per voter: 20 entries kept w.p. 0.7 and 30 w.p. 0.2, mean 20, variance 9.
        let n = 2000;
        let p = sample_approval(&spec(Model::Resampling { p: 0.4, phi: 0.5 }, n, 50, 7)).unwrap();
        let sigma = (9.0 / n as f64).sqrt();
        assert!((mean(&sizes(&p)) - 20.0).abs() < 3.0 * sigma);
    }

    #[test]
    fn full_resampling_is_impartial() {
        let n = 2000;
        let p = sample_approval(&spec(Model::Resampling { p: 0.3, phi: 1.0 }, n, 20, 3)).unwrap();
        let sigma = (20.0 * 0.3 * 0.7 / n as f64).sqrt();
        assert!((mean(&sizes(&p)) - 6.0).abs() < 3.0 * sigma);
        // Candidate frequencies are flat.
        for c in 0..20 {
            let freq = p.approvers(crate::Candidate(c)).len() as f64 / n as f64;
            assert!((freq - 0.3).abs() < 4.0 * (0.21 / n as f64).sqrt());
        }
    }

    #[test]
    fn disjoint_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let blocks = near_even_blocks(&mut rng, 10, 3);
        let mut lens: Vec<usize> = blocks.iter().map(Vec::len).collect();
        lens.sort_unstable();
        assert_eq!(lens, vec![3, 3, 4]);
        let mut all: Vec<usize> = blocks.concat();
        all.sort_unstable();
        assert_eq!(all, (0..10).collect::<Vec<_>>());

        let p = sample_approval(&spec(Model::Disjoint { p: 0.5, phi: 0.0, g: 3 }, 40, 10, 5)).unwrap();
        let mut seen: Vec<&Vec<crate::Candidate>> = p.ballots().iter().collect();
        seen.sort();
        seen.dedup();
        assert!(seen.len() <= 3);
        assert!(seen.iter().all(|b| b.len() == 3 || b.len() == 4));
    }

    #[test]
    fn noise_flips() {
        let p0 = sample_approval(&spec(Model::Noise { p: 0.5, phi: 0.0 }, 20, 30, 2)).unwrap();
        assert!(p0.ballots().iter().all(|b| b == &p0.ballots()[0]));
        // phi = 1 flips each entry with probability 1/2.
        let n = 2000;
        let p1 = sample_approval(&spec(Model::Noise { p: 0.2, phi: 1.0 }, n, 30, 2)).unwrap();
        let sigma = (30.0 * 0.25 / n as f64).sqrt();
        assert!((mean(&sizes(&p1)) - 15.0).abs() < 3.0 * sigma);
    }

    #[test]
    fn truncated_urn_sizes() {
        let p = sample_approval(&spec(Model::TruncatedUrn { p: 0.3, alpha: 0.5 }, 50, 17, 9)).unwrap();
        assert!(sizes(&p).iter().all(|&s| s == 5));
    }

    #[test]
    fn mallows_zero_dispersion_is_identity() {
        let p = sample_ranking(&spec(Model::Mallows { phi: 0.0 }, 10, 6, 4)).unwrap();
        let identity: Vec<(usize, u32)> = (0..6).map(|c| (c, c as u32 + 1)).collect();
        assert!(p.to_ranks().iter().all(|b| *b == identity));
    }

    fn kendall_from_identity(r: &[usize]) -> usize {
        (0..r.len())
            .flat_map(|a| (a + 1..r.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| r[a] > r[b])
            .count()
    }

    fn order(ranks: &[(usize, u32)]) -> Vec<usize> {
        ranks.iter().map(|&(c, _)| c).collect()
    }

    #[test]
    fn mallows_distance_distribution() {
        let (m, phi, n) = (4usize, 0.5f64, 20_000usize);
        // Exact weights by enumerating all permutations.
        let mut expected = vec![0.0; 7];
        let mut perm: Vec<usize> = (0..m).collect();
        let mut all = vec![perm.clone()];
        while next_permutation(&mut perm) {
            all.push(perm.clone());
        }
        for p in &all {
            expected[kendall_from_identity(p)] += phi.powi(kendall_from_identity(p) as i32);
        }
        let z: f64 = expected.iter().sum();
        let p = sample_ranking(&spec(Model::Mallows { phi }, n, m, 11)).unwrap();
        let mut counts = vec![0usize; 7];
        for b in p.to_ranks() {
            counts[kendall_from_identity(&order(&b))] += 1;
        }
        for d in 0..7 {
            let q = expected[d] / z;
            let sigma = (q * (1.0 - q) / n as f64).sqrt();
            let freq = counts[d] as f64 / n as f64;
            assert!((freq - q).abs() < 4.0 * sigma, "d={d}: {freq} vs {q}");
        }
    }

    fn next_permutation(v: &mut [usize]) -> bool {
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            return false;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    #[test]
    fn urn_without_reinforcement_is_uniform() {
        let n = 12_000;
        let p = sample_ranking(&spec(Model::Urn { alpha: 0.0 }, n, 3, 8)).unwrap();
        let mut counts = std::collections::HashMap::new();
        for b in p.to_ranks() {
            *counts.entry(order(&b)).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 6);
        let sigma = (n as f64 * (1.0 / 6.0) * (5.0 / 6.0)).sqrt();
        assert!(counts.values().all(|&c| (c as f64 - n as f64 / 6.0).abs() < 4.0 * sigma));
    }

    #[test]
    fn urn_reinforcement_copies() {
        let p = sample_ranking(&spec(Model::Urn { alpha: 1000.0 }, 50, 8, 8)).unwrap();
        let ranks = p.to_ranks();
        let same = ranks.iter().filter(|b| **b == ranks[0]).count();
        assert!(same > 40);
    }

    #[test]
    fn cube_ranks_match_positions() {
        let s = spec(Model::Cube { dim: 1 }, 5, 3, 21);
        let (voters, cands) = euclidean_points(&s).unwrap();
        assert!(cands.iter().chain(&voters).all(|x| x.len() == 1 && (0.0..1.0).contains(&x[0])));
        let p = sample_ranking(&s).unwrap();
        for (i, v) in voters.iter().enumerate() {
            let mut by_hand: Vec<(f64, usize)> = cands.iter().enumerate().map(|(c, x)| ((x[0] - v[0]).abs(), c)).collect();
            by_hand.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
            let hand: Vec<usize> = by_hand.into_iter().map(|(_, c)| c).collect();
            assert_eq!(order(&p.to_ranks()[i]), hand);
        }
    }

    #[test]
    fn sphere_points_inside_ball() {
        let s = spec(Model::Sphere { dim: 3 }, 200, 10, 1);
        let (voters, _) = euclidean_points(&s).unwrap();
        assert!(voters.iter().all(|v| v.iter().map(|x| x * x).sum::<f64>() <= 1.0));
        assert!(sample_ranking(&s).unwrap().is_strict());
    }

    #[test]
    fn deterministic() {
        for model in [
            Model::Resampling { p: 0.4, phi: 0.3 },
            Model::Disjoint { p: 0.4, phi: 0.3, g: 2 },
            Model::Noise { p: 0.4, phi: 0.3 },
            Model::TruncatedUrn { p: 0.4, alpha: 0.3 },
            Model::Mallows { phi: 0.3 },
            Model::Urn { alpha: 0.1 },
            Model::Sphere { dim: 2 },
            Model::Cube { dim: 2 },
        ] {
            let s = spec(model, 20, 9, 42);
            assert_eq!(sample(&s).unwrap(), sample(&s).unwrap());
        }
    }

    #[test]
    fn invalid_parameters() {
        let p = ModelParams {
            p: Some(1.5),
            phi: Some(0.1),
            ..Default::default()
        };
        assert!(Model::build("resampling", &p).is_err());
        assert!(Model::build("mallows", &ModelParams::default()).is_err());
        assert!(Model::build("nope", &p).is_err());
        assert!(Model::build("cube", &ModelParams { dim: Some(0), ..Default::default() }).is_err());
        assert!(CultureSpec::new(Model::Disjoint { p: 0.5, phi: 0.5, g: 5 }, 3, 4, 0).is_err());
        assert!(sample_approval(&spec(Model::Urn { alpha: 0.0 }, 3, 4, 0)).is_err());
    }

    #[test]
    fn committees() {
        let p = ApprovalProfile::new(5, vec![vec![0]]).unwrap();
        let full = Instance::new(p.clone(), 5).unwrap();
        assert_eq!(sample_committee(&full, 3).len(), 5);

        let inst = Instance::new(p, 2).unwrap();
        assert_eq!(sample_committee(&inst, 9), sample_committee(&inst, 9));
        let draws = 10_000;
        let mut counts = [0usize; 5];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..draws {
            for c in random_committee(&mut rng, 5, 2).iter() {
                counts[c.0] += 1;
            }
        }
        let q = 0.4;
        let sigma = (draws as f64 * q * (1.0 - q)).sqrt();
        assert!(counts.iter().all(|&c| (c as f64 - draws as f64 * q).abs() < 3.5 * sigma));
    }

    #[test]
    fn streams_are_independent() {
        let a: u64 = stream_rng(5, 1).random();
        let b: u64 = stream_rng(5, 2).random();
        assert_ne!(a, b);
        assert_eq!(a, stream_rng(5, 1).random::<u64>());
    }
}
