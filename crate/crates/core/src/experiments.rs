//! Satisfaction-rate experiments over culture parameter grids.
//!
//! For every grid point the harness samples `instances` profiles, draws
//! one uniformly random committee of size `k` per profile, and counts how
//! many committees pass each axiom. A config looks like
//!
//! ```toml
//! seed = 1
//! n = 100
//! m = 50
//! k = 10
//! instances = 50
//!
//! [[grid]]
//! model = "resampling"
//! p = [0.2, 0.4, 0.6, 0.8]
//! phi = { start = 0.05, stop = 1.0, step = 0.05 }
//! ```
//!
//! Parameters accept a single value, a list, or a `{start, stop, step}`
//! range. `axioms` may be given at the top level or per grid; the default
//! is EJR+, PJR+, EJR and PJR for approval models and PSC, rank-PJR+ and
//! rank-EJR+ for ranking models.

use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::axioms::{check, Axiom};
use crate::error::{Error, Result};
use crate::profile::{Instance, WeakInstance};
use crate::sampling::{random_committee, sample, stream_rng, CultureSpec, Model, ModelParams, Sampled};

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Sweep {
    One(f64),
    List(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

impl Sweep {
    /// The swept values, rounded to 9 decimals so ranges print cleanly.
    pub fn values(&self) -> Result<Vec<f64>> {
        let round = |x: f64| (x * 1e9).round() / 1e9;
        match self {
            Sweep::One(x) => Ok(vec![*x]),
            Sweep::List(xs) => Ok(xs.clone()),
            Sweep::Range { start, stop, step } => {
                if !(*step > 0.0) || stop < start {
                    return Err(Error::invalid(format!(
                        "range {start}..={stop} with step {step} is empty"
                    )));
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
                Ok((0..count).map(|i| round(start + i as f64 * step)).collect())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub model: String,
    pub p: Option<Sweep>,
    pub phi: Option<Sweep>,
    pub g: Option<Sweep>,
    pub alpha: Option<Sweep>,
    pub dim: Option<Sweep>,
    pub axioms: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Output file stem; defaults to `experiment`.
    pub name: Option<String>,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub instances: usize,
    pub axioms: Option<Vec<String>>,
    #[serde(default)]
    pub grid: Vec<GridSpec>,
}

pub const APPROVAL_AXIOMS: [Axiom; 4] = [Axiom::EjrPlus, Axiom::PjrPlus, Axiom::Ejr, Axiom::Pjr];
pub const RANKED_AXIOMS: [Axiom; 3] = [Axiom::Psc, Axiom::RankPjrPlus, Axiom::RankEjrPlus];

/// One grid point with the axioms evaluated there.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub model: Model,
    pub axioms: Vec<Axiom>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("experiment config: {e}")))
    }

    pub fn points(&self) -> Result<Vec<Point>> {
        if self.k == 0 || self.k > self.m || self.n == 0 {
            return Err(Error::invalid(format!(
                "need n >= 1 and 1 <= k <= m, got n = {}, m = {}, k = {}",
                self.n, self.m, self.k
            )));
        }
        let mut out = Vec::new();
        for grid in &self.grid {
            let floats = |s: &Option<Sweep>| -> Result<Vec<Option<f64>>> {
                Ok(match s {
                    Some(s) => s.values()?.into_iter().map(Some).collect(),
                    None => vec![None],
                })
            };
            let ints = |s: &Option<Sweep>, what: &str| -> Result<Vec<Option<usize>>> {
                floats(s)?
                    .into_iter()
                    .map(|v| match v {
                        Some(x) if x.fract() != 0.0 || x < 0.0 => {
                            Err(Error::invalid(format!("{what} = {x} is not a non-negative integer")))
                        }
                        Some(x) => Ok(Some(x as usize)),
                        None => Ok(None),
                    })
                    .collect()
            };
            let names = grid.axioms.as_ref().or(self.axioms.as_ref());
            let (ps, phis, gs, alphas, dims) = (
                floats(&grid.p)?,
                floats(&grid.phi)?,
                ints(&grid.g, "g")?,
                floats(&grid.alpha)?,
                ints(&grid.dim, "dim")?,
            );
            for &p in &ps {
                for &phi in &phis {
                    for &g in &gs {
                        for &alpha in &alphas {
                            for &dim in &dims {
                                let params = ModelParams { p, phi, g, alpha, dim };
                                let model = Model::build(&grid.model, &params)?;
                                CultureSpec::new(model, self.n, self.m, 0)?;
                                let axioms = match names {
                                    Some(list) => list.iter().map(|a| a.parse()).collect::<Result<Vec<Axiom>>>()?,
                                    None if model.is_approval() => APPROVAL_AXIOMS.to_vec(),
                                    None => RANKED_AXIOMS.to_vec(),
                                };
                                out.push(Point { model, axioms });
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Output file name inside the output directory.
    pub fn file_name(&self) -> String {
        format!("{}.csv", self.name.as_deref().unwrap_or("experiment"))
    }
}

pub const CSV_HEADER: [&str; 12] = [
    "model", "p", "phi", "g", "alpha", "dim", "n", "m", "k", "axiom", "satisfied", "total",
];

/// One CSV row. `satisfied` is `skipped` when some instance exceeded an
/// exact-computation guard for this axiom.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub model: &'static str,
    pub p: Option<f64>,
    pub phi: Option<f64>,
    pub g: Option<usize>,
    pub alpha: Option<f64>,
    pub dim: Option<usize>,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub axiom: Axiom,
    pub satisfied: String,
    pub total: usize,
}

impl Row {
    /// `satisfied / total`, or `None` for skipped rows and empty points.
    pub fn fraction(&self) -> Option<f64> {
        let s: usize = self.satisfied.parse().ok()?;
        (self.total > 0).then(|| s as f64 / self.total as f64)
    }
}

/// The sampled instance and committee for instance `j` of a point.
pub fn draw(config: &ExperimentConfig, point_seed: u64, model: Model, j: usize) -> Result<(WeakInstance, crate::Committee)> {
    let mut rng = stream_rng(point_seed, j as u64);
    let spec = CultureSpec::new(model, config.n, config.m, rng.random())?;
    let profile = match sample(&spec)? {
        Sampled::Approval(p) => p.to_weak(),
        Sampled::Ranking(p) => p,
    };
    let committee = random_committee(&mut rng, config.m, config.k);
    Ok((Instance::new(profile, config.k)?, committee))
}

/// Seed of grid point `index`, independent of every other point.
pub fn point_seed(master: u64, index: usize) -> u64 {
    stream_rng(master, index as u64).random()
}

/// Evaluates the whole grid in parallel. Rows come out in grid order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<Row>> {
    let points = config.points()?;
    let jobs: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|pi| (0..config.instances).map(move |j| (pi, j)))
        .collect();
    let outcomes: Vec<Vec<Option<bool>>> = jobs
        .par_iter()
        .map(|&(pi, j)| {
            let point = &points[pi];
            let (instance, committee) = draw(config, point_seed(config.seed, pi), point.model, j)?;
            point
                .axioms
                .iter()
                .map(|&axiom| match check(axiom, &instance, &committee) {
                    Ok(v) => Ok(Some(v.is_satisfied())),
                    Err(Error::TooLarge { .. }) => Ok(None),
                    Err(e) => Err(e),
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    for (pi, point) in points.iter().enumerate() {
        let results = &outcomes[pi * config.instances..(pi + 1) * config.instances];
        let params = point.model.params();
        for (a, &axiom) in point.axioms.iter().enumerate() {
            let skipped = results.iter().any(|r| r[a].is_none());
            let passed = results.iter().filter(|r| r[a] == Some(true)).count();
            rows.push(Row {
                model: point.model.name(),
                p: params.p,
                phi: params.phi,
                g: params.g,
                alpha: params.alpha,
                dim: params.dim,
                n: config.n,
                m: config.m,
                k: config.k,
                axiom,
                satisfied: if skipped { "skipped".into() } else { passed.to_string() },
                total: config.instances,
            });
        }
    }
    Ok(rows)
}

pub fn write_csv(rows: &[Row], out: impl Write) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
