use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use robustprop::axioms::{self, check_representative, full_degree, half_degree, Axiom, Verdict};
use robustprop::experiments::{run_experiment, write_csv, ExperimentConfig};
use robustprop::io::{read_instance, InstanceFile, Loaded};
use robustprop::pb::{check_pb_ejrp_upto, check_pb_pjrp_upto, mes_pb};
use robustprop::pricing::{check_priceable, check_rank_priceable};
use robustprop::query::{simulate, QueryMode};
use robustprop::rules::{
    ear, ejrp_monotone_pair, gjcr, ls_pav, mes_approval, pav_exact, seq_phragmen, stv, EarVariant, RuleOutput, TieBreak,
};
use robustprop::sampling::{sample, CultureSpec, Model, ModelParams, Sampled};
use robustprop::{Candidate, Committee};

/// Proportional multiwinner elections: rules, axiom verifiers, samplers
/// and experiments.
#[derive(Parser)]
#[command(name = "robustprop", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Run a voting rule and print the committee.
    Elect {
        #[arg(long, value_enum)]
        rule: Rule,
        #[arg(long)]
        input: PathBuf,
        /// Committee size; overrides the instance file.
        #[arg(long)]
        k: Option<usize>,
        /// `lex`, or a comma-separated priority list of every candidate.
        #[arg(long, default_value = "lex")]
        tiebreak: String,
        /// Print the full output (order, payments, trace) as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Check a committee against an axiom. Exit code 2 means violated.
    Verify {
        #[arg(long)]
        axiom: String,
        /// Candidate names or 0-based indices, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        committee: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// For price systems: require a budget strictly above k.
        #[arg(long)]
        strict_b: bool,
        /// Required average for `representative`.
        #[arg(long, value_enum, default_value = "half")]
        degree: Degree,
    },
    /// Sample an instance from a statistical culture.
    Sample {
        #[arg(long)]
        model: String,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        phi: Option<f64>,
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Committee size to record in the file.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment grid and write its CSV into a directory.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Simulate the query-model rules; one CSV line per trial.
    QuerySim {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Gjcr,
    Mes,
    Ear,
    EarMes,
    Stv,
    Pav,
    LsPav,
    Phragmen,
    MesPb,
    Monotone,
}

#[derive(Clone, Copy, ValueEnum)]
enum Degree {
    Half,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Noisy,
}

/// How a verb ended, when it did not fail.
enum Outcome {
    Ok,
    Violated,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.verb) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violated) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load(path: &PathBuf) -> anyhow::Result<Loaded> {
    read_instance(path).with_context(|| format!("reading {}", path.display()))
}

fn tiebreak(loaded: &Loaded, spec: &str) -> anyhow::Result<TieBreak> {
    if spec == "lex" {
        return Ok(TieBreak::Lexicographic);
    }
    let order: Vec<Candidate> = spec
        .split(',')
        .map(|t| loaded.parse_committee(t).map(|c| c.members()[0]))
        .collect::<Result<_, _>>()?;
    Ok(TieBreak::priority(order, loaded.profile.m())?)
}

fn print_json(v: &Value) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn named(loaded: &Loaded, c: Candidate) -> Value {
    json!(loaded.name(c))
}

fn run(verb: Verb) -> anyhow::Result<Outcome> {
    match verb {
        Verb::Elect {
            rule,
            input,
            k,
            tiebreak: tb,
            json,
        } => {
            let loaded = load(&input)?;
            let tb = tiebreak(&loaded, &tb)?;
            let (out, extra): (RuleOutput, Value) = match rule {
                Rule::Gjcr => (gjcr(&loaded.approval_instance(k)?, &tb), Value::Null),
                Rule::Mes => (mes_approval(&loaded.approval_instance(k)?, &tb), Value::Null),
                Rule::Ear => (ear(&loaded.weak_instance(k)?, EarVariant::Proportional, &tb), Value::Null),
                Rule::EarMes => (ear(&loaded.weak_instance(k)?, EarVariant::Mes, &tb), Value::Null),
                Rule::Stv => (stv(&loaded.weak_instance(k)?, &tb)?, Value::Null),
                Rule::Phragmen => (seq_phragmen(&loaded.approval_instance(k)?, &tb), Value::Null),
                Rule::LsPav => (ls_pav(&loaded.approval_instance(k)?), Value::Null),
                Rule::MesPb => (mes_pb(&loaded.pb_instance()?, &tb), Value::Null),
                Rule::Pav => {
                    let optima = pav_exact(&loaded.approval_instance(k)?)?;
                    let all: Vec<String> = optima.iter().map(|w| loaded.format_committee(w)).collect();
                    let first = optima.into_iter().next().unwrap_or_default();
                    let out = RuleOutput {
                        order: first.members().to_vec(),
                        committee: first,
                        ..Default::default()
                    };
                    (out, json!({ "optima": all }))
                }
                Rule::Monotone => {
                    let pair = ejrp_monotone_pair(&loaded.approval_instance(k)?, &tb)?;
                    let out = RuleOutput {
                        order: pair.committee.members().to_vec(),
                        committee: pair.committee,
                        ..Default::default()
                    };
                    (out, json!({ "extra": loaded.name(pair.extra) }))
                }
            };
            if json {
                let mut v = serde_json::to_value(&out)?;
                v["names"] = json!(loaded.format_committee(&out.committee));
                if let Value::Object(map) = extra {
                    v.as_object_mut().expect("object").extend(map);
                }
                print_json(&v)?;
            } else {
                println!("{}", loaded.format_committee(&out.committee));
                if let Some(e) = extra.get("extra").and_then(Value::as_str) {
                    println!("{e}");
                }
            }
            Ok(Outcome::Ok)
        }
        Verb::Verify {
            axiom,
            committee,
            input,
            k,
            strict_b,
            degree,
        } => {
            let loaded = load(&input)?;
            let w = loaded.parse_committee(&committee)?;
            match axiom.as_str() {
                "priceable" | "rank-priceable" => {
                    let check = if axiom == "priceable" {
                        check_priceable(&loaded.approval_instance(k)?, &w, strict_b)?
                    } else {
                        check_rank_priceable(&loaded.weak_instance(k)?, &w, strict_b)?
                    };
                    print_json(&serde_json::to_value(&check)?)?;
                    return Ok(if check.satisfied { Outcome::Ok } else { Outcome::Violated });
                }
                _ => {}
            }
            let ax: Axiom = axiom.parse()?;
            let verdict = match ax {
                Axiom::PbEjrPlus => check_pb_ejrp_upto(&loaded.pb_instance()?, &w)?,
                Axiom::PbPjrPlus => check_pb_pjrp_upto(&loaded.pb_instance()?, &w)?,
                Axiom::Representative => {
                    let inst = loaded.approval_instance(k)?;
                    let f = match degree {
                        Degree::Half => half_degree(inst.k),
                        Degree::Full => full_degree(inst.k),
                    };
                    check_representative(&inst, &w, &f)?
                }
                _ => axioms::check(ax, &loaded.weak_instance(k)?, &w)?,
            };
            report(&loaded, &verdict)
        }
        Verb::Sample {
            model,
            p,
            phi,
            g,
            alpha,
            dim,
            n,
            m,
            k,
            seed,
            out,
        } => {
            let model = Model::build(&model, &ModelParams { p, phi, g, alpha, dim })?;
            if let Some(k) = k {
                if k == 0 || k > m {
                    bail!("committee size k = {k} must satisfy 1 <= k <= m = {m}");
                }
            }
            let spec = CultureSpec::new(model, n, m, seed)?;
            let file = match sample(&spec)? {
                Sampled::Approval(p) => InstanceFile::from_approval(&p, k),
                Sampled::Ranking(p) => InstanceFile::from_weak(&p, k),
            };
            match out {
                Some(path) => {
                    let mut w = BufWriter::new(File::create(&path).with_context(|| format!("creating {}", path.display()))?);
                    serde_json::to_writer(&mut w, &file)?;
                    writeln!(w)?;
                }
                None => println!("{}", serde_json::to_string(&file)?),
            }
            Ok(Outcome::Ok)
        }
        Verb::Experiment { config, out } => {
            let text = std::fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let cfg = ExperimentConfig::from_toml(&text)?;
            let rows = run_experiment(&cfg)?;
            std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let path = out.join(cfg.file_name());
            write_csv(&rows, BufWriter::new(File::create(&path)?))?;
            println!("{}", path.display());
            Ok(Outcome::Ok)
        }
        Verb::QuerySim {
            mode,
            delta,
            trials,
            input,
            k,
            seed,
        } => {
            let loaded = load(&input)?;
            let inst = loaded.approval_instance(k)?;
            let mode = match mode {
                Mode::Exact => QueryMode::Exact,
                Mode::Noisy => QueryMode::Noisy,
            };
            let results = simulate(&inst, mode, delta, trials, seed, &TieBreak::Lexicographic)?;
            let mut out = io::stdout().lock();
            writeln!(out, "trial,committee,ejrp,queries,max_query_size")?;
            for t in results {
                writeln!(
                    out,
                    "{},\"{}\",{},{},{}",
                    t.trial,
                    loaded.format_committee(&t.committee),
                    t.ejrp,
                    t.queries,
                    t.max_query_size
                )?;
            }
            Ok(Outcome::Ok)
        }
    }
}

/// Prints the verdict as JSON, naming candidates as in the instance file.
fn report(loaded: &Loaded, verdict: &Verdict) -> anyhow::Result<Outcome> {
    let mut v = serde_json::to_value(verdict)?;
    if let Some(w) = verdict.witness() {
        if let Some(c) = w.candidate {
            v["candidate_name"] = named(loaded, c);
        }
        if let Some(cs) = &w.candidates {
            v["candidate_names"] = json!(loaded.format_committee(&Committee::new(cs.iter().copied())));
        }
    }
    print_json(&v)?;
    Ok(if verdict.is_satisfied() { Outcome::Ok } else { Outcome::Violated })
}
