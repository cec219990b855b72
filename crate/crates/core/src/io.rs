//! Instance files.
//!
//! The JSON format is
//! `{"m": 4, "k": 2, "voters": [[{"cand": 0, "rank": 1}, ...], ...]}`, with
//! `"voters_approval": [[0, 2], ...]` as a shortcut for dichotomous
//! ballots. Optional fields: `"names"` (one per candidate), and for
//! participatory budgeting `"costs"` and `"budget"` as exact rational
//! strings. PrefLib `.soi`/`.toi` files are read as weak orders.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{format_rational, parse_rational, Rational};
use crate::pb::PbInstance;
use crate::profile::{ApprovalInstance, ApprovalProfile, Candidate, Committee, Instance, WeakInstance, WeakProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEntry {
    pub cand: usize,
    pub rank: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub voters: Option<Vec<Vec<RankEntry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub voters_approval: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub costs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<String>,
}

/// A parsed instance file. `k` is optional so it can come from elsewhere.
#[derive(Clone, Debug, PartialEq)]
pub struct Loaded {
    pub profile: WeakProfile,
    pub k: Option<usize>,
    pub names: Vec<String>,
    pub costs: Option<Vec<Rational>>,
    pub budget: Option<Rational>,
}

/// `c1, c2, ...`
pub fn default_names(m: usize) -> Vec<String> {
    (1..=m).map(|j| format!("c{j}")).collect()
}

impl InstanceFile {
    pub fn from_weak(profile: &WeakProfile, k: Option<usize>) -> Self {
        let mut file = InstanceFile {
            m: profile.m(),
            k,
            ..Default::default()
        };
        if profile.is_dichotomous() {
            file.voters_approval = Some(profile.acceptable_sets().to_sets());
        } else {
            file.voters = Some(
                profile
                    .to_ranks()
                    .into_iter()
                    .map(|b| b.into_iter().map(|(cand, rank)| RankEntry { cand, rank }).collect())
                    .collect(),
            );
        }
        file
    }

    pub fn from_approval(profile: &ApprovalProfile, k: Option<usize>) -> Self {
        InstanceFile {
            m: profile.m(),
            k,
            voters_approval: Some(profile.to_sets()),
            ..Default::default()
        }
    }

    pub fn from_pb(pb: &PbInstance) -> Self {
        InstanceFile {
            costs: Some(pb.costs.iter().map(format_rational).collect()),
            budget: Some(format_rational(&pb.budget)),
            ..Self::from_approval(&pb.profile, None)
        }
    }

    pub fn load(self) -> Result<Loaded> {
        let profile = match (self.voters, self.voters_approval) {
            (Some(v), None) => WeakProfile::from_ranks(
                self.m,
                v.into_iter()
                    .map(|b| b.into_iter().map(|e| (e.cand, e.rank)).collect())
                    .collect(),
            )?,
            (None, Some(a)) => ApprovalProfile::new(self.m, a)?.to_weak(),
            _ => {
                return Err(Error::Parse(
                    "exactly one of \"voters\" and \"voters_approval\" is required".into(),
                ))
            }
        };
        let names = match self.names {
            Some(names) if names.len() != self.m => {
                return Err(Error::Parse(format!(
                    "{} names given for {} candidates",
                    names.len(),
                    self.m
                )))
            }
            Some(names) => names,
            None => default_names(self.m),
        };
        let costs = self
            .costs
            .map(|cs| cs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>())
            .transpose()?;
        let budget = self.budget.as_deref().map(parse_rational).transpose()?;
        Ok(Loaded {
            profile,
            k: self.k,
            names,
            costs,
            budget,
        })
    }
}

impl Loaded {
    /// `k` from the argument, else from the file.
    pub fn committee_size(&self, k: Option<usize>) -> Result<usize> {
        k.or(self.k)
            .ok_or_else(|| Error::invalid("committee size k is neither given nor in the instance file"))
    }

    pub fn weak_instance(&self, k: Option<usize>) -> Result<WeakInstance> {
        Instance::new(self.profile.clone(), self.committee_size(k)?)
    }

    pub fn approval_instance(&self, k: Option<usize>) -> Result<ApprovalInstance> {
        Instance::new(self.profile.to_approval()?, self.committee_size(k)?)
    }

    pub fn pb_instance(&self) -> Result<PbInstance> {
        let (Some(costs), Some(budget)) = (&self.costs, &self.budget) else {
            return Err(Error::invalid("participatory budgeting needs \"costs\" and \"budget\""));
        };
        PbInstance::new(self.profile.to_approval()?, costs.clone(), budget.clone())
    }

    /// Parses a comma-separated committee. Each entry is a candidate name,
    /// or failing that a 0-based index.
    pub fn parse_committee(&self, list: &str) -> Result<Committee> {
        let by_name: HashMap<&str, usize> = self.names.iter().enumerate().map(|(j, s)| (s.as_str(), j)).collect();
        let mut out = Committee::empty();
        for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let j = match by_name.get(token) {
                Some(&j) => j,
                None => token
                    .parse::<usize>()
                    .ok()
                    .filter(|&j| j < self.profile.m())
                    .ok_or_else(|| Error::Parse(format!("unknown candidate '{token}'")))?,
            };
            if !out.insert(Candidate(j)) {
                return Err(Error::Parse(format!("candidate '{token}' listed twice")));
            }
        }
        Ok(out)
    }

    pub fn name(&self, c: Candidate) -> &str {
        &self.names[c.0]
    }

    pub fn format_committee(&self, committee: &Committee) -> String {
        committee.iter().map(|c| self.name(c)).collect::<Vec<_>>().join(",")
    }
}

pub fn parse_json(text: &str) -> Result<Loaded> {
    serde_json::from_str::<InstanceFile>(text)?.load()
}

/// Reads JSON, or PrefLib when the extension is `.soi`, `.toi`, `.soc` or `.toc`.
pub fn read_instance(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("soi" | "toi" | "soc" | "toc") => parse_preflib(&text),
        _ => parse_json(&text),
    }
}

/// PrefLib orders with optional ties in braces, in both the current
/// (`# ALTERNATIVE NAME j: ...`, `count: order`) and the legacy
/// (header counts, `count,order`) layouts. Candidates are 1-based in the
/// file and each line is repeated `count` times.
pub fn parse_preflib(text: &str) -> Result<Loaded> {
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    let bad = |msg: String| Error::Parse(format!("PrefLib: {msg}"));
    let mut m = None;
    let mut names: HashMap<usize, String> = HashMap::new();
    let mut data: Vec<&str> = Vec::new();
    if lines.first().is_some_and(|l| l.starts_with('#')) {
        for l in &lines {
            if let Some(meta) = l.strip_prefix('#') {
                let meta = meta.trim();
                if let Some(v) = meta.strip_prefix("NUMBER ALTERNATIVES:") {
                    m = Some(v.trim().parse().map_err(|_| bad(format!("bad header '{l}'")))?);
                } else if let Some(rest) = meta.strip_prefix("ALTERNATIVE NAME") {
                    let (j, name) = rest.split_once(':').ok_or_else(|| bad(format!("bad header '{l}'")))?;
                    let j: usize = j.trim().parse().map_err(|_| bad(format!("bad header '{l}'")))?;
                    names.insert(j, name.trim().to_string());
                }
            } else {
                data.push(l);
            }
        }
    } else {
        let count: usize = lines
            .first()
            .and_then(|l| l.parse().ok())
            .ok_or_else(|| bad("missing alternative count".into()))?;
        m = Some(count);
        for l in lines.iter().skip(1).take(count) {
            let (j, name) = l.split_once(',').ok_or_else(|| bad(format!("bad alternative line '{l}'")))?;
            let j: usize = j.trim().parse().map_err(|_| bad(format!("bad alternative line '{l}'")))?;
            names.insert(j, name.trim().to_string());
        }
        data.extend(lines.iter().skip(count + 2));
    }
    let m = m.ok_or_else(|| bad("missing number of alternatives".into()))?;

    let mut raw = Vec::new();
    for l in data {
        let (count, order) = l
            .split_once(':')
            .or_else(|| l.split_once(','))
            .ok_or_else(|| bad(format!("bad order line '{l}'")))?;
        let count: usize = count.trim().parse().map_err(|_| bad(format!("bad count in '{l}'")))?;
        let ballot = parse_order(order).ok_or_else(|| bad(format!("bad order '{order}'")))?;
        if let Some(&c) = ballot.iter().flatten().find(|&&c| c == 0 || c > m) {
            return Err(bad(format!("alternative {c} out of range")));
        }
        let mut entries = Vec::new();
        let mut rank = 1u32;
        for class in &ballot {
            entries.extend(class.iter().map(|&c| (c - 1, rank)));
            rank += class.len() as u32;
        }
        raw.extend(std::iter::repeat_n(entries, count));
    }
    let profile = WeakProfile::from_ranks(m, raw)?;
    let names = (1..=m)
        .map(|j| names.remove(&j).unwrap_or_else(|| format!("c{j}")))
        .collect();
    Ok(Loaded {
        profile,
        k: None,
        names,
        costs: None,
        budget: None,
    })
}

/// `1,{2,3},4` into indifference classes.
fn parse_order(s: &str) -> Option<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        if let Some(inner) = rest.strip_prefix('{') {
            let end = inner.find('}')?;
            let class = inner[..end]
                .split(',')
                .map(|t| t.trim())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().ok())
                .collect::<Option<Vec<usize>>>()?;
            if !class.is_empty() {
                out.push(class);
            }
            rest = inner[end + 1..].trim_start();
        } else {
            let end = rest.find(',').unwrap_or(rest.len());
            out.push(vec![rest[..end].trim().parse().ok()?]);
            rest = &rest[end..];
        }
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use proptest::prelude::*;

    #[test]
    fn json_round_trip_weak() {
        let inst = gallery::mixed_weak_three();
        let file = InstanceFile::from_weak(&inst.profile, Some(inst.k));
        let text = serde_json::to_string(&file).unwrap();
        assert!(text.contains("\"cand\""));
        let back = parse_json(&text).unwrap();
        assert_eq!(back.profile, inst.profile);
        assert_eq!(back.k, Some(inst.k));
        assert_eq!(back.names, default_names(inst.m()));
    }

    #[test]
    fn approval_shortcut() {
        let loaded = parse_json(r#"{"m": 3, "k": 1, "voters_approval": [[0, 2], [], [1]]}"#).unwrap();
        assert!(loaded.profile.is_dichotomous());
        let inst = loaded.approval_instance(None).unwrap();
        assert_eq!(inst.profile.ballot(0), &[Candidate(0), Candidate(2)]);
        assert_eq!(loaded.approval_instance(Some(2)).unwrap().k, 2);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_json(r#"{"m": 3}"#).is_err());
        assert!(parse_json(r#"{"m": 2, "voters_approval": [[0]], "names": ["a"]}"#).is_err());
        assert!(parse_json(r#"{"m": 2, "voters_approval": [[0]], "extra": 1}"#).is_err());
        let gap = r#"{"m": 4, "voters": [[{"cand":0,"rank":1},{"cand":1,"rank":2},{"cand":2,"rank":2},{"cand":3,"rank":3}]]}"#;
        assert!(matches!(parse_json(gap), Err(Error::InvalidProfile(_))));
    }

    #[test]
    fn committees_by_name_or_index() {
        let loaded = parse_json(r#"{"m": 3, "voters_approval": [[0]], "names": ["ann", "bob", "2"]}"#).unwrap();
        assert_eq!(loaded.parse_committee("ann, 1").unwrap(), Committee::from_indices([0, 1]));
        // Names win over indices.
        assert_eq!(loaded.parse_committee("2").unwrap(), Committee::from_indices([2]));
        assert!(loaded.parse_committee("carl").is_err());
        assert!(loaded.parse_committee("ann,0").is_err());
        assert_eq!(loaded.format_committee(&Committee::from_indices([0, 2])), "ann,2");
    }

    #[test]
    fn pb_fields() {
        let loaded = parse_json(r#"{"m": 2, "voters_approval": [[0], [1]], "costs": ["1/2", "3"], "budget": "3.5"}"#).unwrap();
        let pb = loaded.pb_instance().unwrap();
        assert_eq!(pb.budget, crate::exactmath::rat(7, 2));
        let back = serde_json::to_string(&InstanceFile::from_pb(&pb)).unwrap();
        assert_eq!(parse_json(&back).unwrap().pb_instance().unwrap(), pb);
    }

    #[test]
    fn preflib_current_layout() {
        let text = "# FILE NAME: x.toi\n# NUMBER ALTERNATIVES: 4\n# ALTERNATIVE NAME 1: A\n# ALTERNATIVE NAME 2: B\n# ALTERNATIVE NAME 3: C\n# ALTERNATIVE NAME 4: D\n2: 1,{2,3},4\n1: {4,1}\n";
        let loaded = parse_preflib(text).unwrap();
        assert_eq!(loaded.profile.n(), 3);
        assert_eq!(loaded.names, vec!["A", "B", "C", "D"]);
        assert_eq!(loaded.profile.to_ranks()[0], vec![(0, 1), (1, 2), (2, 2), (3, 4)]);
        assert_eq!(loaded.profile.to_ranks()[2], vec![(0, 1), (3, 1)]);
    }

    #[test]
    fn preflib_legacy_layout() {
        let text = "3\n1,x\n2,y\n3,z\n2,2,2\n1,3,1\n1,2\n";
        let loaded = parse_preflib(text).unwrap();
        assert_eq!(loaded.names, vec!["x", "y", "z"]);
        assert_eq!(loaded.profile.to_ranks(), vec![vec![(2, 1), (0, 2)], vec![(1, 1)]]);
        assert!(loaded.profile.is_strict());
    }

    #[test]
    fn preflib_out_of_range() {
        assert!(parse_preflib("# NUMBER ALTERNATIVES: 2\n1: 1,3\n").is_err());
    }

    proptest! {
        #[test]
        fn serialize_then_validate_is_identity(
            orders in proptest::collection::vec(
                proptest::collection::vec(proptest::collection::vec(0usize..6, 1..3), 0..4), 1..6)
        ) {
            // Drop repeated candidates so every order is a weak order.
            let orders: Vec<Vec<Vec<usize>>> = orders.into_iter().map(|classes| {
                let mut seen = std::collections::HashSet::new();
                classes.into_iter()
                    .map(|cl| cl.into_iter().filter(|c| seen.insert(*c)).collect::<Vec<_>>())
                    .filter(|cl| !cl.is_empty())
                    .collect()
            }).collect();
            let p = WeakProfile::from_orders(6, &orders).unwrap();
            let text = serde_json::to_string(&InstanceFile::from_weak(&p, Some(2))).unwrap();
            prop_assert_eq!(parse_json(&text).unwrap().profile, p);
        }
    }
}
