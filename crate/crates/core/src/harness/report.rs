//! Verification reports.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped(String),
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail)
    }

    /// Fail dominates skipped, which dominates pass.
    pub fn combine<'a>(verdicts: impl IntoIterator<Item = &'a Verdict>) -> Verdict {
        let mut out = Verdict::Pass;
        for v in verdicts {
            match v {
                Verdict::Fail => return Verdict::Fail,
                Verdict::Skipped(r) if out.is_pass() => {
                    out = Verdict::Skipped(format!("incomplete: {r}"))
                }
                _ => {}
            }
        }
        out
    }

    pub fn label(&self) -> String {
        match self {
            Verdict::Pass => "pass".into(),
            Verdict::Fail => "FAIL".into(),
            Verdict::Skipped(r) => format!("skipped ({r})"),
        }
    }
}

/// A named hypothesis or assertion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool) -> Check {
        Check {
            name: name.into(),
            verdict: Verdict::from_bool(ok),
            witness: None,
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Check {
        self.witness = Some(w.into());
        self
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            verdict: Verdict::Skipped(reason.into()),
            witness: None,
        }
    }
}

/// Endomorphism-ring data backing an indecomposability verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub end_dim: usize,
    pub radical_dim: usize,
    pub residue_dim: usize,
    /// Degree over GF(2) of the field the final answer was computed in.
    pub field_degree: usize,
}

/// What happened at one subgroup `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupResult {
    pub subgroup: String,
    pub order: usize,
    pub fully_normalized: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brauer_dim: Option<usize>,
    /// `indecomposable`, `zero`, `decomposable`, `isomorphic`, ...
    pub outcome: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub instance: String,
    pub hypotheses: Vec<Check>,
    #[serde(default)]
    pub assertions: Vec<Check>,
    pub subgroup_results: Vec<SubgroupResult>,
    /// Verdict of the conclusion phase; hypotheses are reported separately.
    pub verdict: Verdict,
    pub hypotheses_hold: bool,
    pub seed: u64,
    /// Wall-clock milliseconds per phase.
    pub timings: BTreeMap<String, f64>,
    pub engine_version: String,
    /// Data for any result contradicting an expected verdict.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<serde_json::Value>,
}

impl Report {
    pub fn new(instance: impl Into<String>, seed: u64) -> Report {
        Report {
            instance: instance.into(),
            hypotheses: Vec::new(),
            assertions: Vec::new(),
            subgroup_results: Vec::new(),
            verdict: Verdict::Pass,
            hypotheses_hold: true,
            seed,
            timings: BTreeMap::new(),
            engine_version: ENGINE_VERSION.to_string(),
            counterexamples: Vec::new(),
        }
    }

    /// Recomputes `verdict` and `hypotheses_hold` from the entries.
    pub fn finalize(&mut self) {
        self.hypotheses_hold = self.hypotheses.iter().all(|c| c.verdict.is_pass());
        let conclusion = self
            .assertions
            .iter()
            .map(|c| &c.verdict)
            .chain(self.subgroup_results.iter().map(|r| &r.verdict));
        self.verdict = Verdict::combine(conclusion);
    }

    pub fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        let ms = start.elapsed().as_secs_f64() * 1000.0;
        *self.timings.entry(phase.to_string()).or_insert(0.0) += ms;
        out
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| crate::Error::Internal(e.to_string()))
    }

    /// Serialization with timings cleared: identical for identical runs.
    pub fn to_canonical_json(&self) -> Result<String> {
        let mut r = self.clone();
        r.timings.clear();
        r.to_json()
    }

    pub fn from_json(s: &str) -> Result<Report> {
        serde_json::from_str(s).map_err(|e| crate::Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })
    }

    /// Human-readable summary, one line per entry.
    pub fn summary(&self) -> String {
        let mut out = format!("== {}\n", self.instance);
        for c in &self.hypotheses {
            out += &format!("  hypothesis  {:<58} {}\n", c.name, c.verdict.label());
        }
        for c in &self.assertions {
            out += &format!("  assertion   {:<58} {}\n", c.name, c.verdict.label());
        }
        for r in &self.subgroup_results {
            let dim = r.brauer_dim.map_or("-".to_string(), |d| d.to_string());
            out += &format!(
                "  Q {:<38} |Q|={:<4} dim={:<5} {:<15} {}\n",
                r.subgroup,
                r.order,
                dim,
                r.outcome,
                r.verdict.label()
            );
        }
        if !self.hypotheses_hold {
            out += "  (hypotheses do not all hold; the conclusion is not implied)\n";
        }
        out += &format!("  verdict: {}\n", self.verdict.label());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("demo", 3);
        r.hypotheses.push(Check::new("h", false).with_witness("w"));
        r.assertions.push(Check::skipped("a", "too big"));
        r.subgroup_results.push(SubgroupResult {
            subgroup: "<(0 1)>".into(),
            order: 2,
            fully_normalized: true,
            brauer_dim: Some(1),
            outcome: "indecomposable".into(),
            verdict: Verdict::Pass,
            certificate: Some(Certificate {
                end_dim: 1,
                radical_dim: 0,
                residue_dim: 1,
                field_degree: 1,
            }),
            notes: vec!["case 3".into()],
        });
        r.timings.insert("total".into(), 1.5);
        r.finalize();
        assert!(!r.hypotheses_hold);
        assert!(matches!(r.verdict, Verdict::Skipped(_)));
        let back = Report::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
        assert!(!r.to_canonical_json().unwrap().contains("1.5"));
    }

    #[test]
    fn fail_dominates() {
        let v = [Verdict::Pass, Verdict::Skipped("x".into()), Verdict::Fail];
        assert_eq!(Verdict::combine(&v), Verdict::Fail);
        assert_eq!(Verdict::combine(&[]), Verdict::Pass);
    }
}
