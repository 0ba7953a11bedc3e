use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use super::{Universe, UniverseParams};

/// The experiment suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    LarsenForward,
    JisimTheorem,
    LemmaAux1,
    P1Search,
    P2Search,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::LarsenForward, Suite::JisimTheorem, Suite::LemmaAux1, Suite::P1Search, Suite::P2Search];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LarsenForward => "larsen-forward",
            Suite::JisimTheorem => "jisim-theorem",
            Suite::LemmaAux1 => "lemma-aux1",
            Suite::P1Search => "p1-search",
            Suite::P2Search => "p2-search",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

/// One environment pair. `witness` is a member pair related under `f` but
/// not under `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub e: String,
    pub f: String,
    pub sim_leq: bool,
    pub discr_leq: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub e: String,
    pub f: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[String; 2]>,
}

/// Outcome of one suite, pairs in the order they were supplied.
#[derive(Clone, Debug)]
pub struct Report {
    pub suite: Suite,
    pub mode: String,
    pub universe_params: UniverseParams,
    pub members: usize,
    pub pairs: Vec<PairRecord>,
    pub violations: Vec<Violation>,
    pub findings: Vec<String>,
}

impl Report {
    pub(crate) fn new(suite: Suite, mode: &str, u: &Universe) -> Self {
        Report {
            suite,
            mode: mode.to_string(),
            universe_params: u.params().clone(),
            members: u.len(),
            pairs: Vec::new(),
            violations: Vec::new(),
            findings: Vec::new(),
        }
    }

    pub(crate) fn violate(&mut self, rec: &PairRecord, message: &str) {
        self.violations.push(Violation {
            e: rec.e.clone(),
            f: rec.f.clone(),
            message: message.to_string(),
            witness: rec.witness.clone(),
        });
    }

    pub(crate) fn finding(&mut self, text: String) {
        self.findings.push(text);
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let mut params = serde_json::to_value(&self.universe_params).expect("params serialise");
        params["members"] = json!(self.members);
        json!({
            "suite": self.suite.name(),
            "mode": self.mode,
            "universe_params": params,
            "pairs": self.pairs,
            "violations": self.violations,
            "findings": self.findings,
        })
    }

    /// Summary line, violations and findings, then one row per pair.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let p = &self.universe_params;
        let _ = writeln!(
            out,
            "{} ({}): alphabet {{{}}}, size <= {}, join rounds {}, universal {}, {} members, {} pairs, {} violations",
            self.suite.name(),
            self.mode,
            p.alphabet.join(","),
            p.max_term_size,
            p.join_rounds,
            if p.include_universal { "yes" } else { "no" },
            self.members,
            self.pairs.len(),
            self.violations.len()
        );
        for v in &self.violations {
            let w = v.witness.as_ref().map(|[a, b]| format!(" witness ({a}, {b})")).unwrap_or_default();
            let _ = writeln!(out, "VIOLATION e={} f={}: {}{}", v.e, v.f, v.message, w);
        }
        for f in &self.findings {
            let _ = writeln!(out, "finding: {f}");
        }
        let we = self.pairs.iter().map(|r| r.e.len()).chain([1]).max().unwrap_or(1);
        let wf = self.pairs.iter().map(|r| r.f.len()).chain([1]).max().unwrap_or(1);
        let _ = writeln!(out, "{:we$}  {:wf$}  sim  discr  witness", "e", "f");
        for r in &self.pairs {
            let w = r.witness.as_ref().map(|[a, b]| format!("({a}, {b})")).unwrap_or_default();
            let yn = |b: bool| if b { "yes" } else { "no" };
            let _ = writeln!(out, "{:we$}  {:wf$}  {:3}  {:5}  {}", r.e, r.f, yn(r.sim_leq), yn(r.discr_leq), w);
        }
        out
    }
}
