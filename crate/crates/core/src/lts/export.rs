use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Alphabet, Lts, LtsBuilder, StateId};
use crate::error::{Error, Result};

/// JSON shape of an LTS. Transitions are `[source, action, target]` index
/// triples into `states` and `alphabet`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LtsJson {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub transitions: Vec<[u32; 3]>,
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl Lts {
    /// Graphviz rendering: one node per state, one labelled edge per
    /// transition. The optional root is drawn with a double border.
    pub fn to_dot(&self, root: Option<StateId>) -> String {
        let mut out = String::new();
        writeln!(out, "digraph lts {{").unwrap();
        writeln!(out, "    rankdir=TB;").unwrap();
        writeln!(out, "    node [shape=ellipse];").unwrap();
        for s in self.states() {
            let extra = if Some(s) == root { ", peripheries=2" } else { "" };
            writeln!(out, "    s{} [label=\"{}\"{}];", s.0, escape(self.label(s)), extra).unwrap();
        }
        for (s, a, t) in self.transitions() {
            writeln!(out, "    s{} -> s{} [label=\"{}\"];", s.0, t.0, escape(self.alphabet().name(a))).unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json_value(&self) -> LtsJson {
        LtsJson {
            states: self.labels().to_vec(),
            alphabet: self.alphabet().names().to_vec(),
            transitions: self.transitions().map(|(s, a, t)| [s.0, a.0, t.0]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("LTS json serialisation cannot fail")
    }

    pub fn from_json_value(v: &LtsJson) -> Result<Lts> {
        let mut seen = std::collections::HashSet::new();
        for n in &v.alphabet {
            if !seen.insert(n) {
                return Err(Error::Json(format!("duplicate action `{n}`")));
            }
        }
        let mut b = LtsBuilder::with_alphabet(Alphabet::from_names(v.alphabet.iter().cloned()));
        for l in &v.states {
            b.add_state(l.clone())?;
        }
        for &[s, a, t] in &v.transitions {
            b.add_transition(StateId(s), super::ActionId(a), StateId(t))
                .map_err(|e| Error::Json(format!("bad transition [{s},{a},{t}]: {e}")))?;
        }
        Ok(b.build())
    }

    pub fn from_json(text: &str) -> Result<Lts> {
        let v: LtsJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Self::from_json_value(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> Lts {
        let mut b = LtsBuilder::new();
        let a = b.add_action("a");
        let r = b.add_state("a.\"x\"").unwrap();
        let z = b.add_state("0").unwrap();
        b.add_transition(r, a, z).unwrap();
        b.build()
    }

    #[test]
    fn dot_has_nodes_edges_and_escapes() {
        let dot = tiny().to_dot(Some(StateId(0)));
        assert!(dot.starts_with("digraph lts {"));
        assert!(dot.contains("s0 [label=\"a.\\\"x\\\"\", peripheries=2];"));
        assert!(dot.contains("s0 -> s1 [label=\"a\"];"));
    }

    #[test]
    fn json_field_order_is_stable() {
        let j = serde_json::to_string(&tiny().to_json_value()).unwrap();
        assert_eq!(j, r#"{"states":["a.\"x\"","0"],"alphabet":["a"],"transitions":[[0,0,1]]}"#);
    }

    #[test]
    fn json_rejects_dangling_transitions() {
        let bad = r#"{"states":["0"],"alphabet":["a"],"transitions":[[0,0,3]]}"#;
        assert!(matches!(Lts::from_json(bad), Err(Error::Json(_))));
        let dup = r#"{"states":["0"],"alphabet":["a","a"],"transitions":[]}"#;
        assert!(matches!(Lts::from_json(dup), Err(Error::Json(_))));
    }

    #[test]
    fn json_round_trip() {
        let l = tiny();
        assert_eq!(Lts::from_json(&l.to_json()).unwrap(), l);
    }
}
