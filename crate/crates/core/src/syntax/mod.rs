//! The process-term language: abstract syntax, parser, compiler to LTSs and
//! bounded enumeration.
//!
//! ```text
//! file   := (defn ";")* term?
//! defn   := "def" NAME "=" term
//! term   := sum
//! sum    := join ("+" join)*
//! join   := prefix ("&" prefix)*
//! prefix := ACTION "." prefix | atom
//! atom   := "0" | ACTION | NAME | "(" term ")"
//! ```
//!
//! A bare `ACTION` atom abbreviates `ACTION.0`. `#` starts a line comment.

mod closure;
mod compile;
mod enumerate;
mod parser;

use std::collections::BTreeMap;
use std::fmt;

pub use closure::close_under_join;
pub use compile::{compile, compile_source, compile_with_budget};
pub use enumerate::{enumerate_terms, term_size};
pub use parser::{parse, parse_term};

/// Abstract syntax of process terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProcessTerm {
    Nil,
    Prefix(String, Box<ProcessTerm>),
    Sum(Box<ProcessTerm>, Box<ProcessTerm>),
    Join(Box<ProcessTerm>, Box<ProcessTerm>),
    Ref(String),
}

impl ProcessTerm {
    pub fn prefix(action: impl Into<String>, body: ProcessTerm) -> Self {
        ProcessTerm::Prefix(action.into(), Box::new(body))
    }

    /// `action.0`
    pub fn action(action: impl Into<String>) -> Self {
        Self::prefix(action, ProcessTerm::Nil)
    }

    pub fn sum(l: ProcessTerm, r: ProcessTerm) -> Self {
        ProcessTerm::Sum(Box::new(l), Box::new(r))
    }

    pub fn join(l: ProcessTerm, r: ProcessTerm) -> Self {
        ProcessTerm::Join(Box::new(l), Box::new(r))
    }

    pub fn reference(name: impl Into<String>) -> Self {
        ProcessTerm::Ref(name.into())
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        // level 0: sum, 1: join, 2: prefix operand
        match self {
            ProcessTerm::Nil => f.write_str("0"),
            ProcessTerm::Ref(n) => f.write_str(n),
            ProcessTerm::Prefix(a, body) => {
                if **body == ProcessTerm::Nil {
                    f.write_str(a)
                } else {
                    write!(f, "{a}.")?;
                    body.fmt_at(f, 2)
                }
            }
            ProcessTerm::Sum(l, r) => {
                if level > 0 {
                    f.write_str("(")?;
                }
                l.fmt_at(f, 1)?;
                f.write_str(" + ")?;
                r.fmt_at(f, 0)?;
                if level > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            ProcessTerm::Join(l, r) => {
                if level > 1 {
                    f.write_str("(")?;
                }
                l.fmt_at(f, 2)?;
                f.write_str(" & ")?;
                r.fmt_at(f, 1)?;
                if level > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }

    /// Names referenced anywhere in the term.
    pub fn references(&self, out: &mut Vec<String>) {
        match self {
            ProcessTerm::Nil => {}
            ProcessTerm::Ref(n) => out.push(n.clone()),
            ProcessTerm::Prefix(_, b) => b.references(out),
            ProcessTerm::Sum(l, r) | ProcessTerm::Join(l, r) => {
                l.references(out);
                r.references(out);
            }
        }
    }

    /// Names occurring outside the scope of any action prefix.
    pub fn unguarded_references(&self, out: &mut Vec<String>) {
        match self {
            ProcessTerm::Nil | ProcessTerm::Prefix(..) => {}
            ProcessTerm::Ref(n) => out.push(n.clone()),
            ProcessTerm::Sum(l, r) | ProcessTerm::Join(l, r) => {
                l.unguarded_references(out);
                r.unguarded_references(out);
            }
        }
    }

    pub fn actions(&self, out: &mut Vec<String>) {
        match self {
            ProcessTerm::Nil | ProcessTerm::Ref(_) => {}
            ProcessTerm::Prefix(a, b) => {
                out.push(a.clone());
                b.actions(out);
            }
            ProcessTerm::Sum(l, r) | ProcessTerm::Join(l, r) => {
                l.actions(out);
                r.actions(out);
            }
        }
    }
}

impl fmt::Display for ProcessTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// Named process definitions, ordered by name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DefinitionSet {
    defs: BTreeMap<String, ProcessTerm>,
}

impl DefinitionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&ProcessTerm> {
        self.defs.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.defs.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ProcessTerm)> {
        self.defs.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Returns the previous body if `name` was already defined.
    pub fn insert(&mut self, name: impl Into<String>, body: ProcessTerm) -> Option<ProcessTerm> {
        self.defs.insert(name.into(), body)
    }

    /// Name of some definition that can reach itself without passing an action
    /// prefix, if any.
    pub fn find_unguarded_cycle(&self) -> Option<String> {
        // colours: 0 unvisited, 1 on stack, 2 done
        let mut colour: BTreeMap<&str, u8> = BTreeMap::new();
        fn visit<'a>(defs: &'a DefinitionSet, n: &'a str, colour: &mut BTreeMap<&'a str, u8>) -> Option<String> {
            match colour.get(n) {
                Some(1) => return Some(n.to_string()),
                Some(2) => return None,
                _ => {}
            }
            colour.insert(n, 1);
            if let Some((name, body)) = defs.defs.get_key_value(n) {
                let mut next = Vec::new();
                body.unguarded_references(&mut next);
                for m in next {
                    if let Some((k, _)) = defs.defs.get_key_value(m.as_str()) {
                        if let Some(hit) = visit(defs, k, colour) {
                            return Some(hit);
                        }
                    }
                }
                colour.insert(name, 2);
            }
            None
        }
        for name in self.defs.keys() {
            if let Some(hit) = visit(self, name, &mut colour) {
                return Some(hit);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_respects_precedence() {
        let t = ProcessTerm::sum(ProcessTerm::prefix("a", ProcessTerm::action("b")), ProcessTerm::action("a"));
        assert_eq!(t.to_string(), "a.b + a");
        let j = ProcessTerm::join(t.clone(), ProcessTerm::prefix("a", ProcessTerm::action("b")));
        assert_eq!(j.to_string(), "(a.b + a) & a.b");
        let p = ProcessTerm::prefix("a", ProcessTerm::sum(ProcessTerm::action("b"), ProcessTerm::Nil));
        assert_eq!(p.to_string(), "a.(b + 0)");
        let nested = ProcessTerm::sum(ProcessTerm::sum(ProcessTerm::Nil, ProcessTerm::Nil), ProcessTerm::Nil);
        assert_eq!(nested.to_string(), "(0 + 0) + 0");
    }

    #[test]
    fn unguarded_cycle_detection() {
        let mut d = DefinitionSet::new();
        d.insert("X", ProcessTerm::sum(ProcessTerm::action("a"), ProcessTerm::reference("Y")));
        d.insert("Y", ProcessTerm::join(ProcessTerm::reference("X"), ProcessTerm::Nil));
        assert!(d.find_unguarded_cycle().is_some());

        let mut g = DefinitionSet::new();
        g.insert(
            "U",
            ProcessTerm::sum(
                ProcessTerm::prefix("a", ProcessTerm::reference("U")),
                ProcessTerm::prefix("b", ProcessTerm::reference("U")),
            ),
        );
        assert_eq!(g.find_unguarded_cycle(), None);
    }
}
