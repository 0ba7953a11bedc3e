use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{parse_term, DefinitionSet, ProcessTerm};
use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::lts::{state_budget, Alphabet, Lts, LtsBuilder, Process, StateId};

struct Compiler<'a> {
    defs: &'a DefinitionSet,
}

impl Compiler<'_> {
    fn resolve(&self, mut t: ProcessTerm) -> Result<ProcessTerm> {
        let mut steps = 0;
        while let ProcessTerm::Ref(name) = &t {
            steps += 1;
            if steps > self.defs.len() + 1 {
                return Err(unguarded(name));
            }
            t = self.defs.get(name).ok_or_else(|| unbound(name))?.clone();
        }
        Ok(t)
    }

    /// Targets are returned with any top-level reference unfolded.
    fn transitions(&self, t: &ProcessTerm, out: &mut BTreeSet<(String, ProcessTerm)>) -> Result<()> {
        match t {
            ProcessTerm::Nil => {}
            ProcessTerm::Prefix(a, body) => {
                out.insert((a.clone(), self.resolve((**body).clone())?));
            }
            ProcessTerm::Sum(l, r) => {
                self.transitions(l, out)?;
                self.transitions(r, out)?;
            }
            ProcessTerm::Join(l, r) => {
                let mut left = BTreeSet::new();
                let mut right = BTreeSet::new();
                self.transitions(l, &mut left)?;
                self.transitions(r, &mut right)?;
                for (a, l2) in &left {
                    for (b, r2) in &right {
                        if a == b {
                            out.insert((a.clone(), ProcessTerm::join(l2.clone(), r2.clone())));
                        }
                    }
                }
            }
            ProcessTerm::Ref(_) => {
                let body = self.resolve(t.clone())?;
                self.transitions(&body, out)?;
            }
        }
        Ok(())
    }
}

fn unguarded(name: &str) -> Error {
    Error::Parse(ParseError::new(
        ParseErrorKind::UnguardedRecursion,
        0,
        0,
        format!("`{name}` recurses without passing an action prefix"),
    ))
}

fn unbound(name: &str) -> Error {
    Error::Parse(ParseError::new(ParseErrorKind::UnboundName, 0, 0, format!("`{name}` is not defined")))
}

/// Compiles a term into the reachable fragment of its operational semantics.
///
/// States are terms after unfolding top-level references; structurally equal
/// terms share one state. State ids follow breadth-first discovery order with
/// each state's transitions visited in (action, target term) order. The
/// alphabet holds every action occurring in the term or the definitions,
/// sorted by name.
pub fn compile(term: &ProcessTerm, defs: &DefinitionSet) -> Result<(Lts, StateId)> {
    compile_with_budget(term, defs, state_budget())
}

/// [`compile`] with an explicit state budget.
pub fn compile_with_budget(term: &ProcessTerm, defs: &DefinitionSet, budget: usize) -> Result<(Lts, StateId)> {
    let mut names = Vec::new();
    term.references(&mut names);
    for (_, body) in defs.iter() {
        body.references(&mut names);
    }
    if let Some(n) = names.iter().find(|n| !defs.contains(n)) {
        return Err(unbound(n));
    }
    if let Some(n) = defs.find_unguarded_cycle() {
        return Err(unguarded(&n));
    }

    let mut actions = Vec::new();
    term.actions(&mut actions);
    for (_, body) in defs.iter() {
        body.actions(&mut actions);
    }
    actions.sort();
    actions.dedup();

    let c = Compiler { defs };
    let mut b = LtsBuilder::with_alphabet(Alphabet::from_names(actions)).budget(budget);
    let mut ids: HashMap<ProcessTerm, StateId> = HashMap::new();
    let mut queue = VecDeque::new();

    let label_of = |orig: &ProcessTerm, resolved: &ProcessTerm| match orig {
        ProcessTerm::Ref(n) => n.clone(),
        _ => resolved.to_string(),
    };

    let root_term = c.resolve(term.clone())?;
    let root = b.add_state(label_of(term, &root_term))?;
    ids.insert(root_term.clone(), root);
    queue.push_back(root_term);

    while let Some(t) = queue.pop_front() {
        let src = ids[&t];
        let mut out = BTreeSet::new();
        c.transitions(&t, &mut out)?;
        for (a, target) in out {
            let tgt = match ids.get(&target) {
                Some(&id) => id,
                None => {
                    let id = b.add_state(target.to_string())?;
                    ids.insert(target.clone(), id);
                    queue.push_back(target);
                    id
                }
            };
            let a = b.alphabet().get(&a).expect("collected above");
            b.add_transition(src, a, tgt)?;
        }
    }
    Ok((b.build(), root))
}

/// Parses and compiles source text with a mandatory root term.
pub fn compile_source(text: &str) -> Result<Process> {
    let (defs, term) = parse_term(text)?;
    let (lts, root) = compile(&term, &defs)?;
    Ok(Process::new(lts, root))
}
