//! Synchronous products of a process with an environment: the join `p & e`
//! and the right-determinizing join `p &• e`, whose labels also record the
//! environment's target state.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lts::{state_budget, union_alphabet, Alphabet, Lts, LtsBuilder, Process, StateId, StateRef, SuccTable};

/// A state of a product: process component and environment component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProductState {
    pub left: StateId,
    pub right: StateId,
}

/// Label of a right-determinizing join transition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairLabel {
    pub action: String,
    pub env_target: StateId,
}

impl fmt::Display for PairLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.action, self.env_target)
    }
}

/// A product LTS built from one or more root pairs.
#[derive(Clone, Debug)]
pub struct Product {
    pub lts: Lts,
    pub roots: Vec<StateId>,
    /// Component states, indexed by product state.
    pub states: Vec<ProductState>,
    /// For a right-determinizing join, the pair label of each action id;
    /// empty for a plain join.
    pub pair_labels: Vec<PairLabel>,
}

impl Product {
    pub fn root(&self) -> StateId {
        self.roots[0]
    }

    pub fn into_process(self) -> Process {
        let root = self.root();
        Process::new(self.lts, root)
    }
}

fn show(label: &str) -> String {
    if label.contains('+') || label.contains('&') {
        format!("({label})")
    } else {
        label.to_string()
    }
}

/// Builds the reachable part of `left × right` from the given root pairs.
/// With `dot`, transitions are labelled `a@x` where `x` is the environment
/// target's label (or its id when labels are ambiguous).
pub(crate) fn product(
    left: &Lts,
    right: &Lts,
    roots: &[(StateId, StateId)],
    dot: bool,
    budget: usize,
) -> Result<Product> {
    let alpha = union_alphabet(&[left, right]);
    let lt = SuccTable::new(left, &alpha);
    let rt = SuccTable::new(right, &alpha);
    let unique_env_labels = right.labels().iter().collect::<HashSet<_>>().len() == right.num_states();

    let base = if dot { Alphabet::new() } else { alpha.clone() };
    let mut b = LtsBuilder::with_alphabet(base).budget(budget);
    let mut ids: HashMap<(u32, u32), StateId> = HashMap::new();
    let mut states = Vec::new();
    let mut queue = VecDeque::new();
    let mut pair_labels = Vec::new();

    let mut visit = |b: &mut LtsBuilder, p: u32, e: u32, queue: &mut VecDeque<(u32, u32)>| -> Result<StateId> {
        if let Some(&id) = ids.get(&(p, e)) {
            return Ok(id);
        }
        let label = format!("{} & {}", show(left.label(StateId(p))), show(right.label(StateId(e))));
        let id = b.add_state(label)?;
        ids.insert((p, e), id);
        states.push(ProductState { left: StateId(p), right: StateId(e) });
        queue.push_back((p, e));
        Ok(id)
    };

    let mut root_ids = Vec::with_capacity(roots.len());
    for &(p, e) in roots {
        left.check_state(p)?;
        right.check_state(e)?;
        root_ids.push(visit(&mut b, p.0, e.0, &mut queue)?);
    }
    while let Some((p, e)) = queue.pop_front() {
        let src = visit(&mut b, p, e, &mut queue)?;
        for &a in lt.enabled(p as usize) {
            let es = rt.get(e as usize, a as usize);
            if es.is_empty() {
                continue;
            }
            let name = alpha.name(crate::lts::ActionId(a));
            for &p2 in lt.get(p as usize, a as usize) {
                for &e2 in es {
                    let tgt = visit(&mut b, p2, e2, &mut queue)?;
                    let act = if dot {
                        let env = if unique_env_labels {
                            right.label(StateId(e2)).to_string()
                        } else {
                            StateId(e2).to_string()
                        };
                        let n_before = b.alphabet().len();
                        let id = b.add_action(format!("{name}@{env}"));
                        if b.alphabet().len() > n_before {
                            pair_labels.push(PairLabel { action: name.to_string(), env_target: StateId(e2) });
                        }
                        id
                    } else {
                        crate::lts::ActionId(a)
                    };
                    b.add_transition(src, act, tgt)?;
                }
            }
        }
    }
    Ok(Product { lts: b.build(), roots: root_ids, states, pair_labels })
}

/// The join `p & e`: a joint `a`-step exists iff both components take one.
pub fn join_lts<'a, 'b>(proc: impl Into<StateRef<'a>>, env: impl Into<StateRef<'b>>) -> Result<Product> {
    let (p, e) = (proc.into(), env.into());
    product(p.lts, e.lts, &[(p.state, e.state)], false, state_budget())
}

/// The right-determinizing join `p &• e`: like the join, but each step is
/// labelled with the environment state it reaches.
pub fn joindot_lts<'a, 'b>(proc: impl Into<StateRef<'a>>, env: impl Into<StateRef<'b>>) -> Result<Product> {
    let (p, e) = (proc.into(), env.into());
    product(p.lts, e.lts, &[(p.state, e.state)], true, state_budget())
}

/// One state with a self-loop on every action; named `U`.
pub fn universal_process<S: AsRef<str>>(alphabet: &[S]) -> Result<Process> {
    if alphabet.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    let mut b = LtsBuilder::with_alphabet(Alphabet::from_names(alphabet.iter().map(|s| s.as_ref().to_string())));
    let u = b.add_state("U")?;
    let ids: Vec<_> = b.alphabet().ids().collect();
    for a in ids {
        b.add_transition(u, a, u)?;
    }
    Ok(Process::new(b.build(), u))
}
