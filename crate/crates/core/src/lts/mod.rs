//! Finite labelled transition systems.
//!
//! States and actions are interned to dense `u32` ids. An [`Lts`] is immutable
//! once built; products, unions and quotients always construct a new value.

mod export;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

pub use export::LtsJson;

pub const DEFAULT_STATE_BUDGET: usize = 10_000;
pub const STATE_BUDGET_ENV: &str = "JI_BISIM_STATE_BUDGET";

static STATE_BUDGET: AtomicUsize = AtomicUsize::new(0);

/// Maximum number of states any constructed LTS may have.
///
/// Initialised from `JI_BISIM_STATE_BUDGET` on first use, falling back to
/// [`DEFAULT_STATE_BUDGET`].
pub fn state_budget() -> usize {
    let current = STATE_BUDGET.load(Ordering::Relaxed);
    if current != 0 {
        return current;
    }
    let from_env = std::env::var(STATE_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_STATE_BUDGET);
    STATE_BUDGET.store(from_env, Ordering::Relaxed);
    from_env
}

pub fn set_state_budget(limit: usize) {
    STATE_BUDGET.store(limit.max(1), Ordering::Relaxed);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct ActionId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct StateId(pub u32);

impl ActionId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl StateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

/// An interned set of action names with contiguous ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, ActionId>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut a = Self::new();
        for n in names {
            a.intern(n);
        }
        a
    }

    pub fn intern(&mut self, name: impl Into<String>) -> ActionId {
        let name = name.into();
        if let Some(&id) = self.index.get(&name) {
            return id;
        }
        let id = ActionId(self.names.len() as u32);
        self.index.insert(name.clone(), id);
        self.names.push(name);
        id
    }

    pub fn get(&self, name: &str) -> Option<ActionId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: ActionId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ids(&self) -> impl Iterator<Item = ActionId> {
        (0..self.names.len() as u32).map(ActionId)
    }

    /// Extends a copy of `self` with the names of `other`. Ids of `self` are
    /// preserved; the returned vector maps ids of `other` into the union.
    pub fn union(&self, other: &Alphabet) -> (Alphabet, Vec<ActionId>) {
        let mut u = self.clone();
        let map = other.names.iter().map(|n| u.intern(n.as_str())).collect();
        (u, map)
    }
}

/// A finite labelled transition system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lts {
    alphabet: Alphabet,
    labels: Vec<String>,
    // Per state, sorted by (action, target), no duplicates.
    out: Vec<Vec<(ActionId, StateId)>>,
    n_transitions: usize,
}

impl Lts {
    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.n_transitions
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.labels.len() as u32).map(StateId)
    }

    pub fn label(&self, s: StateId) -> &str {
        &self.labels[s.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn state_by_label(&self, label: &str) -> Option<StateId> {
        self.labels.iter().position(|l| l == label).map(|i| StateId(i as u32))
    }

    /// Outgoing transitions of `s`, sorted by action then target.
    pub fn out(&self, s: StateId) -> &[(ActionId, StateId)] {
        &self.out[s.index()]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, ActionId, StateId)> + '_ {
        self.out.iter().enumerate().flat_map(|(s, ts)| ts.iter().map(move |&(a, t)| (StateId(s as u32), a, t)))
    }

    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn check_state(&self, s: StateId) -> Result<()> {
        if s.index() < self.labels.len() {
            Ok(())
        } else {
            Err(Error::UnknownState(s.0))
        }
    }

    fn check_action(&self, a: ActionId) -> Result<()> {
        if a.index() < self.alphabet.len() {
            Ok(())
        } else {
            Err(Error::UnknownAction(format!("#{}", a.0)))
        }
    }

    /// Unchecked slice of `a`-derivatives of `s`, sorted by id.
    pub(crate) fn succ(&self, s: StateId, a: ActionId) -> impl Iterator<Item = StateId> + '_ {
        let ts = &self.out[s.index()];
        let lo = ts.partition_point(|&(b, _)| b < a);
        ts[lo..].iter().take_while(move |&&(b, _)| b == a).map(|&(_, t)| t)
    }

    /// The `a`-derivatives of `s`, sorted by id.
    pub fn successors(&self, s: StateId, a: ActionId) -> Result<Vec<StateId>> {
        self.check_state(s)?;
        self.check_action(a)?;
        Ok(self.succ(s, a).collect())
    }

    pub fn successors_by_name(&self, s: StateId, action: &str) -> Result<Vec<StateId>> {
        let a = self.alphabet.get(action).ok_or_else(|| Error::UnknownAction(action.to_string()))?;
        self.successors(s, a)
    }

    pub fn permits(&self, s: StateId, a: ActionId) -> Result<bool> {
        self.check_state(s)?;
        self.check_action(a)?;
        Ok(self.succ(s, a).next().is_some())
    }

    /// All states reachable from `s` (including `s`), in ascending id order.
    pub fn reachable(&self, s: StateId) -> Result<Vec<StateId>> {
        self.check_state(s)?;
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![s];
        seen[s.index()] = true;
        while let Some(x) = stack.pop() {
            for &(_, t) in self.out(x) {
                if !seen[t.index()] {
                    seen[t.index()] = true;
                    stack.push(t);
                }
            }
        }
        Ok(self.states().filter(|t| seen[t.index()]).collect())
    }

    /// True iff every state reachable from `s` has at most one derivative per action.
    pub fn is_deterministic(&self, s: StateId) -> Result<bool> {
        Ok(self.reachable(s)?.into_iter().all(|x| self.out(x).windows(2).all(|w| w[0].0 != w[1].0)))
    }

    /// Every LTS built here is finite, so this only validates `s`.
    pub fn is_image_finite(&self, s: StateId) -> Result<bool> {
        self.check_state(s)?;
        Ok(true)
    }

    pub fn at(&self, s: StateId) -> StateRef<'_> {
        StateRef { lts: self, state: s }
    }

    /// Disjoint union of `self` and `other` over the union alphabet. States of
    /// `other` are shifted by the returned offset (`self.num_states()`).
    pub fn disjoint_union(&self, other: &Lts) -> Result<(Lts, u32)> {
        let (alphabet, map) = self.alphabet.union(&other.alphabet);
        let offset = self.num_states() as u32;
        let mut b = LtsBuilder::with_alphabet(alphabet);
        for l in self.labels.iter().chain(&other.labels) {
            b.add_state(l.clone())?;
        }
        for (s, a, t) in self.transitions() {
            b.add_transition(s, a, t)?;
        }
        for (s, a, t) in other.transitions() {
            b.add_transition(StateId(s.0 + offset), map[a.index()], StateId(t.0 + offset))?;
        }
        Ok((b.build(), offset))
    }

    /// Disjoint union of many systems; returns the union and each input's offset.
    pub fn disjoint_union_all<'a, I>(parts: I) -> Result<(Lts, Vec<u32>)>
    where
        I: IntoIterator<Item = &'a Lts>,
    {
        let parts: Vec<&Lts> = parts.into_iter().collect();
        let mut alphabet = Alphabet::new();
        for p in &parts {
            for n in p.alphabet.names() {
                alphabet.intern(n.as_str());
            }
        }
        let mut b = LtsBuilder::with_alphabet(alphabet);
        let mut offsets = Vec::with_capacity(parts.len());
        for p in &parts {
            let offset = b.num_states() as u32;
            offsets.push(offset);
            for l in &p.labels {
                b.add_state(l.clone())?;
            }
            for (s, a, t) in p.transitions() {
                let a = b.alphabet.get(p.alphabet.name(a)).expect("interned above");
                b.add_transition(StateId(s.0 + offset), a, StateId(t.0 + offset))?;
            }
        }
        Ok((b.build(), offsets))
    }
}

/// Incremental construction of an [`Lts`] with budget enforcement.
#[derive(Debug)]
pub struct LtsBuilder {
    alphabet: Alphabet,
    labels: Vec<String>,
    transitions: BTreeSet<(u32, u32, u32)>,
    budget: usize,
}

impl Default for LtsBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl LtsBuilder {
    pub fn new() -> Self {
        Self::with_alphabet(Alphabet::new())
    }

    pub fn with_alphabet(alphabet: Alphabet) -> Self {
        LtsBuilder { alphabet, labels: Vec::new(), transitions: BTreeSet::new(), budget: state_budget() }
    }

    pub fn budget(mut self, limit: usize) -> Self {
        self.budget = limit;
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn add_action(&mut self, name: impl Into<String>) -> ActionId {
        self.alphabet.intern(name)
    }

    pub fn add_state(&mut self, label: impl Into<String>) -> Result<StateId> {
        if self.labels.len() >= self.budget {
            return Err(Error::BudgetExceeded { limit: self.budget });
        }
        self.labels.push(label.into());
        Ok(StateId(self.labels.len() as u32 - 1))
    }

    pub fn add_transition(&mut self, s: StateId, a: ActionId, t: StateId) -> Result<()> {
        let n = self.labels.len();
        if s.index() >= n {
            return Err(Error::UnknownState(s.0));
        }
        if t.index() >= n {
            return Err(Error::UnknownState(t.0));
        }
        if a.index() >= self.alphabet.len() {
            return Err(Error::UnknownAction(format!("#{}", a.0)));
        }
        self.transitions.insert((s.0, a.0, t.0));
        Ok(())
    }

    pub fn build(self) -> Lts {
        let mut out = vec![Vec::new(); self.labels.len()];
        for &(s, a, t) in &self.transitions {
            out[s as usize].push((ActionId(a), StateId(t)));
        }
        Lts { alphabet: self.alphabet, labels: self.labels, out, n_transitions: self.transitions.len() }
    }
}

/// A borrowed state of some LTS.
#[derive(Clone, Copy, Debug)]
pub struct StateRef<'a> {
    pub lts: &'a Lts,
    pub state: StateId,
}

impl StateRef<'_> {
    pub fn label(&self) -> &str {
        self.lts.label(self.state)
    }
}

/// An owned process: a shared LTS together with a root state.
#[derive(Clone, Debug)]
pub struct Process {
    pub lts: Arc<Lts>,
    pub root: StateId,
}

impl Process {
    pub fn new(lts: Lts, root: StateId) -> Self {
        Process { lts: Arc::new(lts), root }
    }

    pub fn as_ref(&self) -> StateRef<'_> {
        StateRef { lts: &self.lts, state: self.root }
    }

    pub fn name(&self) -> &str {
        self.lts.label(self.root)
    }
}

impl<'a> From<&'a Process> for StateRef<'a> {
    fn from(p: &'a Process) -> Self {
        p.as_ref()
    }
}

/// Successor lists of one LTS re-indexed by a shared (union) alphabet.
#[derive(Debug)]
pub(crate) struct SuccTable {
    n_actions: usize,
    cells: Vec<Vec<u32>>,
    enabled: Vec<Vec<u32>>,
}

impl SuccTable {
    pub(crate) fn new(lts: &Lts, alphabet: &Alphabet) -> Self {
        let map: Vec<usize> = lts
            .alphabet
            .names()
            .iter()
            .map(|n| alphabet.get(n).expect("alphabet must cover the LTS").index())
            .collect();
        let n_actions = alphabet.len();
        let mut cells = vec![Vec::new(); lts.num_states() * n_actions];
        let mut enabled = vec![Vec::new(); lts.num_states()];
        for (s, a, t) in lts.transitions() {
            let ua = map[a.index()];
            let cell = &mut cells[s.index() * n_actions + ua];
            if cell.is_empty() {
                enabled[s.index()].push(ua as u32);
            }
            cell.push(t.0);
        }
        for e in &mut enabled {
            e.sort_unstable();
        }
        for c in &mut cells {
            c.sort_unstable();
        }
        SuccTable { n_actions, cells, enabled }
    }

    #[inline]
    pub(crate) fn get(&self, s: usize, a: usize) -> &[u32] {
        &self.cells[s * self.n_actions + a]
    }

    pub(crate) fn num_states(&self) -> usize {
        self.enabled.len()
    }

    /// Union-alphabet actions enabled at `s`, ascending.
    #[inline]
    pub(crate) fn enabled(&self, s: usize) -> &[u32] {
        &self.enabled[s]
    }
}

/// Union alphabet of several systems; the first system's ids are preserved.
pub(crate) fn union_alphabet(ltss: &[&Lts]) -> Alphabet {
    let mut a = Alphabet::new();
    for l in ltss {
        for n in l.alphabet.names() {
            a.intern(n.as_str());
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    /// a.b + a, built by hand: 0 = root, 1 = b, 2 = nil.
    fn fig1_env() -> Lts {
        let mut b = LtsBuilder::new();
        let a = b.add_action("a");
        let bb = b.add_action("b");
        let r = b.add_state("a.b + a").unwrap();
        let s = b.add_state("b").unwrap();
        let z = b.add_state("0").unwrap();
        b.add_transition(r, a, s).unwrap();
        b.add_transition(r, a, z).unwrap();
        b.add_transition(s, bb, z).unwrap();
        b.build()
    }

    #[test]
    fn successors_and_permits() {
        let l = fig1_env();
        let a = l.alphabet().get("a").unwrap();
        let b = l.alphabet().get("b").unwrap();
        assert_eq!(l.successors(StateId(0), a).unwrap(), vec![StateId(1), StateId(2)]);
        assert!(l.permits(StateId(0), a).unwrap());
        assert!(!l.permits(StateId(0), b).unwrap());
        assert!(!l.permits(StateId(2), a).unwrap());
        assert!(matches!(l.successors(StateId(9), a), Err(Error::UnknownState(9))));
        assert!(matches!(l.permits(StateId(0), ActionId(7)), Err(Error::UnknownAction(_))));
    }

    #[test]
    fn reachability_and_determinism() {
        let l = fig1_env();
        assert_eq!(l.reachable(StateId(2)).unwrap(), vec![StateId(2)]);
        assert_eq!(l.reachable(StateId(0)).unwrap().len(), 3);
        assert!(!l.is_deterministic(StateId(0)).unwrap());
        assert!(l.is_deterministic(StateId(1)).unwrap());
        assert!(l.is_image_finite(StateId(0)).unwrap());
    }

    #[test]
    fn duplicate_transitions_collapse() {
        let mut b = LtsBuilder::new();
        let a = b.add_action("a");
        let s = b.add_state("s").unwrap();
        b.add_transition(s, a, s).unwrap();
        b.add_transition(s, a, s).unwrap();
        assert_eq!(b.build().num_transitions(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let mut b = LtsBuilder::new().budget(2);
        b.add_state("x").unwrap();
        b.add_state("y").unwrap();
        assert!(matches!(b.add_state("z"), Err(Error::BudgetExceeded { limit: 2 })));
    }

    #[test]
    fn disjoint_union_merges_alphabets_by_name() {
        let l = fig1_env();
        let mut b = LtsBuilder::new();
        let c = b.add_action("c");
        let a = b.add_action("a");
        let s = b.add_state("s").unwrap();
        b.add_transition(s, c, s).unwrap();
        b.add_transition(s, a, s).unwrap();
        let r = b.build();
        let (u, off) = l.disjoint_union(&r).unwrap();
        assert_eq!(off, 3);
        assert_eq!(u.alphabet().names(), &["a", "b", "c"]);
        assert_eq!(u.successors_by_name(StateId(3), "a").unwrap(), vec![StateId(3)]);
        assert_eq!(u.num_transitions(), 5);
    }
}
