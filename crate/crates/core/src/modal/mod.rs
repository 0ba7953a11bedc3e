//! Hennessy–Milner logic: satisfaction, positive projection, negation
//! closures, bounded enumeration and the characterization checks for the
//! parameterized relations.

mod check;
mod formula;

use std::collections::HashMap;

pub use check::{check_char_parambisim, check_char_paramsim, witness_formula_paramsim, Bounds, ConsistencyReport};
pub use formula::{Formula, PositiveFormula};

use crate::lts::{Lts, StateId};

/// Memoized satisfaction sets for one LTS. A diamond over an action outside
/// the LTS alphabet is never satisfied.
pub struct Evaluator<'a> {
    lts: &'a Lts,
    memo: HashMap<Formula, Vec<bool>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(lts: &'a Lts) -> Self {
        Evaluator { lts, memo: HashMap::new() }
    }

    pub fn holds(&mut self, s: StateId, f: &Formula) -> bool {
        self.sat(f)[s.index()]
    }

    /// Satisfaction flag of every state.
    pub fn sat(&mut self, f: &Formula) -> &[bool] {
        if !self.memo.contains_key(f) {
            let v = self.compute(f);
            self.memo.insert(f.clone(), v);
        }
        &self.memo[f]
    }

    fn compute(&mut self, f: &Formula) -> Vec<bool> {
        let n = self.lts.num_states();
        match f {
            Formula::Top => vec![true; n],
            Formula::Neg(g) => self.sat(g).iter().map(|b| !b).collect(),
            Formula::And(gs) => {
                let mut acc = vec![true; n];
                for g in gs {
                    for (x, y) in acc.iter_mut().zip(self.sat(g)) {
                        *x &= *y;
                    }
                }
                acc
            }
            Formula::Diamond(a, g) => {
                let Some(a) = self.lts.alphabet().get(a) else {
                    return vec![false; n];
                };
                let inner = self.sat(g).to_vec();
                let lts = self.lts;
                lts.states().map(|s| lts.succ(s, a).any(|t| inner[t.index()])).collect()
            }
        }
    }
}

/// Whether state `s` of `lts` satisfies `f`.
pub fn satisfies(lts: &Lts, s: StateId, f: &Formula) -> bool {
    Evaluator::new(lts).holds(s, f)
}

impl Formula {
    /// Rebuilds the formula through the canonicalizing constructors.
    pub fn canonical(&self) -> Formula {
        match self {
            Formula::Top => Formula::Top,
            Formula::Neg(g) => Formula::neg(g.canonical()),
            Formula::And(gs) => Formula::and(gs.iter().map(Formula::canonical)),
            Formula::Diamond(a, g) => Formula::diamond(a.clone(), g.canonical()),
        }
    }
}

/// Erases every negation.
pub fn positive_projection(f: &Formula) -> PositiveFormula {
    fn go(f: &Formula) -> Formula {
        match f {
            Formula::Top => Formula::Top,
            Formula::Neg(g) => go(g),
            Formula::And(gs) => Formula::and(gs.iter().map(go)),
            Formula::Diamond(a, g) => Formula::diamond(a.clone(), go(g)),
        }
    }
    PositiveFormula::new_unchecked(go(f))
}

/// Whether `psi` projects onto `phi`.
pub fn in_negation_closure(psi: &Formula, phi: &PositiveFormula) -> bool {
    *positive_projection(psi) == phi.canonical()
}

/// Replaces every product label `a@x` by its action `a`.
pub fn act_project(f: &Formula) -> Formula {
    match f {
        Formula::Top => Formula::Top,
        Formula::Neg(g) => Formula::neg(act_project(g)),
        Formula::And(gs) => Formula::and(gs.iter().map(act_project)),
        Formula::Diamond(a, g) => {
            let action = a.split_once('@').map_or(a.as_str(), |(x, _)| x);
            Formula::diamond(action, act_project(g))
        }
    }
}

/// All canonical positive formulas with modal depth at most `max_depth` and
/// conjunctions of at most `max_width` diamonds, sorted by (depth, size,
/// structure).
pub fn enumerate_positive<S: AsRef<str>>(alphabet: &[S], max_depth: usize, max_width: usize) -> Vec<PositiveFormula> {
    let mut actions: Vec<&str> = alphabet.iter().map(AsRef::as_ref).collect();
    actions.sort_unstable();
    actions.dedup();

    let mut layer = vec![Formula::Top];
    for _ in 0..max_depth {
        let mut diamonds: Vec<Formula> =
            actions.iter().flat_map(|a| layer.iter().map(move |f| Formula::diamond(*a, f.clone()))).collect();
        diamonds.sort();
        let mut next = vec![Formula::Top];
        let mut pick = Vec::new();
        combinations(&diamonds, 0, max_width, &mut pick, &mut next);
        layer = next;
    }
    let mut out: Vec<PositiveFormula> = layer.into_iter().map(PositiveFormula::new_unchecked).collect();
    out.sort_by(|x, y| (x.depth(), x.size(), &**x).cmp(&(y.depth(), y.size(), &**y)));
    out
}

fn combinations(items: &[Formula], from: usize, width: usize, pick: &mut Vec<usize>, out: &mut Vec<Formula>) {
    if pick.len() == width {
        return;
    }
    for i in from..items.len() {
        pick.push(i);
        out.push(Formula::and(pick.iter().map(|&j| items[j].clone())));
        combinations(items, i + 1, width, pick, out);
        pick.pop();
    }
}

/// Every decoration of `phi` with at most one negation at each node, sorted
/// by number of negations and then structure. A formula with n nodes has
/// 2^n decorations.
pub fn enumerate_negclosure(phi: &PositiveFormula) -> Vec<Formula> {
    fn go(f: &Formula) -> Vec<Formula> {
        let plain: Vec<Formula> = match f {
            Formula::Top => vec![Formula::Top],
            Formula::Neg(_) => unreachable!("positive input"),
            Formula::Diamond(a, g) => go(g).into_iter().map(|b| Formula::diamond(a.clone(), b)).collect(),
            Formula::And(gs) => {
                let mut acc: Vec<Vec<Formula>> = vec![Vec::new()];
                for g in gs {
                    let vs = go(g);
                    acc = acc
                        .iter()
                        .flat_map(|pre| vs.iter().map(move |v| [pre.clone(), vec![v.clone()]].concat()))
                        .collect();
                }
                acc.into_iter().map(|parts| Formula::And(sorted(parts))).collect()
            }
        };
        plain.iter().cloned().chain(plain.iter().cloned().map(Formula::neg)).collect()
    }
    fn sorted(mut v: Vec<Formula>) -> Vec<Formula> {
        v.sort();
        v
    }
    let mut out = go(&phi.canonical());
    out.sort_by(|x, y| (x.negation_count(), x).cmp(&(y.negation_count(), y)));
    out
}
