//! Strong bisimilarity and the simulation preorder.
//!
//! The naive greatest-fixpoint computation is the reference; partition
//! refinement is a faster path for bisimilarity that is checked against it.

mod distinguish;
mod game;
mod partition;

use std::collections::HashSet;

use serde::Serialize;

use crate::bitset::BitMatrix;
use crate::error::{Error, Result};
use crate::lts::{union_alphabet, Alphabet, Lts, LtsBuilder, Process, StateId, StateRef, SuccTable};
use crate::modal::{Formula, PositiveFormula};

pub(crate) use distinguish::Distinguisher;
pub(crate) use game::{pair_ranks, RELATED};
pub(crate) use partition::coarsest_partition;

/// A set of pairs between the states of a left and a right LTS.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    bits: BitMatrix,
}

impl Relation {
    pub(crate) fn from_matrix(bits: BitMatrix) -> Self {
        Relation { bits }
    }

    pub fn left_size(&self) -> usize {
        self.bits.rows()
    }

    pub fn right_size(&self) -> usize {
        self.bits.cols()
    }

    pub fn contains(&self, s: StateId, t: StateId) -> bool {
        s.index() < self.left_size() && t.index() < self.right_size() && self.bits.get(s.index(), t.index())
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        self.bits.iter().map(|(s, t)| (StateId(s as u32), StateId(t as u32)))
    }

    pub fn converse(&self) -> Relation {
        Relation { bits: self.bits.transpose() }
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        Relation { bits: self.bits.and(&other.bits) }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.bits.is_subset(&other.bits)
    }

    fn square(&self) -> bool {
        self.left_size() == self.right_size()
    }

    pub fn is_reflexive(&self) -> bool {
        self.square() && (0..self.left_size()).all(|i| self.bits.get(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.square() && self.bits == self.bits.transpose()
    }

    pub fn is_transitive(&self) -> bool {
        if !self.square() {
            return false;
        }
        let n = self.left_size();
        for (i, j) in self.bits.iter() {
            for k in 0..n {
                if self.bits.get(j, k) && !self.bits.get(i, k) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_preorder() && self.is_symmetric()
    }

    /// `[[left, right], ...]` in row-major order.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Pairs(Vec<[u32; 2]>);
        serde_json::to_value(Pairs(self.pairs().map(|(s, t)| [s.0, t.0]).collect())).expect("pairs serialise")
    }
}

/// Union alphabet and successor tables of two systems.
pub(crate) fn tables(l: &Lts, r: &Lts) -> (Alphabet, SuccTable, SuccTable) {
    let alpha = union_alphabet(&[l, r]);
    let lt = SuccTable::new(l, &alpha);
    let rt = SuccTable::new(r, &alpha);
    (alpha, lt, rt)
}

/// `(action, target)` lists of `lts` with actions renamed into `alphabet` and
/// targets shifted by `offset`.
pub(crate) fn out_lists(lts: &Lts, alphabet: &Alphabet, offset: u32) -> Vec<Vec<(u32, u32)>> {
    let map: Vec<u32> = lts.alphabet().names().iter().map(|n| alphabet.get(n).expect("covering alphabet").0).collect();
    lts.states().map(|s| lts.out(s).iter().map(|&(a, t)| (map[a.index()], t.0 + offset)).collect()).collect()
}

/// The largest bisimulation between the states of `l` and `r`, by the naive
/// fixpoint.
pub fn bisimilarity(l: &Lts, r: &Lts) -> Relation {
    let (_, lt, rt) = tables(l, r);
    Relation::from_matrix(pair_ranks(&lt, &rt, true).to_matrix())
}

/// The largest simulation: `(s, t)` is included iff `t` simulates `s`.
pub fn simulation_preorder(l: &Lts, r: &Lts) -> Relation {
    let (_, lt, rt) = tables(l, r);
    Relation::from_matrix(pair_ranks(&lt, &rt, false).to_matrix())
}

/// Same relation as [`bisimilarity`], by partition refinement on the
/// disjoint union of both systems.
pub fn bisimilarity_pr(l: &Lts, r: &Lts) -> Relation {
    let alpha = union_alphabet(&[l, r]);
    let nl = l.num_states();
    let mut out = out_lists(l, &alpha, 0);
    out.extend(out_lists(r, &alpha, nl as u32));
    let block = coarsest_partition(&out);
    let mut bits = BitMatrix::new(nl, r.num_states());
    for s in 0..nl {
        for t in 0..r.num_states() {
            if block[s] == block[nl + t] {
                bits.set(s, t, true);
            }
        }
    }
    Relation::from_matrix(bits)
}

/// Bisimilarity class of every state of `lts`, numbered by first state.
pub fn bisimulation_classes(lts: &Lts) -> Vec<u32> {
    coarsest_partition(&out_lists(lts, lts.alphabet(), 0))
}

/// Quotient of `lts` by bisimilarity, and the class state of every original
/// state. A class keeps the label of its first member.
pub fn minimize(lts: &Lts) -> (Lts, Vec<StateId>) {
    let class = bisimulation_classes(lts);
    let n = class.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut b = LtsBuilder::with_alphabet(lts.alphabet().clone()).budget(usize::MAX);
    let mut seen = vec![false; n];
    for s in lts.states() {
        let c = class[s.index()] as usize;
        if !seen[c] {
            seen[c] = true;
            b.add_state(lts.label(s)).expect("unbounded builder");
        }
    }
    for (s, a, t) in lts.transitions() {
        b.add_transition(StateId(class[s.index()]), a, StateId(class[t.index()])).expect("valid quotient edge");
    }
    (b.build(), class.into_iter().map(StateId).collect())
}

pub fn bisimilar<'a, 'b>(p: impl Into<StateRef<'a>>, q: impl Into<StateRef<'b>>) -> bool {
    let (p, q) = (p.into(), q.into());
    bisimilarity_pr(p.lts, q.lts).contains(p.state, q.state)
}

/// `q` simulates `p`.
pub fn simulated_by<'a, 'b>(p: impl Into<StateRef<'a>>, q: impl Into<StateRef<'b>>) -> bool {
    let (p, q) = (p.into(), q.into());
    simulation_preorder(p.lts, q.lts).contains(p.state, q.state)
}

/// Bisimilarity classes over the disjoint union of `parts`: the union
/// alphabet, the class of every state (numbered by first occurrence) and
/// the offset of each part. No combined LTS is materialised.
pub(crate) fn joint_classes(parts: &[&Lts]) -> (Alphabet, Vec<u32>, Vec<u32>) {
    let alpha = union_alphabet(parts);
    let mut out = Vec::new();
    let mut offsets = Vec::with_capacity(parts.len());
    for l in parts {
        offsets.push(out.len() as u32);
        let off = out.len() as u32;
        out.extend(out_lists(l, &alpha, off));
    }
    (alpha, coarsest_partition(&out), offsets)
}

/// The disjoint union of `parts` quotiented by bisimilarity, together with
/// the class state of every root. Classes keep the label of their first
/// state.
pub fn quotient_union(parts: &[(&Lts, StateId)]) -> Result<(Lts, Vec<StateId>)> {
    let ltss: Vec<&Lts> = parts.iter().map(|(l, _)| *l).collect();
    let (alpha, class, offsets) = joint_classes(&ltss);
    let mut b = LtsBuilder::with_alphabet(alpha.clone());
    let mut made = 0u32;
    let mut edges = Vec::new();
    for (l, &off) in ltss.iter().zip(&offsets) {
        for s in l.states() {
            let c = class[(off + s.0) as usize];
            if c == made {
                b.add_state(l.label(s))?;
                made += 1;
            }
        }
        for (s, a, t) in l.transitions() {
            let a = alpha.get(l.alphabet().name(a)).expect("union alphabet");
            edges.push((class[(off + s.0) as usize], a, class[(off + t.0) as usize]));
        }
    }
    for (s, a, t) in edges {
        b.add_transition(StateId(s), a, StateId(t))?;
    }
    let roots = parts.iter().zip(&offsets).map(|((_, r), &off)| StateId(class[(off + r.0) as usize])).collect();
    Ok((b.build(), roots))
}

/// Keeps the first member of each bisimilarity class, preserving order.
pub fn dedup_by_bisimilarity(procs: Vec<Process>) -> Vec<Process> {
    let ltss: Vec<&Lts> = procs.iter().map(|p| p.lts.as_ref()).collect();
    let (_, class, offsets) = joint_classes(&ltss);
    let roots: Vec<u32> = procs.iter().zip(&offsets).map(|(p, &off)| class[(off + p.root.0) as usize]).collect();
    let mut seen = HashSet::new();
    procs.into_iter().zip(roots).filter(|(_, c)| seen.insert(*c)).map(|(p, _)| p).collect()
}

/// A formula satisfied by `s` in `l` and not by `t` in `r`, of minimal modal
/// depth.
pub fn distinguish_bisim(l: &Lts, s: StateId, r: &Lts, t: StateId) -> Result<Formula> {
    l.check_state(s)?;
    r.check_state(t)?;
    let (alpha, lt, rt) = tables(l, r);
    let ranks = pair_ranks(&lt, &rt, true);
    if ranks.get(s.index(), t.index()) == RELATED {
        return Err(Error::Contract(format!("{} and {} are bisimilar", l.label(s), r.label(t))));
    }
    Ok(Distinguisher::new(&lt, &rt, &ranks, alpha.names(), true).formula(s.0, t.0, true))
}

/// A positive formula satisfied by `s` in `l` and not by `t` in `r`, of
/// minimal modal depth.
pub fn distinguish_sim(l: &Lts, s: StateId, r: &Lts, t: StateId) -> Result<PositiveFormula> {
    l.check_state(s)?;
    r.check_state(t)?;
    let (alpha, lt, rt) = tables(l, r);
    let ranks = pair_ranks(&lt, &rt, false);
    if ranks.get(s.index(), t.index()) == RELATED {
        return Err(Error::Contract(format!("{} is simulated by {}", l.label(s), r.label(t))));
    }
    let f = Distinguisher::new(&lt, &rt, &ranks, alpha.names(), false).formula(s.0, t.0, true);
    Ok(PositiveFormula::new_unchecked(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modal::satisfies;
    use crate::syntax::compile_source;

    fn p(src: &str) -> Process {
        compile_source(src).unwrap()
    }

    #[test]
    fn fig1_bisimilarity_examples() {
        let e = p("a.b + a");
        assert!(bisimilar(&e, &e));
        let (ab, q) = (p("a.b"), p("a.b + a"));
        assert!(!bisimilar(&ab, &q));
        assert!(!bisimilarity(&ab.lts, &q.lts).contains(ab.root, q.root));
    }

    #[test]
    fn simulation_examples() {
        let (ab, q, nil) = (p("a.b"), p("a.b + a"), p("0"));
        assert!(simulated_by(&ab, &q));
        assert!(simulated_by(&q, &ab));
        assert!(simulated_by(&nil, &q));
        assert!(!simulated_by(&q, &nil));
    }

    #[test]
    fn relations_have_their_advertised_shape() {
        let l = p("a.(b + c) + a.b.c + b.a").lts;
        let bis = bisimilarity(&l, &l);
        let sim = simulation_preorder(&l, &l);
        assert!(bis.is_equivalence());
        assert!(sim.is_preorder());
        assert!(bis.is_subset(&sim.intersection(&sim.converse())));
        assert_eq!(bisimilarity_pr(&l, &l), bis);
    }

    #[test]
    fn deadlock_is_self_bisimilar() {
        let l = p("0").lts;
        assert!(bisimilarity_pr(&l, &l).contains(StateId(0), StateId(0)));
    }

    #[test]
    fn distinguishing_formulas() {
        let (ab, q) = (p("a.b"), p("a.b + a"));
        let f = distinguish_bisim(&ab.lts, ab.root, &q.lts, q.root).unwrap();
        assert_eq!(f.to_string(), "!<a>!<b>T");
        assert!(satisfies(&ab.lts, ab.root, &f));
        assert!(!satisfies(&q.lts, q.root, &f));

        let (a, nil) = (p("a"), p("0"));
        assert_eq!(distinguish_bisim(&a.lts, a.root, &nil.lts, nil.root).unwrap().to_string(), "<a>T");
        assert_eq!(distinguish_bisim(&nil.lts, nil.root, &a.lts, a.root).unwrap().to_string(), "!<a>T");
        assert!(matches!(distinguish_bisim(&a.lts, a.root, &a.lts, a.root), Err(Error::Contract(_))));
    }

    #[test]
    fn positive_distinguishing_formulas() {
        let (ab, q, a, nil) = (p("a.b"), p("a.b + a"), p("a"), p("0"));
        assert_eq!(distinguish_sim(&ab.lts, ab.root, &a.lts, a.root).unwrap().to_string(), "<a><b>T");
        assert_eq!(distinguish_sim(&q.lts, q.root, &a.lts, a.root).unwrap().to_string(), "<a><b>T");
        assert_eq!(distinguish_sim(&a.lts, a.root, &nil.lts, nil.root).unwrap().to_string(), "<a>T");
        assert!(distinguish_sim(&ab.lts, ab.root, &q.lts, q.root).is_err());
    }

    #[test]
    fn minimize_merges_classes() {
        let l = p("a.b + a.b.0 + b").lts;
        let (m, map) = minimize(&l);
        assert_eq!(m.num_states(), 3);
        assert_eq!(map.len(), l.num_states());
        let dedup = dedup_by_bisimilarity(vec![p("a.b"), p("a.(b + b)"), p("b"), p("a.b + a.b")]);
        let names: Vec<_> = dedup.iter().map(|x| x.name().to_string()).collect();
        assert_eq!(names, vec!["a.b", "b"]);
    }

    #[test]
    fn quotient_union_shares_classes() {
        let (x, y) = (p("a.b + a.b"), p("a.b"));
        let (space, roots) = quotient_union(&[(&x.lts, x.root), (&y.lts, y.root)]).unwrap();
        assert_eq!(space.num_states(), 3);
        assert_eq!(roots[0], roots[1]);
    }
}
