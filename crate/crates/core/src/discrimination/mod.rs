//! Finite process universes and the discrimination preorder on
//! environments: `e` is below `f` when every pair of universe members that
//! `e` tells apart is also told apart by `f`, i.e. `R_f ⊆ R_e`.
//!
//! Members live in one shared LTS (the disjoint union of all members
//! quotiented by bisimilarity). Relations relative to an environment are
//! computed for all member pairs at once.

mod report;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

pub use report::{PairRecord, Report, Suite, Violation};

use crate::bitset::BitMatrix;
use crate::equivalence::{bisimulation_classes, joint_classes, minimize, pair_ranks, quotient_union, RELATED};
use crate::error::{Error, Result};
use crate::interaction::{join_lts, product, universal_process};
use crate::lts::{state_budget, union_alphabet, Lts, LtsBuilder, Process, StateId, StateRef, SuccTable};
use crate::parameterized::family_ranks;
use crate::syntax::{close_under_join, compile, enumerate_terms, DefinitionSet};

/// Relation used to compare member pairs under an environment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    ParamBisim,
    JiParamBisim,
    JiParamSim,
    JiParamSimEquiv,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::ParamBisim, Mode::JiParamBisim, Mode::JiParamSim, Mode::JiParamSimEquiv];

    pub fn name(self) -> &'static str {
        match self {
            Mode::ParamBisim => "parambisim",
            Mode::JiParamBisim => "jiparambisim",
            Mode::JiParamSim => "jiparamsim",
            Mode::JiParamSimEquiv => "jiparamsimequiv",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Contract(format!("unknown discrimination mode `{s}`")))
    }
}

/// How a universe was generated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniverseParams {
    pub alphabet: Vec<String>,
    pub max_term_size: usize,
    pub join_rounds: usize,
    pub include_universal: bool,
}

/// Pairwise non-bisimilar processes in a fixed order.
#[derive(Clone, Debug)]
pub struct Universe {
    params: UniverseParams,
    members: Vec<Process>,
    space: Lts,
    roots: Vec<StateId>,
    sim: BitMatrix,
}

/// Enumerates all terms up to `max_term_size`, compiles them, optionally
/// adds the universal process, closes under joins for `join_rounds` rounds
/// and keeps one member per bisimilarity class.
pub fn build_universe<S: AsRef<str>>(
    alphabet: &[S],
    max_term_size: usize,
    join_rounds: usize,
    include_universal: bool,
) -> Result<Universe> {
    if alphabet.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    if max_term_size == 0 {
        return Err(Error::Contract("term size bound must be positive".into()));
    }
    let defs = DefinitionSet::new();
    let mut procs = Vec::new();
    for t in enumerate_terms(alphabet, max_term_size) {
        let (lts, root) = compile(&t, &defs)?;
        procs.push(Process::new(lts, root));
    }
    if include_universal {
        procs.push(universal_process(alphabet)?);
    }
    let members = close_under_join(procs, join_rounds)?;
    let params = UniverseParams {
        alphabet: alphabet.iter().map(|s| s.as_ref().to_string()).collect(),
        max_term_size,
        join_rounds,
        include_universal,
    };
    Universe::from_processes(params, members)
}

impl Universe {
    /// A universe over explicitly given processes; bisimilar duplicates are
    /// dropped, first occurrence wins.
    pub fn from_processes(params: UniverseParams, procs: Vec<Process>) -> Result<Universe> {
        let members = crate::equivalence::dedup_by_bisimilarity(procs);
        let parts: Vec<(&Lts, StateId)> = members.iter().map(|p| (p.lts.as_ref(), p.root)).collect();
        let (space, roots) = quotient_union(&parts)?;
        let t = SuccTable::new(&space, space.alphabet());
        let all = pair_ranks(&t, &t, false).to_matrix();
        let mut sim = BitMatrix::new(roots.len(), roots.len());
        for (i, ri) in roots.iter().enumerate() {
            for (j, rj) in roots.iter().enumerate() {
                sim.set(i, j, all.get(ri.index(), rj.index()));
            }
        }
        Ok(Universe { params, members, space, roots, sim })
    }

    pub fn params(&self) -> &UniverseParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Process] {
        &self.members
    }

    pub fn name(&self, i: usize) -> &str {
        self.members[i].name()
    }

    /// The shared quotient LTS and the state of member `i` in it.
    pub fn space(&self) -> &Lts {
        &self.space
    }

    pub fn root(&self, i: usize) -> StateId {
        self.roots[i]
    }

    /// Index of the member bisimilar to `p`, if any.
    pub fn index_of<'a>(&self, p: impl Into<StateRef<'a>>) -> Option<usize> {
        let p = p.into();
        let (_, class, offsets) = joint_classes(&[&self.space, p.lts]);
        let target = class[(offsets[1] + p.state.0) as usize];
        self.roots.iter().position(|r| class[r.index()] == target)
    }

    /// `f` simulates `e`, both members.
    pub fn sim_leq(&self, e: usize, f: usize) -> bool {
        self.sim.get(e, f)
    }

    /// Members are pairwise non-bisimilar, so this is index equality.
    pub fn bisimilar(&self, e: usize, f: usize) -> bool {
        self.roots[e] == self.roots[f]
    }

    /// Every ordered pair of member indices.
    pub fn all_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|e| (0..self.len()).map(move |f| (e, f))).collect()
    }

    /// `R(i, j)` for all members under environment `env`.
    pub fn relation<'a>(&self, mode: Mode, env: impl Into<StateRef<'a>>) -> Result<BitMatrix> {
        let env = env.into();
        env.lts.check_state(env.state)?;
        let (env_lts, env_root) = reachable_part(env)?;
        let n = self.len();
        let mut m = BitMatrix::new(n, n);
        match mode {
            Mode::ParamBisim => {
                let alpha = union_alphabet(&[&self.space, &env_lts]);
                let st = SuccTable::new(&self.space, &alpha);
                let et = SuccTable::new(&env_lts, &alpha);
                let ranks = family_ranks(&et, &st, &st, true);
                for (i, ri) in self.roots.iter().enumerate() {
                    for (j, rj) in self.roots.iter().enumerate() {
                        m.set(i, j, ranks.get(env_root.index(), ri.index(), rj.index()) == RELATED);
                    }
                }
            }
            Mode::JiParamBisim => {
                let (prod, roots) = self.joined(&env_lts, env_root)?;
                let class = bisimulation_classes(&prod);
                for (i, ri) in roots.iter().enumerate() {
                    for (j, rj) in roots.iter().enumerate() {
                        m.set(i, j, class[ri.index()] == class[rj.index()]);
                    }
                }
            }
            Mode::JiParamSim | Mode::JiParamSimEquiv => {
                let (prod, roots) = self.joined(&env_lts, env_root)?;
                // simulation is invariant under bisimilarity, so the quotient suffices
                let (small, class) = minimize(&prod);
                let t = SuccTable::new(&small, small.alphabet());
                let ranks = pair_ranks(&t, &t, false);
                for (i, ri) in roots.iter().enumerate() {
                    for (j, rj) in roots.iter().enumerate() {
                        m.set(i, j, ranks.get(class[ri.index()].index(), class[rj.index()].index()) == RELATED);
                    }
                }
                if mode == Mode::JiParamSimEquiv {
                    m = m.and(&m.transpose());
                }
            }
        }
        Ok(m)
    }

    /// [`Universe::relation`] for member `env`.
    pub fn member_relation(&self, mode: Mode, env: usize) -> Result<BitMatrix> {
        self.relation(mode, self.space.at(self.roots[env]))
    }

    /// Relations for the given members, computed in parallel.
    pub fn member_relations(&self, mode: Mode, envs: &[usize]) -> Result<Vec<BitMatrix>> {
        envs.par_iter().map(|&e| self.member_relation(mode, e)).collect()
    }

    /// Product of every member with the environment, one root per member.
    fn joined(&self, env: &Lts, env_root: StateId) -> Result<(Lts, Vec<StateId>)> {
        let pairs: Vec<(StateId, StateId)> = self.roots.iter().map(|&r| (r, env_root)).collect();
        let prod = product(&self.space, env, &pairs, false, state_budget())?;
        Ok((prod.lts, prod.roots))
    }
}

/// The part of `s.lts` reachable from `s.state`, renumbered from 0.
fn reachable_part(s: StateRef<'_>) -> Result<(Lts, StateId)> {
    let reach = s.lts.reachable(s.state)?;
    let mut index = vec![u32::MAX; s.lts.num_states()];
    let mut b = LtsBuilder::with_alphabet(s.lts.alphabet().clone()).budget(usize::MAX);
    for &x in &reach {
        index[x.index()] = b.add_state(s.lts.label(x))?.0;
    }
    for &x in &reach {
        for &(a, y) in s.lts.out(x) {
            b.add_transition(StateId(index[x.index()]), a, StateId(index[y.index()]))?;
        }
    }
    Ok((b.build(), StateId(index[s.state.index()])))
}

/// First `(p, q)` related under `f` but not under `e`.
fn containment_witness(rf: &BitMatrix, re: &BitMatrix) -> Option<(usize, usize)> {
    rf.first_difference(re)
}

/// `R_f ⊆ R_e` over all member pairs: every pair `e` distinguishes is also
/// distinguished by `f`.
pub fn discriminates_leq<'a, 'b>(
    e: impl Into<StateRef<'a>>,
    f: impl Into<StateRef<'b>>,
    universe: &Universe,
    mode: Mode,
) -> Result<bool> {
    Ok(discrimination_witness(e, f, universe, mode)?.is_none())
}

/// A member pair `(p, q)` related under `f` but not under `e`, if any.
pub fn discrimination_witness<'a, 'b>(
    e: impl Into<StateRef<'a>>,
    f: impl Into<StateRef<'b>>,
    universe: &Universe,
    mode: Mode,
) -> Result<Option<(usize, usize)>> {
    let re = universe.relation(mode, e)?;
    let rf = universe.relation(mode, f)?;
    Ok(containment_witness(&rf, &re))
}

/// The discrimination preorder over all members as an `n × n` matrix.
pub fn discrimination_matrix(universe: &Universe, mode: Mode) -> Result<BitMatrix> {
    let n = universe.len();
    let rels = universe.member_relations(mode, &(0..n).collect::<Vec<_>>())?;
    let mut m = BitMatrix::new(n, n);
    for e in 0..n {
        for f in 0..n {
            m.set(e, f, rels[f].is_subset(&rels[e]));
        }
    }
    Ok(m)
}

/// Relations of the environments mentioned in `pairs`, indexed by member.
fn relations_for(universe: &Universe, mode: Mode, pairs: &[(usize, usize)]) -> Result<Vec<Option<BitMatrix>>> {
    let envs: Vec<usize> = pairs.iter().flat_map(|&(e, f)| [e, f]).collect::<BTreeSet<_>>().into_iter().collect();
    let rels = universe.member_relations(mode, &envs)?;
    let mut out = vec![None; universe.len()];
    for (e, r) in envs.into_iter().zip(rels) {
        out[e] = Some(r);
    }
    Ok(out)
}

fn check_pairs(universe: &Universe, pairs: &[(usize, usize)]) -> Result<()> {
    match pairs.iter().find(|&&(e, f)| e >= universe.len() || f >= universe.len()) {
        Some(&(e, f)) => {
            Err(Error::Contract(format!("environment pair ({e}, {f}) outside a universe of {}", universe.len())))
        }
        None => Ok(()),
    }
}

fn record(
    u: &Universe,
    e: usize,
    f: usize,
    sim_leq: bool,
    discr_leq: bool,
    witness: Option<(usize, usize)>,
) -> PairRecord {
    PairRecord {
        e: u.name(e).to_string(),
        f: u.name(f).to_string(),
        sim_leq,
        discr_leq,
        witness: witness.map(|(p, q)| [u.name(p).to_string(), u.name(q).to_string()]),
    }
}

/// Larsen's characterization for parameterized bisimilarity. The direction
/// `e <= f ⇒ R_f ⊆ R_e` is asserted; containment without simulation is only
/// recorded as a finding, since a finite universe may be too poor to
/// separate.
pub fn check_larsen_forward(universe: &Universe, env_pairs: &[(usize, usize)]) -> Result<Report> {
    check_pairs(universe, env_pairs)?;
    let rels = relations_for(universe, Mode::ParamBisim, env_pairs)?;
    let mut report = Report::new(Suite::LarsenForward, Mode::ParamBisim.name(), universe);
    for &(e, f) in env_pairs {
        let (re, rf) = (rels[e].as_ref().expect("computed"), rels[f].as_ref().expect("computed"));
        let sim = universe.sim_leq(e, f);
        let witness = containment_witness(rf, re);
        let rec = record(universe, e, f, sim, witness.is_none(), witness);
        if sim && witness.is_some() {
            report.violate(&rec, "e <= f but R_f is not contained in R_e");
        } else if !sim && witness.is_none() {
            report.finding(format!(
                "converse fails here: R_{} ⊆ R_{} although {} is not simulated by {}",
                rec.f, rec.e, rec.e, rec.f
            ));
        }
        report.pairs.push(rec);
    }
    Ok(report)
}

/// The characterization for ji-simulatability, asserted in both directions
/// for the relation itself, for ji-simulation equivalence and for the
/// converse relation. Needs a universe with the universal process and at
/// least one round of join closure.
pub fn check_jisim_theorem(universe: &Universe, env_pairs: &[(usize, usize)]) -> Result<Report> {
    let p = universe.params();
    if !p.include_universal || p.join_rounds == 0 {
        return Err(Error::Contract("the universe needs the universal process and at least one join round".into()));
    }
    check_pairs(universe, env_pairs)?;
    let sim = relations_for(universe, Mode::JiParamSim, env_pairs)?;
    let equiv = relations_for(universe, Mode::JiParamSimEquiv, env_pairs)?;
    let mut report = Report::new(Suite::JisimTheorem, Mode::JiParamSim.name(), universe);
    for &(e, f) in env_pairs {
        let s = universe.sim_leq(e, f);
        let get = |v: &[Option<BitMatrix>], i: usize| v[i].clone().expect("computed");
        let w_sim = containment_witness(&get(&sim, f), &get(&sim, e));
        let w_equiv = containment_witness(&get(&equiv, f), &get(&equiv, e));
        let w_conv = containment_witness(&get(&sim, f).transpose(), &get(&sim, e).transpose());
        let rec = record(universe, e, f, s, w_sim.is_none(), w_sim);
        for (what, w) in [("<=ji", w_sim), ("~=ji", w_equiv), (">=ji", w_conv)] {
            if s != w.is_none() {
                let mut r = record(universe, e, f, s, w.is_none(), w);
                if s {
                    r.witness = w.map(|(p, q)| [universe.name(p).to_string(), universe.name(q).to_string()]);
                }
                let msg = if s {
                    format!("e <= f but {what}_f is not contained in {what}_e")
                } else {
                    format!("{what}_f is contained in {what}_e but e is not simulated by f")
                };
                report.violate(&r, &msg);
            }
        }
        report.pairs.push(rec);
    }
    Ok(report)
}

/// `e <= f & e` iff `e <= f`, with the join built on demand.
pub fn check_lemma_aux1(universe: &Universe, env_pairs: &[(usize, usize)]) -> Result<Report> {
    check_pairs(universe, env_pairs)?;
    let results: Vec<(usize, usize, bool, bool)> = env_pairs
        .par_iter()
        .map(|&(e, f)| {
            let (pe, pf) = (&universe.members[e], &universe.members[f]);
            let j = join_lts(pf, pe)?;
            let left = crate::equivalence::simulated_by(pe, j.lts.at(j.root()));
            Ok((e, f, universe.sim_leq(e, f), left))
        })
        .collect::<Result<_>>()?;
    let mut report = Report::new(Suite::LemmaAux1, "join-sim", universe);
    for (e, f, sim, left) in results {
        // discr_leq carries the other side of the biconditional: e <= f & e
        let rec = record(universe, e, f, sim, left, None);
        if sim != left {
            report.violate(&rec, "e <= f & e and e <= f disagree");
        }
        report.pairs.push(rec);
    }
    Ok(report)
}

/// Looks for environments with equal ji-bisimilarity relations over the
/// universe that are not bisimilar, and for bisimilar ones with different
/// relations. Only findings, never violations.
pub fn search_open_problem_p2(universe: &Universe, env_pairs: &[(usize, usize)]) -> Result<Report> {
    check_pairs(universe, env_pairs)?;
    let rels = relations_for(universe, Mode::JiParamBisim, env_pairs)?;
    let mut report = Report::new(Suite::P2Search, Mode::JiParamBisim.name(), universe);
    let mut candidates = 0;
    for &(e, f) in env_pairs {
        let (re, rf) = (rels[e].as_ref().expect("computed"), rels[f].as_ref().expect("computed"));
        let witness = containment_witness(rf, re);
        let equal = re == rf;
        let bisim = universe.bisimilar(e, f);
        let rec = record(universe, e, f, universe.sim_leq(e, f), witness.is_none(), witness);
        if equal && !bisim {
            candidates += 1;
            report.finding(format!(
                "COUNTEREXAMPLE CANDIDATE: {} and {} have equal ji-bisimilarity relations but are not bisimilar",
                rec.e, rec.f
            ));
        }
        if bisim && !equal {
            report.finding(format!("UNEXPECTED: {} and {} are bisimilar but their relations differ", rec.e, rec.f));
        }
        report.pairs.push(rec);
    }
    report.finding(format!("{candidates} counterexample candidate(s) among {} pairs", env_pairs.len()));
    Ok(report)
}

/// Tabulates the ji-bisimilarity discrimination order next to simulation,
/// without asserting anything; a starting point for looking for a
/// characterization.
pub fn search_open_problem_p1(universe: &Universe, env_pairs: &[(usize, usize)]) -> Result<Report> {
    check_pairs(universe, env_pairs)?;
    let rels = relations_for(universe, Mode::JiParamBisim, env_pairs)?;
    let mut report = Report::new(Suite::P1Search, Mode::JiParamBisim.name(), universe);
    let (mut both, mut only_sim, mut only_discr) = (0, 0, 0);
    for &(e, f) in env_pairs {
        let (re, rf) = (rels[e].as_ref().expect("computed"), rels[f].as_ref().expect("computed"));
        let witness = containment_witness(rf, re);
        let sim = universe.sim_leq(e, f);
        match (sim, witness.is_none()) {
            (true, true) => both += 1,
            (true, false) => only_sim += 1,
            (false, true) => only_discr += 1,
            _ => {}
        }
        report.pairs.push(record(universe, e, f, sim, witness.is_none(), witness));
    }
    report.finding(format!("both: {both}, simulation only: {only_sim}, discrimination only: {only_discr}"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::compile_source;

    fn p(s: &str) -> Process {
        compile_source(s).unwrap()
    }

    fn names(u: &Universe) -> Vec<String> {
        (0..u.len()).map(|i| u.name(i).to_string()).collect()
    }

    #[test]
    fn tiny_universe() {
        let u = build_universe(&["a"], 2, 0, false).unwrap();
        assert_eq!(names(&u), vec!["0", "a"]);
        assert!(matches!(build_universe::<&str>(&[], 2, 0, false), Err(Error::EmptyAlphabet)));
        assert!(build_universe(&["a"], 0, 0, false).is_err());
    }

    #[test]
    fn universe_contents() {
        let u = build_universe(&["a", "b"], 4, 0, true).unwrap();
        for t in ["0", "b", "a.b", "a.b + a"] {
            assert!(u.index_of(&p(t)).is_some(), "{t}");
        }
        assert!(u.index_of(&universal_process(&["a", "b"]).unwrap()).is_some());
        let again = build_universe(&["a", "b"], 4, 0, true).unwrap();
        assert_eq!(names(&u), names(&again));
    }

    #[test]
    fn unary_closure_adds_nothing() {
        let plain = build_universe(&["a"], 3, 0, true).unwrap();
        let closed = build_universe(&["a"], 3, 1, true).unwrap();
        assert_eq!(names(&plain), names(&closed));
    }

    #[test]
    fn discrimination_examples() {
        let u = build_universe(&["a", "b"], 4, 0, true).unwrap();
        let (e, f) = (p("a.b"), p("a.b + a"));
        assert!(discriminates_leq(&e, &f, &u, Mode::ParamBisim).unwrap());
        let w = discrimination_witness(&e, &f, &u, Mode::JiParamBisim).unwrap().unwrap();
        let rf = u.relation(Mode::JiParamBisim, &f).unwrap();
        let re = u.relation(Mode::JiParamBisim, &e).unwrap();
        assert!(rf.get(w.0, w.1) && !re.get(w.0, w.1));
        // the pair (e, f) itself is one such witness
        let (pi, qi) = (u.index_of(&e).unwrap(), u.index_of(&f).unwrap());
        assert!(rf.get(pi, qi) && !re.get(pi, qi));
        for m in Mode::ALL {
            assert!(discriminates_leq(&e, &e, &u, m).unwrap());
        }
    }

    #[test]
    fn relations_match_pointwise_deciders() {
        use crate::parameterized::{ji_param_bisim, ji_param_sim, param_bisim_direct};
        let u = build_universe(&["a", "b"], 3, 0, false).unwrap();
        let env = p("a.b + a");
        let (rb, rj, rs) = (
            u.relation(Mode::ParamBisim, &env).unwrap(),
            u.relation(Mode::JiParamBisim, &env).unwrap(),
            u.relation(Mode::JiParamSim, &env).unwrap(),
        );
        for i in 0..u.len() {
            for j in 0..u.len() {
                let (x, y) = (&u.members()[i], &u.members()[j]);
                assert_eq!(rb.get(i, j), param_bisim_direct(x, &env, y, false).unwrap().0.related);
                assert_eq!(rj.get(i, j), ji_param_bisim(x, &env, y, false).unwrap().related);
                assert_eq!(rs.get(i, j), ji_param_sim(x, &env, y, false).unwrap().related);
            }
        }
    }

    #[test]
    fn suites_on_small_universe() {
        let u = build_universe(&["a", "b"], 3, 1, true).unwrap();
        let pairs = u.all_pairs();
        assert!(check_larsen_forward(&u, &pairs).unwrap().passed());
        assert!(check_jisim_theorem(&u, &pairs).unwrap().passed());
        assert!(check_lemma_aux1(&u, &pairs).unwrap().passed());
        assert!(search_open_problem_p2(&u, &pairs).unwrap().passed());
        let plain = build_universe(&["a"], 2, 0, false).unwrap();
        assert!(check_jisim_theorem(&plain, &plain.all_pairs()).is_err());
        assert!(check_larsen_forward(&u, &[(0, u.len())]).is_err());
    }
}
