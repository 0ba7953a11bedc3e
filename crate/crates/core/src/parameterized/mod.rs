//! Parameterized bisimilarity and simulation with respect to an environment,
//! and the relations obtained by joining both processes with the
//! environment.
//!
//! Every relation has two independent deciders. The direct family fixpoint
//! is the reference and the source of mismatch traces; the product
//! reductions go through [`crate::interaction`].

mod family;
mod trace;

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::equivalence::{bisimilarity_pr, distinguish_bisim, distinguish_sim, simulation_preorder, Relation};
use crate::error::{Error, Result};
use crate::interaction::{join_lts, joindot_lts};
use crate::lts::{union_alphabet, StateRef, SuccTable};
use crate::modal::Formula;

pub(crate) use family::{family_ranks, FamilyRanks};
pub(crate) use trace::{label_trace, shortest_trace, TraceInput};
pub use trace::{MismatchTrace, Side, TraceStep, TraceTransition};

use crate::bitset::BitMatrix;
use crate::equivalence::RELATED;

/// The relations this crate decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    Bisim,
    Sim,
    ParamBisim,
    ParamSim,
    JiBisim,
    JiSim,
    JiSimEquiv,
}

impl RelationKind {
    pub const ALL: [RelationKind; 7] = [
        RelationKind::Bisim,
        RelationKind::Sim,
        RelationKind::ParamBisim,
        RelationKind::ParamSim,
        RelationKind::JiBisim,
        RelationKind::JiSim,
        RelationKind::JiSimEquiv,
    ];

    /// ASCII relation symbol.
    pub fn symbol(self) -> &'static str {
        match self {
            RelationKind::Bisim => "~",
            RelationKind::Sim => "<=",
            RelationKind::ParamBisim => "~_e",
            RelationKind::ParamSim => "<=_e",
            RelationKind::JiBisim => "~ji_e",
            RelationKind::JiSim => "<=ji_e",
            RelationKind::JiSimEquiv => "~=ji_e",
        }
    }

    /// Name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Bisim => "bisim",
            RelationKind::Sim => "sim",
            RelationKind::ParamBisim => "param-bisim",
            RelationKind::ParamSim => "param-sim",
            RelationKind::JiBisim => "ji-bisim",
            RelationKind::JiSim => "ji-sim",
            RelationKind::JiSimEquiv => "ji-sim-equiv",
        }
    }

    pub fn needs_env(self) -> bool {
        !matches!(self, RelationKind::Bisim | RelationKind::Sim)
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelationKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Contract(format!("unknown relation `{s}`")))
    }
}

/// Explanation of a negative verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Satisfied by the left-hand side (or its product) and not by the right.
    Formula(Formula),
    Trace(MismatchTrace),
}

impl Witness {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::Formula(f) => Value::String(f.to_string()),
            Witness::Trace(t) => t.to_json(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub relation: RelationKind,
    pub related: bool,
    /// Present iff `related` is false and an explanation was requested.
    pub witness: Option<Witness>,
}

impl Verdict {
    fn new(relation: RelationKind, related: bool) -> Self {
        Verdict { relation, related, witness: None }
    }

    /// `{"relation", "related", "witness"?}`.
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "relation": self.relation.symbol(), "related": self.related });
        if let Some(w) = &self.witness {
            v["witness"] = w.to_json();
        }
        v
    }
}

/// One relation over process states per environment state.
#[derive(Clone, Debug)]
pub struct IndexedFamily {
    components: Vec<Relation>,
}

impl IndexedFamily {
    fn from_ranks(r: &FamilyRanks) -> Self {
        let components = (0..r.ne)
            .map(|f| {
                let mut m = BitMatrix::new(r.nl, r.nr);
                for p in 0..r.nl {
                    for q in 0..r.nr {
                        if r.get(f, p, q) == RELATED {
                            m.set(p, q, true);
                        }
                    }
                }
                Relation::from_matrix(m)
            })
            .collect();
        IndexedFamily { components }
    }

    /// Number of environment states.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, f: crate::lts::StateId) -> &Relation {
        &self.components[f.index()]
    }
}

struct Direct {
    env: SuccTable,
    left: SuccTable,
    right: SuccTable,
    alphabet: crate::lts::Alphabet,
    ranks: FamilyRanks,
}

fn direct(p: StateRef<'_>, e: StateRef<'_>, q: StateRef<'_>, back: bool) -> Result<Direct> {
    p.lts.check_state(p.state)?;
    e.lts.check_state(e.state)?;
    q.lts.check_state(q.state)?;
    let alphabet = union_alphabet(&[p.lts, q.lts, e.lts]);
    let env = SuccTable::new(e.lts, &alphabet);
    let left = SuccTable::new(p.lts, &alphabet);
    let right = SuccTable::new(q.lts, &alphabet);
    let ranks = family_ranks(&env, &left, &right, back);
    Ok(Direct { env, left, right, alphabet, ranks })
}

fn direct_verdict(
    kind: RelationKind,
    p: StateRef<'_>,
    e: StateRef<'_>,
    q: StateRef<'_>,
    explain: bool,
) -> Result<(Verdict, IndexedFamily)> {
    let back = kind == RelationKind::ParamBisim;
    let d = direct(p, e, q, back)?;
    let start = (e.state.0, p.state.0, q.state.0);
    let related = d.ranks.get(start.0 as usize, start.1 as usize, start.2 as usize) == RELATED;
    let mut v = Verdict::new(kind, related);
    if !related && explain {
        let inp =
            TraceInput { env: &d.env, left: &d.left, right: &d.right, alphabet: &d.alphabet, ranks: &d.ranks, back };
        v.witness = Some(Witness::Trace(shortest_trace(&inp, start)));
    }
    Ok((v, IndexedFamily::from_ranks(&d.ranks)))
}

/// `p ~_e q` by the greatest fixpoint of the family refinement operator.
pub fn param_bisim_direct<'a, 'b, 'c>(
    p: impl Into<StateRef<'a>>,
    e: impl Into<StateRef<'b>>,
    q: impl Into<StateRef<'c>>,
    explain: bool,
) -> Result<(Verdict, IndexedFamily)> {
    direct_verdict(RelationKind::ParamBisim, p.into(), e.into(), q.into(), explain)
}

/// `p <=_e q` by the greatest fixpoint, checking only the left side's moves.
pub fn param_sim_direct<'a, 'b, 'c>(
    p: impl Into<StateRef<'a>>,
    e: impl Into<StateRef<'b>>,
    q: impl Into<StateRef<'c>>,
    explain: bool,
) -> Result<(Verdict, IndexedFamily)> {
    direct_verdict(RelationKind::ParamSim, p.into(), e.into(), q.into(), explain)
}

/// `p ~_e q` as bisimilarity of `p &• e` and `q &• e`. The witness is a
/// formula over pair labels.
pub fn param_bisim_via_joindot<'a, 'b, 'c>(
    p: impl Into<StateRef<'a>>,
    e: impl Into<StateRef<'b>>,
    q: impl Into<StateRef<'c>>,
    explain: bool,
) -> Result<Verdict> {
    let (p, e, q) = (p.into(), e.into(), q.into());
    let (l, r) = (joindot_lts(p, e)?, joindot_lts(q, e)?);
    let related = bisimilarity_pr(&l.lts, &r.lts).contains(l.root(), r.root());
    let mut v = Verdict::new(RelationKind::ParamBisim, related);
    if !related && explain {
        v.witness = Some(Witness::Formula(distinguish_bisim(&l.lts, l.root(), &r.lts, r.root())?));
    }
    Ok(v)
}

/// `p <=_e q` as simulation between `p &• e` and `q &• e`.
pub fn param_sim_via_joindot<'a, 'b, 'c>(
    p: impl Into<StateRef<'a>>,
    e: impl Into<StateRef<'b>>,
    q: impl Into<StateRef<'c>>,
    explain: bool,
) -> Result<Verdict> {
    let (p, e, q) = (p.into(), e.into(), q.into());
    let (l, r) = (joindot_lts(p, e)?, joindot_lts(q, e)?);
    let related = simulation_preorder(&l.lts, &r.lts).contains(l.root(), r.root());
    let mut v = Verdict::new(RelationKind::ParamSim, related);
    if !related && explain {
        let f = distinguish_sim(&l.lts, l.root(), &r.lts, r.root())?;
        v.witness = Some(Witness::Formula(f.into_inner()));
    }
    Ok(v)
}

/// `p ~ji_e q`: `p & e` and `q & e` are bisimilar.
pub fn ji_param_bisim<'a, 'b, 'c>(
    p: impl Into<StateRef<'a>>,
    e: impl Into<StateRef<'b>>,
    q: impl Into<StateRef<'c>>,
    explain: bool,
) -> Result<Verdict> {
    let (p, e, q) = (p.into(), e.into(), q.into());
    let (l, r) = (join_lts(p, e)?, join_lts(q, e)?);
    let related = bisimilarity_pr(&l.lts, &r.lts).contains(l.root(), r.root());
    let mut v = Verdict::new(RelationKind::JiBisim, related);
    if !related && explain {
        v.witness = Some(Witness::Formula(distinguish_bisim(&l.lts, l.root(), &r.lts, r.root())?));
    }
    Ok(v)
}

/// `p <=ji_e q`: `q & e` simulates `p & e`.
pub fn ji_param_sim<'a, 'b, 'c>(
    p: impl Into<StateRef<'a>>,
    e: impl Into<StateRef<'b>>,
    q: impl Into<StateRef<'c>>,
    explain: bool,
) -> Result<Verdict> {
    let (p, e, q) = (p.into(), e.into(), q.into());
    let (l, r) = (join_lts(p, e)?, join_lts(q, e)?);
    let related = simulation_preorder(&l.lts, &r.lts).contains(l.root(), r.root());
    let mut v = Verdict::new(RelationKind::JiSim, related);
    if !related && explain {
        let f = distinguish_sim(&l.lts, l.root(), &r.lts, r.root())?;
        v.witness = Some(Witness::Formula(f.into_inner()));
    }
    Ok(v)
}

/// `p ~=ji_e q`: ji-simulation in both directions. When only `q <=ji_e p`
/// fails, the witness is the negation of a positive formula that `q & e`
/// satisfies and `p & e` does not.
pub fn ji_param_sim_equiv<'a, 'b, 'c>(
    p: impl Into<StateRef<'a>>,
    e: impl Into<StateRef<'b>>,
    q: impl Into<StateRef<'c>>,
    explain: bool,
) -> Result<Verdict> {
    let (p, e, q) = (p.into(), e.into(), q.into());
    let fwd = ji_param_sim(p, e, q, explain)?;
    let mut v = Verdict::new(RelationKind::JiSimEquiv, fwd.related);
    if !fwd.related {
        v.witness = fwd.witness;
        return Ok(v);
    }
    let bwd = ji_param_sim(q, e, p, explain)?;
    v.related = bwd.related;
    v.witness = bwd.witness.map(|w| match w {
        Witness::Formula(f) => Witness::Formula(Formula::neg(f)),
        other => other,
    });
    Ok(v)
}

/// Shortest play of the parameterized game from `(p, e, q)` that ends in an
/// unanswerable challenge. `sim` restricts challenges to the left side.
pub fn explain_param_mismatch<'a, 'b, 'c>(
    p: impl Into<StateRef<'a>>,
    e: impl Into<StateRef<'b>>,
    q: impl Into<StateRef<'c>>,
    sim: bool,
) -> Result<MismatchTrace> {
    let kind = if sim { RelationKind::ParamSim } else { RelationKind::ParamBisim };
    let (p, e, q) = (p.into(), e.into(), q.into());
    let (v, _) = direct_verdict(kind, p, e, q, true)?;
    match v.witness {
        Some(Witness::Trace(t)) => Ok(t),
        _ => Err(Error::Contract(format!("{} {} {} holds for env {}", p.label(), kind.symbol(), q.label(), e.label()))),
    }
}

/// A trace rendered with state labels instead of ids.
pub fn describe_trace(t: &MismatchTrace, p: StateRef<'_>, e: StateRef<'_>, q: StateRef<'_>) -> String {
    label_trace(t, (e.lts, p.lts, q.lts))
}

/// Decides `kind` for `(p, q)`; the environment is ignored by the plain
/// relations and required by the others.
pub fn check<'a, 'b, 'c>(
    kind: RelationKind,
    p: impl Into<StateRef<'a>>,
    e: Option<StateRef<'b>>,
    q: impl Into<StateRef<'c>>,
    explain: bool,
) -> Result<Verdict> {
    let (p, q) = (p.into(), q.into());
    let env = || e.ok_or_else(|| Error::Contract(format!("relation {kind} needs an environment")));
    match kind {
        RelationKind::Bisim => {
            let related = bisimilarity_pr(p.lts, q.lts).contains(p.state, q.state);
            let mut v = Verdict::new(kind, related);
            if !related && explain {
                v.witness = Some(Witness::Formula(distinguish_bisim(p.lts, p.state, q.lts, q.state)?));
            }
            Ok(v)
        }
        RelationKind::Sim => {
            let related = simulation_preorder(p.lts, q.lts).contains(p.state, q.state);
            let mut v = Verdict::new(kind, related);
            if !related && explain {
                v.witness = Some(Witness::Formula(distinguish_sim(p.lts, p.state, q.lts, q.state)?.into_inner()));
            }
            Ok(v)
        }
        RelationKind::ParamBisim => Ok(param_bisim_direct(p, env()?, q, explain)?.0),
        RelationKind::ParamSim => Ok(param_sim_direct(p, env()?, q, explain)?.0),
        RelationKind::JiBisim => ji_param_bisim(p, env()?, q, explain),
        RelationKind::JiSim => ji_param_sim(p, env()?, q, explain),
        RelationKind::JiSimEquiv => ji_param_sim_equiv(p, env()?, q, explain),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lts::Process;
    use crate::syntax::compile_source;

    fn p(src: &str) -> Process {
        compile_source(src).unwrap()
    }

    #[test]
    fn fig1_triple() {
        let (ab, q, e) = (p("a.b"), p("a.b + a"), p("a.b + a"));
        assert!(!param_bisim_direct(&ab, &e, &q, false).unwrap().0.related);
        assert!(!param_bisim_via_joindot(&ab, &e, &q, false).unwrap().related);
        assert!(ji_param_bisim(&ab, &e, &q, false).unwrap().related);
        assert!(ji_param_sim(&ab, &e, &q, false).unwrap().related);
        assert!(param_sim_direct(&ab, &e, &q, false).unwrap().0.related);
    }

    #[test]
    fn fig1_trace_matches_the_narrative() {
        let (ab, q, e) = (p("a.b"), p("a.b + a"), p("a.b + a"));
        let t = explain_param_mismatch(&ab, &e, &q, false).unwrap();
        assert!(t.replay(ab.as_ref(), e.as_ref(), q.as_ref(), false));
        assert_eq!(t.steps.len(), 1);
        let s = &t.steps[0];
        assert_eq!(e.lts.label(s.env.tgt), "b");
        assert_eq!(s.challenge.side, Side::Right);
        assert_eq!(q.lts.label(s.challenge.tgt), "0");
        assert_eq!(t.final_challenge.action, "b");
        assert_eq!(t.final_challenge.side, Side::Left);
        assert_eq!(t.unmatched, Side::Right);
        let text = describe_trace(&t, ab.as_ref(), e.as_ref(), q.as_ref());
        assert!(text.contains("env a.b + a -a-> b"));
    }

    #[test]
    fn separation_triple() {
        let (ab, q, e) = (p("a.b"), p("a.b + a"), p("a.b"));
        assert!(ji_param_sim_equiv(&ab, &e, &q, false).unwrap().related);
        let v = ji_param_bisim(&ab, &e, &q, true).unwrap();
        assert!(!v.related);
        assert!(matches!(v.witness, Some(Witness::Formula(_))));
        assert!(ji_param_sim(&ab, &e, &q, false).unwrap().related);
    }

    #[test]
    fn small_cases() {
        let (b, nil, a) = (p("b"), p("0"), p("a"));
        assert!(!param_bisim_direct(&b, &b, &nil, false).unwrap().0.related);
        let (v, fam) = param_sim_direct(&a, &a, &nil, true).unwrap();
        assert!(!v.related);
        assert_eq!(fam.len(), a.lts.num_states());
        let Some(Witness::Trace(t)) = v.witness else { panic!("trace expected") };
        assert!(t.steps.is_empty());
        assert_eq!(t.final_challenge.action, "a");
        assert!(!ji_param_sim(&a, &a, &nil, false).unwrap().related);
        let u = crate::interaction::universal_process(&["a", "b"]).unwrap();
        assert!(!ji_param_sim_equiv(&a, &u, &b, false).unwrap().related);
        let ab = p("a.b + a");
        for kind in RelationKind::ALL {
            assert!(check(kind, &ab, Some(ab.as_ref()), &ab, false).unwrap().related);
        }
    }

    #[test]
    fn explain_on_related_triple_is_a_contract_error() {
        let q = p("a.b + a");
        assert!(matches!(explain_param_mismatch(&q, &q, &q, false), Err(Error::Contract(_))));
    }

    #[test]
    fn verdict_json() {
        let (a, nil) = (p("a"), p("0"));
        let v = check(RelationKind::JiSim, &a, Some(a.as_ref()), &nil, true).unwrap();
        assert_eq!(v.to_json().to_string(), r#"{"relation":"<=ji_e","related":false,"witness":"<a>T"}"#);
        assert_eq!("ji-sim-equiv".parse::<RelationKind>().unwrap().symbol(), "~=ji_e");
        assert!("nope".parse::<RelationKind>().is_err());
    }
}
