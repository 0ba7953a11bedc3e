use serde_json::{json, Value};

use super::{enumerate_negclosure, enumerate_positive, Evaluator, Formula, PositiveFormula};
use crate::equivalence::distinguish_sim;
use crate::error::{Error, Result};
use crate::interaction::join_lts;
use crate::lts::StateRef;
use crate::parameterized::{ji_param_sim, param_bisim_direct, RelationKind};

/// Enumeration bounds for the characterization checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub depth: usize,
    pub width: usize,
}

impl Bounds {
    pub const fn new(depth: usize, width: usize) -> Self {
        Bounds { depth, width }
    }

    /// Depth: product of the reachable state counts of `p` and `q`; width:
    /// largest out-degree among the three systems. Both are capped (depth at
    /// 3, width at 2) because the number of formulas grows doubly
    /// exponentially in the depth.
    pub fn default_for<'a, 'b, 'c>(
        p: impl Into<StateRef<'a>>,
        e: impl Into<StateRef<'b>>,
        q: impl Into<StateRef<'c>>,
    ) -> Self {
        let (p, e, q) = (p.into(), e.into(), q.into());
        let reach = |s: StateRef<'_>| s.lts.reachable(s.state).map_or(1, |v| v.len());
        let depth = (reach(p) * reach(q)).min(3);
        let width = [p.lts, e.lts, q.lts].iter().map(|l| l.max_out_degree()).max().unwrap_or(1).clamp(1, 2);
        Bounds { depth, width }
    }
}

/// Outcome of a bounded check of a modal characterization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub relation: RelationKind,
    /// Verdict of the relation itself.
    pub related: bool,
    /// Whether the formulas agree with the verdict.
    pub consistent: bool,
    /// Number of formulas evaluated.
    pub checked: usize,
    /// First enumerated formula that separates the processes, if any.
    pub violation: Option<Formula>,
    /// A separating formula computed from the relation itself.
    pub witness: Option<Formula>,
    /// The relation fails but no enumerated formula within the bounds
    /// separates the processes.
    pub inconclusive: bool,
}

impl ConsistencyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "relation": self.relation.symbol(),
            "related": self.related,
            "consistent": self.consistent,
            "checked": self.checked,
            "violation": self.violation.as_ref().map(|f| f.to_string()),
            "witness": self.witness.as_ref().map(|f| f.to_string()),
            "inconclusive": self.inconclusive,
        })
    }
}

fn actions(ss: &[StateRef<'_>]) -> Vec<String> {
    let mut v: Vec<String> = ss.iter().flat_map(|s| s.lts.alphabet().names().iter().cloned()).collect();
    v.sort();
    v.dedup();
    v
}

/// A positive formula satisfied by `p` and `e` but not by `q`, taken from
/// the joins `p & e` and `q & e` and verified before it is returned.
pub fn witness_formula_paramsim<'a, 'b, 'c>(
    p: impl Into<StateRef<'a>>,
    e: impl Into<StateRef<'b>>,
    q: impl Into<StateRef<'c>>,
) -> Result<PositiveFormula> {
    let (p, e, q) = (p.into(), e.into(), q.into());
    let (l, r) = (join_lts(p, e)?, join_lts(q, e)?);
    let f = distinguish_sim(&l.lts, l.root(), &r.lts, r.root())
        .map_err(|_| Error::Contract(format!("{} <=ji_e {} holds for env {}", p.label(), q.label(), e.label())))?;
    let ok = Evaluator::new(p.lts).holds(p.state, &f)
        && Evaluator::new(e.lts).holds(e.state, &f)
        && !Evaluator::new(q.lts).holds(q.state, &f);
    if !ok {
        return Err(Error::Contract(format!("witness {f} failed verification")));
    }
    Ok(f)
}

/// Checks that positive formulas satisfied by both `p` and `e` are
/// satisfied by `q` exactly when `p <=ji_e q`, over the enumerated formulas
/// within `bounds`.
pub fn check_char_paramsim<'a, 'b, 'c>(
    p: impl Into<StateRef<'a>>,
    e: impl Into<StateRef<'b>>,
    q: impl Into<StateRef<'c>>,
    bounds: Bounds,
) -> Result<ConsistencyReport> {
    let (p, e, q) = (p.into(), e.into(), q.into());
    let related = ji_param_sim(p, e, q, false)?.related;
    let (mut ep, mut ee, mut eq) = (Evaluator::new(p.lts), Evaluator::new(e.lts), Evaluator::new(q.lts));
    let mut violation = None;
    let mut checked = 0;
    for phi in enumerate_positive(&actions(&[p, e, q]), bounds.depth, bounds.width) {
        checked += 1;
        if ep.holds(p.state, &phi) && ee.holds(e.state, &phi) && !eq.holds(q.state, &phi) {
            violation = Some(phi.into_inner());
            break;
        }
    }
    let witness = if related { None } else { Some(witness_formula_paramsim(p, e, q)?.into_inner()) };
    Ok(ConsistencyReport {
        relation: RelationKind::JiSim,
        related,
        consistent: if related { violation.is_none() } else { witness.is_some() },
        checked,
        inconclusive: !related && violation.is_none(),
        violation,
        witness,
    })
}

/// Checks that for every enumerated positive formula satisfied by `e`, all
/// of its negation-closure decorations agree on `p` and `q` whenever
/// `p ~_e q`; otherwise searches for a decoration that separates them.
pub fn check_char_parambisim<'a, 'b, 'c>(
    p: impl Into<StateRef<'a>>,
    e: impl Into<StateRef<'b>>,
    q: impl Into<StateRef<'c>>,
    bounds: Bounds,
) -> Result<ConsistencyReport> {
    let (p, e, q) = (p.into(), e.into(), q.into());
    let related = param_bisim_direct(p, e, q, false)?.0.related;
    let (mut ep, mut ee, mut eq) = (Evaluator::new(p.lts), Evaluator::new(e.lts), Evaluator::new(q.lts));
    let mut violation = None;
    let mut checked = 0;
    'outer: for phi0 in enumerate_positive(&actions(&[p, e, q]), bounds.depth, bounds.width) {
        if !ee.holds(e.state, &phi0) {
            continue;
        }
        for psi in enumerate_negclosure(&phi0) {
            checked += 1;
            if ep.holds(p.state, &psi) != eq.holds(q.state, &psi) {
                violation = Some(psi);
                break 'outer;
            }
        }
    }
    Ok(ConsistencyReport {
        relation: RelationKind::ParamBisim,
        related,
        consistent: !related || violation.is_none(),
        checked,
        inconclusive: !related && violation.is_none(),
        witness: if related { None } else { violation.clone() },
        violation,
    })
}
