use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde_json::{json, Value};

use super::family::FamilyRanks;
use crate::equivalence::RELATED;
use crate::lts::{ActionId, Alphabet, Lts, StateId, StateRef, SuccTable};

/// Which component moved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Env,
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Env => "env",
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceTransition {
    pub side: Side,
    pub src: StateId,
    pub action: String,
    pub tgt: StateId,
}

impl TraceTransition {
    fn to_json(&self) -> Value {
        json!([self.side.name(), self.src.0, self.action, self.tgt.0])
    }
}

/// One round of the game: the environment moves, one side challenges and
/// the other answers, all with the same action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub env: TraceTransition,
    pub challenge: TraceTransition,
    pub answer: TraceTransition,
}

/// A play of the parameterized game that ends in a challenge the other side
/// cannot answer at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MismatchTrace {
    pub steps: Vec<TraceStep>,
    pub final_env: TraceTransition,
    pub final_challenge: TraceTransition,
    pub unmatched: Side,
}

impl MismatchTrace {
    /// `{"steps": [[env, challenge, answer], ...], "challenge": [env,
    /// challenge], "unmatched": side}` with transitions as
    /// `[side, src, action, tgt]`.
    pub fn to_json(&self) -> Value {
        json!({
            "steps": self.steps.iter().map(|s| json!([s.env.to_json(), s.challenge.to_json(), s.answer.to_json()])).collect::<Vec<_>>(),
            "challenge": [self.final_env.to_json(), self.final_challenge.to_json()],
            "unmatched": self.unmatched.name(),
        })
    }

    /// Checks that the trace is a legal play from `(p, e, q)` ending in an
    /// unanswerable challenge. With `sim`, only the left side may challenge.
    pub fn replay(&self, p: StateRef<'_>, e: StateRef<'_>, q: StateRef<'_>, sim: bool) -> bool {
        let lts_of = |side: Side| match side {
            Side::Env => e.lts,
            Side::Left => p.lts,
            Side::Right => q.lts,
        };
        let exists = |t: &TraceTransition| {
            let l = lts_of(t.side);
            l.alphabet().get(&t.action).is_some_and(|a| l.succ(t.src, a).any(|x| x == t.tgt))
        };
        let (mut f, mut l, mut r) = (e.state, p.state, q.state);
        let at = |side: Side, f: StateId, l: StateId, r: StateId| match side {
            Side::Env => f,
            Side::Left => l,
            Side::Right => r,
        };
        for s in &self.steps {
            let sides_ok = s.env.side == Side::Env
                && s.challenge.side != Side::Env
                && s.answer.side != Side::Env
                && s.challenge.side != s.answer.side
                && !(sim && s.challenge.side != Side::Left);
            let same_action = s.env.action == s.challenge.action && s.challenge.action == s.answer.action;
            let continuous = s.env.src == f
                && s.challenge.src == at(s.challenge.side, f, l, r)
                && s.answer.src == at(s.answer.side, f, l, r);
            if !(sides_ok && same_action && continuous && exists(&s.env) && exists(&s.challenge) && exists(&s.answer)) {
                return false;
            }
            f = s.env.tgt;
            for t in [&s.challenge, &s.answer] {
                match t.side {
                    Side::Left => l = t.tgt,
                    _ => r = t.tgt,
                }
            }
        }
        let (fe, fc) = (&self.final_env, &self.final_challenge);
        if fe.side != Side::Env || fc.side == Side::Env || fc.side == self.unmatched || self.unmatched == Side::Env {
            return false;
        }
        if sim && fc.side != Side::Left {
            return false;
        }
        if fe.src != f || fc.src != at(fc.side, f, l, r) || fe.action != fc.action || !exists(fe) || !exists(fc) {
            return false;
        }
        let other = lts_of(self.unmatched);
        let s = at(self.unmatched, f, l, r);
        match other.alphabet().get(&fc.action) {
            Some(a) => other.succ(s, a).next().is_none(),
            None => true,
        }
    }
}

impl fmt::Display for MismatchTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |t: &TraceTransition| format!("{} {} -{}-> {}", t.side.name(), t.src, t.action, t.tgt);
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "{}. {}; {} answered by {}", i + 1, show(&s.env), show(&s.challenge), show(&s.answer))?;
        }
        write!(
            f,
            "{}. {}; {} cannot be answered by {}",
            self.steps.len() + 1,
            show(&self.final_env),
            show(&self.final_challenge),
            self.unmatched.name()
        )
    }
}

pub(crate) struct TraceInput<'a> {
    pub env: &'a SuccTable,
    pub left: &'a SuccTable,
    pub right: &'a SuccTable,
    pub alphabet: &'a Alphabet,
    pub ranks: &'a FamilyRanks,
    pub back: bool,
}

type Triple = (u32, u32, u32);

#[derive(Clone, Copy)]
struct Edge {
    a: u32,
    f2: u32,
    challenger: Side,
    c_tgt: u32,
    // answer target; None marks an unanswerable challenge
    ans: Option<u32>,
}

/// Breadth-first search from a removed triple to an unanswerable challenge,
/// moving only through removed triples. Edges are explored in order of
/// action, environment target, challenging side, challenger target and
/// answer target, which fixes the result among shortest traces.
pub(crate) fn shortest_trace(inp: &TraceInput<'_>, start: (u32, u32, u32)) -> MismatchTrace {
    let ranks = inp.ranks;
    let removed = |f: u32, p: u32, q: u32| ranks.get(f as usize, p as usize, q as usize) != RELATED;
    assert!(removed(start.0, start.1, start.2));

    let mut parent: HashMap<Triple, (Triple, Edge)> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    let mut goal = None;
    'bfs: while let Some((f, p, q)) = queue.pop_front() {
        for &a in inp.env.enabled(f as usize) {
            let au = a as usize;
            let (ps, qs) = (inp.left.get(p as usize, au), inp.right.get(q as usize, au));
            for &f2 in inp.env.get(f as usize, au) {
                let mut sides = vec![(Side::Left, ps, qs)];
                if inp.back {
                    sides.push((Side::Right, qs, ps));
                }
                for (challenger, cs, answers) in sides {
                    for &c in cs {
                        let triple = |x: u32| match challenger {
                            Side::Left => (f2, c, x),
                            _ => (f2, x, c),
                        };
                        if !answers.iter().all(|&x| {
                            let (g, l, r) = triple(x);
                            removed(g, l, r)
                        }) {
                            continue;
                        }
                        if answers.is_empty() {
                            goal = Some(((f, p, q), Edge { a, f2, challenger, c_tgt: c, ans: None }));
                            break 'bfs;
                        }
                        for &x in answers {
                            let next = triple(x);
                            if next != start && !parent.contains_key(&next) {
                                parent.insert(next, ((f, p, q), Edge { a, f2, challenger, c_tgt: c, ans: Some(x) }));
                                queue.push_back(next);
                            }
                        }
                    }
                }
            }
        }
    }
    let (last, edge) = goal.expect("every removed triple reaches an unanswerable challenge");

    let name = |a: u32| inp.alphabet.name(ActionId(a)).to_string();
    let tr = |side, src: u32, a: u32, tgt: u32| TraceTransition {
        side,
        src: StateId(src),
        action: name(a),
        tgt: StateId(tgt),
    };
    let other = |s: Side| if s == Side::Left { Side::Right } else { Side::Left };
    let pick = |s: Side, (_, p, q): (u32, u32, u32)| if s == Side::Left { p } else { q };

    let mut steps = Vec::new();
    let mut node = last;
    while node != start {
        let (prev, e) = parent[&node];
        let ans = e.ans.expect("inner edges have answers");
        steps.push(TraceStep {
            env: tr(Side::Env, prev.0, e.a, e.f2),
            challenge: tr(e.challenger, pick(e.challenger, prev), e.a, e.c_tgt),
            answer: tr(other(e.challenger), pick(other(e.challenger), prev), e.a, ans),
        });
        node = prev;
    }
    steps.reverse();
    MismatchTrace {
        steps,
        final_env: tr(Side::Env, last.0, edge.a, edge.f2),
        final_challenge: tr(edge.challenger, pick(edge.challenger, last), edge.a, edge.c_tgt),
        unmatched: other(edge.challenger),
    }
}

/// Labels the states of a trace for display: `(env, left, right)` systems.
pub(crate) fn label_trace(t: &MismatchTrace, systems: (&Lts, &Lts, &Lts)) -> String {
    let lts = |s: Side| match s {
        Side::Env => systems.0,
        Side::Left => systems.1,
        Side::Right => systems.2,
    };
    let show = |t: &TraceTransition| {
        let l = lts(t.side);
        format!("{} {} -{}-> {}", t.side.name(), l.label(t.src), t.action, l.label(t.tgt))
    };
    let mut out = String::new();
    for (i, s) in t.steps.iter().enumerate() {
        out.push_str(&format!("{}. {}; {} answered by {}\n", i + 1, show(&s.env), show(&s.challenge), show(&s.answer)));
    }
    out.push_str(&format!(
        "{}. {}; {} has no answer on the {} side",
        t.steps.len() + 1,
        show(&t.final_env),
        show(&t.final_challenge),
        t.unmatched.name()
    ));
    out
}
