//! Worked examples with known outcomes, grouped for selective replay.
//!
//! Groups: `fig1` (the two-branch environment `a.b + a`), `joindot`,
//! `inclusions`, `b-vs-0` and `discrimination`.

use serde::Serialize;

use crate::discrimination::{build_universe, discriminates_leq, Mode};
use crate::equivalence::{bisimilar, simulated_by};
use crate::error::Result;
use crate::interaction::{join_lts, joindot_lts, Product};
use crate::lts::{Process, StateId};
use crate::parameterized::{
    explain_param_mismatch, ji_param_bisim, ji_param_sim_equiv, param_bisim_direct, param_bisim_via_joindot, Side,
};
use crate::syntax::{compile_source, parse_term, ProcessTerm};

pub const GROUPS: [&str; 5] = ["fig1", "joindot", "inclusions", "b-vs-0", "discrimination"];

/// A claim with its expected rendering.
pub struct Example {
    pub id: &'static str,
    pub group: &'static str,
    pub claim: &'static str,
    pub expected: &'static str,
    run: fn() -> Result<String>,
}

/// Result of running one example.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleResult {
    pub id: &'static str,
    pub group: &'static str,
    pub claim: &'static str,
    pub expected: &'static str,
    pub actual: String,
    pub pass: bool,
}

fn p(src: &str) -> Result<Process> {
    compile_source(src)
}

fn yes(b: bool) -> String {
    b.to_string()
}

fn successor_labels(pr: &Product, s: StateId) -> String {
    let mut v: Vec<String> = pr.lts.out(s).iter().map(|&(_, t)| format!("({})", pr.lts.label(t))).collect();
    v.sort();
    v.join(" ")
}

fn fig1() -> Result<(Process, Process, Process)> {
    Ok((p("a.b")?, p("a.b + a")?, p("a.b + a")?))
}

fn e_successors() -> Result<String> {
    let e = p("a.b + a")?;
    let mut v: Vec<String> =
        e.lts.successors_by_name(e.root, "a")?.into_iter().map(|s| e.lts.label(s).to_string()).collect();
    v.sort();
    Ok(v.join(" "))
}

fn e_deterministic() -> Result<String> {
    let e = p("a.b + a")?;
    Ok(yes(e.lts.is_deterministic(e.root)?))
}

fn e_parse() -> Result<String> {
    let (_, t) = parse_term("a.b + a")?;
    let want = ProcessTerm::sum(ProcessTerm::prefix("a", ProcessTerm::action("b")), ProcessTerm::action("a"));
    Ok(yes(t == want))
}

fn fig1_param_bisim() -> Result<String> {
    let (p, q, e) = fig1()?;
    Ok(yes(param_bisim_direct(&p, &e, &q, false)?.0.related))
}

fn fig1_ji_bisim() -> Result<String> {
    let (p, q, e) = fig1()?;
    Ok(yes(ji_param_bisim(&p, &e, &q, false)?.related))
}

fn fig1_join_left() -> Result<String> {
    let (p, _, e) = fig1()?;
    let j = join_lts(&p, &e)?;
    Ok(successor_labels(&j, j.root()))
}

fn fig1_join_right() -> Result<String> {
    let (_, q, e) = fig1()?;
    let j = join_lts(&q, &e)?;
    Ok(successor_labels(&j, j.root()))
}

fn fig1_trace() -> Result<String> {
    let (p, q, e) = fig1()?;
    let t = explain_param_mismatch(&p, &e, &q, false)?;
    let [step] = t.steps.as_slice() else {
        return Ok(format!("{} steps", t.steps.len()));
    };
    let label = |side: Side, x: StateId| match side {
        Side::Env => e.lts.label(x).to_string(),
        Side::Left => p.lts.label(x).to_string(),
        Side::Right => q.lts.label(x).to_string(),
    };
    let moved = |t: &crate::parameterized::TraceTransition| format!("{}->{}", t.side.name(), label(t.side, t.tgt));
    let stuck = if step.challenge.side == t.unmatched { &step.challenge } else { &step.answer };
    Ok(format!(
        "env->{} {} vs {}; {} challenges {} on {} unmatched by {}",
        label(Side::Env, step.env.tgt),
        moved(&step.challenge),
        moved(&step.answer),
        t.final_challenge.side.name(),
        t.final_challenge.action,
        label(Side::Env, t.final_env.src),
        label(t.unmatched, stuck.tgt)
    ))
}

fn joindot_left() -> Result<String> {
    let (p, _, e) = fig1()?;
    let j = joindot_lts(&p, &e)?;
    let mut v: Vec<String> = j.lts.out(j.root()).iter().map(|&(a, _)| j.lts.alphabet().name(a).to_string()).collect();
    v.sort();
    Ok(v.join(" "))
}

fn joindot_right() -> Result<String> {
    let (_, q, e) = fig1()?;
    let j = joindot_lts(&q, &e)?;
    let mut v: Vec<String> = j.lts.out(j.root()).iter().map(|&(a, _)| j.lts.alphabet().name(a).to_string()).collect();
    v.sort();
    Ok(v.join(" "))
}

fn joindot_bisim() -> Result<String> {
    let (p, q, e) = fig1()?;
    let (l, r) = (joindot_lts(&p, &e)?, joindot_lts(&q, &e)?);
    let products = bisimilar(l.lts.at(l.root()), r.lts.at(r.root()));
    Ok(format!("{} {}", yes(products), yes(param_bisim_via_joindot(&p, &e, &q, false)?.related)))
}

fn incl_iv_ji_bisim() -> Result<String> {
    Ok(yes(ji_param_bisim(&p("a.b")?, &p("a.b")?, &p("a.b + a")?, false)?.related))
}

fn incl_iv_ji_sim_equiv() -> Result<String> {
    Ok(yes(ji_param_sim_equiv(&p("a.b")?, &p("a.b")?, &p("a.b + a")?, false)?.related))
}

fn b_vs_0() -> Result<String> {
    Ok(yes(param_bisim_direct(&p("b")?, &p("b")?, &p("0")?, false)?.0.related))
}

fn discr_sim() -> Result<String> {
    Ok(yes(simulated_by(&p("a.b")?, &p("a.b + a")?)))
}

fn discr_larsen() -> Result<String> {
    let u = build_universe(&["a", "b"], 4, 0, true)?;
    Ok(yes(discriminates_leq(&p("a.b")?, &p("a.b + a")?, &u, Mode::ParamBisim)?))
}

fn discr_ji_bisim() -> Result<String> {
    let u = build_universe(&["a", "b"], 4, 0, true)?;
    let (e, f) = (p("a.b")?, p("a.b + a")?);
    let holds = discriminates_leq(&e, &f, &u, Mode::JiParamBisim)?;
    let (re, rf) = (u.relation(Mode::JiParamBisim, &e)?, u.relation(Mode::JiParamBisim, &f)?);
    let (i, j) = (u.index_of(&e).expect("member"), u.index_of(&f).expect("member"));
    let pair_witnesses = rf.get(i, j) && !re.get(i, j);
    Ok(format!("{} {}", yes(holds), yes(pair_witnesses)))
}

/// Every registered example, in replay order.
pub fn examples() -> Vec<Example> {
    vec![
        Example {
            id: "fig1-e-successors",
            group: "fig1",
            claim: "a-successors of a.b + a",
            expected: "0 b",
            run: e_successors,
        },
        Example {
            id: "fig1-e-nondeterministic",
            group: "fig1",
            claim: "a.b + a is deterministic",
            expected: "false",
            run: e_deterministic,
        },
        Example {
            id: "fig1-e-parse",
            group: "fig1",
            claim: "a.b + a parses as a sum of two prefixes",
            expected: "true",
            run: e_parse,
        },
        Example {
            id: "fig1-param-bisim",
            group: "fig1",
            claim: "a.b ~_e a.b + a with e = a.b + a",
            expected: "false",
            run: fig1_param_bisim,
        },
        Example {
            id: "fig1-ji-bisim",
            group: "fig1",
            claim: "a.b ~ji_e a.b + a with e = a.b + a",
            expected: "true",
            run: fig1_ji_bisim,
        },
        Example {
            id: "fig1-join-left",
            group: "fig1",
            claim: "a-successors of a.b & (a.b + a)",
            expected: "(b & 0) (b & b)",
            run: fig1_join_left,
        },
        Example {
            id: "fig1-join-right",
            group: "fig1",
            claim: "a-successors of (a.b + a) & (a.b + a)",
            expected: "(0 & 0) (0 & b) (b & 0) (b & b)",
            run: fig1_join_right,
        },
        Example {
            id: "fig1-mismatch-trace",
            group: "fig1",
            claim: "shortest mismatch play for a.b ~_e a.b + a",
            expected: "env->b right->0 vs left->b; left challenges b on b unmatched by 0",
            run: fig1_trace,
        },
        Example {
            id: "joindot-left",
            group: "joindot",
            claim: "root labels of a.b &• (a.b + a)",
            expected: "a@0 a@b",
            run: joindot_left,
        },
        Example {
            id: "joindot-right",
            group: "joindot",
            claim: "root labels of (a.b + a) &• (a.b + a)",
            expected: "a@0 a@0 a@b a@b",
            run: joindot_right,
        },
        Example {
            id: "joindot-not-bisimilar",
            group: "joindot",
            claim: "the two &•-products are bisimilar; ~_e via &•",
            expected: "false false",
            run: joindot_bisim,
        },
        Example {
            id: "inclusions-iv-ji-bisim",
            group: "inclusions",
            claim: "a.b ~ji_e a.b + a with e = a.b",
            expected: "false",
            run: incl_iv_ji_bisim,
        },
        Example {
            id: "inclusions-iv-ji-sim-equiv",
            group: "inclusions",
            claim: "a.b ~=ji_e a.b + a with e = a.b",
            expected: "true",
            run: incl_iv_ji_sim_equiv,
        },
        Example { id: "b-vs-0", group: "b-vs-0", claim: "b ~_e 0 with e = b", expected: "false", run: b_vs_0 },
        Example {
            id: "discrimination-sim",
            group: "discrimination",
            claim: "a.b <= a.b + a",
            expected: "true",
            run: discr_sim,
        },
        Example {
            id: "discrimination-larsen",
            group: "discrimination",
            claim: "a.b below a.b + a for ~_e over the size-4 universe",
            expected: "true",
            run: discr_larsen,
        },
        Example {
            id: "discrimination-ji-bisim-fails",
            group: "discrimination",
            claim: "a.b below a.b + a for ~ji_e; (a.b, a.b + a) witnesses",
            expected: "false true",
            run: discr_ji_bisim,
        },
    ]
}

impl Example {
    pub fn run(&self) -> ExampleResult {
        let actual = match (self.run)() {
            Ok(s) => s,
            Err(e) => format!("error: {e}"),
        };
        ExampleResult {
            id: self.id,
            group: self.group,
            claim: self.claim,
            expected: self.expected,
            pass: actual == self.expected,
            actual,
        }
    }
}

/// Runs the examples of `group`, or all of them.
pub fn run_examples(group: Option<&str>) -> Vec<ExampleResult> {
    examples().iter().filter(|x| group.is_none_or(|g| x.group == g)).map(Example::run).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_examples_pass() {
        for r in run_examples(None) {
            assert!(r.pass, "{}: expected {:?}, got {:?}", r.id, r.expected, r.actual);
        }
    }

    #[test]
    fn groups_cover_examples() {
        for x in examples() {
            assert!(GROUPS.contains(&x.group));
        }
        assert_eq!(run_examples(Some("b-vs-0")).len(), 1);
        assert!(run_examples(Some("nope")).is_empty());
    }
}
