//! Command-line front end. [`run`] never exits the process; the binary maps
//! its [`Outcome`] to stdout, stderr and the exit code.
//!
//! Exit codes: 0 related / holds / all pass, 1 not related / violated,
//! 2 usage or input error.
//!
//! A term argument is either inline source or `@path`. Paths ending in
//! `.json` are read as exported LTSs (root taken from a `root` field,
//! default 0); anything else is read as source text.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::discrimination::{
    build_universe, check_jisim_theorem, check_larsen_forward, check_lemma_aux1, search_open_problem_p1,
    search_open_problem_p2, Suite,
};
use crate::interaction::{join_lts, joindot_lts};
use crate::lts::{Lts, Process, StateId};
use crate::modal::{satisfies, Formula};
use crate::parameterized::{check, describe_trace, RelationKind, Witness};
use crate::registry::{run_examples, GROUPS};
use crate::syntax::compile_source;

/// What a command produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "ji-bisim", version, about = "Equivalence checking on finite labelled transition systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a relation between two processes, optionally under an environment.
    Check(CheckArgs),
    /// Evaluate a modal formula at the root of a process.
    Eval(EvalArgs),
    /// Replay the registered worked examples.
    Examples(ExamplesArgs),
    /// Run a discrimination suite over a generated universe.
    Experiment(ExperimentArgs),
    /// Print a process, or its product with an environment, as DOT or JSON.
    Export(ExportArgs),
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// bisim, sim, param-bisim, param-sim, ji-bisim, ji-sim, ji-sim-equiv (or the ascii symbol)
    #[arg(long, default_value = "bisim")]
    rel: String,
    p: String,
    q: String,
    #[arg(long)]
    env: Option<String>,
    /// Render the witness with state labels.
    #[arg(long)]
    explain: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct EvalArgs {
    term: String,
    formula: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ExamplesArgs {
    #[arg(long)]
    json: bool,
    /// Only this group.
    #[arg(long)]
    only: Option<String>,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// larsen-forward, jisim-theorem, lemma-aux1, p1-search, p2-search
    #[arg(long)]
    suite: String,
    #[arg(long, default_value = "a,b", value_delimiter = ',')]
    alphabet: Vec<String>,
    #[arg(long, default_value_t = 5)]
    size: usize,
    #[arg(long, default_value_t = 1)]
    join_rounds: usize,
    /// Leave the universal process out of the universe.
    #[arg(long)]
    no_universal: bool,
    /// Also write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProductKind {
    Join,
    Joindot,
}

#[derive(Args, Debug)]
struct ExportArgs {
    term: String,
    #[arg(long, conflicts_with = "json")]
    dot: bool,
    #[arg(long)]
    json: bool,
    #[arg(long, value_enum, requires = "env")]
    product: Option<ProductKind>,
    #[arg(long)]
    env: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Usage or input problem: exit code 2.
struct Usage(String);

impl From<crate::Error> for Usage {
    fn from(e: crate::Error) -> Self {
        Usage(format!("error: {e}"))
    }
}

type CmdResult = std::result::Result<Outcome, Usage>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let res = match cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Examples(a) => cmd_examples(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Export(a) => cmd_export(a),
    };
    res.unwrap_or_else(|Usage(msg)| Outcome { code: 2, stdout: String::new(), stderr: msg + "\n" })
}

fn read_file(path: &Path) -> std::result::Result<String, Usage> {
    std::fs::read_to_string(path).map_err(|e| Usage(format!("error: cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), Usage> {
    std::fs::write(path, text).map_err(|e| Usage(format!("error: cannot write {}: {e}", path.display())))
}

/// Inline source, `@file` source or `@file.json` LTS.
fn load(arg: &str) -> std::result::Result<Process, Usage> {
    let Some(path) = arg.strip_prefix('@') else {
        return Ok(compile_source(arg)?);
    };
    let path = Path::new(path);
    let text = read_file(path)?;
    if path.extension().is_some_and(|x| x == "json") {
        let lts = Lts::from_json(&text)?;
        let root = serde_json::from_str::<serde_json::Value>(&text)
            .ok()
            .and_then(|v| v.get("root").and_then(|r| r.as_u64()))
            .unwrap_or(0);
        let root = StateId(root as u32);
        lts.check_state(root)?;
        return Ok(Process::new(lts, root));
    }
    Ok(compile_source(&text)?)
}

fn done(code: i32, stdout: String) -> CmdResult {
    Ok(Outcome { code, stdout, stderr: String::new() })
}

fn cmd_check(a: CheckArgs) -> CmdResult {
    let kind = RelationKind::ALL
        .into_iter()
        .find(|k| k.name() == a.rel || k.symbol() == a.rel)
        .ok_or_else(|| Usage(format!("error: unknown relation `{}`", a.rel)))?;
    let (p, q) = (load(&a.p)?, load(&a.q)?);
    let env = a.env.as_deref().map(load).transpose()?;
    if kind.needs_env() && env.is_none() {
        return Err(Usage(format!("error: relation {} needs --env", kind.name())));
    }
    let v = check(kind, &p, env.as_ref().map(|e| e.as_ref()), &q, true)?;
    let code = if v.related { 0 } else { 1 };
    if a.json {
        return done(code, format!("{}\n", v.to_json()));
    }
    let mut out = String::new();
    let env_note =
        env.as_ref().filter(|_| kind.needs_env()).map(|e| format!(" (e = {})", e.name())).unwrap_or_default();
    let sym = if v.related { kind.symbol().to_string() } else { format!("not {}", kind.symbol()) };
    let _ = writeln!(out, "{} {} {}{}", p.name(), sym, q.name(), env_note);
    match &v.witness {
        Some(Witness::Formula(f)) => {
            let _ = writeln!(out, "witness: {f}");
            if a.explain {
                let side = if kind.needs_env() { "the left product" } else { "the left process" };
                let _ = writeln!(out, "{side} satisfies the witness and the right one does not");
            }
        }
        Some(Witness::Trace(t)) => {
            let _ = writeln!(out, "mismatch trace:");
            let text = if a.explain {
                let e = env.as_ref().expect("parameterized relations have an environment");
                describe_trace(t, p.as_ref(), e.as_ref(), q.as_ref())
            } else {
                t.to_string()
            };
            for line in text.lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        None => {}
    }
    done(code, out)
}

fn cmd_eval(a: EvalArgs) -> CmdResult {
    let p = load(&a.term)?;
    let f: Formula = a.formula.parse().map_err(crate::Error::from)?;
    let holds = satisfies(&p.lts, p.root, &f);
    let out = if a.json {
        format!("{}\n", json!({ "formula": f.to_string(), "holds": holds }))
    } else {
        format!("{holds}\n")
    };
    done(if holds { 0 } else { 1 }, out)
}

fn cmd_examples(a: ExamplesArgs) -> CmdResult {
    if let Some(g) = &a.only {
        if !GROUPS.contains(&g.as_str()) {
            return Err(Usage(format!("error: unknown group `{g}`; groups: {}", GROUPS.join(", "))));
        }
    }
    let results = run_examples(a.only.as_deref());
    let all = results.iter().all(|r| r.pass);
    let out = if a.json {
        format!("{}\n", serde_json::to_string_pretty(&results).expect("results serialise"))
    } else {
        let mut out = String::new();
        let w = results.iter().map(|r| r.id.len()).max().unwrap_or(0);
        for r in &results {
            let status = if r.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status}  {:w$}  {}", r.id, r.claim);
            if !r.pass {
                let _ = writeln!(out, "      expected {:?}, got {:?}", r.expected, r.actual);
            }
        }
        let _ = writeln!(out, "{}/{} passed", results.iter().filter(|r| r.pass).count(), results.len());
        out
    };
    done(if all { 0 } else { 1 }, out)
}

fn cmd_experiment(a: ExperimentArgs) -> CmdResult {
    let suite = Suite::from_name(&a.suite).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        Usage(format!("error: unknown suite `{}`; suites: {}", a.suite, names.join(", ")))
    })?;
    let alphabet: Vec<String> = a.alphabet.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    let u = build_universe(&alphabet, a.size, a.join_rounds, !a.no_universal)?;
    let pairs = u.all_pairs();
    let report = match suite {
        Suite::LarsenForward => check_larsen_forward(&u, &pairs)?,
        Suite::JisimTheorem => check_jisim_theorem(&u, &pairs)?,
        Suite::LemmaAux1 => check_lemma_aux1(&u, &pairs)?,
        Suite::P1Search => search_open_problem_p1(&u, &pairs)?,
        Suite::P2Search => search_open_problem_p2(&u, &pairs)?,
    };
    let json = serde_json::to_string_pretty(&report.to_json()).expect("report serialises") + "\n";
    if let Some(path) = &a.out {
        write_file(path, &json)?;
    }
    let out = if a.json { json } else { report.to_table() };
    done(if report.passed() { 0 } else { 1 }, out)
}

fn cmd_export(a: ExportArgs) -> CmdResult {
    let p = load(&a.term)?;
    let target = match a.product {
        None => p,
        Some(kind) => {
            let e = load(a.env.as_deref().expect("clap enforces --env"))?;
            let prod = match kind {
                ProductKind::Join => join_lts(&p, &e)?,
                ProductKind::Joindot => joindot_lts(&p, &e)?,
            };
            prod.into_process()
        }
    };
    let text = if a.json {
        let mut v = serde_json::to_value(target.lts.to_json_value()).expect("lts serialises");
        v["root"] = json!(target.root.0);
        serde_json::to_string_pretty(&v).expect("lts serialises") + "\n"
    } else {
        target.lts.to_dot(Some(target.root))
    };
    match &a.out {
        Some(path) => {
            write_file(path, &text)?;
            done(0, String::new())
        }
        None => done(0, text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("ji-bisim").chain(args.iter().copied()))
    }

    #[test]
    fn check_exit_codes() {
        assert_eq!(go(&["check", "--rel", "ji-bisim", "a.b", "a.b + a", "--env", "a.b + a"]).code, 0);
        let o = go(&["check", "--rel", "param-bisim", "a.b", "a.b + a", "--env", "a.b + a"]);
        assert_eq!(o.code, 1);
        assert!(o.stdout.contains("mismatch trace"));
        assert_eq!(go(&["check", "--rel", "bisim", "0", "0"]).code, 0);
        assert_eq!(go(&["check", "--rel", "nope", "0", "0"]).code, 2);
        assert_eq!(go(&["check", "--rel", "param-sim", "0", "0"]).code, 2);
        assert_eq!(go(&["check", "a.(", "0"]).code, 2);
    }

    #[test]
    fn eval_exit_codes() {
        assert_eq!(go(&["eval", "a.b", "<a><b>T"]).code, 0);
        assert_eq!(go(&["eval", "0", "<a>T"]).code, 1);
        assert_eq!(go(&["eval", "a.b + a", "<a>!<b>T"]).code, 0);
        assert_eq!(go(&["eval", "a", "<a"]).code, 2);
    }

    #[test]
    fn examples_and_usage() {
        let o = go(&["examples", "--only", "fig1"]);
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert!(go(&["examples", "--json"]).stdout.trim_start().starts_with('['));
        assert_eq!(go(&["examples", "--only", "nope"]).code, 2);
        assert_eq!(go(&["frobnicate"]).code, 2);
        assert_eq!(go(&["--help"]).code, 0);
    }

    #[test]
    fn export_formats() {
        let o = go(&["export", "a.b", "--product", "joindot", "--env", "a.b + a", "--dot"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("a@b") && o.stdout.contains("a@0"));
        let o = go(&["export", "0", "--json"]);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["states"].as_array().unwrap().len(), 1);
        assert_eq!(go(&["export", "a", "--product", "join"]).code, 2);
    }

    #[test]
    fn experiment_small() {
        let o = go(&["experiment", "--suite", "jisim-theorem", "--size", "3"]);
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert_eq!(go(&["experiment", "--suite", "nope"]).code, 2);
        assert_eq!(go(&["experiment", "--suite", "jisim-theorem", "--size", "3", "--no-universal"]).code, 2);
    }
}
