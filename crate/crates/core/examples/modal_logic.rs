//! Formulas: evaluation, enumeration and the characterization checks.

use ji_bisim::modal::{
    check_char_paramsim, enumerate_negclosure, enumerate_positive, positive_projection, satisfies,
    witness_formula_paramsim, Bounds, Formula, PositiveFormula,
};
use ji_bisim::syntax::compile_source;

fn main() -> ji_bisim::Result<()> {
    let e = compile_source("a.b + a")?;
    let f: Formula = "<a>!<b>T".parse()?;
    println!("e |= {f}: {}", satisfies(&e.lts, e.root, &f));
    println!("projection: {}", positive_projection(&f));

    println!("positive formulas over {{a, b}}, depth 2, width 2: {}", enumerate_positive(&["a", "b"], 2, 2).len());
    let phi = PositiveFormula::new("<a><b>T".parse()?).expect("negation free");
    let closure: Vec<String> = enumerate_negclosure(&phi).iter().map(|x| x.to_string()).collect();
    println!("negation closure of {phi}: {}", closure.join("  "));

    let (p, q) = (compile_source("a.b")?, compile_source("a")?);
    let env = compile_source("a.b")?;
    let report = check_char_paramsim(&p, &env, &q, Bounds::default_for(&p, &env, &q))?;
    println!("{}", report.to_json());
    println!("witness: {}", witness_formula_paramsim(&p, &env, &q)?);
    Ok(())
}
