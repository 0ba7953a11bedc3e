//! Bisimilarity, simulation, minimization and distinguishing formulas.

use ji_bisim::equivalence::{bisimilar, distinguish_bisim, distinguish_sim, minimize, simulated_by};
use ji_bisim::syntax::compile_source;

fn main() -> ji_bisim::Result<()> {
    let p = compile_source("a.b + a.c")?;
    let q = compile_source("a.(b + c)")?;

    println!("p ~ q: {}", bisimilar(&p, &q));
    println!("p <= q: {}  q <= p: {}", simulated_by(&p, &q), simulated_by(&q, &p));
    println!("p satisfies, q does not: {}", distinguish_bisim(&p.lts, p.root, &q.lts, q.root)?);
    println!("q satisfies, p cannot match: {}", distinguish_sim(&q.lts, q.root, &p.lts, p.root)?);

    let r = compile_source("a.b + a.b + a.(b + b)")?;
    let (small, _) = minimize(&r.lts);
    println!("{} states minimize to {}", r.lts.num_states(), small.num_states());
    Ok(())
}
