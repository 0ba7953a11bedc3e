//! Join and right-determinizing join with an environment.

use ji_bisim::equivalence::bisimilar;
use ji_bisim::interaction::{join_lts, joindot_lts, universal_process};
use ji_bisim::syntax::compile_source;

fn main() -> ji_bisim::Result<()> {
    let p = compile_source("a.b")?;
    let e = compile_source("a.b + a")?;

    let j = join_lts(&p, &e)?;
    println!("p & e: {} states", j.lts.num_states());
    for (s, a, t) in j.lts.transitions() {
        println!("  {} -{}-> {}", j.lts.label(s), j.lts.alphabet().name(a), j.lts.label(t));
    }

    let d = joindot_lts(&p, &e)?;
    let labels: Vec<String> = d.pair_labels.iter().map(|l| format!("{l}")).collect();
    println!("p &• e pair labels: {}", labels.join(", "));

    // the universal process is a unit for the join
    let u = universal_process(&["a", "b"])?;
    let ue = join_lts(&u, &e)?;
    println!("U & e ~ e: {}", bisimilar(ue.lts.at(ue.root()), &e));
    Ok(())
}
