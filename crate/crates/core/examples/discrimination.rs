//! Build a universe and run the discrimination suites.
//!
//! `cargo run --release --example discrimination -- 5` for a larger universe.

use ji_bisim::discrimination::{
    build_universe, check_jisim_theorem, check_larsen_forward, check_lemma_aux1, discriminates_leq, Mode,
};
use ji_bisim::syntax::compile_source;

fn main() -> ji_bisim::Result<()> {
    let size = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let u = build_universe(&["a", "b"], size, 1, true)?;
    println!("{} members up to size {size}", u.len());

    let (e, f) = (compile_source("a.b")?, compile_source("a.b + a")?);
    for mode in Mode::ALL {
        println!("a.b below a.b + a for {mode}: {}", discriminates_leq(&e, &f, &u, mode)?);
    }

    let pairs = u.all_pairs();
    for report in [check_larsen_forward(&u, &pairs)?, check_jisim_theorem(&u, &pairs)?, check_lemma_aux1(&u, &pairs)?] {
        let summary = report.to_table();
        println!("{}", summary.lines().next().unwrap_or_default());
        for line in summary.lines().filter(|l| l.starts_with("VIOLATION") || l.starts_with("finding")) {
            println!("  {line}");
        }
    }
    Ok(())
}
