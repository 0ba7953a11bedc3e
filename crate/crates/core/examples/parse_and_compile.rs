//! Parse a term with definitions, compile it and walk its transitions.

use ji_bisim::syntax::{compile, parse_term};

fn main() -> ji_bisim::Result<()> {
    let src = "def Clock = tick.Clock + stop;\nClock & (tick.tick.stop + tick)";
    let (defs, term) = parse_term(src)?;
    let (lts, root) = compile(&term, &defs)?;
    println!("root: {}", lts.label(root));
    println!("{} states, {} transitions", lts.num_states(), lts.num_transitions());
    for (s, a, t) in lts.transitions() {
        println!("  {} -{}-> {}", lts.label(s), lts.alphabet().name(a), lts.label(t));
    }
    println!("deterministic from root: {}", lts.is_deterministic(root)?);

    // errors carry a position
    if let Err(e) = parse_term("a.(b + ") {
        println!("parse error: {e}");
    }
    Ok(())
}
