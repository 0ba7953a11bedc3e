//! DOT and JSON export, and a JSON round trip.

use ji_bisim::interaction::joindot_lts;
use ji_bisim::lts::Lts;
use ji_bisim::syntax::compile_source;

fn main() -> ji_bisim::Result<()> {
    let p = compile_source("a.b")?;
    let e = compile_source("a.b + a")?;
    let d = joindot_lts(&p, &e)?;
    print!("{}", d.lts.to_dot(Some(d.root())));

    let json = e.lts.to_json();
    println!("{json}");
    let back = Lts::from_json(&json)?;
    println!("round trip keeps {} states and {} transitions", back.num_states(), back.num_transitions());
    Ok(())
}
