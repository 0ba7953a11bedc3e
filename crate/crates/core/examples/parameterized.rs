//! Relations relative to an environment, with witnesses.

use ji_bisim::parameterized::{check, describe_trace, explain_param_mismatch, RelationKind};
use ji_bisim::syntax::compile_source;

fn main() -> ji_bisim::Result<()> {
    let p = compile_source("a.b")?;
    let q = compile_source("a.b + a")?;
    let e = compile_source("a.b + a")?;

    for kind in RelationKind::ALL {
        let v = check(kind, &p, Some(e.as_ref()), &q, true)?;
        println!("{:14} {:6} {}", kind.name(), v.related, v.to_json());
    }

    let trace = explain_param_mismatch(&p, &e, &q, false)?;
    println!("\nwhy p and q differ under e:\n{}", describe_trace(&trace, p.as_ref(), e.as_ref(), q.as_ref()));
    Ok(())
}
