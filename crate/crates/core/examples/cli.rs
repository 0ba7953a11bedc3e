//! Drive the command-line front end in-process.

fn main() {
    for args in [
        vec!["ji-bisim", "check", "--rel", "ji-bisim", "a.b", "a.b + a", "--env", "a.b + a"],
        vec!["ji-bisim", "check", "--rel", "param-bisim", "a.b", "a.b + a", "--env", "a.b + a", "--explain"],
        vec!["ji-bisim", "eval", "a.b + a", "<a>!<b>T"],
        vec!["ji-bisim", "examples", "--only", "inclusions"],
    ] {
        let out = ji_bisim::cli::run(&args);
        println!("$ {}\n{}{}(exit {})\n", args[1..].join(" "), out.stdout, out.stderr, out.code);
    }
}
