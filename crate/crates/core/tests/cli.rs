use std::process::Command;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ji-bisim")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn exit_code_contract() {
    assert_eq!(bin(&["check", "--rel", "ji-bisim", "a.b", "a.b + a", "--env", "a.b + a"]).0, 0);
    let (code, out, _) = bin(&["check", "--rel", "param-bisim", "a.b", "a.b + a", "--env", "a.b + a"]);
    assert_eq!(code, 1);
    assert!(out.contains("cannot be answered"), "{out}");
    let (code, _, err) = bin(&["check", "--rel", "bisim", "a.(b", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("1:"), "{err}");
    assert_eq!(bin(&["eval", "0", "<a>T"]).0, 1);
    assert_eq!(bin(&["eval", "0", "<a>"]).0, 2);
    assert_eq!(bin(&["examples"]).0, 0);
    assert_eq!(bin(&[]).0, 2);
}

#[test]
fn files_and_json_round_trip() {
    let dir = std::env::temp_dir().join(format!("ji-bisim-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("p.proc");
    std::fs::write(&src, "def A = a.b.A;\nA + c").unwrap();
    let json = dir.join("p.json");
    let (code, _, err) = bin(&["export", &format!("@{}", src.display()), "--json", "--out", json.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) =
        bin(&["check", "--rel", "bisim", &format!("@{}", src.display()), &format!("@{}", json.display())]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(bin(&["check", "--rel", "bisim", "@/nonexistent/file", "0"]).0, 2);

    let report = dir.join("report.json");
    let (code, _, _) = bin(&["experiment", "--suite", "p2-search", "--size", "3", "--out", report.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    for key in ["mode", "universe_params", "pairs", "violations"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
