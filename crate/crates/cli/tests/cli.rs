use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibonadic")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn zeckendorf_of_thirteen() {
    assert_eq!(stdout(&["zeck", "13"]), "{6}  word=1000000.\n");
}

#[test]
fn value_of_the_alternating_tail() {
    assert_eq!(stdout(&["value", "0.~"]), "(1,0) ≈ 1.0\n");
}

#[test]
fn configs_of_height_three() {
    let out = stdout(&["configs", "--depth", "3"]);
    let words: Vec<&str> = out.lines().map(|l| l.split_whitespace().nth(2).unwrap()).collect();
    assert_eq!(words, ["1", "1.00001", "1.00101", "1.01", "1.01001", "1.0101001"]);
    assert!(out.lines().next().unwrap().ends_with("markers=none"));
}

#[test]
fn word_arithmetic() {
    assert_eq!(stdout(&["normalize", "1@1,1@0,3@-2"]), "101.0001\n");
    assert_eq!(stdout(&["minus", "1.01"]), "1.00~\n");
    assert_eq!(stdout(&["shift", "1.01", "-3"]), "0.00101\n");
    assert_eq!(stdout(&["cmp", "1", "1.01"]), "<\n");
    assert_eq!(stdout(&["dist", "1", "1.01"]), "phi^-2\n");
    assert_eq!(stdout(&["add", "1", "0.01"]), "1.01\n");
}

#[test]
fn json_words_round_trip_through_text() {
    for w in ["1", "1.01", "100.1001", "1.00~", "0.~"] {
        let json: serde_json::Value = serde_json::from_str(&stdout(&["--json", "shift", w, "0"])).unwrap();
        assert!(json.get("ones").is_some() && json.get("tail").is_some(), "{json}");
        assert_eq!(stdout(&["shift", w, "0"]).trim(), w);
    }
}

#[test]
fn dna_reconstructs_the_boundary() {
    for (r, n) in [("8", "1"), ("20", "2"), ("40", "3")] {
        assert!(stdout(&["dna", "--radius", r, "--level", n]).ends_with("reconstruction: ok\n"));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["zeck", "abc"]).status.code(), Some(2));
    assert_eq!(run(&["value", "1.01~"]).status.code(), Some(2));
    assert_eq!(run(&["layers", "--z", "0.01", "--depth", "2", "--bound", "4"]).status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_fibonadic"))
        .args(["normalize", "500@0"])
        .env("FIBONADIC_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_svgs_are_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        stdout(&["configs", "--depth", "3", "--render", d.path().to_str().unwrap()]);
    }
    for k in 0..6 {
        let name = format!("b3_{k}.svg");
        let x = std::fs::read_to_string(a.path().join(&name)).unwrap();
        let y = std::fs::read_to_string(b.path().join(&name)).unwrap();
        assert_eq!(x, y);
        assert!(x.starts_with("<svg") && x.trim_end().ends_with("</svg>"));
    }
    assert_eq!(stdout(&["tree", "--radius", "6", "--format", "svg"]), stdout(&["tree", "--radius", "6", "--format", "svg"]));
}

#[test]
fn configs_json_schema() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "configs", "--depth", "3"])).unwrap();
    let heights = v["heights"].as_array().unwrap();
    let counts: Vec<usize> = heights.iter().map(|h| h["configs"].as_array().unwrap().len()).collect();
    assert_eq!(counts, [1, 2, 6]);
    for h in heights {
        assert_eq!(h["breakpoints"].as_array().unwrap().len(), h["configs"].as_array().unwrap().len());
        for c in h["configs"].as_array().unwrap() {
            for p in c["points"].as_array().unwrap() {
                assert!(p["x"].is_u64() && p["y"].is_u64() && p["level"].is_u64() && p["marker"].is_boolean());
            }
        }
    }
    // every config above height 1 restricts to exactly one parent
    assert_eq!(v["edges"].as_array().unwrap().len(), 2 + 6);
}

#[test]
fn tree_json_edges_are_mediant_parents() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["tree", "--radius", "7", "--format", "json"])).unwrap();
    let points = v["points"].as_array().unwrap().len();
    assert_eq!(v["edges"].as_array().unwrap().len(), points - 1);
}
