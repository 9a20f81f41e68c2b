use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_skewquad"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn verify_exit_codes() {
    let ok = run(&[
        "mf",
        "verify",
        fixture("commutative_rank_two.json").to_str().unwrap(),
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let ok = run(&[
        "mf",
        "verify",
        fixture("anticommutative_rank_one.json").to_str().unwrap(),
    ]);
    assert_eq!(ok.status.code(), Some(0));

    let bad = run(&["mf", "verify", fixture("x_plus_y.json").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("x3^2"));

    let missing = run(&["mf", "verify", "no/such/file.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let junk = tmp("junk.json");
    std::fs::write(&junk, "{\"ctx\": 3}").unwrap();
    assert_eq!(
        run(&["mf", "verify", junk.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn knorrer_then_verify() {
    let out = run(&[
        "mf",
        "knorrer",
        fixture("commutative_rank_two.json").to_str().unwrap(),
        "--signs",
        "+,+,+",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let path = tmp("knorrer.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let v = run(&["mf", "verify", "--json", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&v.stdout).unwrap();
    assert_eq!(j["valid"], true);

    let bad = run(&[
        "mf",
        "knorrer",
        fixture("commutative_rank_two.json").to_str().unwrap(),
        "--signs",
        "+,+",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn cone_and_reduce() {
    let out = run(&[
        "mf",
        "cone",
        fixture("identity_morphism.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let path = tmp("cone.json");
    std::fs::write(&path, &out.stdout).unwrap();
    assert_eq!(
        run(&["mf", "verify", path.to_str().unwrap()]).status.code(),
        Some(0)
    );
    let red = run(&["mf", "reduce", "--json", path.to_str().unwrap()]);
    let j: serde_json::Value = serde_json::from_slice(&red.stdout).unwrap();
    assert_eq!(j["mf"]["r"], 0);
}

#[test]
fn hilbert_agrees() {
    let out = run(&[
        "mf",
        "hilbert",
        "--json",
        fixture("commutative_rank_two.json").to_str().unwrap(),
        "--max-degree",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        j["closed_form"],
        serde_json::json!([2, 4, 6, 8, 10, 12, 14])
    );
    assert_eq!(j["agree"], true);
}

#[test]
fn classify_tables() {
    let out = run(&["classify", "--n", "5", "--table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("k^16: (1)\n"));
    assert!(text.contains("k^4: (2), (4), (6)\n"));
    assert!(text.contains("k: (3), (5), (7)\n"));

    let three = stdout(&run(&["classify", "--n", "3"]));
    assert!(three.contains("2 mutation classes"));

    let json = run(&["classify", "--n", "6", "--json"]);
    let j: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(j["class_count"], 16);
    assert_eq!(j["total_graphs"], 32768);

    assert_eq!(run(&["classify", "--n", "9"]).status.code(), Some(2));
    assert_eq!(run(&["classify"]).status.code(), Some(2));
}

#[test]
fn classify_is_byte_deterministic() {
    let a = run(&["classify", "--n", "5", "--json"]);
    let b = run(&["classify", "--n", "5", "--json", "--threads", "2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn graph_commands() {
    let out = stdout(&run(&[
        "mutate",
        "--graph",
        "n=4; edges=1-2,2-3",
        "--at",
        "2",
    ]));
    assert_eq!(out.trim(), "n=4; edges=2-4");
    let out = stdout(&run(&[
        "mutate",
        "--json",
        "--graph",
        "n=4; edges=1-2",
        "--at",
        "1",
    ]));
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["n"], 4);

    let refused = run(&[
        "relmutate",
        "--graph",
        "n=3; edges=1-2,2-3",
        "--target",
        "1",
        "--by",
        "2",
    ]);
    assert_eq!(refused.status.code(), Some(2));
    let forced = run(&[
        "relmutate",
        "--graph",
        "n=3; edges=1-2,2-3",
        "--target",
        "1",
        "--by",
        "2",
        "--force",
    ]);
    assert_eq!(forced.status.code(), Some(0));
    assert_eq!(stdout(&forced).trim(), "n=3; edges=1-2,1-3,2-3");

    assert_eq!(
        run(&["mutate", "--graph", "n=3; edges=1-2", "--at", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["mutate", "--graph", "n=3; edges=1-5", "--at", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn invariants_of_one_graph() {
    let g = "n=7; edges=1-2,2-3,3-4,4-5,5-6,6-1";
    let c = run(&["clifford", "--json", "--oracle", "--graph", g]);
    assert_eq!(c.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(j["descriptor"], 4);
    assert_eq!(j["oracle"]["center_dim"], 4);

    let p = run(&["pointscheme", "--json", "--graph", g]);
    let j: serde_json::Value = serde_json::from_slice(&p.stdout).unwrap();
    assert_eq!(j["ell"], 0);
    assert_eq!(j["components"].as_array().unwrap().len(), 9);

    let r = run(&["rank", "--json", "--graph", "n=6; edges=1-2,2-3,3-4"]);
    let j: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(j["bounds"]["lo"], 2);
    assert_eq!(j["bounds"]["hi"], 3);
    assert_eq!(j["high_rank"], "unknown");

    let red = run(&["reduce", "--graph", "n=4; edges="]);
    assert_eq!(red.status.code(), Some(0));
    assert!(stdout(&red).contains("descriptor N = 8"));
    let stuck = run(&[
        "reduce",
        "--budget",
        "0",
        "--graph",
        "n=3; edges=1-2,1-3,2-3",
    ]);
    assert_eq!(stuck.status.code(), Some(1));

    let a = run(&[
        "analyze",
        "--json",
        "--graph",
        "{\"n\":4,\"edges\":[[1,2]]}",
    ]);
    let j: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(j["descriptor"], 2);
    assert_eq!(j["point_scheme"]["ell"], 1);
}

#[test]
fn scans_and_checks() {
    let s = run(&["conjecture-scan", "--json", "--n", "6"]);
    assert_eq!(s.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&s.stdout).unwrap();
    assert_eq!(j["graph_violations"], 0);
    assert_eq!(j["violations"].as_array().unwrap().len(), 0);
    assert_eq!(run(&["conjecture-scan", "--n", "8"]).status.code(), Some(2));

    assert_eq!(
        run(&["hilbert-check", "--max-n", "4", "--max-degree", "8"])
            .status
            .code(),
        Some(0)
    );
    let sc = run(&["mf", "selfcheck", "--seed", "7", "--cases", "40"]);
    assert_eq!(sc.status.code(), Some(0));
    assert!(stdout(&sc).contains("0 invalid"));
}
