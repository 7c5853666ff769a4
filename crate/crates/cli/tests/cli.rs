use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seedmat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn mutate_a2_at_first_position() {
    let out = run(&["mutate", "--seed", "a2", "--at", "1"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["cluster"], serde_json::json!(["(1+x2)/(x1)", "x2"]));
    assert_eq!(v["B"], serde_json::json!([[0, -1], [1, 0]]));
}

#[test]
fn mutate_accepts_inline_json_and_paths() {
    let inline = r#"{"n":1,"m":1,"B":[[0]]}"#;
    let out = run(&["mutate", "--seed", inline, "--at", "1", "--at", "1", "--format", "text"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "x1\n");

    let path = std::env::temp_dir().join(format!("seedmat-cli-{}.json", std::process::id()));
    std::fs::write(&path, inline).unwrap();
    let out = run(&["mutate", "--seed", path.to_str().unwrap(), "--at", "1", "--format", "text"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "(2)/(x1)\n");
}

#[test]
fn polygon_counterexample_names_p14() {
    let out = run(&["polygon", "counterexample", "--p", "8"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["is_matroid"], false);
    assert_eq!(v["triangulations"], 132);
    assert_eq!(v["witness"]["x"], "P14");
    assert!(String::from_utf8(out.stderr).unwrap().contains("P14"));
}

#[test]
fn enumerate_a3_dot_has_fourteen_vertices() {
    let out = run(&["enumerate", "--seed", "a3", "--format", "dot"]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph exchange_graph"));
    let vertices = dot.lines().filter(|l| l.contains("[label") && !l.contains("--")).count();
    let edges = dot.lines().filter(|l| l.contains("--")).count();
    assert_eq!((vertices, edges), (14, 21));
}

#[test]
fn enumerate_json_lists_seeds_and_variables() {
    let v = json_of(&run(&["enumerate", "--seed", "a2"]));
    assert_eq!(v["seeds"].as_array().unwrap().len(), 5);
    assert_eq!(v["cluster_variables"].as_array().unwrap().len(), 5);
    assert_eq!(v["truncated"], false);
}

#[test]
fn classify_reports_status() {
    let v = json_of(&run(&["classify", "--seed", "a4"]));
    assert_eq!((v["status"].as_str(), v["type"].as_str()), (Some("finite"), Some("A4")));
    let v = json_of(&run(&["classify", "--seed", r#"{"n":2,"m":2,"B":[[0,2],[-2,0]]}"#]));
    assert_eq!(v["status"], "infinite");
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["mutate", "--seed", "a2", "--at", "0"][..],
        &["mutate", "--seed", "a2"][..],
        &["enumerate", "--seed", "a2", "--format", "xml"][..],
        &["polygon", "flip-graph", "--p", "5", "--format", "text"][..],
        &["matroid-op", "uniform"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let err = String::from_utf8(run(&["polygon", "flip-graph", "--format", "text"]).stderr).unwrap();
    assert!(err.contains("--format"));
}

#[test]
fn domain_errors_exit_with_one_and_json() {
    let out = run(&["mutate", "--seed", "a2", "--at", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"]["kind"], "seed");

    let out = run(&["mutate", "--seed", r#"{"n":2,"m":2,"B":[[0,1],[1,0]]}"#, "--at", "1"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["matroid-build", "--seed", "a2", "--mode", "cluster"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["error"]["kind"], "not_a_matroid");
    assert_eq!(v["error"]["details"]["witness"]["kind"], "no_exchange");

    let out = run(&["polygon", "triangulations", "--p", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["matroid-build", "--seed", "a3", "--rng-seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let exact = run(&["matroid-build", "--seed", "a3", "--exact"]);
    assert_eq!(json_of(&a)["bases"], json_of(&exact)["bases"]);
}

#[test]
fn built_matroid_feeds_matroid_op() {
    let built = run(&["matroid-build", "--seed", "a2"]);
    assert!(built.status.success());
    let text = String::from_utf8(built.stdout).unwrap();

    let u = json_of(&run(&["matroid-op", "uniform", "--matroid", &text]));
    assert_eq!((u["uniform"].as_bool(), u["rank"].as_u64(), u["size"].as_u64()), (Some(true), Some(2), Some(5)));

    let dual = run(&["matroid-op", "dual", "--matroid", &text]);
    assert!(dual.status.success());
    let dual_text = String::from_utf8(dual.stdout).unwrap();
    let back = json_of(&run(&["matroid-op", "dual", "--matroid", &dual_text]));
    let original: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(back["bases"], original["bases"]);

    let c = json_of(&run(&["matroid-op", "contract", "--matroid", &text, "--elements", "x1"]));
    assert_eq!(c["elements"].as_array().unwrap().len(), 4);
    let circuits = json_of(&run(&["matroid-op", "circuits", "--matroid", &text]));
    assert_eq!(circuits["circuits"].as_array().unwrap().len(), 10);
}

#[test]
fn laurent_and_monomials_succeed_on_small_types() {
    let v = json_of(&run(&["laurent-check", "--seed", "a2"]));
    assert_eq!((v["passed"].as_bool(), v["pairs_checked"].as_u64()), (Some(true), Some(25)));
    let v = json_of(&run(&["monomials", "--seed", "a1", "--max-degree", "3"]));
    assert_eq!(v["monomials"].as_array().unwrap().len(), 7);
    assert_eq!(v["summary"]["rank"], 7);
}

#[test]
fn polygon_and_exchange_graphs_agree() {
    let v = json_of(&run(&["compare-graphs", "--n", "3"]));
    assert_eq!((v["isomorphic"].as_bool(), v["triangulations"].as_u64()), (Some(true), Some(14)));
    let flips = json_of(&run(&["polygon", "flips", "--p", "5", "--triangulation", "1-3,1-4"]));
    let flips = flips["flips"].as_array().unwrap();
    assert_eq!(flips.len(), 2);
    assert_eq!(flips[0]["removed"], "P13");
    assert_eq!(flips[0]["added"], "P24");
}
