use std::path::Path;
use std::process::{Command, Output};

use invgen_core::crown;
use rand::SeedableRng;
use serde_json::Value;

fn invgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invgen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn ok(args: &[&str]) -> Value {
    let out = invgen(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    json(&out)
}

#[test]
fn igen_summary_alt5() {
    let r = ok(&["igen", "summary", "--group", "alt:5"]);
    assert_eq!(r["schema"], "invgen-report/1");
    let res = &r["results"];
    assert_eq!(res["d_i"], 2);
    assert_eq!(res["m_i"], 2);
    assert_eq!(res["m"], 3);
    assert_eq!(res["is_b"], false);
    assert_eq!(res["is_bi"], true);
    let frat: Vec<&str> = res["frat_i_classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["rep"].as_str().unwrap())
        .collect();
    assert_eq!(frat, ["()", "(2,3)(4,5)"]);
}

#[test]
fn order_18_group_is_not_binary() {
    let r = ok(&["tarski", "nary", "--group", "builtin:c3c3xc2", "--n", "2"]);
    assert_eq!(r["results"]["verdict"], "no");
    let witness: Vec<String> = r["results"]["witness"]["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.as_str().unwrap().to_string())
        .collect();
    let mut args = vec!["tarski", "closure", "--group", "builtin:c3c3xc2", "--n", "2"];
    for e in &witness {
        args.extend(["-e", e.as_str()]);
    }
    let c = ok(&args);
    assert_eq!(c["results"]["fixpoint_size"], witness.len());
    assert!(c["results"]["closure_size"].as_u64().unwrap() > witness.len() as u64);
    let r = ok(&[
        "tarski", "nary", "--group", "builtin:c3c3xc2", "--n", "2", "--complement-of", "(2,3)(4,7)(5,9)(6,8)",
    ]);
    assert_eq!(r["results"]["witness"]["size"], 17);
    let r = ok(&["tarski", "nary", "--group", "builtin:c3c3xc2", "--n", "3"]);
    assert_eq!(r["results"]["verdict"], "yes");
}

#[test]
fn verify_core_passes() {
    let r = ok(&["verify", "paper", "--suite", "core"]);
    let checks = r["results"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 11);
    assert!(checks.iter().all(|c| c["status"] == "PASS"));
}

#[test]
fn verify_corpus_and_stretch_pass() {
    for suite in ["soluble-corpus", "stretch"] {
        let r = ok(&["verify", "paper", "--suite", suite]);
        for c in r["results"]["checks"].as_array().unwrap() {
            assert!(c["status"] == "PASS" || c["status"] == "SKIPPED" && c["reason"].is_string());
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["igen", "summary", "--group", "sym:4"];
    assert_eq!(invgen(&args).stdout, invgen(&args).stdout);
    let r = ok(&["--timings", "igen", "summary", "--group", "sym:4"]);
    assert!(r["diagnostics"]["elapsed_secs"].is_number());
    assert!(ok(&args).get("diagnostics").is_none());
}

#[test]
fn cache_hits_match_misses() {
    let dir = tempfile::tempdir().unwrap();
    let set = format!("cache_dir={}", dir.path().display());
    let args = ["--set", &set, "maximals", "--group", "sym:5"];
    let plain = invgen(&["maximals", "--group", "sym:5"]).stdout;
    let first = invgen(&args);
    let second = invgen(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let r1 = json(&first);
    let r0: Value = serde_json::from_slice(&plain).unwrap();
    assert_eq!(r0["results"], r1["results"]);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let name = files[0].file_name().unwrap().to_str().unwrap().to_string();
    assert!(name.ends_with(".json") && name.len() == 64 + 5, "{name}");
    std::fs::write(&files[0], "not json").unwrap();
    let third = invgen(&args);
    assert_eq!(third.stdout, first.stdout);
    let timed = ok(&["--timings", "--set", &set, "maximals", "--group", "sym:5"]);
    assert!(timed["diagnostics"]["lattice_cache"].as_str().unwrap().starts_with("hit"));
}

#[test]
fn exit_codes() {
    assert_eq!(invgen(&["group", "show", "--group", "nope:3"]).status.code(), Some(2));
    assert_eq!(invgen(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(invgen(&["igen", "check", "--group", "alt:5", "-e", "(1,2)"]).status.code(), Some(2));
    let out = invgen(&["--set", "lattice_budget=10", "subgroups", "--group", "sym:4"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"]["kind"], "budget");
    assert_eq!(invgen(&["classes", "--group", "alt:29"]).status.code(), Some(3));
    assert_eq!(invgen(&["model", "build", "--n", "9"]).status.code(), Some(2));
}

#[test]
fn config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("invgen.conf");
    std::fs::write(&cfg, "# small\nlattice_budget = 10\nseed = 3\n").unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(invgen(&["--config", c, "maximals", "--group", "sym:4"]).status.code(), Some(3));
    assert_eq!(invgen(&["--config", c, "maximals", "--group", "sym:3"]).status.code(), Some(0));
    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(invgen(&["--config", c, "group", "order", "--group", "sym:3"]).status.code(), Some(2));
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn group_files_and_queries() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s4.txt", "degree 4\na = (1,2,3,4)\nb = (1,2)\n");
    let sel = format!("file:{f}");
    assert_eq!(ok(&["group", "order", "--group", &sel])["results"]["order"], 24);
    let r = ok(&["igen", "irb", "--group", &sel]);
    assert_eq!(r["results"]["irb_i"], serde_json::json!([2, 3]));
    let r = ok(&["ibp", "--group", &sel]);
    assert_eq!(r["results"]["has_ibp"], false);
    let r = ok(&["group", "orbits", "--group", "cyclic:3"]);
    assert_eq!(r["results"]["orbits"], serde_json::json!([[1, 2, 3]]));
    let r = ok(&["iota", "--group", "alt:5"]);
    assert_eq!(r["results"]["iota"], 2);
    let r = ok(&["fratI", "--group", "builtin:q8"]);
    assert_eq!(r["results"]["frattini_order"], 2);
    let r = ok(&["classes", "--group", "dicyclic:3"]);
    assert_eq!(r["results"]["count"], 6);
    let r = ok(&["igen", "witness", "--group", "sym:4", "--kind", "m_i"]);
    assert_eq!(r["results"]["size"], 3);
    let r = ok(&["bi", "--group", "builtin:f3sq_q8"]);
    assert_eq!(r["results"]["structure"]["case"], "module");
    let r = ok(&["tarski", "closure", "--group", "sym:3", "-e", "(1,2)", "-e", "(1,2,3)"]);
    assert_eq!(r["results"]["closure_size"], 6);
    let r = ok(&["tarski", "laws", "--group", "builtin:q8", "--samples", "50"]);
    assert_eq!(r["results"]["monotone"], true);
    let r = ok(&["model", "iota", "--n", "2"]);
    assert_eq!(r["results"]["iota"], 4);
    let r = ok(&["model", "crosscheck", "--n", "2"]);
    assert_eq!(r["results"]["matched"], true);
    let r = ok(&["scan"]);
    assert!(r["results"]["counterexamples"].is_array());
    let r = ok(&["igen", "summary", "--group", "psl2:7"]);
    assert_eq!(r["results"]["order"], 168);
}

#[test]
fn affine_route_above_lattice_budget() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "f3q8.txt",
        "affine 3 2\nmatrix i\n0 2\n1 0\nmatrix j\n1 1\n1 2\n",
    );
    let sel = format!("affine:{f}");
    let r = ok(&["--set", "lattice_budget=10", "igen", "summary", "--group", &sel]);
    assert_eq!(r["results"]["order"], 72);
    assert_eq!(r["results"]["d_i"], 3);
    assert_eq!(r["results"]["m_i"], 3);
    assert!(r["budget_notes"][0].as_str().unwrap().contains("affine"));
}

#[test]
fn crown_instances() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let spec = crown::RandomSpec {
        primes: &[3],
        max_delta: 2,
        ..Default::default()
    };
    for k in 0..4 {
        let inst = crown::random_instance(&mut rng, &spec);
        let f = write(dir.path(), &format!("i{k}.txt"), &inst.to_text());
        let r = ok(&["crown", "check", "--instance", &f]);
        assert_eq!(
            r["results"]["invariably_generates"],
            crown::igen_matrix_check(&inst, false).unwrap()
        );
        let r = ok(&["crown", "exists", "--instance", &f, "--exhaustive"]);
        assert_eq!(r["results"]["exists"], r["results"]["exhaustive"]);
        let r = ok(&["crown", "oracle", "--instance", &f]);
        assert_eq!(r["results"]["disagreements"], serde_json::json!([]));
    }
    let r = ok(&["crown", "oracle", "--random", "10"]);
    assert_eq!(r["results"]["instances"], 10);
}
