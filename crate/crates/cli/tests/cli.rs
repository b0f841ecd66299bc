use std::io::Write;
use std::process::{Command, Stdio};

use nilaffine::deformation::g_act_param;
use nilaffine::sampling::Sampler;
use nilaffine_cli::document::param_json;
use nilaffine_cli::{run, Output, EXIT_CONTRACT, EXIT_INVALID, EXIT_NOT_PROPER, EXIT_OK};
use serde_json::{json, Value};

const J2_I2: &str = r#"{"k":2,"type":"type2","X":[["0","-1"],["1","0"]],"Y":[["1","0"],["0","1"]]}"#;

fn call(args: &[&str], stdin: &str) -> Output {
    let argv = std::iter::once("nilaffine").chain(args.iter().copied());
    run(argv, &mut stdin.as_bytes())
}

fn parsed(out: &Output) -> Value {
    serde_json::from_str(&out.stdout).expect("stdout is JSON")
}

#[test]
fn dim_records() {
    let out = call(&["dim", "--k", "2"], "");
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "{\"dim_M1r\":8,\"dim_M2ro\":8,\"dim_T_prime\":7}\n");
    let t_prime: Vec<u64> = (1..=4)
        .map(|k| parsed(&call(&["dim", "--k", &k.to_string()], ""))["dim_T_prime"].as_u64().unwrap())
        .collect();
    assert_eq!(t_prime, vec![2, 7, 16, 31]);
    assert_eq!(call(&["dim", "--k", "0"], "").code, EXIT_INVALID);
}

#[test]
fn check_examples() {
    let out = call(&["check"], J2_I2);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(parsed(&out)["proper"], json!(true));

    let doc = r#"{"k":2,"type":"type2","X":[["1","0"],["0","0"]],"Y":[["1","0"],["0","1"]]}"#;
    let out = call(&["check"], doc);
    assert_eq!(out.code, EXIT_NOT_PROPER);
    let v = parsed(&out);
    assert_eq!(v["proper"], json!(false));
    assert_eq!(v["witness"], json!({ "root_interval": ["1", "1"] }));
}

#[test]
fn invalid_input_is_reported() {
    for (args, stdin) in [
        (vec!["check"], "not json"),
        (vec!["check"], r#"{"k":1,"type":"type1","x":["1"],"Y":[["1"]],"z":["0"]}"#),
        (vec!["equiv"], J2_I2),
        (vec!["oracle", "--schedule", "8,4"], J2_I2),
        (vec!["oracle", "--box-radius", "0"], J2_I2),
        (vec!["probe", "--radius", "x"], J2_I2),
        (vec!["frobnicate"], ""),
    ] {
        let out = call(&args, stdin);
        assert_eq!(out.code, EXIT_INVALID, "{args:?}");
        assert!(parsed(&out)["error"].is_string(), "{args:?}");
    }
}

#[test]
fn canon_is_byte_idempotent() {
    let mut s = Sampler::new(21);
    for i in 0..60 {
        let p = s.proper_param(1 + i % 3, 1 + (i % 2) as u8);
        let doc = serde_json::to_string(&param_json(&p)).unwrap();
        let once = call(&["canon"], &doc);
        assert_eq!(once.code, EXIT_OK);
        let twice = call(&["canon"], &once.stdout);
        assert_eq!(once.stdout, twice.stdout);
    }
    let improper = r#"{"k":1,"type":"type2","X":[["1"]],"Y":[["0"]]}"#;
    assert_eq!(call(&["canon"], improper).code, EXIT_NOT_PROPER);
    assert_eq!(call(&["canon", "--allow-improper"], improper).code, EXIT_OK);
}

#[test]
fn classify_fields_are_consistent() {
    let mut s = Sampler::new(22);
    for i in 0..200 {
        let p = s.param(1 + i % 4, 1 + (i % 2) as u8);
        let out = call(&["classify"], &param_json(&p).to_string());
        assert_eq!(out.code, EXIT_OK);
        let v = parsed(&out);
        let (g, pr, inj) = (v["generic"] == json!(true), v["proper"] == json!(true), v["injective"] == json!(true));
        assert!(!g || pr, "{v}");
        assert!(!pr || inj, "{v}");
    }
}

#[test]
fn equiv_detects_conjugates() {
    let mut s = Sampler::new(23);
    for i in 0..40 {
        let k = 1 + i % 3;
        let p = s.proper_param(k, 1 + (i % 2) as u8);
        let q = g_act_param(&s.group_element(k), &p).unwrap();
        let doc = json!([param_json(&p), param_json(&q)]).to_string();
        let out = call(&["equiv"], &doc);
        assert_eq!(parsed(&out), json!({ "equivalent": true }));
    }
    let doc = format!("[{J2_I2}, {}]", r#"{"k":2,"type":"type2","X":[["0","-1"],["1","0"]],"Y":[["2","0"],["0","2"]]}"#);
    assert_eq!(parsed(&call(&["equiv"], &doc)), json!({ "equivalent": false }));
}

#[test]
fn oracle_examples() {
    let shift = r#"{"k":1,"type":"type2","X":[["0"]],"Y":[["1"]]}"#;
    let v = parsed(&call(&["oracle", "--schedule", "4,8,16"], shift));
    assert_eq!(v["counts"], json!([4, 4, 4]));
    assert_eq!(v["verdict"], json!("proper"));
    let shear = r#"{"k":1,"type":"type2","X":[["1"]],"Y":[["0"]]}"#;
    let v = parsed(&call(&["oracle", "--schedule", "4,8,16"], shear));
    assert_eq!(v["counts"], json!([8, 16, 32]));
    assert_eq!(v["verdict"], json!("not_proper"));
}

#[test]
fn sample_never_reports_contract_violations() {
    for (k, seed) in [(1, 1), (2, 2), (3, 3), (4, 4)] {
        let out = call(&["sample", "--k", &k.to_string(), "--count", "50", "--seed", &seed.to_string()], "");
        assert_ne!(out.code, EXIT_CONTRACT);
        let v = parsed(&out);
        assert_eq!(v["samples"].as_array().unwrap().len(), 100);
        let f = v["branch2"]["proper_fraction"].as_f64().unwrap();
        assert!((0.0..=1.0).contains(&f));
    }
    let a = call(&["sample", "--k", "2", "--count", "5", "--seed", "9"], "");
    let b = call(&["sample", "--k", "2", "--count", "5", "--seed", "9"], "");
    assert_eq!(a, b);
}

#[test]
fn closure_and_probe() {
    let flat = r#"{"k":2,"type":"type2","X":[["0","0"],["0","0"]],"Y":[["1","0"],["0","1"]]}"#;
    let v = parsed(&call(&["closure"], flat));
    assert_eq!(v["in_closure"], json!(true));
    let d: Vec<f64> = v["preview"].as_array().unwrap().iter().map(|t| t["distance"].as_f64().unwrap()).collect();
    assert!(d.windows(2).all(|w| w[1] < w[0]));
    assert_eq!(parsed(&call(&["closure"], J2_I2))["in_closure"], json!(false));

    let out = call(&["probe", "--trials", "50", "--seed", "3"], flat);
    assert_eq!(out.code, EXIT_OK);
    let v = parsed(&out);
    assert_eq!(v["trials"], json!(50));
    assert!(v["proper_fraction"].as_f64().unwrap() <= 1.0);
    let improper = r#"{"k":1,"type":"type2","X":[["1"]],"Y":[["0"]]}"#;
    assert_eq!(call(&["probe"], improper).code, EXIT_NOT_PROPER);
}

#[test]
fn binary_reads_stdin_and_sets_exit_code() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nilaffine"))
        .arg("check")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(J2_I2.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["proper"], json!(true));
}
