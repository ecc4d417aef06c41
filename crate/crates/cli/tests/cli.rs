use std::process::Command;

use dwork_cli::{run, Outcome, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn dwork(args: &[&str]) -> Outcome {
    let mut argv = vec!["dwork"];
    argv.extend_from_slice(args);
    run(argv)
}

fn json(args: &[&str]) -> (u8, Value) {
    let out = dwork(args);
    (
        out.code,
        serde_json::from_str(&out.stdout).unwrap_or(Value::Null),
    )
}

fn error_kind(out: &Outcome) -> String {
    let v: Value = serde_json::from_str(out.stderr.trim()).expect("stderr is json");
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn quintic_report() {
    let (code, doc) = json(&["report", "--weights", "1,1,1,1,1", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["gamma"], "1/3125");
    let keys: Vec<&str> = doc
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(
        keys,
        [
            "weights",
            "n",
            "d",
            "e",
            "gamma",
            "singular_fibers",
            "cohomology",
            "g_block",
            "invariant_statement",
            "ft",
            "integral_exponents",
            "checks"
        ]
    );
    let ft: Vec<&str> = doc["ft"]
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(&ft[..3], ["P", "Q", "sign"]);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["report", "--weights", "2,4,6", "--json"][..],
        &[
            "check",
            "--sweep",
            "--max-n",
            "2",
            "--max-weight",
            "2",
            "--json",
        ][..],
        &["syzygy", "--weights", "2,1,1"][..],
    ] {
        assert_eq!(dwork(args), dwork(args));
    }
}

#[test]
fn non_primitive_report_carries_its_base() {
    let (code, doc) = json(&["report", "--weights", "2,4,6", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["pushforward"]["e"], 2);
    assert_eq!(doc["pushforward"]["base"]["gamma"], "1/432");
    assert_eq!(doc["g_block"]["rank"], 10);
}

#[test]
fn text_mode_flattens() {
    let out = dwork(&["report", "--weights", "1,1,1,1,1"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.lines().any(|l| l == "gamma: 1/3125"));
}

#[test]
fn weyl_subcommands() {
    let (code, doc) = json(&[
        "weyl", "indicial", "--op", "D - 1/2", "--place", "zero", "--json",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["roots"], serde_json::json!(["1/2"]));

    let (_, doc) = json(&["weyl", "parse", "--op", "d*t", "--json"]);
    assert_eq!(doc["normal_form"], "t*d + 1");

    let (_, doc) = json(&["weyl", "ft", "--op", "t*d", "--json"]);
    assert_eq!(doc["result"], "-t*d - 1");

    let (_, doc) = json(&[
        "weyl",
        "singular",
        "--op",
        "1/27*D^2 - t*(D - 1/3)*(D - 2/3)",
        "--json",
    ]);
    assert_eq!(doc["rational_points"], serde_json::json!(["1/27"]));
    assert_eq!(doc["regular_at_infinity"], true);

    let (_, doc) = json(&["weyl", "indicial", "--op", "D^2 - 2", "--json"]);
    assert_eq!(doc["roots"], serde_json::json!([]));
    assert_eq!(doc["irrational_factors"][0]["factor"], "s^2 - 2");
}

#[test]
fn hyp_subcommands() {
    let (code, doc) = json(&[
        "hyp",
        "--gamma",
        "1/432",
        "--alpha",
        "0,0,1/3,1/2,2/3",
        "--beta",
        "1/6,1/3,1/2,2/3,5/6",
        "exponents",
        "--json",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["zero"], serde_json::json!(["0", "0"]));
    assert_eq!(doc["infinity"], serde_json::json!(["1/6", "5/6"]));

    let (_, doc) = json(&[
        "hyp",
        "--gamma",
        "2",
        "--alpha",
        "1/2",
        "--beta",
        "-1/2",
        "--no-cancel",
        "irreducible",
        "--json",
    ]);
    assert_eq!(doc["irreducible"], false);

    let out = dwork(&[
        "hyp",
        "--gamma",
        "2",
        "--alpha",
        "1/2",
        "--beta",
        "-1/2",
        "--no-cancel",
        "exponents",
    ]);
    assert_eq!(out.code, EXIT_DOMAIN);
    assert_eq!(error_kind(&out), "domain");

    let (_, doc) = json(&[
        "hyp", "--gamma", "3", "--alpha", "1/2", "operator", "--json",
    ]);
    assert_eq!(doc["operator"], "3*t*d - t - 3/2");
}

#[test]
fn syzygy_subcommand() {
    let (code, doc) = json(&["syzygy", "--weights", "1,1,1", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["generators"].as_array().unwrap().len(), 2);
    assert_eq!(doc["verified"], true);
    assert_eq!(doc["generated"], true);
    assert_eq!(doc["bound"], 7);
    let out = dwork(&["syzygy", "--weights", "1,1,1", "--bound", "2"]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn arrangement_subcommand() {
    let (code, doc) = json(&["arrangement", "--n", "3", "--weights", "1,1,1,1", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["shift"], 2);
    assert_eq!(doc["tn"], serde_json::json!({"-2": 1, "-1": 3, "0": 2}));
    assert_eq!(doc["checks"]["les_fragments"], true);
    assert_eq!(doc["checks"]["euler_identity"], false);
    assert_eq!(
        doc["milnor_fiber"]["dims"],
        serde_json::json!({"-2": 1, "-1": 3, "0": 6})
    );
    assert_eq!(doc["milnor_fiber"]["matches_m_table"], true);

    let out = dwork(&["arrangement", "--n", "3", "--weights", "1,1,1"]);
    assert_eq!(out.code, EXIT_USAGE);
    let out = dwork(&["arrangement", "--n", "1"]);
    assert_eq!(out.code, EXIT_USAGE);
    let out = dwork(&["arrangement", "--n", "2", "--weights", "2,2,2"]);
    assert_eq!(out.code, EXIT_DOMAIN);
}

#[test]
fn check_subcommand() {
    let (code, doc) = json(&["check", "--weights", "1,2,3", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["all_pass"], true);
    assert!(doc["checks"].as_object().unwrap().len() > 15);

    let (code, doc) = json(&[
        "check",
        "--sweep",
        "--max-n",
        "2",
        "--max-weight",
        "2",
        "--json",
    ]);
    assert_eq!(code, EXIT_OK);
    let firsts: Vec<Value> = doc["results"].as_array().unwrap()[..3]
        .iter()
        .map(|r| r["weights"].clone())
        .collect();
    assert_eq!(
        firsts,
        [
            serde_json::json!([1, 1]),
            serde_json::json!([1, 2]),
            serde_json::json!([2, 1])
        ]
    );
    assert_eq!(doc["tuples"], 4 + 8);

    let a = dwork(&["check", "--weights", "1,2,3", "--seed", "7"]);
    assert_eq!(a.code, EXIT_OK);
}

#[test]
fn usage_and_domain_errors() {
    for args in [
        &[][..],
        &["report"][..],
        &["report", "--weights", "0,1"][..],
        &["report", "--weights", "1"][..],
        &["report", "--weights", "a,b"][..],
        &["hyp", "--gamma", "1/0", "operator"][..],
        &["frobnicate"][..],
    ] {
        let out = dwork(args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}");
        assert_eq!(error_kind(&out), "usage");
        assert!(out.stdout.is_empty());
    }
    for args in [
        &["weyl", "parse", "--op", "t/2"][..],
        &["weyl", "parse", "--op", "d^-1"][..],
        &["weyl", "ft", "--op", "t^-1"][..],
        &["hyp", "--gamma", "0", "operator"][..],
    ] {
        let out = dwork(args);
        assert_eq!(out.code, EXIT_DOMAIN, "{args:?}");
        assert_eq!(error_kind(&out), "domain");
    }
    let out = dwork(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("report"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dwork");
    let ok = Command::new(bin)
        .args(["report", "--weights", "1,2,3", "--json"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(doc["gamma"], "1/432");
    let usage = Command::new(bin).args(["report"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let domain = Command::new(bin)
        .args(["weyl", "parse", "--op", "t/2"])
        .output()
        .unwrap();
    assert_eq!(domain.status.code(), Some(1));
    assert!(domain.stdout.is_empty());
}
