//! End-to-end command-line behavior, run in-process.

use domlab::cli::run;
use domlab_core::codec::to_graph6;
use domlab_core::graph::Graph;

fn domlab(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["domlab".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn recognize_prints_witness_or_cotree() {
    // P4 fed as an edge-list file
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p4.txt");
    std::fs::write(&path, "4\n0 1\n1 2\n2 3\n").unwrap();
    let arg = format!("@{}", path.display());
    let (code, out) = domlab(&["recognize", &arg]);
    assert_eq!(code, 0);
    assert!(out.contains("not a cograph"));
    assert!(out.contains("(0, 1, 2, 3)"));

    let c4 = to_graph6(&Graph::cycle(4));
    let (code, out) = domlab(&["recognize", &c4]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "cograph: J(U(0,2),U(1,3))");
}

#[test]
fn gamma_solves_plain_and_ranged() {
    let c4 = to_graph6(&Graph::cycle(4));
    let (code, out) = domlab(&["gamma", &c4]);
    assert_eq!(code, 0);
    assert!(out.contains("gamma = 2"));
    assert!(out.contains("witness = {0, 1}"));

    let (code, out) = domlab(&["gamma", &c4, "--jk", "1,2"]);
    assert_eq!(code, 0);
    assert!(out.contains("gamma[1,2] = 2"));

    let (code, out) = domlab(&["gamma", &c4, "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["gamma"], 2);
}

#[test]
fn product_reports_sizes_and_inequality() {
    let c4 = to_graph6(&Graph::cycle(4));
    let k2 = to_graph6(&Graph::complete(2));
    let (code, out) = domlab(&["product", &c4, &k2, "--gamma"]);
    assert_eq!(code, 0);
    assert!(out.contains("n=8 m=12"));
    assert!(out.contains("gamma(G)=2 gamma(H)=1 gamma(G [] H)=2"));
    assert!(out.contains("inequality holds"));
}

#[test]
fn certify_worked_example() {
    let c4 = to_graph6(&Graph::cycle(4));
    let k2 = to_graph6(&Graph::complete(2));
    let (code, out) = domlab(&[
        "certify",
        &c4,
        &k2,
        "--gamma-set",
        "0,2",
        "--dom-set",
        "(0,0),(2,1)",
        "--trace",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("== provisional"));
    assert!(out.contains("(0,0) -> 1"));
    assert!(out.contains("(2,1) -> 2"));
    assert!(out.contains("count_ok=true"));

    // same instance, JSON document
    let (code, out) = domlab(&[
        "certify",
        &c4,
        &k2,
        "--gamma-set",
        "0,2",
        "--dom-set",
        "0,6",
        "--json",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["certificate"]["count_ok"], true);
    assert_eq!(
        doc["certificate"]["projections"]["1"],
        serde_json::json!([0])
    );
    assert_eq!(doc["gamma_product"], 2);
    assert_eq!(doc["dom_set"], serde_json::json!([[0, 0], [2, 1]]));
}

#[test]
fn sweep_writes_deterministic_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("a.ndjson");
    let out2 = dir.path().join("b.ndjson");
    let run_one = |path: &std::path::Path| {
        let out_arg = path.display().to_string();
        let (code, out) = domlab(&[
            "sweep",
            "--max-ng",
            "3",
            "--max-nh",
            "3",
            "--all-gamma-sets",
            "--all-dom-sets",
            "--out",
            &out_arg,
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("0 inequality violations"));
    };
    run_one(&out1);
    run_one(&out2);

    let body = |p: &std::path::Path| {
        let text = std::fs::read_to_string(p).unwrap();
        let mut lines = text.lines();
        let header: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
        assert_eq!(header["type"], "header");
        assert_eq!(header["tool"], "domlab");
        lines.collect::<Vec<_>>().join("\n")
    };
    let (b1, b2) = (body(&out1), body(&out2));
    assert_eq!(b1, b2, "bodies must be byte-identical");

    // stream shape: instances then one aggregate
    let text = std::fs::read_to_string(&out1).unwrap();
    let rows: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.last().unwrap()["type"], "aggregate");
    assert_eq!(rows.len() - 2, 4 * 4); // G in {K1,K2,P3,K3}, H in {K1,K2,P3,K3}
}

#[test]
fn audit_claim1_classifies_c4() {
    let c4 = to_graph6(&Graph::cycle(4));
    let (code, out) = domlab(&["audit", "claim1", &c4, "--all-gamma-sets"]);
    assert_eq!(code, 0);
    // every dominating 2-subset of C4 is a minimum [1,2]-set: the four
    // edge pairs leave no vertex adjacent to both members, the two
    // diagonal pairs fail the claim with empty private sets
    let mut not_applicable = 0;
    let mut fails = 0;
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        match v["claim1"]["outcome"].as_str().unwrap() {
            "not-applicable" => not_applicable += 1,
            "fails-with-counterexample" => {
                fails += 1;
                for audit in v["claim1"]["audits"].as_array().unwrap() {
                    assert_eq!(audit["preamble_nonempty"], false);
                    assert_eq!(audit["witness"], serde_json::Value::Null);
                }
            }
            other => panic!("unexpected outcome {other}"),
        }
    }
    assert_eq!((not_applicable, fails), (4, 2));

    // pinning the distinguished instance directly
    let (code, out) = domlab(&["audit", "claim1", &c4, "--gamma-set", "0,2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["claim1"]["outcome"], "fails-with-counterexample");
}

#[test]
fn audit_claim2_reports_surviving_pairs() {
    let c4 = to_graph6(&Graph::cycle(4));
    let k1 = to_graph6(&Graph::new(1));
    let (code, out) = domlab(&[
        "audit",
        "claim2",
        &c4,
        &k1,
        "--gamma-set",
        "0,2",
        "--dom-set",
        "(1,0),(3,0)",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["claim2"]["outcome"], "fails-with-counterexample");
    assert_eq!(v["claim2"]["surviving"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_and_input_errors_exit_2() {
    let (code, _) = domlab(&["gamma"]);
    assert_eq!(code, 2);

    let (code, _) = domlab(&["no-such-command"]);
    assert_eq!(code, 2);

    let (code, _) = domlab(&["gamma", "!!not-graph6!!"]);
    assert_eq!(code, 2);

    let c4 = to_graph6(&Graph::cycle(4));
    let (code, _) = domlab(&["gamma", &c4, "--jk", "2,1"]);
    assert_eq!(code, 2);

    let (code, out) = domlab(&["--help"]);
    assert_eq!(code, 0);
    drop(out);
}
