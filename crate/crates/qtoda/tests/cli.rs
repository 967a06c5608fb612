use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use qtoda::catalogue::Catalogue;
use qtoda_core::kernels::KernelId;
use serde_json::Value;

fn qtoda(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtoda")).args(args).env_remove("QTODA_WORKERS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("one JSON object per line")).collect()
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn schema() -> Value {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("docs/report-schema.json");
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

/// Required and allowed keys of each record type, checked against the documented schema.
fn conforms(rec: &Value) {
    let schema = schema();
    let kind = rec["record"].as_str().expect("record tag");
    let def = &schema["$defs"][kind];
    assert!(def.is_object(), "undocumented record type {kind}");
    let allowed: BTreeSet<&str> = def["properties"].as_object().unwrap().keys().map(|k| k.as_str()).collect();
    let required: BTreeSet<&str> = def["required"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    let present: BTreeSet<&str> = rec.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert!(present.is_subset(&allowed), "{kind}: unexpected {:?}", present.difference(&allowed).collect::<Vec<_>>());
    assert!(required.is_subset(&present), "{kind}: missing {:?}", required.difference(&present).collect::<Vec<_>>());
}

#[test]
fn factorization_suite_passes() {
    let o = qtoda(&["verify", "--suite", "factorization", "--rank", "2..5"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = records(&o);
    assert_eq!(recs.len(), 4);
    assert!(recs.iter().all(|r| r["passed"] == true));
    recs.iter().for_each(conforms);
}

#[test]
fn mutated_factor_matrix_exits_with_failure() {
    let o = qtoda(&["verify", "--suite", "mn", "--rank", "3", "--mutate", "N:corner-sign"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(records(&o)[0]["passed"], false);
}

#[test]
fn dropped_kernel_term_exits_with_failure() {
    let o = qtoda(&["verify", "--suite", "kernels", "--kernel", "d-to-c", "--rank", "3", "--mutate", "drop-term:0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn recursive_suite_passes() {
    let o = qtoda(&["verify", "--suite", "recursive", "--k", "1..2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(records(&o).len(), 2);
}

#[test]
fn every_suite_passes_at_default_ranks() {
    let o = qtoda(&["verify", "--suite", "all", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    for suite in ["factorization", "det", "kernels", "mn", "recursive", "limits", "baxter"] {
        assert!(text.lines().any(|l| l.starts_with(&format!("PASS {suite} "))), "{suite}");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["hamiltonians", "--family", "D", "--rank", "1"][..],
        &["hamiltonians", "--family", "E", "--rank", "3"],
        &["verify", "--suite", "factorization", "--rank", "1..3"],
        &["verify", "--suite", "recursive", "--k", "1", "--mutate", "drop-term:0"],
        &["verify", "--suite", "mn", "--mutate", "R:corner-sign"],
        &["verify", "--suite", "factorization", "--mutate", "bogus"],
        &["eval", "d2", "--lambda", "0.3"],
        &["eval", "d2", "--lambda", "0.3,0.7", "--x", "3,0"],
        &["eval", "dn", "--n", "4", "--lambda", "0,0,0,0", "--x", "0,0,0,0"],
        &["frobnicate"],
    ] {
        let o = qtoda(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
    }
    let o = qtoda(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn bad_worker_environment_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_qtoda"))
        .args(["verify", "--suite", "factorization", "--rank", "2"])
        .env("QTODA_WORKERS", "none")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_qtoda"))
        .args(["verify", "--suite", "kernels", "--rank", "2"])
        .env("QTODA_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("verify_kernels_rank2.ndjson"));
}

#[test]
fn quadrature_failure_exits_three() {
    let o = qtoda(&["eval", "d2", "--lambda", "0.3,0.7", "--x", "0,0", "--tol", "1e-17"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("quadrature failed"));
    let o = qtoda(&["eval", "d2", "--lambda", "0.3,0.7", "--x", "0,0", "--tol", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn golden_symbolic_outputs() {
    let cases: [(&[&str], &str); 5] = [
        (&["verify", "--suite", "kernels", "--rank", "2"], "verify_kernels_rank2.ndjson"),
        (&["verify", "--suite", "factorization", "--rank", "2..3"], "verify_factorization_2_3.ndjson"),
        (&["verify", "--suite", "mn", "--rank", "2", "--mutate", "M:corner-sign"], "verify_mn_rank2_mutated.ndjson"),
        (&["hamiltonians", "--family", "D", "--rank", "2"], "hamiltonians_D_2.txt"),
        (&["hamiltonians", "--family", "twistedA", "--rank", "2"], "hamiltonians_twistedA_2.txt"),
    ];
    for (args, file) in cases {
        assert_eq!(stdout(&qtoda(args)), golden(file), "{file}");
    }
}

#[test]
fn rank_two_d_hamiltonian_has_the_two_exponentials() {
    let o = qtoda(&["hamiltonians", "--family", "D", "--rank", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = records(&o);
    recs.iter().for_each(conforms);
    let h2 = recs.iter().find(|r| r["coefficient"] == "H2").unwrap()["value"].as_str().unwrap().to_string();
    assert!(h2.contains("X1^-1 X2^-1") && h2.contains("X1^-1 X2 "), "{h2}");
    let tw = stdout(&qtoda(&["hamiltonians", "--family", "twistedA", "--rank", "2"]));
    assert!(tw.contains("u^1:") && tw.contains("u^-1:"), "{tw}");
}

#[test]
fn d2_grid_gives_nine_records() {
    let o = qtoda(&["eval", "d2", "--lambda", "0.3,0.7", "--grid", "-1:1:3", "--no-timings"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = records(&o);
    assert_eq!(recs.len(), 9);
    recs.iter().for_each(conforms);
    assert_eq!(recs[0]["x"], serde_json::json!([-1.0, -1.0]));
    assert_eq!(recs[8]["x"], serde_json::json!([1.0, 1.0]));
    let again = qtoda(&["eval", "d2", "--lambda", "0.3,0.7", "--grid", "-1:1:3", "--no-timings", "--workers", "2"]);
    assert_eq!(stdout(&o), stdout(&again), "reruns are identical");
}

#[test]
fn d2_grid_as_csv() {
    let o = qtoda(&["eval", "d2", "--lambda", "0.3,0.7", "--grid", "-1:1:2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "kind,n,lambda,x,value_re,value_im,error,nodes,seconds");
    assert_eq!(lines.count(), 4);
}

#[test]
fn a1_record_carries_the_bessel_ratio() {
    let o = qtoda(&["eval", "a1", "--nu", "0.5", "--y", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &records(&o)[0];
    conforms(r);
    let ratio = r["ratio_re"].as_f64().unwrap();
    assert!((ratio + 1.0).abs() < 1e-10, "{ratio}");
}

#[test]
fn d2check_reports_a_constant_ratio() {
    let o = qtoda(&["eval", "d2check", "--lambda", "0.3,0.7"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &records(&o)[0];
    conforms(r);
    assert_eq!(r["constant"], true);
    assert_eq!(r["points"].as_array().unwrap().len(), 9);
    assert!(r["candidate_discrepancy"].is_array());
}

#[test]
fn eigen_and_dn_records() {
    let o = qtoda(&["eval", "eigen", "--op", "quadratic", "--lambda", "0.3,0.7"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &records(&o)[0];
    conforms(r);
    assert!(r["residual"].as_f64().unwrap() < 1e-5);
    let o = qtoda(&["eval", "dn", "--n", "2", "--lambda", "0.3,0.7", "--x", "0.2,-0.1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &records(&o)[0];
    conforms(r);
    assert_eq!(r["variables"], serde_json::json!(["x11", "z11"]));
}

#[test]
fn catalogue_lists_every_kernel_once() {
    let cat = Catalogue::builtin();
    let ids: Vec<KernelId> = cat.ids().map(|(id, _)| id).collect();
    assert_eq!(ids, KernelId::ALL.to_vec());
    for (id, entry) in cat.ids() {
        let case = id.case(3);
        assert_eq!(case.left.family.name(), entry.left.family, "{}", entry.id);
        let right = entry.right.family.trim_end_matches("-mirrored");
        assert_eq!(case.right.family.name(), right, "{}", entry.id);
        assert_eq!(case.right.rank as i32, 3 + entry.right.rank_offset, "{}", entry.id);
    }
    assert!(Catalogue::parse("version = 2\nkernel = []").is_err());
    assert!(Catalogue::parse("version = 1\n[[kernel]]\nid = \"nope\"\ndescription = \"\"\nranks = [2]\nleft = { family = \"D\", block = \"x\" }\nright = { family = \"C\", block = \"z\" }").is_err());
}

#[test]
fn output_file_option() {
    let dir = std::env::temp_dir().join(format!("qtoda-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.ndjson");
    let o = qtoda(&["verify", "--suite", "factorization", "--rank", "2..3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden("verify_factorization_2_3.ndjson"));
    std::fs::remove_dir_all(&dir).unwrap();
}
