use std::path::{Path, PathBuf};
use std::process::Command;

use qrec_cli::paper::{run_paper, Fixtures, Transcript};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn qrec(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qrec")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn write_json(path: &Path, v: &serde_json::Value) {
    std::fs::write(path, serde_json::to_string_pretty(v).unwrap()).unwrap();
}

/// Runs find-rec on gsum with the In[5] set and sum-rec on the result.
fn out5_and_eq32(dir: &Path) -> (PathBuf, PathBuf) {
    let out5 = dir.join("out5.json");
    let eq = dir.join("eq3_2.json");
    let (code, _, err) = qrec(&[
        "find-rec",
        "--summand",
        p(&fixture("gsum.json")),
        "--struct",
        p(&fixture("structset_in5.json")),
        "--out",
        p(&out5),
    ]);
    assert_eq!(code, 0, "{err}");
    let (code, _, err) = qrec(&["sum-rec", "--rec", p(&out5), "--out", p(&eq)]);
    assert_eq!(code, 0, "{err}");
    (out5, eq)
}

#[test]
fn documents_carry_schema_version_and_kind() {
    let dir = tempfile::tempdir().unwrap();
    let (out5, eq) = out5_and_eq32(dir.path());
    let doc = read_json(&out5);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["kind"], "kfree_recurrences");
    assert_eq!(doc["recurrences"][0]["verified"], true);
    assert_eq!(doc["recurrences"][0]["structure"].as_array().unwrap().len(), 4);
    assert_eq!(doc["inputs"].as_array().unwrap().len(), 2);
    assert_eq!(doc["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    let doc = read_json(&eq);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["kind"], "sum_recurrence");
    assert_eq!(doc["shifts"], "backward");
}

#[test]
fn find_rec_prints_the_rendering() {
    let (code, out, _) = qrec(&[
        "find-rec",
        "--summand",
        p(&fixture("gsum.json")),
        "--struct",
        p(&fixture("structset_in5.json")),
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("q^L2 F(-1 + L1, -2 + L2, -1 + M, -1 + i, -1 + j, -1 + ab, ac, bc) + "), "{out}");
}

#[test]
fn no_recurrence_exits_with_1() {
    let (code, _, err) = qrec(&["find-rec", "--summand", p(&fixture("psum.json")), "--rect", "0,0"]);
    assert_eq!(code, 1);
    assert!(err.contains("no recurrence"), "{err}");
}

#[test]
fn usage_and_parse_errors_exit_with_2() {
    let (code, _, _) = qrec(&["find-rec", "--summand", p(&fixture("gsum.json"))]);
    assert_eq!(code, 2, "missing structure source");
    let (code, _, _) = qrec(&["find-rec", "--summand", "/nonexistent.json", "--rect", "1,0"]);
    assert_eq!(code, 2);
    let (code, _, err) = qrec(&["find-rec", "--summand", p(&fixture("structset_in5.json")), "--rect", "1,0"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, err) = qrec(&["find-rec", "--summand", p(&fixture("gsum.json")), "--rect", "1,0,2"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, err) = qrec(&[
        "find-rec",
        "--summand",
        p(&fixture("gsum.json")),
        "--substitute",
        "L2 = i +",
        "--rect",
        "0,0",
    ]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = qrec(&["verify", "eq9.9"]);
    assert_eq!(code, 2);
    let (code, _, _) = qrec(&["verify", "eq1.15", "--grid", "x=0..1"]);
    assert_eq!(code, 2);
    let (code, _, _) = qrec(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn wrong_document_kind_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let (out5, _) = out5_and_eq32(dir.path());
    let (code, _, err) = qrec(&["check-rec", "--summand", p(&fixture("psum.json")), "--rec", p(&out5)]);
    assert_eq!(code, 2);
    assert!(err.contains("sum_recurrence"), "{err}");
    let mut doc = read_json(&out5);
    doc["schema_version"] = 7.into();
    write_json(&out5, &doc);
    let (code, _, err) = qrec(&["sum-rec", "--rec", p(&out5)]);
    assert_eq!(code, 2);
    assert!(err.contains("schema_version"), "{err}");
}

#[test]
fn collapse_exits_with_1() {
    let dir = tempfile::tempdir().unwrap();
    let (out5, _) = out5_and_eq32(dir.path());
    let mut doc = read_json(&out5);
    let mut last = vec![0; 8];
    last[7] = 1;
    doc["recurrences"][0]["coeffs"] = serde_json::json!([
        { "shift": [0, 0, 0, 0, 0, 0, 0, 0], "poly": [{ "coeff": "1" }] },
        { "shift": last, "poly": [{ "coeff": "-1" }] },
    ]);
    write_json(&out5, &doc);
    let (code, _, err) = qrec(&["sum-rec", "--rec", p(&out5)]);
    assert_eq!(code, 1);
    assert!(err.contains("recurrence collapsed to 0"), "{err}");
}

#[test]
fn check_rec_certificate_and_perturbation() {
    let dir = tempfile::tempdir().unwrap();
    let (_, eq) = out5_and_eq32(dir.path());
    let cert = dir.path().join("cert.json");
    let (code, out, err) = qrec(&[
        "check-rec",
        "--summand",
        p(&fixture("psum.json")),
        "--rec",
        p(&eq),
        "--out",
        p(&cert),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("True"), "{out}");
    let doc = read_json(&cert);
    assert_eq!(doc["kind"], "termwise_certificate");
    assert_eq!(doc["holds"], true);
    assert_eq!(doc["verified"], true);
    let parsed: qrec_cli::docs::CertificateDoc = serde_json::from_value(doc).unwrap();
    assert!(parsed.reverify().unwrap());

    // Multiply one coefficient by q.
    let mut rec = read_json(&eq);
    for t in rec["coeffs"][0]["poly"].as_array_mut().unwrap() {
        let e = t["exps"].get("q").and_then(|v| v.as_u64()).unwrap_or(0);
        t["exps"]["q"] = (e + 1).into();
    }
    write_json(&eq, &rec);
    let (code, _, err) = qrec(&[
        "check-rec",
        "--summand",
        p(&fixture("psum.json")),
        "--rec",
        p(&eq),
        "--window",
        "1",
        "--out",
        p(&cert),
    ]);
    assert_eq!(code, 1, "{err}");
    assert_eq!(read_json(&cert)["holds"], false);
}

#[test]
fn rec_variable_mismatch_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let (_, eq) = out5_and_eq32(dir.path());
    let (code, _, _) = qrec(&[
        "check-rec",
        "--summand",
        p(&fixture("psum.json")),
        "--vars",
        "L1,M,i",
        "--rec",
        p(&eq),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn forward_shifts_for_jacobi() {
    let dir = tempfile::tempdir().unwrap();
    let rec = dir.path().join("jac.json");
    let (code, _, err) = qrec(&[
        "find-rec",
        "--summand",
        p(&fixture("jacobi_rhs.json")),
        "--rect",
        "2,0",
        "--complete",
        "--out",
        p(&rec),
    ]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = qrec(&["sum-rec", "--rec", p(&rec), "--forward"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("+ alpha SUM(4 + L) = 0\n"), "{out}");
}

#[test]
fn verify_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let (code, text, _) = qrec(&["verify", "eq5.2", "--grid", "i=0..2,L2=0..4", "--out", p(&out)]);
    assert_eq!(code, 0);
    assert!(text.contains("all"), "{text}");
    let doc = read_json(&out);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["kind"], "grid_report");
    assert_eq!(doc["identity"], "eq5.2");
    assert_eq!(doc["status"], "pass");
    assert_eq!(doc["grid"], "i=0..2,j=0..3,k=0..3,L2=0..4,M=-2..7");
}

#[test]
fn paper_grid_only_runs_oracle_steps() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.json");
    let (code, _, err) = qrec(&["paper", "--grid-only", "--transcript", p(&t)]);
    assert_eq!(code, 0, "{err}");
    let doc: Transcript = serde_json::from_value(read_json(&t)).unwrap();
    let ids: Vec<&str> = doc.steps.iter().map(|s| s.id.as_str()).collect();
    assert_eq!(
        ids,
        ["delta0-base", "eq1.15", "eq1.11", "eq1.14", "boundary_g=p_bound", "eq5.1", "eq5.2", "stabilization"]
    );
}

#[test]
fn corrupted_structure_set_aborts_at_step_one() {
    let dir = tempfile::tempdir().unwrap();
    for name in qrec_cli::paper::FIXTURE_NAMES {
        std::fs::copy(fixture(name), dir.path().join(name)).unwrap();
    }
    std::fs::write(dir.path().join("structset_in5.json"), "[[0,0,0,0,0,0,0,0], [1,2]]").unwrap();
    let t = dir.path().join("t.json");
    let (code, _, err) = qrec(&["paper", "--fixtures", p(dir.path()), "--transcript", p(&t)]);
    assert_eq!(code, 2);
    assert!(err.contains("step out5"), "{err}");
    let doc: Transcript = serde_json::from_value(read_json(&t)).unwrap();
    assert_eq!(doc.steps.len(), 1);
    assert!(!doc.steps[0].passed());
}

#[test]
fn paper_transcript_is_deterministic_and_self_verifying() {
    let fixtures = Fixtures::embedded();
    let a = run_paper(&fixtures, false, &mut |_| {});
    assert!(a.failure.is_none(), "{:?}", a.failure);
    assert!(a.transcript.passed());
    assert!(a.transcript.steps.len() >= 11);
    let b = run_paper(&fixtures, false, &mut |_| {});
    let (ta, tb) = (a.transcript.without_durations(), b.transcript.without_durations());
    assert_eq!(serde_json::to_string(&ta).unwrap(), serde_json::to_string(&tb).unwrap());
    let text = serde_json::to_string(&a.transcript).unwrap();
    let reread: Transcript = serde_json::from_str(&text).unwrap();
    assert_eq!(reread.reverify().unwrap(), Vec::<String>::new());
}
