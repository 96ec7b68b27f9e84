use std::os::unix::fs::PermissionsExt;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn holembed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holembed"))
        .args(args)
        .env_remove("HOLEMBED_PROVER")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn records(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("JSON line")).collect()
}

fn corpus_file(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(name).display().to_string()
}

/// A stand-in prover that prints `output` and optionally sleeps first.
fn fake_prover(dir: &Path, output: &str, sleep: u32) -> PathBuf {
    let path = dir.join(format!("prover-{sleep}-{}", output.len()));
    std::fs::write(&path, format!("#!/bin/sh\nsleep {sleep}\necho '{output}'\n")).unwrap();
    std::fs::set_permissions(&path, std::fs::Permissions::from_mode(0o755)).unwrap();
    path
}

#[test]
fn check_refutes_d45_with_two_worlds() {
    let o = holembed(&["check", "corpus:d45-implies-m5", "--max-worlds", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = &records(&o)[0];
    assert_eq!(r["verdict"], "Refuted");
    assert_eq!(r["consistent"], true);
    assert!(r["witness"].as_str().unwrap().contains("carrier w 2"));
    assert!(stderr(&o).contains("countermodel"));
}

#[test]
fn check_barcan_finds_nothing() {
    let o = holembed(&["check", "corpus:barcan"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(records(&o)[0]["verdict"], "NoCountermodelUpToBound");
}

#[test]
fn check_reports_mismatch_below_the_witness_size() {
    let o = holembed(&["check", "corpus:d45-implies-m5", "--max-worlds", "1"]);
    assert_eq!(code(&o), 1);
    assert_eq!(records(&o)[0]["consistent"], false);
}

#[test]
fn zero_worlds_is_a_usage_error() {
    assert_eq!(code(&holembed(&["check", "corpus:barcan", "--max-worlds", "0"])), 2);
}

#[test]
fn check_writes_witness_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = holembed(&["check", "corpus:rcc-epistemic-fool", "--witness-dir", d]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let path = records(&o)[0]["witness_path"].as_str().unwrap().to_string();
    assert!(std::fs::read_to_string(path).unwrap().contains("carrier region"));
}

#[test]
fn corpus_list_rows() {
    let o = holembed(&["corpus", "list"]);
    assert_eq!(code(&o), 0);
    let rows = records(&o);
    assert!(rows.len() >= 40);
    assert!(rows.iter().all(|r| r["expected"] == "theorem" || r["expected"] == "countersatisfiable"));
    let friends = rows.iter().find(|r| r["id"] == "friends").unwrap();
    assert_eq!(friends["tptp"], "PUZ086^1");
}

#[test]
fn corpus_export_file_count() {
    let dir = tempfile::tempdir().unwrap();
    let o = holembed(&["corpus", "export", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let count = |ext: &str| {
        std::fs::read_dir(dir.path())
            .unwrap()
            .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == ext))
            .count()
    };
    assert_eq!(count("lgp"), 46);
    assert_eq!(count("p"), 46);
}

#[test]
fn embed_friends() {
    let o = holembed(&["embed", &corpus_file("friends.lgp")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("thf(valid_def, definition,"));
    assert!(text.contains("thf(conj, conjecture,"));
    assert!(stderr(&o).contains("have type $o"));
}

#[test]
fn embed_unfolded_has_no_defined_names() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.p");
    let o = holembed(&["embed", &corpus_file("friends.lgp"), "--mode", "unfolded", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(out).unwrap();
    for name in holembed::embed::MODAL_DEFINITIONS {
        assert!(!text.contains(name), "{name}");
    }
}

#[test]
fn embed_rejects_wrong_logic_and_malformed_files() {
    assert_eq!(code(&holembed(&["embed", &corpus_file("friends.lgp"), "--logic", "ipl"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lgp");
    std::fs::write(&bad, "logic qml\nindex r\nconjecture [r] (p &\n").unwrap();
    let o = holembed(&["embed", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("bad.lgp:3:"), "{}", stderr(&o));
}

#[test]
fn prove_with_stand_in_prover() {
    let dir = tempfile::tempdir().unwrap();
    let theorem = fake_prover(dir.path(), "% SZS status Theorem for x", 0);
    let cmd = format!("{} {{file}}", theorem.display());
    let run = dir.path().join("runs");
    let o = holembed(&["prove", "corpus:corr-reflexive-fwd", "--prover", &cmd, "--run-dir", run.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(records(&o)[0]["status"], "Theorem");
    assert!(run.join("corr-reflexive-fwd.p").exists());

    let o = holembed(&["prove", "corpus:d45-implies-m5", "--prover", &cmd, "--run-dir", run.to_str().unwrap(), "--clean"]);
    assert_eq!(code(&o), 1);
    assert!(!run.join("d45-implies-m5.p").exists());
}

#[test]
fn prove_times_out() {
    let dir = tempfile::tempdir().unwrap();
    let slow = fake_prover(dir.path(), "% SZS status Theorem", 5);
    let cmd = format!("{} {{file}}", slow.display());
    let run = dir.path().join("runs");
    let o = holembed(&["prove", "corpus:barcan", "--prover", &cmd, "--timeout", "0", "--run-dir", run.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(records(&o)[0]["status"], "Timeout");
}

#[test]
fn prove_without_prover_is_an_environment_error() {
    assert_eq!(code(&holembed(&["prove", "corpus:barcan"])), 3);
    assert_eq!(code(&holembed(&["prove", "corpus:barcan", "--prover", "/nonexistent/prover {file}"])), 3);
}

#[test]
fn corpus_run_subset() {
    let o = holembed(&["corpus", "run", "--ids", "d45-implies-m5,ipl-3,barcan", "--jobs", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows = records(&o);
    assert_eq!(rows.iter().map(|r| r["id"].as_str().unwrap()).collect::<Vec<_>>(), ["d45-implies-m5", "barcan", "ipl-3"]);
    assert!(stderr(&o).contains("3 as expected"));
}

#[test]
fn corpus_run_with_prover_flags_contradictions() {
    let dir = tempfile::tempdir().unwrap();
    let theorem = fake_prover(dir.path(), "% SZS status Theorem", 0);
    let cmd = format!("{} {{file}}", theorem.display());
    let o = holembed(&[
        "corpus", "run", "--ids", "d45-implies-m5,barcan", "--prover", &cmd, "--run-dir", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    let rows = records(&o);
    assert_eq!(rows.len(), 4);
    let bad: Vec<_> = rows.iter().filter(|r| r["consistent"] == false).collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["id"], "d45-implies-m5");
    assert_eq!(bad[0]["kind"], "prove");
}

#[test]
fn config_file_sets_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("holembed.conf");
    std::fs::write(&cfg, "max_worlds = 1\n").unwrap();
    let o = holembed(&["--config", cfg.to_str().unwrap(), "check", "corpus:d45-implies-m5"]);
    assert_eq!(code(&o), 1);
    std::fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(code(&holembed(&["--config", cfg.to_str().unwrap(), "corpus", "list"])), 2);
}
