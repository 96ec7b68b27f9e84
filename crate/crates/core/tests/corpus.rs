use std::time::Instant;

use holembed::corpus::{build, corpus_list, export_corpus, load, source, source_text};
use holembed::logics::Expectation;
use holembed::semantics::{countermodel_search, verify};
use holembed::thf::{emit_thf, lint, EmitMode, ThfOptions};

#[test]
fn every_entry_builds_and_type_checks() {
    let list = corpus_list();
    assert_eq!(list.len(), 46);
    for e in &list {
        let p = build(&e.id).unwrap_or_else(|err| panic!("{}: {err}", e.id));
        p.check().unwrap_or_else(|err| panic!("{}: {err}", e.id));
        assert_eq!(p.expected, e.expected, "{}", e.id);
    }
}

#[test]
fn sources_round_trip() {
    for e in corpus_list() {
        let text = source_text(&e.id).unwrap();
        let src = source(&e.id).unwrap();
        assert_eq!(src.print(), text, "{}", e.id);
        let p = load(&src).unwrap();
        assert_eq!(p.expected, e.expected, "{}", e.id);
    }
}

#[test]
fn finite_verdicts_match_expectations() {
    for e in corpus_list() {
        let p = build(&e.id).unwrap();
        let t = Instant::now();
        let v = countermodel_search(&p, &e.bounds).unwrap();
        eprintln!("{:<24} {:>8.2?}", e.id, t.elapsed());
        match e.expected {
            Expectation::CounterSatisfiable => {
                assert!(v.is_refuted(), "{}", e.id);
                assert!(verify(&p, v.model().unwrap()).unwrap().refutes(), "{}", e.id);
            }
            _ => assert!(!v.is_refuted(), "{}", e.id),
        }
    }
}

#[test]
fn emission_is_lint_clean_and_deterministic() {
    for e in corpus_list() {
        let p = build(&e.id).unwrap();
        for opts in [
            ThfOptions::default(),
            ThfOptions { mode: EmitMode::Unfolded, ..Default::default() },
            ThfOptions { swap_types: true, definitions_as_axioms: true, ..Default::default() },
        ] {
            let text = emit_thf(&p, &opts).to_string();
            lint(&text).unwrap_or_else(|err| panic!("{} {:?}: {err}\n{text}", e.id, opts));
            assert_eq!(text, emit_thf(&build(&e.id).unwrap(), &opts).to_string(), "{}", e.id);
        }
    }
}

#[test]
fn golden_files() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (id, mode) in [("friends", EmitMode::Defined), ("d45-implies-m5", EmitMode::Defined), ("ipl-2", EmitMode::Unfolded)] {
        let text = emit_thf(&build(id).unwrap(), &ThfOptions { mode, ..Default::default() }).to_string();
        let path = dir.join(format!("{id}.{}.p", mode.name()));
        if std::env::var_os("HOLEMBED_BLESS").is_some() {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &text).unwrap();
        }
        let golden = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(text, golden, "{id}");
    }
}

#[test]
fn export_writes_every_entry() {
    let dir = tempfile::tempdir().unwrap();
    let written = export_corpus(dir.path(), &ThfOptions::default()).unwrap();
    assert_eq!(written.len(), 2 * 46 + 11);
    for e in corpus_list() {
        let lgp = std::fs::read_to_string(dir.path().join(format!("{}.lgp", e.id))).unwrap();
        let reloaded = load(&holembed::logics::parse_problem(&lgp, &e.id).unwrap()).unwrap();
        assert_eq!(reloaded.expected, e.expected);
        assert!(dir.path().join(format!("{}.p", e.id)).exists());
    }
    assert!(dir.path().join("schema/s5-equiv-mb5.p").exists());
}
