mod common;

use holembed::logics::{parse_fo, parse_ipl, parse_problem, parse_qml, print_fo, print_ipl, print_qml};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn qml_round_trip(f in common::qml_scoped(4)) {
        let text = print_qml(&f);
        let back = parse_qml(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back, f);
    }

    #[test]
    fn ipl_round_trip(f in common::ipl(5)) {
        let text = print_ipl(&f);
        prop_assert_eq!(parse_ipl(&text).unwrap(), f);
    }

    #[test]
    fn fo_round_trip(f in common::fo_closed(4)) {
        let text = print_fo(&f);
        prop_assert_eq!(parse_fo(&text).unwrap(), f);
    }
}

proptest! {
    #[test]
    fn desugaring_reaches_the_core(f in common::qml_scoped(4)) {
        let d = f.desugar();
        prop_assert!(d.is_core());
        prop_assert_eq!(d.desugar(), d.clone());
    }

    #[test]
    fn garbage_is_rejected_with_a_position(s in "[a-zA-Z()&|~=>!?\\[\\]:, ]{0,24}") {
        if let Err(e) = parse_qml(&s) {
            prop_assert!(e.line == 1 && e.col >= 1 && e.col <= s.len() + 1);
        }
    }
}

#[test]
fn minimal_parentheses() {
    for (src, printed) in [
        ("(p & q) & r", "p & q & r"),
        ("p & (q & r)", "p & (q & r)"),
        ("p => (q => r)", "p => q => r"),
        ("(p => q) => r", "(p => q) => r"),
        ("~(p | q)", "~(p | q)"),
        ("(~p) | q", "~p | q"),
        ("[r] (p & q)", "[r] (p & q)"),
        ("(p <=> q) <=> r", "(p <=> q) <=> r"),
    ] {
        assert_eq!(print_qml(&parse_qml(src).unwrap()), printed, "{src}");
    }
}

#[test]
fn problem_files_round_trip_exactly() {
    let text = "\
# tiny
logic qml
index r
pred p/0
axiom [r] p
conjecture p => [r] p
expect countersatisfiable
";
    let src = parse_problem(text, "tiny").unwrap();
    assert_eq!(src.print(), text);
}
