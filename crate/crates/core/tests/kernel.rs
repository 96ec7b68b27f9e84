//! Kernel invariants over random well-typed terms.

mod common;

use common::terms::{self, random_term, signature};
use holembed::stt::{has_beta_redex, Term};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(10_000) }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn generated_terms_are_well_typed(seed in any::<u64>()) {
        terms::well_typed(seed)?;
    }

    #[test]
    fn normalization_preserves_types(seed in any::<u64>()) {
        terms::normalization_preserves_types(seed)?;
    }

    #[test]
    fn normalization_is_idempotent(seed in any::<u64>()) {
        terms::normalization_is_idempotent(seed)?;
    }

    #[test]
    fn substitution_preserves_types(seed in any::<u64>()) {
        terms::substitution_preserves_types(seed)?;
    }

    #[test]
    fn substitution_commutes_with_beta(seed in any::<u64>()) {
        terms::substitution_commutes_with_beta(seed)?;
    }
}

#[test]
fn valid_box_exists_prop_unfolds() {
    terms::valid_box_exists_prop_unfolds().unwrap();
}

#[test]
fn generator_produces_redexes() {
    let sig = signature();
    let terms: Vec<Term> = (0..2000).map(|s| random_term(s, &sig).0).collect();
    let redexes = terms.iter().filter(|t| has_beta_redex(t)).count();
    let big = terms.iter().filter(|t| t.size() >= 8).count();
    println!("{redexes} with β-redexes, {big} of size ≥ 8");
    assert!(redexes > 400 && big > 600);
}
