//! Direct Kripke evaluation against the evaluated embedding.

use holembed::embed::{embed_qml, ModalSignature};
use holembed::logics::{print_qml, QmlFormula};
use holembed::semantics::{eval_qml, standard_model_of, Evaluator, KripkeModel, QmlEnv, Relation};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PREDS: [&str; 2] = ["h", "g"];

/// Nesting depth, counting every connective, modality and binder.
pub fn depth(f: &QmlFormula) -> usize {
    f.children().into_iter().map(|c| depth(c) + 1).max().unwrap_or(0)
}

fn leaf() -> impl Strategy<Value = QmlFormula> {
    prop_oneof![
        1 => Just(QmlFormula::Top),
        1 => Just(QmlFormula::Bottom),
        3 => Just(QmlFormula::prop_var("p")),
        2 => Just(QmlFormula::prop_var("P")),
        4 => (prop::sample::select(PREDS.to_vec()), prop::sample::select(vec!["X", "Y"]))
            .prop_map(|(k, x)| QmlFormula::atom(k, &[x])),
    ]
}

fn formula() -> impl Strategy<Value = QmlFormula> {
    leaf().prop_recursive(3, 16, 2, |inner| {
        let x = prop::sample::select(vec!["X", "Y"]);
        prop_oneof![
            2 => inner.clone().prop_map(QmlFormula::neg),
            1 => (inner.clone(), inner.clone()).prop_map(|(a, b)| QmlFormula::or(a, b)),
            1 => (inner.clone(), inner.clone()).prop_map(|(a, b)| QmlFormula::and(a, b)),
            1 => (inner.clone(), inner.clone()).prop_map(|(a, b)| QmlFormula::implies(a, b)),
            1 => (inner.clone(), inner.clone()).prop_map(|(a, b)| QmlFormula::iff(a, b)),
            3 => inner.clone().prop_map(|a| QmlFormula::boxed("r", a)),
            3 => inner.clone().prop_map(|a| QmlFormula::diamond("r", a)),
            2 => (x.clone(), inner.clone()).prop_map(|(x, a)| QmlFormula::forall_ind(x, a)),
            2 => (x, inner.clone()).prop_map(|(x, a)| QmlFormula::exists_ind(x, a)),
            1 => inner.clone().prop_map(|a| QmlFormula::forall_prop("P", a)),
            1 => inner.prop_map(|a| QmlFormula::exists_prop("P", a)),
        ]
    })
}

/// `n` distinct closed formulas of depth at most 3 over the index `r`, the
/// unary predicates `h`, `g` and the propositional constant `p`.
pub fn formulas(n: usize, seed: u8) -> Vec<QmlFormula> {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    let strategy = formula().prop_map(|f| super::close_qml(f, true));
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    while out.len() < n {
        let f = strategy.new_tree(&mut runner).expect("strategy").current();
        if depth(&f) <= 3 && seen.insert(print_qml(&f)) {
            out.push(f);
        }
    }
    out
}

pub fn signature() -> ModalSignature {
    let mut msig = ModalSignature::new();
    msig.add_index("r").unwrap();
    for k in PREDS {
        msig.add_pred(k, 1).unwrap();
    }
    msig.add_prop("p").unwrap();
    msig
}

fn model(worlds: usize, individuals: usize, r: u64, h: u64, g: u64, p: u64) -> KripkeModel {
    let mut km = KripkeModel::new(worlds, individuals)
        .with_relation("r", Relation::from_mask(worlds, r))
        .with_predicate("h", 1)
        .with_predicate("g", 1)
        .with_prop("p", p);
    km.set_pred_bits("h", h);
    km.set_pred_bits("g", g);
    km
}

/// Every model with at most 2 worlds and 2 individuals, grouped by size.
pub fn all_small_models() -> Vec<Vec<KripkeModel>> {
    let mut groups = Vec::new();
    for worlds in 1..=2 {
        for individuals in 1..=2 {
            let ext = 1u64 << (worlds * individuals);
            let mut ms = Vec::new();
            for r in 0..1u64 << (worlds * worlds) {
                for h in 0..ext {
                    for g in 0..ext {
                        for p in 0..1u64 << worlds {
                            ms.push(model(worlds, individuals, r, h, g, p));
                        }
                    }
                }
            }
            groups.push(ms);
        }
    }
    groups
}

/// `count` random models on `worlds` worlds, grouped by individual count.
pub fn random_models(count: usize, worlds: usize, seed: u64) -> Vec<Vec<KripkeModel>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut groups = vec![Vec::new(), Vec::new()];
    for _ in 0..count {
        let d = rng.gen_range(1..=2);
        let bits = |rng: &mut ChaCha8Rng, n: usize| rng.gen::<u64>() & ((1 << n) - 1);
        let m = model(
            worlds,
            d,
            bits(&mut rng, worlds * worlds),
            bits(&mut rng, worlds * d),
            bits(&mut rng, worlds * d),
            bits(&mut rng, worlds),
        );
        groups[d - 1].push(m);
    }
    groups
}

/// Compares both semantics at every world of every model; returns the number
/// of comparisons.
pub fn agree(fs: &[QmlFormula], groups: &[Vec<KripkeModel>]) -> Result<usize, String> {
    let msig = signature();
    let terms: Vec<_> = fs.iter().map(|f| embed_qml(f, &msig).expect("embeds")).collect();
    let mut checked = 0;
    for group in groups {
        let evs: Vec<_> = terms.iter().map(|t| Evaluator::new(&msig.signature, t)).collect();
        for km in group {
            let sm = standard_model_of(km);
            for (f, ev) in fs.iter().zip(&evs) {
                let v = ev.eval(&sm).map_err(|e| e.to_string())?;
                for w in 0..km.worlds {
                    let direct = eval_qml(km, w, &QmlEnv::default(), f).map_err(|e| e.to_string())?;
                    if v.at(w).as_bool() != direct {
                        return Err(format!("`{}` at w{w} of {km:?}: embedding {}, direct {direct}", print_qml(f), !direct));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}
