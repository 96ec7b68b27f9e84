mod common;

use std::time::Instant;

use common::oracle::{agree, all_small_models, depth, formulas, random_models};

#[test]
fn embedding_agrees_with_kripke_semantics() {
    let start = Instant::now();
    let fs = formulas(200, 11);
    assert!(fs.iter().all(|f| depth(f) <= 3));
    let small = agree(&fs, &all_small_models()).unwrap();
    let random = agree(&fs, &random_models(1000, 3, 11)).unwrap();
    println!("{small} + {random} comparisons in {:.1?}", start.elapsed());
}

#[test]
fn oracle_sample_exercises_every_operator() {
    use holembed::logics::QmlFormula as F;
    let fs = formulas(200, 11);
    let count = |pred: &dyn Fn(&F) -> bool| {
        fs.iter()
            .filter(|f| {
                let mut hit = false;
                f.walk(&mut |g| hit |= pred(g));
                hit
            })
            .count()
    };
    let modal = count(&|g| matches!(g, F::Box(..) | F::Diamond(..)));
    let ind = count(&|g| matches!(g, F::ForallInd(..) | F::ExistsInd(..)));
    let prop = count(&|g| matches!(g, F::ForallProp(..) | F::ExistsProp(..)));
    let deep = fs.iter().filter(|f| depth(f) == 3).count();
    println!("modal {modal}, individual quantifiers {ind}, propositional quantifiers {prop}, depth 3: {deep}");
    assert!(modal >= 80 && ind >= 40 && prop >= 20 && deep >= 60);
}
