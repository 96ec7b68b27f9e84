#![allow(dead_code)]

pub mod oracle;
pub mod terms;

use holembed::logics::{FoFormula, IplFormula, QmlFormula};
use proptest::prelude::*;

pub const IND_VARS: [&str; 3] = ["X", "Y", "Z"];
pub const PROP_VARS: [&str; 2] = ["P", "Q"];

fn qml_leaf() -> impl Strategy<Value = QmlFormula> {
    prop_oneof![
        1 => Just(QmlFormula::Top),
        1 => Just(QmlFormula::Bottom),
        2 => prop::sample::select(PROP_VARS.to_vec()).prop_map(QmlFormula::prop_var),
        2 => prop::sample::select(vec!["p", "q"]).prop_map(|p| QmlFormula::atom(p, &[])),
        3 => (prop::sample::select(IND_VARS.to_vec()), prop::sample::select(vec!["X", "Y", "a"]))
            .prop_map(|(x, y)| QmlFormula::atom("k", &[x, y])),
        2 => prop::sample::select(vec!["X", "Y", "Z", "a"]).prop_map(|x| QmlFormula::atom("h", &[x])),
    ]
}

/// QML formulas over indices `r`, `s`, predicates `p/0 q/0 h/1 k/2` and the
/// constant `a`. Individual variables may be free; see [`close_qml`].
pub fn qml_open(depth: u32) -> impl Strategy<Value = QmlFormula> {
    qml_leaf().prop_recursive(depth, 48, 2, |inner| {
        let idx = prop::sample::select(vec!["r", "s"]);
        prop_oneof![
            inner.clone().prop_map(QmlFormula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| QmlFormula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| QmlFormula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| QmlFormula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| QmlFormula::iff(a, b)),
            (idx.clone(), inner.clone()).prop_map(|(r, a)| QmlFormula::boxed(r, a)),
            (idx, inner.clone()).prop_map(|(r, a)| QmlFormula::diamond(r, a)),
            (prop::sample::select(IND_VARS.to_vec()), inner.clone()).prop_map(|(x, a)| QmlFormula::forall_ind(x, a)),
            (prop::sample::select(IND_VARS.to_vec()), inner.clone()).prop_map(|(x, a)| QmlFormula::exists_ind(x, a)),
            (prop::sample::select(PROP_VARS.to_vec()), inner.clone()).prop_map(|(p, a)| QmlFormula::forall_prop(p, a)),
            (prop::sample::select(PROP_VARS.to_vec()), inner).prop_map(|(p, a)| QmlFormula::exists_prop(p, a)),
        ]
    })
}

/// Binds every free individual variable at the top, and free propositional
/// variables too when `props` is set.
pub fn close_qml(f: QmlFormula, props: bool) -> QmlFormula {
    let (inds, ps) = f.free_vars();
    let mut out = f;
    if props {
        for p in ps.iter().rev() {
            out = QmlFormula::forall_prop(p, out);
        }
    }
    for x in inds.iter().rev() {
        out = QmlFormula::forall_ind(x, out);
    }
    out
}

pub fn qml_closed(depth: u32) -> impl Strategy<Value = QmlFormula> {
    qml_open(depth).prop_map(|f| close_qml(f, true))
}

/// Formulas whose individual variables are bound; propositional variables may be free.
pub fn qml_scoped(depth: u32) -> impl Strategy<Value = QmlFormula> {
    qml_open(depth).prop_map(|f| close_qml(f, false))
}

pub fn ipl(depth: u32) -> impl Strategy<Value = IplFormula> {
    let leaf = prop::sample::select(vec!["p", "q", "s"]).prop_map(IplFormula::atom);
    leaf.prop_recursive(depth, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(IplFormula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| IplFormula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| IplFormula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| IplFormula::and(a, b)),
        ]
    })
}

pub fn fo_closed(depth: u32) -> impl Strategy<Value = FoFormula> {
    let names = vec!["X", "Y", "a", "b"];
    let preds = vec!["c", "dc", "p", "eq", "o", "po", "ec", "pp", "tpp", "ntpp"];
    let leaf = (prop::sample::select(preds), prop::sample::select(names.clone()), prop::sample::select(names))
        .prop_map(|(p, x, y)| FoFormula::atom(p, &[x, y]));
    leaf.prop_recursive(depth, 32, 2, |inner| {
        let v = prop::sample::select(vec!["X", "Y"]);
        prop_oneof![
            inner.clone().prop_map(FoFormula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| FoFormula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| FoFormula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| FoFormula::implies(a, b)),
            (v.clone(), inner.clone()).prop_map(|(x, a)| FoFormula::forall(x, a)),
            (v, inner).prop_map(|(x, a)| FoFormula::exists(x, a)),
        ]
    })
    .prop_map(|f| FoFormula::forall("X", FoFormula::forall("Y", f)))
}
