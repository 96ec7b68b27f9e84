//! Finite semantics: Kripke models, standard models of simple type theory,
//! frame enumeration and bounded countermodel search.

mod compile;
mod frames;
mod kripke;
mod search;
mod standard;
mod value;

pub use frames::{check_frame_property, enumerate_frames, enumerate_frames_up_to_iso};
pub use kripke::{eval_qml, Extension, KripkeModel, QmlEnv, Relation, MAX_WORLDS};
pub use search::{
    bounded_validity, countermodel_search, countermodel_search_with, verify, BoundedVerdict, Bounds, Certificate,
    SearchOptions,
};
pub use standard::{describe_value, eval_stt, standard_model_of, Evaluator, StandardModel};
pub use value::{Func, Value, DOMAIN_LIMIT};

use crate::stt::Name;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("unknown {kind} `{name}`")]
    UnknownSymbol { kind: String, name: Name },
    #[error("no carrier for base type `{0}`")]
    CarrierMissing(Name),
    #[error("domain of {ty} has {size} elements")]
    DomainTooLarge { ty: String, size: u64 },
    #[error("search exceeded its budget of {budget} assignments")]
    BoundTooLarge { budget: u64 },
}

impl SemanticsError {
    pub fn unknown(kind: &str, name: &str) -> Self {
        SemanticsError::UnknownSymbol { kind: kind.to_string(), name: Name::from(name) }
    }
}

/// Plain-text rendering of a model: one line per carrier, then one line per
/// interpreted constant.
pub fn witness_text(model: &StandardModel) -> String {
    let mut out = String::new();
    for (b, n) in &model.carriers {
        out.push_str(&format!("carrier {b} {n}\n"));
    }
    for (c, v) in &model.interp {
        let ty = model.signature.constant_type(c).cloned().unwrap_or_else(crate::stt::Type::o);
        out.push_str(&format!("{c} = {}\n", describe_value(v, &ty, &model.carriers)));
    }
    out
}
