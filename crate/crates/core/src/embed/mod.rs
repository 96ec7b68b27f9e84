//! Shallow embeddings of the source logics into simple type theory.

mod frames;
mod ipl;
mod problem;
mod qml;
mod rcc;

pub use frames::{
    add_frame_definition, axiom_system, barcan_problems, confluence_problem, correspondence_problem,
    frame_property, frame_property_type, frame_term, knowledge_belief_problem, modal_axiom, segerberg_problem,
    system_problem, AxiomSystem, Direction, SystemRelation,
};
pub use ipl::{build_ipl_problem, embed_ipl, godel_translate, ipl_const, ipl_signature, IPL_DEFINITIONS, IPL_RELATION};
pub use problem::{problem_from_source, NamedFormula, Origin, Problem};
pub use qml::{
    add_modal_definitions, embed_qml, m, modal_const, qml_signature, wrap_valid, ModalSignature, MODAL_DEFINITIONS,
};
pub use rcc::{connection, embed_fo, rcc_signature_and_definitions};

use crate::stt::{Name, SignatureError, TypeError};

#[derive(Debug, thiserror::Error)]
pub enum EmbedError {
    #[error("unknown {kind} `{name}`")]
    UnknownSymbol { kind: String, name: Name },
    #[error("`{name}` expects {expected} arguments, got {found}")]
    Arity { name: Name, expected: usize, found: usize },
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error("formula `{name}` is ill-typed: {source}")]
    Formula { name: String, source: TypeError },
    #[error("`{0}` is a builtin problem")]
    Builtin(String),
    #[error("{0}")]
    Malformed(String),
}

impl EmbedError {
    pub fn unknown(kind: &str, name: &str) -> Self {
        EmbedError::UnknownSymbol { kind: kind.to_string(), name: Name::from(name) }
    }
}
