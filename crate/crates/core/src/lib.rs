//! Shallow embeddings of quantified multimodal logic, intuitionistic logic and
//! region connection calculus into simple type theory, with a finite
//! standard-model checker and THF output.

pub mod corpus;
pub mod embed;
pub mod frames;
pub mod logics;
pub mod semantics;
pub mod stt;
pub mod thf;
