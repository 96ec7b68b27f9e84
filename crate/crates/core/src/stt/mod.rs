//! Simply typed λ-calculus with the connectives `¬`, `∨`, `=α` and `Πα`.

mod normalize;
mod signature;
mod term;
mod types;

pub use normalize::{
    beta_eta_normalize, beta_normalize, eta_contract, has_beta_redex, has_eta_redex, is_normal,
    unfold_definitions, Unfolder,
};
pub use signature::{check_type, type_of, Signature, SignatureError, TypeError};
pub use term::{alpha_equal, fresh_name, substitute, Term};
pub use types::{Name, Type, BOOL, INDIVIDUAL, WORLD};
