//! TPTP THF0 output, SZS status parsing and an external prover bridge.

mod emit;
mod lint;
mod prover;

pub use emit::{declared_symbols, emit_thf, EmitMode, Role, ThfDocument, ThfOptions, ThfStatement};
pub use lint::{lint, LintError};
pub use prover::{parse_szs, run_prover, ProverConfig, ProverError, ProverResult, SzsStatus, PROVER_ENV};
