//! Source logics: quantified multimodal logic, intuitionistic propositional
//! logic and first-order region formulas, with parsers and printers.

mod error;
mod fo;
mod ipl;
mod lexer;
mod parser;
mod qml;
mod source;

pub use error::ParseError;
pub use fo::{parse_fo, parse_fo_with, print_fo, FoFormula, FoTerm, RCC_PREDICATES};
pub use ipl::{parse_ipl, parse_ipl_with, print_ipl, IplFormula};
pub use parser::Declarations;
pub use qml::{is_variable, parse_qml, parse_qml_with, print_qml, QmlFormula};
pub use source::{
    parse_problem, Expectation, FreeKind, IplMode, Logic, ProblemSource, SourceFormula, REGION,
};
