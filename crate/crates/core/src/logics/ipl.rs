use super::error::ParseError;
use super::lexer::Tok;
use super::parser::{print, BinOp, Declarations, PResult, Parser, Printable, Shape};
use crate::stt::Name;

/// Propositional intuitionistic formulas.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IplFormula {
    Atom(Name),
    Neg(Box<IplFormula>),
    Implies(Box<IplFormula>, Box<IplFormula>),
    Or(Box<IplFormula>, Box<IplFormula>),
    And(Box<IplFormula>, Box<IplFormula>),
}

impl IplFormula {
    pub fn atom(p: &str) -> Self {
        IplFormula::Atom(Name::from(p))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Self) -> Self {
        IplFormula::Neg(Box::new(a))
    }

    pub fn implies(a: Self, b: Self) -> Self {
        IplFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn or(a: Self, b: Self) -> Self {
        IplFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Self, b: Self) -> Self {
        IplFormula::And(Box::new(a), Box::new(b))
    }

    /// Atoms in order of first occurrence.
    pub fn atoms(&self) -> Vec<Name> {
        fn go(f: &IplFormula, out: &mut Vec<Name>) {
            match f {
                IplFormula::Atom(p) => {
                    if !out.contains(p) {
                        out.push(p.clone());
                    }
                }
                IplFormula::Neg(a) => go(a, out),
                IplFormula::Implies(a, b) | IplFormula::Or(a, b) | IplFormula::And(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    pub fn size(&self) -> usize {
        match self {
            IplFormula::Atom(_) => 1,
            IplFormula::Neg(a) => 1 + a.size(),
            IplFormula::Implies(a, b) | IplFormula::Or(a, b) | IplFormula::And(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl Printable for IplFormula {
    fn shape(&self) -> Shape<'_, Self> {
        match self {
            IplFormula::Atom(p) => Shape::Atom(p.to_string()),
            IplFormula::Neg(a) => Shape::Prefix("~".into(), a),
            IplFormula::Implies(a, b) => Shape::Binary(BinOp::Implies, a, b),
            IplFormula::Or(a, b) => Shape::Binary(BinOp::Or, a, b),
            IplFormula::And(a, b) => Shape::Binary(BinOp::And, a, b),
        }
    }
}

impl std::fmt::Display for IplFormula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print(self))
    }
}

pub fn print_ipl(f: &IplFormula) -> String {
    print(f)
}

pub fn parse_ipl(text: &str) -> Result<IplFormula, ParseError> {
    parse_ipl_with(text, &Declarations::default(), 1, 1)
}

/// Atoms must be declared as 0-ary predicates when `decls.preds` is set.
pub fn parse_ipl_with(text: &str, decls: &Declarations, line: usize, col: usize) -> Result<IplFormula, ParseError> {
    let mut p = Parser::new(text, line, col, decls)?;
    p.iff = false;
    p.finish(unary, mk)
}

fn mk(op: BinOp, a: IplFormula, b: IplFormula) -> IplFormula {
    match op {
        BinOp::And => IplFormula::and(a, b),
        BinOp::Or => IplFormula::or(a, b),
        BinOp::Implies => IplFormula::implies(a, b),
        BinOp::Iff => unreachable!("`<=>` is not part of the propositional grammar"),
    }
}

fn unary(p: &mut Parser<'_>) -> PResult<IplFormula> {
    match p.peek().clone() {
        Tok::Tilde => {
            p.bump();
            Ok(IplFormula::neg(unary(p)?))
        }
        Tok::LParen => p.parenthesized(unary, mk),
        Tok::Lower(a) => {
            p.bump();
            if let Some(preds) = &p.decls.preds {
                if preds.get(a.as_str()) != Some(&0) {
                    return Err(p.error_prev("declared atom", format!("undeclared atom `{a}`")));
                }
            }
            Ok(IplFormula::Atom(Name::from(a)))
        }
        _ => Err(p.error(&["`~`", "`(`", "atom"])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = || IplFormula::atom("p");
        assert_eq!(
            parse_ipl("~ ~ p => p").unwrap(),
            IplFormula::implies(IplFormula::neg(IplFormula::neg(p())), p())
        );
        assert_eq!(parse_ipl("p | ~p").unwrap(), IplFormula::or(p(), IplFormula::neg(p())));
        assert_eq!(print_ipl(&parse_ipl("~ ~ p => p").unwrap()), "~~p => p");
    }

    #[test]
    fn rejections_carry_positions() {
        let e = parse_ipl("p <=> q").unwrap_err();
        assert_eq!((e.line, e.col), (1, 3));
        let e = parse_ipl("p & (q").unwrap_err();
        assert_eq!(e.col, 7);
        assert!(parse_ipl("P").is_err());
    }
}
