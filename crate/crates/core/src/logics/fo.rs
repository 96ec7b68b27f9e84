use super::error::ParseError;
use super::lexer::Tok;
use super::parser::{print, BinOp, Declarations, PResult, Parser, Printable, Shape, VarKind};
use crate::stt::Name;

/// The connection relation followed by the relations defined from it.
pub const RCC_PREDICATES: [&str; 10] = ["c", "dc", "p", "eq", "o", "po", "ec", "pp", "tpp", "ntpp"];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FoTerm {
    Const(Name),
    Var(Name),
}

impl FoTerm {
    pub fn name(&self) -> &Name {
        match self {
            FoTerm::Const(n) | FoTerm::Var(n) => n,
        }
    }
}

/// One-sorted first-order formulas over regions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FoFormula {
    Atom(Name, Vec<FoTerm>),
    Neg(Box<FoFormula>),
    Or(Box<FoFormula>, Box<FoFormula>),
    And(Box<FoFormula>, Box<FoFormula>),
    Implies(Box<FoFormula>, Box<FoFormula>),
    Forall(Name, Box<FoFormula>),
    Exists(Name, Box<FoFormula>),
}

impl FoFormula {
    /// Atom whose uppercase arguments are variables.
    pub fn atom(pred: &str, args: &[&str]) -> Self {
        let args = args
            .iter()
            .map(|a| {
                if a.starts_with(|c: char| c.is_ascii_uppercase()) {
                    FoTerm::Var(Name::from(*a))
                } else {
                    FoTerm::Const(Name::from(*a))
                }
            })
            .collect();
        FoFormula::Atom(Name::from(pred), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Self) -> Self {
        FoFormula::Neg(Box::new(a))
    }

    pub fn or(a: Self, b: Self) -> Self {
        FoFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Self, b: Self) -> Self {
        FoFormula::And(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Self, b: Self) -> Self {
        FoFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(x: &str, a: Self) -> Self {
        FoFormula::Forall(Name::from(x), Box::new(a))
    }

    pub fn exists(x: &str, a: Self) -> Self {
        FoFormula::Exists(Name::from(x), Box::new(a))
    }

    pub fn constants(&self) -> Vec<Name> {
        let mut out = Vec::new();
        self.walk(&mut |f| {
            if let FoFormula::Atom(_, args) = f {
                for a in args {
                    if let FoTerm::Const(c) = a {
                        if !out.contains(c) {
                            out.push(c.clone());
                        }
                    }
                }
            }
        });
        out
    }

    pub fn predicates(&self) -> Vec<(Name, usize)> {
        let mut out: Vec<(Name, usize)> = Vec::new();
        self.walk(&mut |f| {
            if let FoFormula::Atom(p, args) = f {
                if !out.iter().any(|(q, _)| q == p) {
                    out.push((p.clone(), args.len()));
                }
            }
        });
        out
    }

    pub fn walk<F: FnMut(&FoFormula)>(&self, f: &mut F) {
        f(self);
        match self {
            FoFormula::Atom(..) => {}
            FoFormula::Neg(a) | FoFormula::Forall(_, a) | FoFormula::Exists(_, a) => a.walk(f),
            FoFormula::Or(a, b) | FoFormula::And(a, b) | FoFormula::Implies(a, b) => {
                a.walk(f);
                b.walk(f);
            }
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }
}

impl Printable for FoFormula {
    fn shape(&self) -> Shape<'_, Self> {
        match self {
            FoFormula::Atom(p, args) if args.is_empty() => Shape::Atom(p.to_string()),
            FoFormula::Atom(p, args) => {
                let args: Vec<&str> = args.iter().map(|a| &**a.name()).collect();
                Shape::Atom(format!("{p}({})", args.join(", ")))
            }
            FoFormula::Neg(a) => Shape::Prefix("~".into(), a),
            FoFormula::Or(a, b) => Shape::Binary(BinOp::Or, a, b),
            FoFormula::And(a, b) => Shape::Binary(BinOp::And, a, b),
            FoFormula::Implies(a, b) => Shape::Binary(BinOp::Implies, a, b),
            FoFormula::Forall(x, a) => Shape::Prefix(format!("![{x}]: "), a),
            FoFormula::Exists(x, a) => Shape::Prefix(format!("?[{x}]: "), a),
        }
    }
}

impl std::fmt::Display for FoFormula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print(self))
    }
}

pub fn print_fo(f: &FoFormula) -> String {
    print(f)
}

pub fn parse_fo(text: &str) -> Result<FoFormula, ParseError> {
    parse_fo_with(text, &Declarations::default(), 1, 1)
}

pub fn parse_fo_with(text: &str, decls: &Declarations, line: usize, col: usize) -> Result<FoFormula, ParseError> {
    let mut p = Parser::new(text, line, col, decls)?;
    p.iff = false;
    p.finish(unary, mk)
}

fn mk(op: BinOp, a: FoFormula, b: FoFormula) -> FoFormula {
    match op {
        BinOp::And => FoFormula::and(a, b),
        BinOp::Or => FoFormula::or(a, b),
        BinOp::Implies => FoFormula::implies(a, b),
        BinOp::Iff => unreachable!("`<=>` is not part of the first-order grammar"),
    }
}

fn unary(p: &mut Parser<'_>) -> PResult<FoFormula> {
    match p.peek().clone() {
        Tok::Tilde => {
            p.bump();
            Ok(FoFormula::neg(unary(p)?))
        }
        Tok::LParen => p.parenthesized(unary, mk),
        Tok::Bang | Tok::Question => {
            let universal = p.bump() == Tok::Bang;
            let binders = p.binder_list(false)?;
            let depth = p.scope.len();
            p.scope.extend(binders.iter().cloned());
            let body = unary(p);
            p.scope.truncate(depth);
            let mut f = body?;
            for (v, _) in binders.into_iter().rev() {
                f = if universal {
                    FoFormula::Forall(v, Box::new(f))
                } else {
                    FoFormula::Exists(v, Box::new(f))
                };
            }
            Ok(f)
        }
        Tok::Lower(k) => {
            let at = p.here();
            p.bump();
            let k = Name::from(k);
            let mut args = Vec::new();
            if *p.peek() == Tok::LParen {
                p.bump();
                loop {
                    args.push(term(p)?);
                    match p.peek() {
                        Tok::Comma => {
                            p.bump();
                        }
                        Tok::RParen => {
                            p.bump();
                            break;
                        }
                        _ => return Err(p.error(&["`,`", "`)`"])),
                    }
                }
            }
            if let Some(preds) = &p.decls.preds {
                match preds.get(&k) {
                    None => return Err(p.error_at(at, &k, "declared predicate", format!("undeclared predicate `{k}`"))),
                    Some(&n) if n != args.len() => {
                        return Err(p.error_at(
                            at,
                            &k,
                            "declared predicate",
                            format!("predicate `{k}` has arity {n}, applied to {}", args.len()),
                        ))
                    }
                    _ => {}
                }
            }
            Ok(FoFormula::Atom(k, args))
        }
        _ => Err(p.error(&["`~`", "`(`", "`!`", "`?`", "predicate"])),
    }
}

fn term(p: &mut Parser<'_>) -> PResult<FoTerm> {
    match p.peek().clone() {
        Tok::Upper(v) => {
            p.bump();
            if p.lookup(&v) != Some(VarKind::Ind) && !p.decls.free_inds.contains(v.as_str()) {
                return Err(p.error_prev("bound variable", format!("unbound variable `{v}`")));
            }
            Ok(FoTerm::Var(Name::from(v)))
        }
        Tok::Lower(c) => {
            p.bump();
            if let Some(cs) = &p.decls.consts {
                if !cs.contains(c.as_str()) {
                    return Err(p.error_prev("declared constant", format!("undeclared constant `{c}`")));
                }
            }
            Ok(FoTerm::Const(Name::from(c)))
        }
        _ => Err(p.error(&["variable", "constant"])),
    }
}
