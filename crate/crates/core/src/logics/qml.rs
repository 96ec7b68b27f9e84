use std::collections::BTreeSet;

use super::error::ParseError;
use super::lexer::Tok;
use super::parser::{print, BinOp, Declarations, PResult, Parser, Printable, Shape, VarKind};
use crate::stt::Name;

/// Quantified multimodal formulas. Uppercase atom arguments are individual
/// variables, lowercase ones are individual constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QmlFormula {
    Top,
    Bottom,
    PropVar(Name),
    Atom(Name, Vec<Name>),
    Neg(Box<QmlFormula>),
    Or(Box<QmlFormula>, Box<QmlFormula>),
    And(Box<QmlFormula>, Box<QmlFormula>),
    Implies(Box<QmlFormula>, Box<QmlFormula>),
    Iff(Box<QmlFormula>, Box<QmlFormula>),
    Box(Name, Box<QmlFormula>),
    Diamond(Name, Box<QmlFormula>),
    ForallInd(Name, Box<QmlFormula>),
    ExistsInd(Name, Box<QmlFormula>),
    ForallProp(Name, Box<QmlFormula>),
    ExistsProp(Name, Box<QmlFormula>),
}

pub fn is_variable(name: &str) -> bool {
    name.starts_with(|c: char| c.is_ascii_uppercase())
}

impl QmlFormula {
    pub fn atom(pred: &str, args: &[&str]) -> Self {
        QmlFormula::Atom(Name::from(pred), args.iter().map(|a| Name::from(*a)).collect())
    }

    pub fn prop_var(name: &str) -> Self {
        QmlFormula::PropVar(Name::from(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Self) -> Self {
        QmlFormula::Neg(Box::new(a))
    }

    pub fn or(a: Self, b: Self) -> Self {
        QmlFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Self, b: Self) -> Self {
        QmlFormula::And(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Self, b: Self) -> Self {
        QmlFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Self, b: Self) -> Self {
        QmlFormula::Iff(Box::new(a), Box::new(b))
    }

    pub fn boxed(r: &str, a: Self) -> Self {
        QmlFormula::Box(Name::from(r), Box::new(a))
    }

    pub fn diamond(r: &str, a: Self) -> Self {
        QmlFormula::Diamond(Name::from(r), Box::new(a))
    }

    pub fn forall_ind(x: &str, a: Self) -> Self {
        QmlFormula::ForallInd(Name::from(x), Box::new(a))
    }

    pub fn exists_ind(x: &str, a: Self) -> Self {
        QmlFormula::ExistsInd(Name::from(x), Box::new(a))
    }

    pub fn forall_prop(p: &str, a: Self) -> Self {
        QmlFormula::ForallProp(Name::from(p), Box::new(a))
    }

    pub fn exists_prop(p: &str, a: Self) -> Self {
        QmlFormula::ExistsProp(Name::from(p), Box::new(a))
    }

    /// Rewrites every derived connective into `Neg`, `Or`, `Box`,
    /// `ForallInd` and `ForallProp`. `Top` stays primitive; `Bottom` becomes `¬⊤`.
    pub fn desugar(&self) -> QmlFormula {
        use QmlFormula as F;
        let d = |f: &QmlFormula| Box::new(f.desugar());
        let neg = |f: QmlFormula| F::Neg(Box::new(f));
        match self {
            F::Top | F::PropVar(_) | F::Atom(..) => self.clone(),
            F::Bottom => neg(F::Top),
            F::Neg(a) => F::Neg(d(a)),
            F::Or(a, b) => F::Or(d(a), d(b)),
            F::And(a, b) => neg(F::Or(Box::new(neg(a.desugar())), Box::new(neg(b.desugar())))),
            F::Implies(a, b) => F::Or(Box::new(neg(a.desugar())), d(b)),
            F::Iff(a, b) => {
                let (a, b) = (a.desugar(), b.desugar());
                let ab = F::Or(Box::new(neg(a.clone())), Box::new(b.clone()));
                let ba = F::Or(Box::new(neg(b)), Box::new(a));
                neg(F::Or(Box::new(neg(ab)), Box::new(neg(ba))))
            }
            F::Box(r, a) => F::Box(r.clone(), d(a)),
            F::Diamond(r, a) => neg(F::Box(r.clone(), Box::new(neg(a.desugar())))),
            F::ForallInd(x, a) => F::ForallInd(x.clone(), d(a)),
            F::ExistsInd(x, a) => neg(F::ForallInd(x.clone(), Box::new(neg(a.desugar())))),
            F::ForallProp(p, a) => F::ForallProp(p.clone(), d(a)),
            F::ExistsProp(p, a) => neg(F::ForallProp(p.clone(), Box::new(neg(a.desugar())))),
        }
    }

    pub fn is_core(&self) -> bool {
        use QmlFormula as F;
        match self {
            F::Top | F::PropVar(_) | F::Atom(..) => true,
            F::Neg(a) | F::Box(_, a) | F::ForallInd(_, a) | F::ForallProp(_, a) => a.is_core(),
            F::Or(a, b) => a.is_core() && b.is_core(),
            _ => false,
        }
    }

    pub fn children(&self) -> Vec<&QmlFormula> {
        use QmlFormula as F;
        match self {
            F::Top | F::Bottom | F::PropVar(_) | F::Atom(..) => vec![],
            F::Neg(a)
            | F::Box(_, a)
            | F::Diamond(_, a)
            | F::ForallInd(_, a)
            | F::ExistsInd(_, a)
            | F::ForallProp(_, a)
            | F::ExistsProp(_, a) => vec![a],
            F::Or(a, b) | F::And(a, b) | F::Implies(a, b) | F::Iff(a, b) => vec![a, b],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(|c| c.size()).sum::<usize>()
    }

    /// Box and diamond indices in order of first occurrence.
    pub fn indices(&self) -> Vec<Name> {
        let mut out = Vec::new();
        self.walk(&mut |f| {
            if let QmlFormula::Box(r, _) | QmlFormula::Diamond(r, _) = f {
                if !out.contains(r) {
                    out.push(r.clone());
                }
            }
        });
        out
    }

    /// Predicate symbols with arities, in order of first occurrence.
    pub fn predicates(&self) -> Vec<(Name, usize)> {
        let mut out: Vec<(Name, usize)> = Vec::new();
        self.walk(&mut |f| {
            if let QmlFormula::Atom(p, args) = f {
                if !out.iter().any(|(q, _)| q == p) {
                    out.push((p.clone(), args.len()));
                }
            }
        });
        out
    }

    /// Individual constants (lowercase atom arguments).
    pub fn individual_constants(&self) -> Vec<Name> {
        let mut out = Vec::new();
        self.walk(&mut |f| {
            if let QmlFormula::Atom(_, args) = f {
                for a in args {
                    if !is_variable(a) && !out.contains(a) {
                        out.push(a.clone());
                    }
                }
            }
        });
        out
    }

    /// Free individual and propositional variables.
    pub fn free_vars(&self) -> (BTreeSet<Name>, BTreeSet<Name>) {
        let mut inds = BTreeSet::new();
        let mut props = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut inds, &mut props);
        (inds, props)
    }

    fn collect_free(&self, bound: &mut Vec<(Name, VarKind)>, inds: &mut BTreeSet<Name>, props: &mut BTreeSet<Name>) {
        use QmlFormula as F;
        let is_bound = |bound: &Vec<(Name, VarKind)>, n: &Name, k| bound.iter().rev().find(|(m, _)| m == n).map(|b| b.1) == Some(k);
        match self {
            F::PropVar(p) => {
                if !is_bound(bound, p, VarKind::Prop) {
                    props.insert(p.clone());
                }
            }
            F::Atom(_, args) => {
                for a in args.iter().filter(|a| is_variable(a)) {
                    if !is_bound(bound, a, VarKind::Ind) {
                        inds.insert(a.clone());
                    }
                }
            }
            F::ForallInd(x, a) | F::ExistsInd(x, a) => {
                bound.push((x.clone(), VarKind::Ind));
                a.collect_free(bound, inds, props);
                bound.pop();
            }
            F::ForallProp(p, a) | F::ExistsProp(p, a) => {
                bound.push((p.clone(), VarKind::Prop));
                a.collect_free(bound, inds, props);
                bound.pop();
            }
            _ => {
                for c in self.children() {
                    c.collect_free(bound, inds, props);
                }
            }
        }
    }

    pub fn walk<F: FnMut(&QmlFormula)>(&self, f: &mut F) {
        f(self);
        for c in self.children() {
            c.walk(f);
        }
    }
}

impl Printable for QmlFormula {
    fn shape(&self) -> Shape<'_, Self> {
        use QmlFormula as F;
        match self {
            F::Top => Shape::Atom("$true".into()),
            F::Bottom => Shape::Atom("$false".into()),
            F::PropVar(p) => Shape::Atom(p.to_string()),
            F::Atom(p, args) if args.is_empty() => Shape::Atom(p.to_string()),
            F::Atom(p, args) => Shape::Atom(format!("{p}({})", args.join(", "))),
            F::Neg(a) => Shape::Prefix("~".into(), a),
            F::Or(a, b) => Shape::Binary(BinOp::Or, a, b),
            F::And(a, b) => Shape::Binary(BinOp::And, a, b),
            F::Implies(a, b) => Shape::Binary(BinOp::Implies, a, b),
            F::Iff(a, b) => Shape::Binary(BinOp::Iff, a, b),
            F::Box(r, a) => Shape::Prefix(format!("[{r}] "), a),
            F::Diamond(r, a) => Shape::Prefix(format!("<{r}> "), a),
            F::ForallInd(x, a) => Shape::Prefix(format!("![{x}]: "), a),
            F::ExistsInd(x, a) => Shape::Prefix(format!("?[{x}]: "), a),
            F::ForallProp(p, a) => Shape::Prefix(format!("![{p}:$prop]: "), a),
            F::ExistsProp(p, a) => Shape::Prefix(format!("?[{p}:$prop]: "), a),
        }
    }
}

impl std::fmt::Display for QmlFormula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print(self))
    }
}

pub fn print_qml(f: &QmlFormula) -> String {
    print(f)
}

/// Parses with no declarations: any index, predicate or constant is
/// accepted, but individual variables must be bound.
pub fn parse_qml(text: &str) -> Result<QmlFormula, ParseError> {
    parse_qml_with(text, &Declarations::default(), 1, 1)
}

pub fn parse_qml_with(text: &str, decls: &Declarations, line: usize, col: usize) -> Result<QmlFormula, ParseError> {
    let mut p = Parser::new(text, line, col, decls)?;
    p.finish(unary, mk)
}

fn mk(op: BinOp, a: QmlFormula, b: QmlFormula) -> QmlFormula {
    match op {
        BinOp::And => QmlFormula::and(a, b),
        BinOp::Or => QmlFormula::or(a, b),
        BinOp::Implies => QmlFormula::implies(a, b),
        BinOp::Iff => QmlFormula::iff(a, b),
    }
}

const UNARY_START: &[&str] = &[
    "`~`", "`[`", "`<`", "`!`", "`?`", "`(`", "`$true`", "`$false`", "predicate", "variable",
];

fn index(p: &mut Parser<'_>) -> PResult<Name> {
    let r = p.lower("modal index")?;
    if let Some(ix) = &p.decls.indices {
        if !ix.contains(&r) {
            return Err(p.error_prev("declared index", format!("undeclared modal index `{r}`")));
        }
    }
    Ok(r)
}

fn unary(p: &mut Parser<'_>) -> PResult<QmlFormula> {
    match p.peek().clone() {
        Tok::Tilde => {
            p.bump();
            Ok(QmlFormula::neg(unary(p)?))
        }
        Tok::LBracket => {
            p.bump();
            let r = index(p)?;
            p.expect(Tok::RBracket)?;
            Ok(QmlFormula::Box(r, Box::new(unary(p)?)))
        }
        Tok::Lt => {
            p.bump();
            let r = index(p)?;
            p.expect(Tok::Gt)?;
            Ok(QmlFormula::Diamond(r, Box::new(unary(p)?)))
        }
        Tok::Bang | Tok::Question => {
            let universal = p.bump() == Tok::Bang;
            let binders = p.binder_list(true)?;
            let depth = p.scope.len();
            p.scope.extend(binders.iter().cloned());
            let body = unary(p);
            p.scope.truncate(depth);
            let mut f = body?;
            for (v, kind) in binders.into_iter().rev() {
                let b = Box::new(f);
                f = match (universal, kind) {
                    (true, VarKind::Ind) => QmlFormula::ForallInd(v, b),
                    (false, VarKind::Ind) => QmlFormula::ExistsInd(v, b),
                    (true, VarKind::Prop) => QmlFormula::ForallProp(v, b),
                    (false, VarKind::Prop) => QmlFormula::ExistsProp(v, b),
                };
            }
            Ok(f)
        }
        Tok::LParen => p.parenthesized(unary, mk),
        Tok::Dollar(d) if d == "true" => {
            p.bump();
            Ok(QmlFormula::Top)
        }
        Tok::Dollar(d) if d == "false" => {
            p.bump();
            Ok(QmlFormula::Bottom)
        }
        Tok::Upper(v) => {
            p.bump();
            match p.lookup(&v) {
                Some(VarKind::Prop) => {}
                Some(VarKind::Ind) => {
                    return Err(p.error_prev(
                        "propositional variable",
                        format!("`{v}` is bound as an individual variable"),
                    ))
                }
                None if p.decls.strict_props && !p.decls.free_props.contains(v.as_str()) => {
                    return Err(p.error_prev("bound variable", format!("unbound propositional variable `{v}`")))
                }
                None => {}
            }
            Ok(QmlFormula::PropVar(Name::from(v)))
        }
        Tok::Lower(k) => {
            let at = p.here();
            p.bump();
            let k = Name::from(k);
            let mut args = Vec::new();
            if *p.peek() == Tok::LParen {
                p.bump();
                loop {
                    args.push(argument(p)?);
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
            Ok(QmlFormula::Atom(k, args))
        }
        _ => Err(p.error(UNARY_START)),
    }
}

fn argument(p: &mut Parser<'_>) -> PResult<Name> {
    match p.peek().clone() {
        Tok::Upper(v) => {
            p.bump();
            match p.lookup(&v) {
                Some(VarKind::Ind) => {}
                Some(VarKind::Prop) => {
                    return Err(p.error_prev(
                        "individual variable",
                        format!("`{v}` is bound as a propositional variable"),
                    ))
                }
                None if p.decls.free_inds.contains(v.as_str()) => {}
                None => return Err(p.error_prev("bound variable", format!("unbound individual variable `{v}`"))),
            }
            Ok(Name::from(v))
        }
        Tok::Lower(c) => {
            p.bump();
            if let Some(cs) = &p.decls.consts {
                if !cs.contains(c.as_str()) {
                    return Err(p.error_prev("declared constant", format!("undeclared individual constant `{c}`")));
                }
            }
            Ok(Name::from(c))
        }
        _ => Err(p.error(&["variable", "constant"])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_exists_prop() {
        let f = parse_qml("[r] ?[P:$prop]: P").unwrap();
        assert_eq!(f, QmlFormula::boxed("r", QmlFormula::exists_prop("P", QmlFormula::prop_var("P"))));
    }

    #[test]
    fn unbound_individual_variable_is_rejected() {
        let e = parse_qml("k(X)").unwrap_err();
        assert_eq!((e.line, e.col), (1, 3));
        assert_eq!(e.expected, vec!["bound variable".to_string()]);
    }

    #[test]
    fn printing() {
        assert_eq!(print_qml(&QmlFormula::boxed("r", QmlFormula::prop_var("P"))), "[r] P");
        let f = QmlFormula::forall_ind("X", QmlFormula::atom("k", &["X"]));
        assert_eq!(print_qml(&f), "![X]: k(X)");
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_qml("a & b | c => d => e <=> f").unwrap();
        let (a, b, c, d, e, g) = (
            QmlFormula::atom("a", &[]),
            QmlFormula::atom("b", &[]),
            QmlFormula::atom("c", &[]),
            QmlFormula::atom("d", &[]),
            QmlFormula::atom("e", &[]),
            QmlFormula::atom("f", &[]),
        );
        let expected = QmlFormula::iff(
            QmlFormula::implies(QmlFormula::or(QmlFormula::and(a, b), c), QmlFormula::implies(d, e)),
            g,
        );
        assert_eq!(f, expected);
        assert_eq!(print_qml(&f), "a & b | c => d => e <=> f");
        let g = parse_qml("(a => b) => c").unwrap();
        assert_eq!(print_qml(&g), "(a => b) => c");
    }

    #[test]
    fn quantifier_list_nests() {
        let f = parse_qml("![X, P:$prop]: (P | k(X))").unwrap();
        assert!(matches!(&f, QmlFormula::ForallInd(x, b) if &**x == "X" && matches!(&**b, QmlFormula::ForallProp(..))));
        assert_eq!(print_qml(&f), "![X]: ![P:$prop]: (P | k(X))");
    }

    #[test]
    fn desugar_reaches_core() {
        let f = parse_qml("<r> ?[X]: k(X) & $false <=> ?[P:$prop]: P").unwrap();
        assert!(!f.is_core());
        assert!(f.desugar().is_core());
    }

    #[test]
    fn declarations_are_enforced() {
        let d = Declarations { indices: Some([Name::from("r")].into_iter().collect()), ..Default::default() };
        assert!(parse_qml_with("[r] p", &d, 1, 1).is_ok());
        let e = parse_qml_with("[s] p", &d, 2, 10).unwrap_err();
        assert_eq!((e.line, e.col), (2, 11));
    }
}
