use indexmap::{IndexMap, IndexSet};

use super::error::ParseError;
use super::lexer::{tokenize, Spanned, Tok};
use crate::stt::Name;

/// Symbols a formula may use. `None` fields accept any symbol.
#[derive(Debug, Clone, Default)]
pub struct Declarations {
    pub indices: Option<IndexSet<Name>>,
    pub preds: Option<IndexMap<Name, usize>>,
    pub consts: Option<IndexSet<Name>>,
    pub free_inds: IndexSet<Name>,
    pub free_props: IndexSet<Name>,
    /// Reject unbound propositional variables not listed in `free_props`.
    pub strict_props: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum VarKind {
    Ind,
    Prop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum BinOp {
    And,
    Or,
    Implies,
    Iff,
}

impl BinOp {
    pub(crate) fn level(self) -> u8 {
        match self {
            BinOp::Iff => 1,
            BinOp::Implies => 2,
            BinOp::Or => 3,
            BinOp::And => 4,
        }
    }

    pub(crate) fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Implies => "=>",
            BinOp::Iff => "<=>",
        }
    }
}

pub(crate) type PResult<T> = Result<T, ParseError>;

pub(crate) struct Parser<'d> {
    toks: Vec<Spanned>,
    pos: usize,
    pub scope: Vec<(Name, VarKind)>,
    pub decls: &'d Declarations,
    /// Whether `<=>` is part of the grammar.
    pub iff: bool,
}

impl<'d> Parser<'d> {
    pub fn new(text: &str, line: usize, col: usize, decls: &'d Declarations) -> PResult<Self> {
        Ok(Parser {
            toks: tokenize(text, line, col)?,
            pos: 0,
            scope: Vec::new(),
            decls,
            iff: true,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error(&self, expected: &[&str]) -> ParseError {
        let (l, c) = self.here();
        ParseError::unexpected(l, c, expected, &self.peek().to_string())
    }

    /// Error at the previous token (for scoping and declaration checks).
    pub fn error_prev(&self, expected: &str, message: String) -> ParseError {
        let t = &self.toks[self.pos.saturating_sub(1)];
        let mut e = ParseError::message(t.line, t.col, &t.tok.to_string(), message);
        e.expected = vec![expected.to_string()];
        e
    }

    pub fn error_at(&self, at: (usize, usize), found: &str, expected: &str, message: String) -> ParseError {
        let mut e = ParseError::message(at.0, at.1, &format!("`{found}`"), message);
        e.expected = vec![expected.to_string()];
        e
    }

    pub fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&tok.to_string()]))
        }
    }

    pub fn lower(&mut self, what: &str) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Lower(s) => {
                self.bump();
                Ok(Name::from(s))
            }
            _ => Err(self.error(&[what])),
        }
    }

    pub fn upper(&mut self, what: &str) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Upper(s) => {
                self.bump();
                Ok(Name::from(s))
            }
            _ => Err(self.error(&[what])),
        }
    }

    pub fn lookup(&self, name: &str) -> Option<VarKind> {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| &**n == name)
            .map(|(_, k)| *k)
    }

    /// `formula EOF` at the outermost level.
    pub fn finish<T>(&mut self, unary: fn(&mut Self) -> PResult<T>, mk: fn(BinOp, T, T) -> T) -> PResult<T> {
        let f = self.formula(unary, mk)?;
        if *self.peek() != Tok::Eof {
            let mut exp = vec!["`&`", "`|`", "`=>`"];
            if self.iff {
                exp.push("`<=>`");
            }
            exp.push("end of input");
            return Err(self.error(&exp));
        }
        Ok(f)
    }

    pub fn formula<T>(&mut self, unary: fn(&mut Self) -> PResult<T>, mk: fn(BinOp, T, T) -> T) -> PResult<T> {
        let mut l = self.implication(unary, mk)?;
        while self.iff && *self.peek() == Tok::Iff {
            self.bump();
            let r = self.implication(unary, mk)?;
            l = mk(BinOp::Iff, l, r);
        }
        Ok(l)
    }

    fn implication<T>(&mut self, unary: fn(&mut Self) -> PResult<T>, mk: fn(BinOp, T, T) -> T) -> PResult<T> {
        let l = self.disjunction(unary, mk)?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let r = self.implication(unary, mk)?;
            return Ok(mk(BinOp::Implies, l, r));
        }
        Ok(l)
    }

    fn disjunction<T>(&mut self, unary: fn(&mut Self) -> PResult<T>, mk: fn(BinOp, T, T) -> T) -> PResult<T> {
        let mut l = self.conjunction(unary, mk)?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let r = self.conjunction(unary, mk)?;
            l = mk(BinOp::Or, l, r);
        }
        Ok(l)
    }

    fn conjunction<T>(&mut self, unary: fn(&mut Self) -> PResult<T>, mk: fn(BinOp, T, T) -> T) -> PResult<T> {
        let mut l = unary(self)?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let r = unary(self)?;
            l = mk(BinOp::And, l, r);
        }
        Ok(l)
    }

    /// `( formula )`, with the opening parenthesis already current.
    pub fn parenthesized<T>(&mut self, unary: fn(&mut Self) -> PResult<T>, mk: fn(BinOp, T, T) -> T) -> PResult<T> {
        self.expect(Tok::LParen)?;
        let f = self.formula(unary, mk)?;
        self.expect(Tok::RParen)?;
        Ok(f)
    }

    /// `[X, Y:$i, P:$prop]` after a quantifier symbol. Returns the binders in order.
    pub fn binder_list(&mut self, allow_prop: bool) -> PResult<Vec<(Name, VarKind)>> {
        self.expect(Tok::LBracket)?;
        let mut out = Vec::new();
        loop {
            let v = self.upper("variable")?;
            let mut kind = VarKind::Ind;
            if *self.peek() == Tok::Colon {
                self.bump();
                let accepted: &[&str] = if allow_prop { &["`$i`", "`$prop`"] } else { &["`$i`"] };
                match self.peek().clone() {
                    Tok::Dollar(t) if t == "i" => {}
                    Tok::Dollar(t) if t == "prop" && allow_prop => kind = VarKind::Prop,
                    _ => return Err(self.error(accepted)),
                }
                self.bump();
            }
            out.push((v, kind));
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RBracket => {
                    self.bump();
                    break;
                }
                _ => return Err(self.error(&["`,`", "`]`"])),
            }
        }
        self.expect(Tok::Colon)?;
        Ok(out)
    }
}

pub(crate) enum Shape<'a, T: ?Sized> {
    Atom(String),
    Prefix(String, &'a T),
    Binary(BinOp, &'a T, &'a T),
}

pub(crate) trait Printable {
    fn shape(&self) -> Shape<'_, Self>;
}

const PREFIX_LEVEL: u8 = 5;

fn level<T: Printable + ?Sized>(f: &T) -> u8 {
    match f.shape() {
        Shape::Atom(_) | Shape::Prefix(..) => PREFIX_LEVEL,
        Shape::Binary(op, ..) => op.level(),
    }
}

/// Prints with the fewest parentheses that reparse to the same tree.
pub(crate) fn print<T: Printable + ?Sized>(f: &T) -> String {
    let mut out = String::new();
    write(f, &mut out);
    out
}

fn write<T: Printable + ?Sized>(f: &T, out: &mut String) {
    match f.shape() {
        Shape::Atom(s) => out.push_str(&s),
        Shape::Prefix(p, c) => {
            out.push_str(&p);
            write_paren(c, level(c) < PREFIX_LEVEL, out);
        }
        Shape::Binary(op, l, r) => {
            let lv = op.level();
            let (ll, rl) = (level(l), level(r));
            let lp = ll < lv || (ll == lv && matches!(op, BinOp::Implies | BinOp::Iff));
            let rp = rl < lv || (rl == lv && matches!(op, BinOp::And | BinOp::Or | BinOp::Iff));
            write_paren(l, lp, out);
            out.push(' ');
            out.push_str(op.symbol());
            out.push(' ');
            write_paren(r, rp, out);
        }
    }
}

fn write_paren<T: Printable + ?Sized>(f: &T, paren: bool, out: &mut String) {
    if paren {
        out.push('(');
    }
    write(f, out);
    if paren {
        out.push(')');
    }
}
