use std::collections::{BTreeSet, HashSet};
use std::fmt;

use indexmap::IndexSet;

use crate::embed::Problem;
use crate::logics::Expectation;
use crate::stt::{fresh_name, Name, Signature, Term, Type, Unfolder, BOOL, INDIVIDUAL, WORLD};

/// Whether defined operators stay named or are expanded away.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EmitMode {
    #[default]
    Defined,
    Unfolded,
}

impl EmitMode {
    pub fn name(self) -> &'static str {
        match self {
            EmitMode::Defined => "defined",
            EmitMode::Unfolded => "unfolded",
        }
    }
}

impl std::str::FromStr for EmitMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "defined" => Ok(EmitMode::Defined),
            "unfolded" => Ok(EmitMode::Unfolded),
            _ => Err(format!("unknown emission mode `{s}` (expected defined or unfolded)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ThfOptions {
    pub mode: EmitMode,
    /// Render individuals as `$i` and worlds as a declared `mu`, instead of
    /// worlds as `$i` and individuals as `ind`.
    pub swap_types: bool,
    /// Emit definitions with role `axiom`.
    pub definitions_as_axioms: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Type,
    Definition,
    Axiom,
    Conjecture,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Type => "type",
            Role::Definition => "definition",
            Role::Axiom => "axiom",
            Role::Conjecture => "conjecture",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThfStatement {
    pub name: String,
    pub role: Role,
    pub body: String,
}

impl fmt::Display for ThfStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "thf({}, {}, {}).", self.name, self.role.name(), self.body)
    }
}

/// A THF problem: header comments, then type declarations, definitions,
/// axioms and the conjecture, in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThfDocument {
    pub name: String,
    pub header: Vec<String>,
    pub statements: Vec<ThfStatement>,
}

impl ThfDocument {
    pub fn conjecture(&self) -> Option<&ThfStatement> {
        self.statements.iter().find(|s| s.role == Role::Conjecture)
    }
}

impl fmt::Display for ThfDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for h in &self.header {
            if h.is_empty() {
                writeln!(f, "%")?;
            } else {
                writeln!(f, "% {h}")?;
            }
        }
        let mut prev = None;
        for s in &self.statements {
            let declaration = |r: Role| matches!(r, Role::Type | Role::Definition);
            if prev.is_some_and(|p| p != s.role && !(declaration(p) && declaration(s.role))) {
                writeln!(f)?;
            }
            writeln!(f, "{s}")?;
            prev = Some(s.role);
        }
        Ok(())
    }
}

/// `[a-z][A-Za-z0-9_]*`, else single-quoted.
pub(crate) fn atomic_word(s: &str) -> String {
    let mut chars = s.chars();
    let lower = chars.next().is_some_and(|c| c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if lower {
        s.to_string()
    } else {
        format!("'{}'", s.replace('\\', "\\\\").replace('\'', "\\'"))
    }
}

fn variable(s: &str) -> String {
    let mut chars = s.chars();
    let upper = chars.next().is_some_and(|c| c.is_ascii_uppercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if upper {
        s.to_string()
    } else {
        let tail: String = s.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
        format!("V{tail}")
    }
}

fn formula_name(s: &str) -> String {
    let mut out: String =
        s.chars().map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '_' }).collect();
    if !out.starts_with(|c: char| c.is_ascii_lowercase()) {
        out.insert_str(0, "f_");
    }
    out
}

struct Printer {
    world: &'static str,
    individual: &'static str,
    /// Every variable name in the term, for η-expansion.
    names: HashSet<Name>,
}

enum Shape {
    /// Atomic or already parenthesized.
    Unit,
    /// Binder or negation; needs parentheses as an operand.
    Open,
}

impl Printer {
    fn ty(&self, t: &Type) -> String {
        match t {
            Type::Base(b) => self.base(b),
            Type::Arrow(a, b) => {
                let left = match &**a {
                    Type::Arrow(..) => format!("({})", self.ty(a)),
                    _ => self.ty(a),
                };
                format!("{left} > {}", self.ty(b))
            }
        }
    }

    fn base(&self, b: &str) -> String {
        match b {
            BOOL => "$o".into(),
            WORLD => self.world.into(),
            INDIVIDUAL => self.individual.into(),
            _ => atomic_word(b),
        }
    }

    fn fresh(&mut self, base: &str) -> Name {
        let n = fresh_name(base, |c| self.names.contains(c));
        self.names.insert(n.clone());
        n
    }

    fn operand(&mut self, t: &Term) -> String {
        match self.shape(t) {
            (s, Shape::Unit) => s,
            (s, Shape::Open) => format!("({s})"),
        }
    }

    fn formula(&mut self, t: &Term) -> String {
        self.shape(t).0
    }

    fn shape(&mut self, t: &Term) -> (String, Shape) {
        if is_truth(t) {
            return ("$true".into(), Shape::Unit);
        }
        let (head, args) = t.spine();
        match (head, args.as_slice()) {
            (Term::Const(n, _), []) => (atomic_word(n), Shape::Unit),
            (Term::Var(n, _), []) => (variable(n), Shape::Unit),
            (Term::Lam(..), []) => (self.binder("^", t), Shape::Open),
            (Term::Neg, [a]) => self.negation(a),
            (Term::Or, [a, b]) => {
                let s = match a {
                    Term::App(f, x) if **f == Term::Neg => self.binary("=>", x, b),
                    _ => self.binary("|", a, b),
                };
                (s, Shape::Unit)
            }
            (Term::Eq(_), [a, b]) => (self.binary("=", a, b), Shape::Unit),
            (Term::Pi(_), [Term::Lam(..)]) => (self.binder("!", args[0]), Shape::Open),
            (Term::Pi(ty), [f]) => {
                let x = self.fresh("X");
                let body = Term::app((*f).clone(), Term::Var(x.clone(), ty.clone()));
                (self.binder("!", &Term::Lam(x, ty.clone(), body.into())), Shape::Open)
            }
            (Term::Neg | Term::Or | Term::Eq(_) | Term::Pi(_), _) => {
                let expanded = self.eta_expand(head, &args);
                self.shape(&expanded)
            }
            _ => {
                let mut parts = vec![self.operand(head)];
                for a in args {
                    parts.push(self.operand(a));
                }
                (format!("({})", parts.join(" @ ")), Shape::Unit)
            }
        }
    }

    fn negation(&mut self, a: &Term) -> (String, Shape) {
        if is_truth(a) {
            return ("$false".into(), Shape::Unit);
        }
        let (head, args) = a.spine();
        match (head, args.as_slice()) {
            (Term::Or, [x, y]) => {
                if let (Some(x), Some(y)) = (negated(x), negated(y)) {
                    return (self.binary("&", x, y), Shape::Unit);
                }
            }
            (Term::Pi(_), [Term::Lam(v, ty, body)]) => {
                if let Some(body) = negated(body) {
                    let lam = Term::Lam(v.clone(), ty.clone(), body.clone().into());
                    return (self.binder("?", &lam), Shape::Open);
                }
            }
            _ => {}
        }
        (format!("~ {}", self.operand(a)), Shape::Open)
    }

    fn binary(&mut self, op: &str, a: &Term, b: &Term) -> String {
        format!("({} {op} {})", self.operand(a), self.operand(b))
    }

    /// `q [X1: t1, ...]: body`, merging directly nested binders of the same kind.
    fn binder(&mut self, q: &str, lam: &Term) -> String {
        let Term::Lam(x, ty, b) = lam else { unreachable!("binders print λ-terms") };
        let mut vars = vec![(x.clone(), ty.clone())];
        let mut body: Term = (**b).clone();
        loop {
            let next = match (q, &body) {
                ("^", Term::Lam(x, ty, b)) => Some((x.clone(), ty.clone(), (**b).clone())),
                ("!", Term::App(f, l)) if matches!(**f, Term::Pi(_)) => match &**l {
                    Term::Lam(x, ty, b) => Some((x.clone(), ty.clone(), (**b).clone())),
                    _ => None,
                },
                ("?", _) => match negated(&body).map(|t| t.spine()) {
                    Some((Term::Pi(_), args)) => match args.as_slice() {
                        [Term::Lam(x, ty, b)] => negated(b).map(|b| (x.clone(), ty.clone(), b.clone())),
                        _ => None,
                    },
                    _ => None,
                },
                _ => None,
            };
            match next {
                Some((x, ty, b)) if !vars.iter().any(|(v, _)| *v == x) => {
                    vars.push((x, ty));
                    body = b;
                }
                _ => break,
            }
        }
        let list: Vec<String> = vars.iter().map(|(v, ty)| format!("{}: {}", variable(v), self.ty(ty))).collect();
        format!("{q} [{}]: {}", list.join(", "), self.formula(&body))
    }

    fn eta_expand(&mut self, head: &Term, args: &[&Term]) -> Term {
        let tys: Vec<Type> = match head {
            Term::Neg => vec![Type::o()],
            Term::Or => vec![Type::o(), Type::o()],
            Term::Eq(ty) => vec![ty.clone(), ty.clone()],
            Term::Pi(ty) => vec![Type::arrow(ty.clone(), Type::o())],
            _ => unreachable!("only primitive connectives are expanded"),
        };
        let missing: Vec<(Name, Type)> =
            tys[args.len()..].iter().map(|ty| (self.fresh(if ty.is_bool() { "X" } else { "F" }), ty.clone())).collect();
        let applied = Term::apps(
            head.clone(),
            args.iter().map(|a| (*a).clone()).chain(missing.iter().map(|(n, ty)| Term::Var(n.clone(), ty.clone()))),
        );
        missing.into_iter().rev().fold(applied, |acc, (n, ty)| Term::Lam(n, ty, acc.into()))
    }
}

fn negated(t: &Term) -> Option<&Term> {
    match t {
        Term::App(f, a) if **f == Term::Neg => Some(a),
        _ => None,
    }
}

/// `Πo (λX. ¬X ∨ X)`.
fn is_truth(t: &Term) -> bool {
    let Term::App(pi, lam) = t else { return false };
    if !matches!(&**pi, Term::Pi(ty) if ty.is_bool()) {
        return false;
    }
    let Term::Lam(x, _, body) = &**lam else { return false };
    let (head, args) = body.spine();
    matches!((head, args.as_slice()), (Term::Or, [a, b])
        if negated(a).is_some_and(|n| n.is_var(x)) && b.is_var(x))
}

fn collect_names(t: &Term, out: &mut HashSet<Name>) {
    t.visit(&mut |s| match s {
        Term::Var(n, _) | Term::Lam(n, _, _) => {
            out.insert(n.clone());
        }
        _ => {}
    });
}

/// Emits a problem as THF0. Output depends only on the problem and options.
pub fn emit_thf(p: &Problem, opts: &ThfOptions) -> ThfDocument {
    let (world, individual) = if opts.swap_types { ("mu", "$i") } else { ("$i", "ind") };
    let formulas: Vec<(String, Role, Term)> = {
        let mut unfolder = Unfolder::new(&p.signature);
        p.axioms
            .iter()
            .map(|a| (a.name.clone(), Role::Axiom, a.term.clone()))
            .chain(std::iter::once((p.conjecture.name.clone(), Role::Conjecture, p.conjecture.term.clone())))
            .map(|(n, r, t)| match opts.mode {
                EmitMode::Defined => (n, r, t),
                EmitMode::Unfolded => (n, r, unfolder.unfold(&t)),
            })
            .collect()
    };
    let used = used_constants(&p.signature, formulas.iter().map(|f| &f.2), opts.mode);

    let mut taken: HashSet<String> = HashSet::new();
    let mut unique = |base: String| -> String {
        let mut name = base.clone();
        let mut k = 1;
        while !taken.insert(name.clone()) {
            name = format!("{base}_{k}");
            k += 1;
        }
        name
    };
    let mut statements = Vec::new();
    let mut printer = Printer { world, individual, names: HashSet::new() };
    for b in p.signature.bases() {
        let rendered = printer.base(b);
        if !rendered.starts_with('$') {
            statements.push(ThfStatement {
                name: unique(formula_name(&format!("{rendered}_type"))),
                role: Role::Type,
                body: format!("{rendered}: $tType"),
            });
        }
    }
    for (n, ty) in p.signature.constants() {
        if !used.contains(n) {
            continue;
        }
        statements.push(ThfStatement {
            name: unique(formula_name(&format!("{n}_type"))),
            role: Role::Type,
            body: format!("{}: {}", atomic_word(n), printer.ty(ty)),
        });
        if opts.mode == EmitMode::Defined {
            if let Some(def) = p.signature.definition(n) {
                printer.names.clear();
                collect_names(def, &mut printer.names);
                let body = printer.operand(def);
                statements.push(ThfStatement {
                    name: unique(formula_name(&format!("{n}_def"))),
                    role: if opts.definitions_as_axioms { Role::Axiom } else { Role::Definition },
                    body: format!("({} = {body})", atomic_word(n)),
                });
            }
        }
    }
    for (name, role, t) in &formulas {
        printer.names.clear();
        collect_names(t, &mut printer.names);
        statements.push(ThfStatement { name: unique(formula_name(name)), role: *role, body: printer.formula(t) });
    }

    let mut header = vec![format!("{}", p.name)];
    match p.expected {
        Expectation::Theorem => header.push("Status: Theorem".into()),
        Expectation::CounterSatisfiable => header.push("Status: CounterSatisfiable".into()),
        Expectation::Unknown => {}
    }
    header.push(format!("Worlds: {world}, individuals: {individual}, operators: {}.", opts.mode.name()));
    ThfDocument { name: p.name.clone(), header, statements }
}

/// Constants reachable from the formulas; in defined mode this includes the
/// constants mentioned by used definitions.
fn used_constants<'a>(sig: &Signature, terms: impl Iterator<Item = &'a Term>, mode: EmitMode) -> IndexSet<Name> {
    let mut used = IndexSet::new();
    let mut todo: Vec<Name> = Vec::new();
    for t in terms {
        for (n, _) in t.constants() {
            todo.push(n);
        }
    }
    while let Some(n) = todo.pop() {
        if !used.insert(n.clone()) {
            continue;
        }
        if mode == EmitMode::Defined {
            if let Some(def) = sig.definition(&n) {
                todo.extend(def.constants().into_iter().map(|(c, _)| c));
            }
        }
    }
    used
}

/// Symbols declared by a document, for tests and lint messages.
pub fn declared_symbols(doc: &ThfDocument) -> BTreeSet<String> {
    doc.statements
        .iter()
        .filter(|s| s.role == Role::Type)
        .filter_map(|s| s.body.split(':').next().map(|n| n.trim().to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{m, qml_signature, ModalSignature};

    fn print(t: &Term) -> String {
        let mut p = Printer { world: "$i", individual: "ind", names: HashSet::new() };
        collect_names(t, &mut p.names);
        p.formula(t)
    }

    #[test]
    fn valid_definition_golden() {
        let mut msig = ModalSignature::new();
        let r = msig.add_index("r").unwrap();
        let p = Problem::new("t", msig.signature, m::valid(m::boxed(r, m::truth())));
        let doc = emit_thf(&p, &ThfOptions::default()).to_string();
        assert!(
            doc.contains("thf(valid_def, definition, (valid = (^ [Phi: $i > $o]: ! [W: $i]: (Phi @ W))))."),
            "{doc}"
        );
        assert!(doc.contains("thf(r_type, type, r: $i > $i > $o)."), "{doc}");
        assert!(doc.contains("thf(conj, conjecture, (valid @ (mbox @ r @ mtrue)))."), "{doc}");
    }

    #[test]
    fn derived_connectives() {
        let (a, b) = (Term::constant("a", Type::o()), Term::constant("b", Type::o()));
        assert_eq!(print(&Term::and(a.clone(), b.clone())), "(a & b)");
        assert_eq!(print(&Term::implies(a.clone(), b.clone())), "(a => b)");
        assert_eq!(print(&Term::or(a.clone(), b.clone())), "(a | b)");
        assert_eq!(print(&Term::not(a.clone())), "~ a");
        assert_eq!(print(&Term::truth()), "$true");
        assert_eq!(print(&Term::falsity()), "$false");
        let x = Term::var("X", Type::i());
        let f = Term::constant("f", Type::arrow(Type::i(), Type::o()));
        let fx = Term::app(f.clone(), x);
        assert_eq!(print(&Term::exists("X", Type::i(), fx.clone())), "? [X: ind]: (f @ X)");
        let y = Term::var("Y", Type::i());
        let both = Term::forall("X", Type::i(), Term::forall("Y", Type::i(), Term::eq(Type::i(), Term::var("X", Type::i()), y)));
        assert_eq!(print(&both), "! [X: ind, Y: ind]: (X = Y)");
    }

    #[test]
    fn eta_expands_bare_connectives() {
        let f = Term::constant("f", Type::arrow(Type::i(), Type::o()));
        assert_eq!(print(&Term::app(Term::Pi(Type::i()), f)), "! [X1: ind]: (f @ X1)");
        let g = Term::constant("g", Type::arrow(Type::arrow(Type::o(), Type::o()), Type::o()));
        assert_eq!(print(&Term::app(g, Term::Neg)), "(g @ (^ [X1: $o]: ~ X1))");
    }

    #[test]
    fn unfolded_mode_has_no_defined_names() {
        let mut msig = ModalSignature::over(qml_signature());
        let r = msig.add_index("r").unwrap();
        let q = msig.add_prop("q").unwrap();
        let conj = m::valid(m::implies(m::boxed(r.clone(), q.clone()), m::dia(r, q)));
        let p = Problem::new("t", msig.signature, conj);
        let doc = emit_thf(&p, &ThfOptions { mode: EmitMode::Unfolded, ..Default::default() }).to_string();
        for d in crate::embed::MODAL_DEFINITIONS {
            assert!(!doc.contains(d), "{d} in {doc}");
        }
    }

    #[test]
    fn swapped_types() {
        let p = Problem::new("t", qml_signature(), m::valid(m::truth()));
        let doc = emit_thf(&p, &ThfOptions { swap_types: true, ..Default::default() }).to_string();
        assert!(doc.contains("thf(mu_type, type, mu: $tType)."), "{doc}");
        assert!(doc.contains("valid: (mu > $o) > $o"), "{doc}");
    }
}
