use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::types::{Name, Type};

/// A term of the simply typed λ-calculus with the primitive connectives
/// `¬ : o>o`, `∨ : o>o>o`, `=α : α>α>o` and `Πα : (α>o)>o`.
///
/// Variables are identified by name. Derived `PartialEq` is syntactic
/// equality; use [`alpha_equal`] to compare up to bound-variable renaming.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Const(Name, Type),
    Var(Name, Type),
    Lam(Name, Type, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    Neg,
    Or,
    Eq(Type),
    Pi(Type),
}

impl Term {
    pub fn constant(name: &str, ty: Type) -> Term {
        Term::Const(Name::from(name), ty)
    }

    pub fn var(name: &str, ty: Type) -> Term {
        Term::Var(Name::from(name), ty)
    }

    pub fn lam(name: &str, ty: Type, body: Term) -> Term {
        Term::Lam(Name::from(name), ty, Arc::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    pub fn apps<I: IntoIterator<Item = Term>>(f: Term, args: I) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Term) -> Term {
        Term::app(Term::Neg, a)
    }

    pub fn or(a: Term, b: Term) -> Term {
        Term::apps(Term::Or, [a, b])
    }

    pub fn eq(ty: Type, a: Term, b: Term) -> Term {
        Term::apps(Term::Eq(ty), [a, b])
    }

    /// `Πty (λname. body)`
    pub fn forall(name: &str, ty: Type, body: Term) -> Term {
        Term::app(Term::Pi(ty.clone()), Term::lam(name, ty, body))
    }

    /// `∀x1 ... xn. body`, all at the same type.
    pub fn forall_many(names: &[&str], ty: Type, body: Term) -> Term {
        names
            .iter()
            .rev()
            .fold(body, |acc, n| Term::forall(n, ty.clone(), acc))
    }

    /// `¬ Πty (λname. ¬ body)`
    pub fn exists(name: &str, ty: Type, body: Term) -> Term {
        Term::not(Term::forall(name, ty, Term::not(body)))
    }

    /// `¬(¬a ∨ ¬b)`
    pub fn and(a: Term, b: Term) -> Term {
        Term::not(Term::or(Term::not(a), Term::not(b)))
    }

    /// Left-nested conjunction; `None` on an empty list.
    pub fn and_all<I: IntoIterator<Item = Term>>(terms: I) -> Option<Term> {
        terms.into_iter().reduce(Term::and)
    }

    /// `¬a ∨ b`
    pub fn implies(a: Term, b: Term) -> Term {
        Term::or(Term::not(a), b)
    }

    pub fn iff(a: Term, b: Term) -> Term {
        Term::and(Term::implies(a.clone(), b.clone()), Term::implies(b, a))
    }

    /// Truth, spelled with the primitive connectives: `Πo (λX. ¬X ∨ X)`.
    pub fn truth() -> Term {
        let x = Term::var("X", Type::o());
        Term::forall("X", Type::o(), Term::or(Term::not(x.clone()), x))
    }

    pub fn falsity() -> Term {
        Term::not(Term::truth())
    }

    /// Head and argument list of an application spine.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(f, a) = cur {
            args.push(&**a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    pub fn is_var(&self, name: &str) -> bool {
        matches!(self, Term::Var(n, _) if &**n == name)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Lam(_, _, b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
            _ => 1,
        }
    }

    pub fn occurs_free(&self, name: &str) -> bool {
        match self {
            Term::Var(n, _) => &**n == name,
            Term::Lam(x, _, b) => &**x != name && b.occurs_free(name),
            Term::App(f, a) => f.occurs_free(name) || a.occurs_free(name),
            _ => false,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        collect_free(self, &mut bound, &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Names of all constants occurring in the term, in first-occurrence order.
    pub fn constants(&self) -> Vec<(Name, Type)> {
        let mut out: Vec<(Name, Type)> = Vec::new();
        self.visit(&mut |t| {
            if let Term::Const(n, ty) = t {
                if !out.iter().any(|(m, _)| m == n) {
                    out.push((n.clone(), ty.clone()));
                }
            }
        });
        out
    }

    pub fn mentions_const(&self, name: &str) -> bool {
        match self {
            Term::Const(n, _) => &**n == name,
            Term::Lam(_, _, b) => b.mentions_const(name),
            Term::App(f, a) => f.mentions_const(name) || a.mentions_const(name),
            _ => false,
        }
    }

    /// Pre-order traversal.
    pub fn visit<F: FnMut(&Term)>(&self, f: &mut F) {
        f(self);
        match self {
            Term::Lam(_, _, b) => b.visit(f),
            Term::App(g, a) => {
                g.visit(f);
                a.visit(f);
            }
            _ => {}
        }
    }
}

fn collect_free(t: &Term, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    match t {
        Term::Var(n, _) => {
            if !bound.contains(n) {
                out.insert(n.clone());
            }
        }
        Term::Lam(x, _, b) => {
            bound.push(x.clone());
            collect_free(b, bound, out);
            bound.pop();
        }
        Term::App(f, a) => {
            collect_free(f, bound, out);
            collect_free(a, bound, out);
        }
        _ => {}
    }
}

/// Smallest `stem<n>` (n ≥ 1) rejected by `taken`, where `stem` is `base`
/// without its trailing digits.
pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> Name {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { base } else { stem };
    (1u64..)
        .map(|n| format!("{stem}{n}"))
        .find(|cand| !taken(cand))
        .map(Name::from)
        .expect("unbounded supply of names")
}

/// Capture-avoiding substitution `t[x := s]`.
pub fn substitute(t: &Term, x: &str, s: &Term) -> Term {
    let fv_s = s.free_vars();
    subst(t, x, s, &fv_s)
}

fn subst(t: &Term, x: &str, s: &Term, fv_s: &BTreeSet<Name>) -> Term {
    match t {
        Term::Var(n, _) if &**n == x => s.clone(),
        Term::App(f, a) => {
            if !t.occurs_free(x) {
                return t.clone();
            }
            Term::App(
                Arc::new(subst(f, x, s, fv_s)),
                Arc::new(subst(a, x, s, fv_s)),
            )
        }
        Term::Lam(y, ty, body) => {
            if &**y == x || !body.occurs_free(x) {
                return t.clone();
            }
            if fv_s.contains(y) {
                let fv_body = body.free_vars();
                let y2 = fresh_name(y, |c| {
                    c == x || fv_s.contains(c) || fv_body.contains(c)
                });
                let renamed = substitute(body, y, &Term::Var(y2.clone(), ty.clone()));
                Term::Lam(y2, ty.clone(), Arc::new(subst(&renamed, x, s, fv_s)))
            } else {
                Term::Lam(y.clone(), ty.clone(), Arc::new(subst(body, x, s, fv_s)))
            }
        }
        _ => t.clone(),
    }
}

/// Equality up to consistent renaming of bound variables.
pub fn alpha_equal(a: &Term, b: &Term) -> bool {
    fn go<'a>(a: &'a Term, b: &'a Term, sa: &mut Vec<&'a str>, sb: &mut Vec<&'a str>) -> bool {
        match (a, b) {
            (Term::Var(x, tx), Term::Var(y, ty)) => {
                if tx != ty {
                    return false;
                }
                let ix = sa.iter().rposition(|n| *n == &**x);
                let iy = sb.iter().rposition(|n| *n == &**y);
                match (ix, iy) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y,
                    _ => false,
                }
            }
            (Term::Const(x, tx), Term::Const(y, ty)) => x == y && tx == ty,
            (Term::Lam(x, tx, bx), Term::Lam(y, ty, by)) => {
                if tx != ty {
                    return false;
                }
                sa.push(x);
                sb.push(y);
                let r = go(bx, by, sa, sb);
                sa.pop();
                sb.pop();
                r
            }
            (Term::App(f, x), Term::App(g, y)) => go(f, g, sa, sb) && go(x, y, sa, sb),
            (Term::Neg, Term::Neg) | (Term::Or, Term::Or) => true,
            (Term::Eq(s), Term::Eq(t)) | (Term::Pi(s), Term::Pi(t)) => s == t,
            _ => false,
        }
    }
    go(a, b, &mut Vec::new(), &mut Vec::new())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(n, _) | Term::Var(n, _) => write!(f, "{n}"),
            Term::Lam(x, ty, b) => write!(f, "(^ [{x} : {ty}] : {b})"),
            Term::Neg => write!(f, "~"),
            Term::Or => write!(f, "|"),
            Term::Eq(_) => write!(f, "="),
            Term::Pi(_) => write!(f, "!!"),
            Term::App(..) => {
                let (head, args) = self.spine();
                match (head, args.as_slice()) {
                    (Term::Neg, [a]) => write!(f, "(~ {a})"),
                    (Term::Or, [a, b]) => write!(f, "({a} | {b})"),
                    (Term::Eq(_), [a, b]) => write!(f, "({a} = {b})"),
                    (Term::Pi(_), [Term::Lam(x, ty, b)]) => write!(f, "(! [{x} : {ty}] : {b})"),
                    _ => {
                        write!(f, "({head}")?;
                        for a in args {
                            write!(f, " {a}")?;
                        }
                        write!(f, ")")
                    }
                }
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n, Type::o())
    }

    #[test]
    fn substitution_renames_capturing_binder() {
        let t = Term::lam("Y", Type::o(), v("X"));
        let r = substitute(&t, "X", &v("Y"));
        assert_eq!(r, Term::lam("Y1", Type::o(), v("Y")));
    }

    #[test]
    fn substitution_replaces_variable() {
        let c = Term::constant("c", Type::o());
        assert_eq!(substitute(&v("X"), "X", &c), c);
    }

    #[test]
    fn binder_shields_bound_occurrence() {
        let c = Term::constant("c", Type::o());
        let t = Term::or(v("X"), Term::forall("X", Type::o(), v("X")));
        let expected = Term::or(c.clone(), Term::forall("X", Type::o(), v("X")));
        assert_eq!(substitute(&t, "X", &c), expected);
    }

    #[test]
    fn fresh_names_skip_taken_suffixes() {
        let taken = ["Y1", "Y2"];
        assert_eq!(&*fresh_name("Y", |c| taken.contains(&c)), "Y3");
        assert_eq!(&*fresh_name("Y1", |c| taken.contains(&c)), "Y3");
    }

    #[test]
    fn alpha_equivalence_of_identity() {
        let a = Term::lam("X", Type::o(), v("X"));
        let b = Term::lam("Y", Type::o(), v("Y"));
        assert!(alpha_equal(&a, &b));
    }

    #[test]
    fn binder_order_matters_for_alpha() {
        let a = Term::lam("X", Type::o(), Term::lam("Y", Type::o(), v("X")));
        let b = Term::lam("Y", Type::o(), Term::lam("X", Type::o(), v("X")));
        assert!(!alpha_equal(&a, &b));
    }

    #[test]
    fn free_variables_differ_by_name() {
        assert!(!alpha_equal(&v("X"), &v("Y")));
        assert!(alpha_equal(&v("X"), &v("X")));
    }

    #[test]
    fn canonical_printer() {
        let t = Term::lam("X", Type::i(), Term::var("X", Type::i()));
        assert_eq!(t.to_string(), "(^ [X : i] : X)");
        let q = Term::forall("P", Type::o(), Term::not(v("P")));
        assert_eq!(q.to_string(), "(! [P : o] : (~ P))");
    }
}
