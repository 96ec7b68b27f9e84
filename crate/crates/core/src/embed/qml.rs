use indexmap::IndexMap;

use super::EmbedError;
use crate::logics::{is_variable, QmlFormula};
use crate::stt::{check_type, Name, Signature, Term, Type, INDIVIDUAL, WORLD};

/// Names of the defined modal operators, in definition order.
pub const MODAL_DEFINITIONS: [&str; 14] = [
    "mnot",
    "mor",
    "mbox",
    "mforall_ind",
    "mforall_prop",
    "mtrue",
    "mfalse",
    "mand",
    "mimplies",
    "mequiv",
    "mdia",
    "mexists_ind",
    "mexists_prop",
    "valid",
];

fn prop() -> Type {
    Type::prop()
}

fn rel() -> Type {
    Type::relation()
}

fn unop() -> Type {
    Type::arrow(prop(), prop())
}

fn binop() -> Type {
    Type::arrows([prop(), prop()], prop())
}

fn modal_type(name: &str) -> Type {
    match name {
        "mnot" => unop(),
        "mor" | "mand" | "mimplies" | "mequiv" => binop(),
        "mbox" | "mdia" => Type::arrows([rel(), prop()], prop()),
        "mforall_ind" | "mexists_ind" => Type::arrow(Type::arrow(Type::i(), prop()), prop()),
        "mforall_prop" | "mexists_prop" => Type::arrow(unop(), prop()),
        "mtrue" | "mfalse" => prop(),
        "valid" => Type::arrow(prop(), Type::o()),
        _ => unreachable!("not a modal operator: {name}"),
    }
}

/// Constant for one of the defined modal operators.
pub fn modal_const(name: &str) -> Term {
    Term::constant(name, modal_type(name))
}

/// Builders for terms over the defined modal operators.
pub mod m {
    use super::*;

    pub fn not(a: Term) -> Term {
        Term::app(modal_const("mnot"), a)
    }

    pub fn or(a: Term, b: Term) -> Term {
        Term::apps(modal_const("mor"), [a, b])
    }

    pub fn and(a: Term, b: Term) -> Term {
        Term::apps(modal_const("mand"), [a, b])
    }

    pub fn implies(a: Term, b: Term) -> Term {
        Term::apps(modal_const("mimplies"), [a, b])
    }

    pub fn equiv(a: Term, b: Term) -> Term {
        Term::apps(modal_const("mequiv"), [a, b])
    }

    pub fn boxed(r: Term, a: Term) -> Term {
        Term::apps(modal_const("mbox"), [r, a])
    }

    pub fn dia(r: Term, a: Term) -> Term {
        Term::apps(modal_const("mdia"), [r, a])
    }

    pub fn forall_ind(x: &str, body: Term) -> Term {
        Term::app(modal_const("mforall_ind"), Term::lam(x, Type::i(), body))
    }

    pub fn exists_ind(x: &str, body: Term) -> Term {
        Term::app(modal_const("mexists_ind"), Term::lam(x, Type::i(), body))
    }

    pub fn forall_prop(p: &str, body: Term) -> Term {
        Term::app(modal_const("mforall_prop"), Term::lam(p, prop(), body))
    }

    pub fn exists_prop(p: &str, body: Term) -> Term {
        Term::app(modal_const("mexists_prop"), Term::lam(p, prop(), body))
    }

    pub fn truth() -> Term {
        modal_const("mtrue")
    }

    pub fn falsity() -> Term {
        modal_const("mfalse")
    }

    pub fn valid(a: Term) -> Term {
        Term::app(modal_const("valid"), a)
    }

    pub fn pvar(name: &str) -> Term {
        Term::var(name, prop())
    }
}

fn definition(name: &str) -> Term {
    let phi = || Term::var("Phi", prop());
    let psi = || Term::var("Psi", prop());
    let w = || Term::var("W", Type::w());
    let lam_phi = |b: Term| Term::lam("Phi", prop(), b);
    let lam_phi_psi = |b: Term| Term::lam("Phi", prop(), Term::lam("Psi", prop(), b));
    let lam_w = |b: Term| Term::lam("W", Type::w(), b);
    match name {
        "mnot" => lam_phi(lam_w(Term::not(Term::app(phi(), w())))),
        "mor" => lam_phi_psi(lam_w(Term::or(Term::app(phi(), w()), Term::app(psi(), w())))),
        "mbox" => {
            let r = Term::var("R", rel());
            let v = Term::var("V", Type::w());
            let body = Term::or(Term::not(Term::apps(r, [w(), v.clone()])), Term::app(phi(), v));
            Term::lam("R", rel(), lam_phi(lam_w(Term::forall("V", Type::w(), body))))
        }
        "mforall_ind" => {
            let f = Term::var("Phi", Type::arrow(Type::i(), prop()));
            let body = Term::apps(f, [Term::var("X", Type::i()), w()]);
            Term::lam("Phi", Type::arrow(Type::i(), prop()), lam_w(Term::forall("X", Type::i(), body)))
        }
        "mforall_prop" => {
            let f = Term::var("Phi", unop());
            let body = Term::apps(f, [Term::var("P", prop()), w()]);
            Term::lam("Phi", unop(), lam_w(Term::forall("P", prop(), body)))
        }
        "mtrue" => lam_w(Term::truth()),
        "mfalse" => m::not(m::truth()),
        "mand" => lam_phi_psi(m::not(m::or(m::not(phi()), m::not(psi())))),
        "mimplies" => lam_phi_psi(m::or(m::not(phi()), psi())),
        "mequiv" => lam_phi_psi(m::and(m::implies(phi(), psi()), m::implies(psi(), phi()))),
        "mdia" => {
            let r = Term::var("R", rel());
            Term::lam("R", rel(), lam_phi(m::not(m::boxed(r, m::not(phi())))))
        }
        "mexists_ind" => {
            let f = Term::var("Phi", Type::arrow(Type::i(), prop()));
            let body = m::not(Term::app(f, Term::var("X", Type::i())));
            Term::lam("Phi", Type::arrow(Type::i(), prop()), m::not(m::forall_ind("X", body)))
        }
        "mexists_prop" => {
            let f = Term::var("Phi", unop());
            let body = m::not(Term::app(f, Term::var("P", prop())));
            Term::lam("Phi", unop(), m::not(m::forall_prop("P", body)))
        }
        "valid" => lam_phi(Term::forall("W", Type::w(), Term::app(phi(), w()))),
        _ => unreachable!("not a modal operator: {name}"),
    }
}

/// Base types `i` and `w` with every modal operator defined.
pub fn qml_signature() -> Signature {
    let mut sig = Signature::new();
    add_modal_definitions(&mut sig);
    sig
}

/// Adds `i`, `w` and the modal operator definitions missing from `sig`.
pub fn add_modal_definitions(sig: &mut Signature) {
    sig.ensure_base(INDIVIDUAL);
    sig.ensure_base(WORLD);
    for name in MODAL_DEFINITIONS {
        if sig.constant_type(name).is_none() {
            sig.define(name, modal_type(name), definition(name))
                .expect("modal definitions are well typed");
        }
    }
}

/// Accessibility relations, predicates and individual constants of a modal
/// vocabulary, on top of the operator definitions.
#[derive(Debug, Clone)]
pub struct ModalSignature {
    pub signature: Signature,
    pub indices: IndexMap<Name, Term>,
    pub preds: IndexMap<Name, (usize, Term)>,
    pub consts: IndexMap<Name, Term>,
    /// Free propositional variables, treated as constants of type `w > o`.
    pub props: IndexMap<Name, Term>,
}

impl Default for ModalSignature {
    fn default() -> Self {
        Self::new()
    }
}

impl ModalSignature {
    pub fn new() -> Self {
        Self::over(qml_signature())
    }

    /// Extends an existing signature with the modal definitions.
    pub fn over(mut signature: Signature) -> Self {
        add_modal_definitions(&mut signature);
        ModalSignature {
            signature,
            indices: IndexMap::new(),
            preds: IndexMap::new(),
            consts: IndexMap::new(),
            props: IndexMap::new(),
        }
    }

    fn declare(&mut self, name: &str, ty: Type) -> Result<Term, EmbedError> {
        self.signature.declare(name, ty.clone())?;
        Ok(Term::constant(name, ty))
    }

    pub fn add_index(&mut self, name: &str) -> Result<Term, EmbedError> {
        let t = self.declare(name, rel())?;
        self.indices.insert(Name::from(name), t.clone());
        Ok(t)
    }

    /// `k : i > ... > i > (w > o)`.
    pub fn add_pred(&mut self, name: &str, arity: usize) -> Result<Term, EmbedError> {
        let t = self.declare(name, Type::arrows(vec![Type::i(); arity], prop()))?;
        self.preds.insert(Name::from(name), (arity, t.clone()));
        Ok(t)
    }

    pub fn add_const(&mut self, name: &str) -> Result<Term, EmbedError> {
        let t = self.declare(name, Type::i())?;
        self.consts.insert(Name::from(name), t.clone());
        Ok(t)
    }

    pub fn add_prop(&mut self, name: &str) -> Result<Term, EmbedError> {
        let t = self.declare(name, prop())?;
        self.props.insert(Name::from(name), t.clone());
        Ok(t)
    }

    pub fn index(&self, name: &str) -> Result<&Term, EmbedError> {
        self.indices.get(name).ok_or_else(|| EmbedError::unknown("modal index", name))
    }
}

/// Compiles a modal formula into a term of type `w > o` built from the
/// defined operators. Variables bound in `f` become λ-bound variables.
pub fn embed_qml(f: &QmlFormula, msig: &ModalSignature) -> Result<Term, EmbedError> {
    let mut scope = Vec::new();
    embed(f, msig, &mut scope)
}

fn embed(f: &QmlFormula, msig: &ModalSignature, scope: &mut Vec<Name>) -> Result<Term, EmbedError> {
    use QmlFormula as F;
    let go = |g: &QmlFormula, scope: &mut Vec<Name>| embed(g, msig, scope);
    Ok(match f {
        F::Top => m::truth(),
        F::Bottom => m::falsity(),
        F::PropVar(p) => {
            if scope.contains(p) {
                m::pvar(p)
            } else if let Some(c) = msig.props.get(p) {
                c.clone()
            } else {
                m::pvar(p)
            }
        }
        F::Atom(k, args) => {
            let (arity, head) = msig.preds.get(k).ok_or_else(|| EmbedError::unknown("predicate", k))?;
            if *arity != args.len() {
                return Err(EmbedError::Arity { name: k.clone(), expected: *arity, found: args.len() });
            }
            let mut ts = Vec::with_capacity(args.len());
            for a in args {
                ts.push(if is_variable(a) && (scope.contains(a) || !msig.consts.contains_key(a)) {
                    Term::var(a, Type::i())
                } else {
                    msig.consts.get(a).cloned().ok_or_else(|| EmbedError::unknown("individual constant", a))?
                });
            }
            Term::apps(head.clone(), ts)
        }
        F::Neg(a) => m::not(go(a, scope)?),
        F::Or(a, b) => m::or(go(a, scope)?, go(b, scope)?),
        F::And(a, b) => m::and(go(a, scope)?, go(b, scope)?),
        F::Implies(a, b) => m::implies(go(a, scope)?, go(b, scope)?),
        F::Iff(a, b) => m::equiv(go(a, scope)?, go(b, scope)?),
        F::Box(r, a) => m::boxed(msig.index(r)?.clone(), go(a, scope)?),
        F::Diamond(r, a) => m::dia(msig.index(r)?.clone(), go(a, scope)?),
        F::ForallInd(x, a) | F::ExistsInd(x, a) | F::ForallProp(x, a) | F::ExistsProp(x, a) => {
            scope.push(x.clone());
            let body = go(a, scope);
            scope.pop();
            let body = body?;
            match f {
                F::ForallInd(..) => m::forall_ind(x, body),
                F::ExistsInd(..) => m::exists_ind(x, body),
                F::ForallProp(..) => m::forall_prop(x, body),
                _ => m::exists_prop(x, body),
            }
        }
    })
}

/// `valid t`, checking that `t : w > o`.
pub fn wrap_valid(t: Term, sig: &Signature) -> Result<Term, EmbedError> {
    check_type(&t, sig, &prop())?;
    Ok(m::valid(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logics::parse_qml;
    use crate::stt::{alpha_equal, type_of, unfold_definitions};
    use std::collections::HashMap;

    #[test]
    fn definitions_type_check() {
        let sig = qml_signature();
        for n in MODAL_DEFINITIONS {
            assert!(sig.is_defined(n), "{n}");
        }
    }

    #[test]
    fn unfolding_example() {
        let mut msig = ModalSignature::new();
        msig.add_index("r").unwrap();
        let f = parse_qml("[r] ?[P:$prop]: P").unwrap();
        let t = wrap_valid(embed_qml(&f, &msig).unwrap(), &msig.signature).unwrap();
        let u = unfold_definitions(&t, &msig.signature);
        // ∀W ∀Y. ¬ r W Y ∨ ¬∀X. ¬ X Y
        let w = Type::w();
        let r = Term::constant("r", rel());
        let y = Term::var("Y", w.clone());
        let x = Term::var("X", prop());
        let expected = Term::forall(
            "W",
            w.clone(),
            Term::forall(
                "Y",
                w.clone(),
                Term::or(
                    Term::not(Term::apps(r, [Term::var("W", w), y.clone()])),
                    Term::not(Term::forall("X", prop(), Term::not(Term::app(x, y)))),
                ),
            ),
        );
        assert!(alpha_equal(&u, &expected), "{u}");
    }

    #[test]
    fn embedding_is_compositional() {
        let mut msig = ModalSignature::new();
        msig.add_index("r").unwrap();
        msig.add_pred("k", 1).unwrap();
        let f = parse_qml("~![X]: [r] k(X)").unwrap();
        let t = embed_qml(&f, &msig).unwrap();
        let inner = embed_qml(&parse_qml("![X]: [r] k(X)").unwrap(), &msig).unwrap();
        assert_eq!(t, m::not(inner));
        assert_eq!(type_of(&t, &msig.signature, &HashMap::new()).unwrap(), prop());
    }

    #[test]
    fn unknown_symbols_are_reported() {
        let msig = ModalSignature::new();
        let f = parse_qml("[r] p").unwrap();
        assert!(matches!(embed_qml(&f, &msig), Err(EmbedError::UnknownSymbol { .. })));
    }

    #[test]
    fn valid_requires_a_proposition() {
        let sig = qml_signature();
        assert!(wrap_valid(Term::truth(), &sig).is_err());
        assert!(wrap_valid(m::truth(), &sig).is_ok());
    }
}
