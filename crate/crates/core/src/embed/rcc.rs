use std::collections::HashMap;

use super::problem::NamedFormula;
use super::EmbedError;
use crate::logics::{FoFormula, FoTerm, REGION};
use crate::stt::{Name, Signature, Term, Type};

fn region() -> Type {
    Type::base(REGION)
}

fn binary() -> Type {
    Type::arrows([region(), region()], Type::o())
}

/// The connection relation.
pub fn connection() -> Term {
    Term::constant("c", binary())
}

fn rel(name: &str, a: Term, b: Term) -> Term {
    Term::apps(Term::constant(name, binary()), [a, b])
}

fn ex(z: &str, body: Term) -> Term {
    Term::exists(z, region(), body)
}

fn definition(name: &str) -> Term {
    let v = |n: &str| Term::var(n, region());
    let (x, y, z) = (v("X"), v("Y"), v("Z"));
    let body = match name {
        "dc" => Term::not(rel("c", x.clone(), y.clone())),
        "p" => Term::forall("Z", region(), Term::implies(rel("c", z.clone(), x.clone()), rel("c", z, y.clone()))),
        "eq" => Term::and(rel("p", x.clone(), y.clone()), rel("p", y.clone(), x.clone())),
        "o" => ex("Z", Term::and(rel("p", z.clone(), x.clone()), rel("p", z, y.clone()))),
        "po" => Term::and(
            Term::and(rel("o", x.clone(), y.clone()), Term::not(rel("p", x.clone(), y.clone()))),
            Term::not(rel("p", y.clone(), x.clone())),
        ),
        "ec" => Term::and(rel("c", x.clone(), y.clone()), Term::not(rel("o", x.clone(), y.clone()))),
        "pp" => Term::and(rel("p", x.clone(), y.clone()), Term::not(rel("p", y.clone(), x.clone()))),
        "tpp" | "ntpp" => {
            let tangent = ex("Z", Term::and(rel("ec", z.clone(), x.clone()), rel("ec", z, y.clone())));
            let tangent = if name == "tpp" { tangent } else { Term::not(tangent) };
            Term::and(rel("pp", x.clone(), y.clone()), tangent)
        }
        _ => unreachable!("not a defined region relation: {name}"),
    };
    Term::lam("X", region(), Term::lam("Y", region(), body))
}

/// Signature with `region`, `c` and the nine derived relations, together with
/// reflexivity and symmetry of `c`.
pub fn rcc_signature_and_definitions() -> (Signature, Vec<NamedFormula>) {
    let mut sig = Signature::new();
    sig.ensure_base(REGION);
    sig.declare("c", binary()).expect("fresh signature");
    for name in &crate::logics::RCC_PREDICATES[1..] {
        sig.define(name, binary(), definition(name)).expect("fresh signature");
    }
    let x = Term::var("X", region());
    let y = Term::var("Y", region());
    let reflexive = Term::forall("X", region(), rel("c", x.clone(), x.clone()));
    let symmetric = Term::forall_many(&["X", "Y"], region(), Term::implies(rel("c", x.clone(), y.clone()), rel("c", y, x)));
    (sig, vec![NamedFormula::new("c_reflexive", reflexive), NamedFormula::new("c_symmetric", symmetric)])
}

/// Translates a first-order region formula; bound variables become
/// `region`-typed λ-variables.
pub fn embed_fo(f: &FoFormula, sig: &Signature) -> Result<Term, EmbedError> {
    fn go(f: &FoFormula, sig: &Signature, scope: &mut HashMap<Name, usize>) -> Result<Term, EmbedError> {
        Ok(match f {
            FoFormula::Atom(p, args) => {
                let head = sig.constant(p).ok_or_else(|| EmbedError::unknown("predicate", p))?;
                let arity = sig.constant_type(p).map(|t| t.uncurry().0.len()).unwrap_or(0);
                if arity != args.len() {
                    return Err(EmbedError::Arity { name: p.clone(), expected: arity, found: args.len() });
                }
                let mut out = Vec::with_capacity(args.len());
                for a in args {
                    out.push(match a {
                        FoTerm::Var(x) if scope.contains_key(x) => Term::var(x, region()),
                        FoTerm::Var(x) | FoTerm::Const(x) => {
                            sig.constant(x).ok_or_else(|| EmbedError::unknown("region", x))?
                        }
                    });
                }
                Term::apps(head, out)
            }
            FoFormula::Neg(a) => Term::not(go(a, sig, scope)?),
            FoFormula::Or(a, b) => Term::or(go(a, sig, scope)?, go(b, sig, scope)?),
            FoFormula::And(a, b) => Term::and(go(a, sig, scope)?, go(b, sig, scope)?),
            FoFormula::Implies(a, b) => Term::implies(go(a, sig, scope)?, go(b, sig, scope)?),
            FoFormula::Forall(x, a) | FoFormula::Exists(x, a) => {
                *scope.entry(x.clone()).or_default() += 1;
                let body = go(a, sig, scope);
                let n = scope.get_mut(x).expect("pushed above");
                *n -= 1;
                if *n == 0 {
                    scope.remove(x);
                }
                let body = body?;
                if matches!(f, FoFormula::Forall(..)) {
                    Term::forall(x, region(), body)
                } else {
                    Term::exists(x, region(), body)
                }
            }
        })
    }
    go(f, sig, &mut HashMap::new())
}
