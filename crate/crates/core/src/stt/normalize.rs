use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::signature::Signature;
use super::term::{substitute, Term};
use super::types::Name;

/// β-normal form by leftmost-outermost reduction.
pub fn beta_normalize(t: &Term) -> Term {
    match t {
        Term::Lam(x, ty, body) => Term::Lam(x.clone(), ty.clone(), Arc::new(beta_normalize(body))),
        Term::App(..) => {
            let mut head = t.clone();
            let mut args: VecDeque<Term> = VecDeque::new();
            loop {
                match head {
                    Term::App(f, a) => {
                        args.push_front((*a).clone());
                        head = (*f).clone();
                    }
                    Term::Lam(ref x, _, ref body) if !args.is_empty() => {
                        let a = args.pop_front().expect("nonempty");
                        head = substitute(body, x, &a);
                    }
                    _ => break,
                }
            }
            args.into_iter()
                .fold(beta_normalize(&head), |f, a| Term::app(f, beta_normalize(&a)))
        }
        _ => t.clone(),
    }
}

/// Contracts η-redexes bottom-up. On a β-normal term this reaches the
/// η-normal form in one pass and creates no new β-redex.
pub fn eta_contract(t: &Term) -> Term {
    match t {
        Term::Lam(x, ty, body) => {
            let body = eta_contract(body);
            if let Term::App(f, a) = &body {
                if matches!(&**a, Term::Var(y, yty) if y == x && yty == ty) && !f.occurs_free(x) {
                    return (**f).clone();
                }
            }
            Term::Lam(x.clone(), ty.clone(), Arc::new(body))
        }
        Term::App(f, a) => Term::App(Arc::new(eta_contract(f)), Arc::new(eta_contract(a))),
        _ => t.clone(),
    }
}

pub fn beta_eta_normalize(t: &Term) -> Term {
    eta_contract(&beta_normalize(t))
}

pub fn has_beta_redex(t: &Term) -> bool {
    match t {
        Term::App(f, a) => matches!(&**f, Term::Lam(..)) || has_beta_redex(f) || has_beta_redex(a),
        Term::Lam(_, _, b) => has_beta_redex(b),
        _ => false,
    }
}

pub fn has_eta_redex(t: &Term) -> bool {
    match t {
        Term::Lam(x, _, b) => {
            if let Term::App(f, a) = &**b {
                if a.is_var(x) && !f.occurs_free(x) {
                    return true;
                }
            }
            has_eta_redex(b)
        }
        Term::App(f, a) => has_eta_redex(f) || has_eta_redex(a),
        _ => false,
    }
}

pub fn is_normal(t: &Term) -> bool {
    !has_beta_redex(t) && !has_eta_redex(t)
}

/// Replaces every defined constant by its (recursively unfolded) body and
/// βη-normalizes the result.
pub fn unfold_definitions(t: &Term, sig: &Signature) -> Term {
    Unfolder::new(sig).unfold(t)
}

/// Unfolding with a cache of normalized definition bodies, for callers that
/// unfold many terms over one signature.
pub struct Unfolder<'a> {
    sig: &'a Signature,
    cache: HashMap<Name, Term>,
}

impl<'a> Unfolder<'a> {
    pub fn new(sig: &'a Signature) -> Self {
        Unfolder { sig, cache: HashMap::new() }
    }

    pub fn unfold(&mut self, t: &Term) -> Term {
        let expanded = self.expand(t);
        beta_eta_normalize(&expanded)
    }

    fn body(&mut self, name: &Name) -> Option<Term> {
        if let Some(b) = self.cache.get(name) {
            return Some(b.clone());
        }
        let raw = self.sig.definition(name)?.clone();
        let b = beta_normalize(&self.expand(&raw));
        self.cache.insert(name.clone(), b.clone());
        Some(b)
    }

    // Definition bodies are closed, so plain replacement cannot capture.
    fn expand(&mut self, t: &Term) -> Term {
        match t {
            Term::Const(n, _) => self.body(n).unwrap_or_else(|| t.clone()),
            Term::Lam(x, ty, b) => Term::Lam(x.clone(), ty.clone(), Arc::new(self.expand(b))),
            Term::App(f, a) => Term::App(Arc::new(self.expand(f)), Arc::new(self.expand(a))),
            _ => t.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stt::term::alpha_equal;
    use crate::stt::types::Type;

    #[test]
    fn beta_redex_contracts() {
        let c = Term::constant("c", Type::i());
        let id = Term::lam("X", Type::i(), Term::var("X", Type::i()));
        assert_eq!(beta_eta_normalize(&Term::app(id, c.clone())), c);
    }

    #[test]
    fn eta_redex_contracts() {
        let f = Term::constant("f", Type::arrow(Type::i(), Type::o()));
        let t = Term::lam("X", Type::i(), Term::app(f.clone(), Term::var("X", Type::i())));
        assert_eq!(beta_eta_normalize(&t), f);
    }

    #[test]
    fn eta_blocked_by_free_occurrence() {
        let g = Term::constant("g", Type::arrows([Type::i(), Type::i()], Type::o()));
        let x = Term::var("X", Type::i());
        let t = Term::lam("X", Type::i(), Term::apps(g, [x.clone(), x]));
        assert_eq!(beta_eta_normalize(&t), t);
    }

    #[test]
    fn nested_redexes_in_head_position() {
        // (λF. F c) (λY. Y) → c
        let i = Type::i();
        let fty = Type::arrow(i.clone(), i.clone());
        let c = Term::constant("c", i.clone());
        let t = Term::app(
            Term::lam("F", fty.clone(), Term::app(Term::var("F", fty), c.clone())),
            Term::lam("Y", i.clone(), Term::var("Y", i)),
        );
        assert_eq!(beta_eta_normalize(&t), c);
    }

    #[test]
    fn unfolding_without_definitions_is_identity() {
        let sig = Signature::new();
        let t = Term::truth();
        assert!(alpha_equal(&unfold_definitions(&t, &sig), &t));
    }

    #[test]
    fn unfolding_chains_through_definitions() {
        let mut sig = Signature::new();
        let o = Type::o();
        let oo = Type::arrow(o.clone(), o.clone());
        sig.define("neg", oo.clone(), Term::lam("A", o.clone(), Term::not(Term::var("A", o.clone()))))
            .unwrap();
        let nn = Term::lam(
            "B",
            o.clone(),
            Term::app(
                Term::constant("neg", oo.clone()),
                Term::app(Term::constant("neg", oo.clone()), Term::var("B", o.clone())),
            ),
        );
        sig.define("negneg", oo.clone(), nn).unwrap();
        sig.declare("q", o.clone()).unwrap();
        let t = Term::app(Term::constant("negneg", oo), Term::constant("q", o.clone()));
        let u = unfold_definitions(&t, &sig);
        assert_eq!(u, Term::not(Term::not(Term::constant("q", o))));
        assert!(is_normal(&u));
    }
}
