//! Random well-typed terms over a small signature.

use std::collections::HashMap;

use holembed::embed::{m, qml_signature};
use holembed::stt::{
    alpha_equal, beta_eta_normalize, is_normal, substitute, type_of, unfold_definitions, Name, Signature, Term, Type,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn o() -> Type {
    Type::o()
}
pub fn i() -> Type {
    Type::i()
}
pub fn ar(a: Type, b: Type) -> Type {
    Type::arrow(a, b)
}

/// Types the generator draws from. Every one has a closed inhabitant below.
pub fn pool() -> Vec<Type> {
    vec![
        o(),
        i(),
        ar(i(), o()),
        ar(i(), i()),
        ar(o(), o()),
        ar(ar(i(), o()), o()),
        Type::arrows([i(), i()], o()),
    ]
}

pub fn signature() -> Signature {
    let mut sig = Signature::new();
    sig.ensure_base("i");
    sig.declare("c", i()).unwrap();
    sig.declare("q", o()).unwrap();
    sig.declare("p", ar(i(), o())).unwrap();
    sig.declare("f", ar(i(), i())).unwrap();
    sig.declare("g", ar(ar(i(), o()), o())).unwrap();
    sig.declare("r", Type::arrows([i(), i()], o())).unwrap();
    // `some = λP. ¬Π(λx. ¬P x)`
    let px = Term::app(Term::var("P", ar(i(), o())), Term::var("x", i()));
    let some = Term::lam("P", ar(i(), o()), Term::not(Term::forall("x", i(), Term::not(px))));
    sig.define("some", ar(ar(i(), o()), o()), some).unwrap();
    sig
}

/// Free variables every generated term may mention.
pub fn env() -> HashMap<Name, Type> {
    [("x", i()), ("y", i()), ("P", ar(i(), o())), ("Q", o())]
        .into_iter()
        .map(|(n, t)| (Name::from(n), t))
        .collect()
}

const BINDERS: [&str; 6] = ["x", "y", "P", "Q", "X", "Y"];

pub struct Gen<'a> {
    pub rng: ChaCha8Rng,
    pub sig: &'a Signature,
    pub types: Vec<Type>,
}

impl Gen<'_> {
    fn leaf(&mut self, ty: &Type, scope: &[(Name, Type)]) -> Option<Term> {
        let mut options: Vec<Term> = Vec::new();
        // Innermost binding of each name only.
        let mut seen = Vec::new();
        for (n, t) in scope.iter().rev() {
            if !seen.contains(n) {
                seen.push(n.clone());
                if t == ty {
                    options.push(Term::Var(n.clone(), t.clone()));
                }
            }
        }
        for (n, t) in env() {
            if !seen.contains(&n) && &t == ty {
                options.push(Term::Var(n, t));
            }
        }
        for (n, t) in self.sig.constants() {
            if t == ty {
                options.push(Term::Const(n.clone(), t.clone()));
            }
        }
        if *ty == ar(o(), o()) {
            options.push(Term::Neg);
        }
        if *ty == Type::arrows([o(), o()], o()) {
            options.push(Term::Or);
        }
        if *ty == Type::arrows([i(), i()], o()) {
            options.push(Term::Eq(i()));
        }
        if *ty == ar(ar(i(), o()), o()) {
            options.push(Term::Pi(i()));
        }
        options.choose(&mut self.rng).cloned()
    }

    pub fn term(&mut self, ty: &Type, depth: u32, scope: &mut Vec<(Name, Type)>) -> Term {
        if depth == 0 || self.rng.gen_bool(0.25) {
            if let Some(t) = self.leaf(ty, scope) {
                return t;
            }
        }
        // Without a leaf at depth 0 only abstraction shrinks the goal type.
        let choice = if depth == 0 { 0 } else { self.rng.gen_range(0..4) };
        let depth = depth.saturating_sub(1);
        match (ty, choice) {
            (Type::Arrow(a, b), 0 | 1) => {
                let x = *BINDERS.choose(&mut self.rng).unwrap();
                scope.push((Name::from(x), (**a).clone()));
                let body = self.term(b, depth, scope);
                scope.pop();
                Term::lam(x, (**a).clone(), body)
            }
            (_, 2) if ty.is_bool() => {
                let a = self.term(&o(), depth, scope);
                let b = self.term(&o(), depth, scope);
                Term::or(a, b)
            }
            (_, 3) if ty.is_bool() => {
                let arg_ty = self.types.choose(&mut self.rng).unwrap().clone();
                if self.rng.gen_bool(0.5) {
                    let body = self.term(&ar(arg_ty.clone(), o()), depth, scope);
                    Term::app(Term::Pi(arg_ty), body)
                } else {
                    let a = self.term(&arg_ty, depth, scope);
                    let b = self.term(&arg_ty, depth, scope);
                    Term::eq(arg_ty, a, b)
                }
            }
            _ => {
                // A (possibly redex-forming) application.
                let arg_ty = self.types.choose(&mut self.rng).unwrap().clone();
                let f = self.term(&ar(arg_ty.clone(), ty.clone()), depth, scope);
                let a = self.term(&arg_ty, depth, scope);
                Term::app(f, a)
            }
        }
    }
}

pub fn random_term(seed: u64, sig: &Signature) -> (Term, Type) {
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(seed), sig, types: pool() };
    let ty = g.types.choose(&mut g.rng).unwrap().clone();
    let depth = g.rng.gen_range(1..=5);
    let t = g.term(&ty, depth, &mut Vec::new());
    (t, ty)
}

pub fn well_typed(seed: u64) -> Result<(), TestCaseError> {
    let sig = signature();
    let (t, ty) = random_term(seed, &sig);
    prop_assert_eq!(type_of(&t, &sig, &env()).unwrap(), ty);
    Ok(())
}

pub fn normalization_preserves_types(seed: u64) -> Result<(), TestCaseError> {
    let sig = signature();
    let (t, ty) = random_term(seed, &sig);
    let n = beta_eta_normalize(&t);
    prop_assert_eq!(type_of(&n, &sig, &env()).unwrap(), ty.clone());
    let u = unfold_definitions(&t, &sig);
    prop_assert_eq!(type_of(&u, &sig, &env()).unwrap(), ty);
    prop_assert!(!u.mentions_const("some"));
    Ok(())
}

pub fn normalization_is_idempotent(seed: u64) -> Result<(), TestCaseError> {
    let sig = signature();
    let (t, _) = random_term(seed, &sig);
    let n = beta_eta_normalize(&t);
    prop_assert!(is_normal(&n), "{:?}", n);
    prop_assert!(alpha_equal(&beta_eta_normalize(&n), &n));
    prop_assert!(n.free_vars().is_subset(&t.free_vars()));
    Ok(())
}

/// Substitutes a random term for one of the free variables of [`env`].
pub fn substitution_preserves_types(seed: u64) -> Result<(), TestCaseError> {
    let sig = signature();
    let (t, ty) = random_term(seed, &sig);
    let (x, xty) = [("x", i()), ("y", i()), ("P", ar(i(), o())), ("Q", o())][(seed >> 60) as usize % 4].clone();
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(seed ^ 0x5eed), sig: &sig, types: pool() };
    let s = g.term(&xty, 3, &mut Vec::new());
    let r = substitute(&t, x, &s);
    prop_assert_eq!(type_of(&r, &sig, &env()).unwrap(), ty);
    let mut allowed = t.free_vars();
    allowed.remove(x);
    if t.occurs_free(x) {
        allowed.extend(s.free_vars());
    }
    prop_assert!(r.free_vars().is_subset(&allowed), "captured: {:?} in {:?}", r.free_vars(), r);
    Ok(())
}

pub fn substitution_commutes_with_beta(seed: u64) -> Result<(), TestCaseError> {
    let sig = signature();
    let (t, _) = random_term(seed, &sig);
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(seed.rotate_left(17)), sig: &sig, types: pool() };
    let s = g.term(&i(), 2, &mut Vec::new());
    let lhs = beta_eta_normalize(&Term::app(Term::lam("x", i(), t.clone()), s.clone()));
    let rhs = beta_eta_normalize(&substitute(&t, "x", &s));
    prop_assert!(alpha_equal(&lhs, &rhs), "{:?}\n{:?}", lhs, rhs);
    Ok(())
}

/// `valid (□r ∃P. P)` unfolds to `∀W. ∀V. ¬r W V ∨ ¬∀P. ¬P V`.
pub fn valid_box_exists_prop_unfolds() -> Result<(), String> {
    let mut sig = qml_signature();
    let rel = Type::relation();
    sig.declare("r", rel.clone()).unwrap();
    let r = Term::constant("r", rel);
    let t = m::valid(m::boxed(r.clone(), m::exists_prop("P", m::pvar("P"))));
    let n = unfold_definitions(&t, &sig);

    let w = Type::w();
    let prop = Type::prop();
    let (vw, vv) = (Term::var("W", w.clone()), Term::var("V", w.clone()));
    let p_at_v = Term::app(Term::var("P", prop.clone()), vv.clone());
    let some_prop = Term::not(Term::forall("P", prop, Term::not(p_at_v)));
    let expected = Term::forall(
        "W",
        w.clone(),
        Term::forall("V", w, Term::or(Term::not(Term::apps(r, [vw, vv])), some_prop)),
    );
    if !alpha_equal(&n, &expected) || !is_normal(&n) {
        return Err(format!("{n:?}"));
    }
    match type_of(&n, &sig, &HashMap::new()) {
        Ok(ty) if ty == Type::o() => Ok(()),
        other => Err(format!("type {other:?}")),
    }
}
