use std::collections::HashMap;

use indexmap::{IndexMap, IndexSet};
use thiserror::Error;

use super::term::Term;
use super::types::{Name, Type, BOOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TypeError {
    #[error("unknown constant `{0}`")]
    UnknownConstant(Name),
    #[error("unbound variable `{0}`")]
    UnboundVariable(Name),
    #[error("unknown base type `{0}`")]
    UnknownBaseType(Name),
    #[error("constant `{name}` is declared as {declared} but used at {used}")]
    ConstantTypeMismatch { name: Name, declared: Type, used: Type },
    #[error("variable `{name}` is bound at {bound} but annotated {annotated}")]
    VariableTypeMismatch { name: Name, bound: Type, annotated: Type },
    #[error("in `{term}`: argument `{arg}` has type {found}, expected {expected}")]
    ArgumentMismatch {
        term: Term,
        arg: Term,
        expected: Type,
        found: Type,
    },
    #[error("in `{term}`: `{head}` has non-function type {ty}")]
    NotAFunction { term: Term, head: Term, ty: Type },
    #[error("`{term}` has type {found}, expected {expected}")]
    Expected { term: Term, expected: Type, found: Type },
}

#[derive(Debug, Error)]
pub enum SignatureError {
    #[error("symbol `{0}` is already declared")]
    Duplicate(Name),
    #[error("definition of `{0}` is not closed")]
    OpenDefinition(Name),
    #[error("definition of `{name}`: {source}")]
    IllTyped {
        name: Name,
        #[source]
        source: TypeError,
    },
}

/// Base types, typed constants and (acyclic) definitions.
///
/// Definitions may only mention constants declared before them, so the
/// definition graph is acyclic by construction.
#[derive(Debug, Clone, Default)]
pub struct Signature {
    bases: IndexSet<Name>,
    constants: IndexMap<Name, Type>,
    definitions: IndexMap<Name, Term>,
}

impl Signature {
    /// A signature with only the boolean base type.
    pub fn new() -> Self {
        let mut sig = Signature::default();
        sig.bases.insert(Name::from(BOOL));
        sig
    }

    pub fn declare_base(&mut self, name: &str) -> Result<(), SignatureError> {
        if !self.bases.insert(Name::from(name)) {
            return Err(SignatureError::Duplicate(Name::from(name)));
        }
        Ok(())
    }

    /// Declares a base type unless present.
    pub fn ensure_base(&mut self, name: &str) {
        self.bases.insert(Name::from(name));
    }

    pub fn declare(&mut self, name: &str, ty: Type) -> Result<(), SignatureError> {
        if self.constants.contains_key(name) {
            return Err(SignatureError::Duplicate(Name::from(name)));
        }
        self.constants.insert(Name::from(name), ty);
        Ok(())
    }

    /// Declares `name : ty` with `name := body`. The body must be closed and
    /// of type `ty` over the constants declared so far.
    pub fn define(&mut self, name: &str, ty: Type, body: Term) -> Result<(), SignatureError> {
        if self.constants.contains_key(name) {
            return Err(SignatureError::Duplicate(Name::from(name)));
        }
        if !body.is_closed() {
            return Err(SignatureError::OpenDefinition(Name::from(name)));
        }
        let found = type_of(&body, self, &HashMap::new()).map_err(|source| SignatureError::IllTyped {
            name: Name::from(name),
            source,
        })?;
        if found != ty {
            return Err(SignatureError::IllTyped {
                name: Name::from(name),
                source: TypeError::Expected { term: body, expected: ty, found },
            });
        }
        self.constants.insert(Name::from(name), ty);
        self.definitions.insert(Name::from(name), body);
        Ok(())
    }

    /// Copies every declaration of `other` not yet present here.
    pub fn merge(&mut self, other: &Signature) {
        for b in &other.bases {
            self.bases.insert(b.clone());
        }
        for (n, ty) in &other.constants {
            if !self.constants.contains_key(n) {
                self.constants.insert(n.clone(), ty.clone());
                if let Some(d) = other.definitions.get(n) {
                    self.definitions.insert(n.clone(), d.clone());
                }
            }
        }
    }

    pub fn bases(&self) -> impl Iterator<Item = &Name> {
        self.bases.iter()
    }

    pub fn has_base(&self, name: &str) -> bool {
        self.bases.contains(name)
    }

    pub fn constant_type(&self, name: &str) -> Option<&Type> {
        self.constants.get(name)
    }

    pub fn definition(&self, name: &str) -> Option<&Term> {
        self.definitions.get(name)
    }

    pub fn is_defined(&self, name: &str) -> bool {
        self.definitions.contains_key(name)
    }

    /// All constants in declaration order, defined ones included.
    pub fn constants(&self) -> impl Iterator<Item = (&Name, &Type)> {
        self.constants.iter()
    }

    /// Constants without a definition, in declaration order.
    pub fn uninterpreted(&self) -> impl Iterator<Item = (&Name, &Type)> {
        self.constants
            .iter()
            .filter(|(n, _)| !self.definitions.contains_key(*n))
    }

    pub fn definitions(&self) -> impl Iterator<Item = (&Name, &Term)> {
        self.definitions.iter()
    }

    /// Constant term for a declared symbol.
    pub fn constant(&self, name: &str) -> Option<Term> {
        self.constants
            .get_key_value(name)
            .map(|(n, ty)| Term::Const(n.clone(), ty.clone()))
    }

    fn check_type(&self, ty: &Type) -> Result<(), TypeError> {
        match ty {
            Type::Base(n) if self.bases.contains(n) => Ok(()),
            Type::Base(n) => Err(TypeError::UnknownBaseType(n.clone())),
            Type::Arrow(d, c) => {
                self.check_type(d)?;
                self.check_type(c)
            }
        }
    }
}

/// The unique type of `t` under `sig` and the free-variable typing `env`.
pub fn type_of(t: &Term, sig: &Signature, env: &HashMap<Name, Type>) -> Result<Type, TypeError> {
    let mut scope: Vec<(Name, Type)> = Vec::new();
    infer(t, sig, env, &mut scope)
}

/// Checks `t : expected`.
pub fn check_type(t: &Term, sig: &Signature, expected: &Type) -> Result<(), TypeError> {
    let found = type_of(t, sig, &HashMap::new())?;
    if &found != expected {
        return Err(TypeError::Expected {
            term: t.clone(),
            expected: expected.clone(),
            found,
        });
    }
    Ok(())
}

fn infer(
    t: &Term,
    sig: &Signature,
    env: &HashMap<Name, Type>,
    scope: &mut Vec<(Name, Type)>,
) -> Result<Type, TypeError> {
    match t {
        Term::Const(n, ty) => {
            let declared = sig
                .constant_type(n)
                .ok_or_else(|| TypeError::UnknownConstant(n.clone()))?;
            if declared != ty {
                return Err(TypeError::ConstantTypeMismatch {
                    name: n.clone(),
                    declared: declared.clone(),
                    used: ty.clone(),
                });
            }
            Ok(ty.clone())
        }
        Term::Var(n, ty) => {
            let bound = scope
                .iter()
                .rev()
                .find(|(m, _)| m == n)
                .map(|(_, ty)| ty)
                .or_else(|| env.get(n))
                .ok_or_else(|| TypeError::UnboundVariable(n.clone()))?;
            if bound != ty {
                return Err(TypeError::VariableTypeMismatch {
                    name: n.clone(),
                    bound: bound.clone(),
                    annotated: ty.clone(),
                });
            }
            Ok(ty.clone())
        }
        Term::Lam(x, ty, body) => {
            sig.check_type(ty)?;
            scope.push((x.clone(), ty.clone()));
            let res = infer(body, sig, env, scope);
            scope.pop();
            Ok(Type::arrow(ty.clone(), res?))
        }
        Term::App(f, a) => {
            let fty = infer(f, sig, env, scope)?;
            let aty = infer(a, sig, env, scope)?;
            match fty {
                Type::Arrow(d, c) => {
                    if *d != aty {
                        return Err(TypeError::ArgumentMismatch {
                            term: t.clone(),
                            arg: (**a).clone(),
                            expected: (*d).clone(),
                            found: aty,
                        });
                    }
                    Ok((*c).clone())
                }
                ty @ Type::Base(_) => Err(TypeError::NotAFunction {
                    term: t.clone(),
                    head: (**f).clone(),
                    ty,
                }),
            }
        }
        Term::Neg => Ok(Type::arrow(Type::o(), Type::o())),
        Term::Or => Ok(Type::arrows([Type::o(), Type::o()], Type::o())),
        Term::Eq(ty) => {
            sig.check_type(ty)?;
            Ok(Type::arrows([ty.clone(), ty.clone()], Type::o()))
        }
        Term::Pi(ty) => {
            sig.check_type(ty)?;
            Ok(Type::arrow(Type::arrow(ty.clone(), Type::o()), Type::o()))
        }
    }
}
