use super::frames::{add_frame_definition, frame_term};
use super::ipl::build_ipl_problem;
use super::qml::{embed_qml, m, ModalSignature};
use super::rcc::{embed_fo, rcc_signature_and_definitions};
use super::EmbedError;
use crate::logics::{Expectation, FreeKind, Logic, ProblemSource, SourceFormula};
use crate::stt::{check_type, Name, Signature, Term, Type};

#[derive(Debug, Clone, PartialEq)]
pub struct NamedFormula {
    pub name: String,
    pub term: Term,
}

impl NamedFormula {
    pub fn new(name: impl Into<String>, term: Term) -> Self {
        NamedFormula { name: name.into(), term }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Origin {
    Source(Box<ProblemSource>),
    Builder(String),
}

/// Axioms entail the conjecture, all of type `o` over `signature`.
#[derive(Debug, Clone)]
pub struct Problem {
    pub name: String,
    pub signature: Signature,
    pub axioms: Vec<NamedFormula>,
    pub conjecture: NamedFormula,
    pub expected: Expectation,
    pub origin: Origin,
    /// Preferred assignment order of uninterpreted constants for model search.
    pub search_order: Option<Vec<Name>>,
}

impl Problem {
    pub fn new(name: &str, signature: Signature, conjecture: Term) -> Self {
        Problem {
            name: name.to_string(),
            signature,
            axioms: Vec::new(),
            conjecture: NamedFormula::new("conj", conjecture),
            expected: Expectation::Unknown,
            origin: Origin::Builder(name.to_string()),
            search_order: None,
        }
    }

    pub fn with_axiom(mut self, name: &str, term: Term) -> Self {
        self.axioms.push(NamedFormula::new(name, term));
        self
    }

    pub fn expecting(mut self, e: Expectation) -> Self {
        self.expected = e;
        self
    }

    /// Checks that every axiom and the conjecture has type `o`.
    pub fn check(&self) -> Result<(), EmbedError> {
        for f in self.axioms.iter().chain(std::iter::once(&self.conjecture)) {
            check_type(&f.term, &self.signature, &Type::o())
                .map_err(|e| EmbedError::Formula { name: f.name.clone(), source: e })?;
        }
        Ok(())
    }

    pub fn formulas(&self) -> impl Iterator<Item = &NamedFormula> {
        self.axioms.iter().chain(std::iter::once(&self.conjecture))
    }
}

/// Builds a problem from a parsed `.lgp` file. Builtin entries are resolved
/// by the corpus, not here.
pub fn problem_from_source(src: &ProblemSource) -> Result<Problem, EmbedError> {
    let conjecture = src.conjecture.as_ref();
    let mut p = match src.logic {
        Logic::Builtin => {
            return Err(EmbedError::Builtin(src.builtin.clone().unwrap_or_default()));
        }
        Logic::Ipl => {
            let Some(SourceFormula::Ipl(f)) = conjecture else {
                return Err(EmbedError::Malformed("propositional problem without conjecture".into()));
            };
            if !src.axioms.is_empty() {
                return Err(EmbedError::Malformed("propositional problems take no axioms".into()));
            }
            let atoms: Vec<Name> = src.preds.iter().map(|(p, _)| p.clone()).collect();
            build_ipl_problem(f, src.mode.unwrap_or_default(), &src.name, &atoms)?
        }
        Logic::Qml => qml_problem(src)?,
        Logic::FoRcc => fo_problem(src)?,
    };
    p.expected = src.expected;
    p.origin = Origin::Source(Box::new(src.clone()));
    p.check()?;
    Ok(p)
}

fn qml_problem(src: &ProblemSource) -> Result<Problem, EmbedError> {
    let mut msig = ModalSignature::new();
    for r in &src.indices {
        msig.add_index(r)?;
    }
    for (k, n) in &src.preds {
        msig.add_pred(k, *n)?;
    }
    for (c, _) in &src.consts {
        msig.add_const(c)?;
    }
    for (v, kind) in &src.free {
        match kind {
            FreeKind::Ind => msig.add_const(v)?,
            FreeKind::Prop => msig.add_prop(v)?,
        };
    }
    for a in &src.axioms {
        if let SourceFormula::Frame(p, _) = a {
            add_frame_definition(&mut msig.signature, *p);
        }
    }
    let mut axioms = Vec::new();
    for (i, a) in src.axioms.iter().enumerate() {
        let (name, term) = match a {
            SourceFormula::Qml(f) => (format!("axiom_{}", i + 1), m::valid(embed_qml(f, &msig)?)),
            SourceFormula::Frame(p, r) => (format!("{}_{}", p.name(), r), frame_term(*p, msig.index(r)?.clone())),
            _ => return Err(EmbedError::Malformed("modal problem with a non-modal axiom".into())),
        };
        axioms.push(NamedFormula::new(name, term));
    }
    let conj = match &src.conjecture {
        Some(SourceFormula::Qml(f)) => m::valid(embed_qml(f, &msig)?),
        Some(SourceFormula::Frame(p, r)) => frame_term(*p, msig.index(r)?.clone()),
        _ => return Err(EmbedError::Malformed("modal problem without modal conjecture".into())),
    };
    let mut p = Problem::new(&src.name, msig.signature, conj);
    p.axioms = axioms;
    Ok(p)
}

fn fo_problem(src: &ProblemSource) -> Result<Problem, EmbedError> {
    let (mut sig, rcc_axioms) = rcc_signature_and_definitions();
    for (c, ty) in &src.consts {
        sig.declare(c, Type::base(ty))?;
    }
    for (k, n) in &src.preds {
        sig.declare(k, Type::arrows(vec![Type::base(crate::logics::REGION); *n], Type::o()))?;
    }
    let mut axioms = rcc_axioms;
    for (i, a) in src.axioms.iter().enumerate() {
        let SourceFormula::Fo(f) = a else {
            return Err(EmbedError::Malformed("region problem with a non-first-order axiom".into()));
        };
        axioms.push(NamedFormula::new(format!("axiom_{}", i + 1), embed_fo(f, &sig)?));
    }
    let Some(SourceFormula::Fo(c)) = &src.conjecture else {
        return Err(EmbedError::Malformed("region problem without first-order conjecture".into()));
    };
    let conj = embed_fo(c, &sig)?;
    let mut p = Problem::new(&src.name, sig, conj);
    p.axioms = axioms;
    Ok(p)
}
