use super::frames::{add_frame_definition, frame_term, modal_axiom};
use super::problem::Problem;
use super::qml::{m, ModalSignature};
use super::EmbedError;
use crate::frames::{FrameProperty, ModalAxiom};
use crate::logics::{IplFormula, IplMode, QmlFormula};
use crate::stt::{Name, Signature, Term, Type};

/// The single accessibility relation of the intuitionistic embedding.
pub const IPL_RELATION: &str = "r";

pub const IPL_DEFINITIONS: [&str; 4] = ["inot", "iimplies", "ior", "iand"];

fn prop() -> Type {
    Type::prop()
}

fn ipl_type(name: &str) -> Type {
    match name {
        "inot" => Type::arrow(prop(), prop()),
        _ => Type::arrows([prop(), prop()], prop()),
    }
}

pub fn ipl_const(name: &str) -> Term {
    Term::constant(name, ipl_type(name))
}

fn definition(name: &str) -> Term {
    let r = Term::constant(IPL_RELATION, Type::relation());
    let w = || Term::var("W", Type::w());
    let phi = || Term::var("Phi", prop());
    let psi = || Term::var("Psi", prop());
    // ∀V. ¬ r W V ∨ f V
    let boxed = |f: Term| {
        let v = Term::var("V", Type::w());
        Term::forall(
            "V",
            Type::w(),
            Term::or(Term::not(Term::apps(r.clone(), [w(), v.clone()])), Term::app(f, v)),
        )
    };
    let lam2 = |b: Term| Term::lam("Phi", prop(), Term::lam("Psi", prop(), Term::lam("W", Type::w(), b)));
    match name {
        "inot" => Term::lam("Phi", prop(), Term::lam("W", Type::w(), Term::not(boxed(phi())))),
        "iimplies" => lam2(Term::or(Term::not(boxed(phi())), boxed(psi()))),
        "ior" => lam2(Term::or(boxed(phi()), boxed(psi()))),
        "iand" => lam2(Term::not(Term::or(
            Term::not(Term::app(phi(), w())),
            Term::not(Term::app(psi(), w())),
        ))),
        _ => unreachable!("not an intuitionistic connective: {name}"),
    }
}

/// Modal signature with `r` and the four intuitionistic connectives.
pub fn ipl_signature(atoms: &[Name]) -> Result<ModalSignature, EmbedError> {
    let mut msig = ModalSignature::new();
    msig.add_index(IPL_RELATION)?;
    for name in IPL_DEFINITIONS {
        msig.signature.define(name, ipl_type(name), definition(name))?;
    }
    for a in atoms {
        msig.add_pred(a, 0)?;
    }
    Ok(msig)
}

/// Compiles an intuitionistic formula over the defined connectives.
pub fn embed_ipl(f: &IplFormula, sig: &Signature) -> Result<Term, EmbedError> {
    Ok(match f {
        IplFormula::Atom(p) => sig.constant(p).ok_or_else(|| EmbedError::unknown("atom", p))?,
        IplFormula::Neg(a) => Term::app(ipl_const("inot"), embed_ipl(a, sig)?),
        IplFormula::Implies(a, b) => Term::apps(ipl_const("iimplies"), [embed_ipl(a, sig)?, embed_ipl(b, sig)?]),
        IplFormula::Or(a, b) => Term::apps(ipl_const("ior"), [embed_ipl(a, sig)?, embed_ipl(b, sig)?]),
        IplFormula::And(a, b) => Term::apps(ipl_const("iand"), [embed_ipl(a, sig)?, embed_ipl(b, sig)?]),
    })
}

/// Gödel's translation into S4 over the index `r`; atoms map to themselves.
pub fn godel_translate(f: &IplFormula) -> QmlFormula {
    let bx = |g: &IplFormula| QmlFormula::boxed(IPL_RELATION, godel_translate(g));
    match f {
        IplFormula::Atom(p) => QmlFormula::Atom(p.clone(), Vec::new()),
        IplFormula::Neg(a) => QmlFormula::neg(bx(a)),
        IplFormula::Implies(a, b) => QmlFormula::implies(bx(a), bx(b)),
        IplFormula::Or(a, b) => QmlFormula::or(bx(a), bx(b)),
        IplFormula::And(a, b) => QmlFormula::and(godel_translate(a), godel_translate(b)),
    }
}

/// `(valid M_r ∧ valid 4_r) ⇒ valid f̂`, or with the frame conditions
/// `reflexive r ∧ transitive r` as premise.
pub fn build_ipl_problem(f: &IplFormula, mode: IplMode, name: &str, atoms: &[Name]) -> Result<Problem, EmbedError> {
    let mut all: Vec<Name> = atoms.to_vec();
    for a in f.atoms() {
        if !all.contains(&a) {
            all.push(a);
        }
    }
    let mut msig = ipl_signature(&all)?;
    let r = msig.index(IPL_RELATION)?.clone();
    let premise = match mode {
        IplMode::S4Schema => Term::and(
            m::valid(modal_axiom(ModalAxiom::M, r.clone())),
            m::valid(modal_axiom(ModalAxiom::Four, r)),
        ),
        IplMode::FrameConditions => {
            add_frame_definition(&mut msig.signature, FrameProperty::Reflexive);
            add_frame_definition(&mut msig.signature, FrameProperty::Transitive);
            Term::and(frame_term(FrameProperty::Reflexive, r.clone()), frame_term(FrameProperty::Transitive, r))
        }
    };
    let body = m::valid(embed_ipl(f, &msig.signature)?);
    Ok(Problem::new(name, msig.signature, Term::implies(premise, body)))
}
