use std::fmt;
use std::str::FromStr;

use super::problem::Problem;
use super::qml::{m, qml_signature, ModalSignature};
use super::EmbedError;
use crate::frames::{FrameProperty, ModalAxiom};
use crate::logics::Expectation;
use crate::stt::{Signature, Term, Type};

fn rel() -> Type {
    Type::relation()
}

/// Type of a frame property: `(w > w > o) > o`.
pub fn frame_property_type() -> Type {
    Type::arrow(rel(), Type::o())
}

/// The closed λR-term for a frame property.
pub fn frame_property(p: FrameProperty) -> Term {
    let w = Type::w;
    let r = || Term::var("R", rel());
    let v = |n: &str| Term::var(n, w());
    let rr = |a: &str, b: &str| Term::apps(r(), [v(a), v(b)]);
    let eq = |a: &str, b: &str| Term::eq(w(), v(a), v(b));
    let all = |names: &[&str], body: Term| Term::forall_many(names, w(), body);
    let ex = |n: &str, body: Term| Term::exists(n, w(), body);
    let st_su = || Term::and(rr("S", "T"), rr("S", "U"));
    let body = match p {
        FrameProperty::Reflexive => all(&["S"], rr("S", "S")),
        FrameProperty::Symmetric => all(&["S", "T"], Term::implies(rr("S", "T"), rr("T", "S"))),
        FrameProperty::Serial => all(&["S"], ex("T", rr("S", "T"))),
        FrameProperty::Transitive => all(
            &["S", "T", "U"],
            Term::implies(Term::and(rr("S", "T"), rr("T", "U")), rr("S", "U")),
        ),
        FrameProperty::Euclidean => all(&["S", "T", "U"], Term::implies(st_su(), rr("T", "U"))),
        FrameProperty::PartiallyFunctional => all(&["S", "T", "U"], Term::implies(st_su(), eq("T", "U"))),
        FrameProperty::Functional => all(
            &["S"],
            ex(
                "T",
                Term::and(rr("S", "T"), all(&["U"], Term::implies(rr("S", "U"), eq("T", "U")))),
            ),
        ),
        FrameProperty::WeaklyDense => all(
            &["S", "T"],
            Term::implies(rr("S", "T"), ex("U", Term::and(rr("S", "U"), rr("U", "T")))),
        ),
        FrameProperty::WeaklyConnected => all(
            &["S", "T", "U"],
            Term::implies(st_su(), Term::or(Term::or(rr("T", "U"), eq("T", "U")), rr("U", "T"))),
        ),
        FrameProperty::WeaklyDirected => all(
            &["S", "T", "U"],
            Term::implies(st_su(), ex("V", Term::and(rr("T", "V"), rr("U", "V")))),
        ),
    };
    Term::lam("R", rel(), body)
}

/// Defines the named constant for `p` unless already present.
pub fn add_frame_definition(sig: &mut Signature, p: FrameProperty) {
    if sig.constant_type(p.name()).is_none() {
        sig.define(p.name(), frame_property_type(), frame_property(p))
            .expect("frame properties are well typed");
    }
}

/// `p r` with `p` the defined constant.
pub fn frame_term(p: FrameProperty, r: Term) -> Term {
    Term::app(Term::constant(p.name(), frame_property_type()), r)
}

/// The axiom schema as a term of type `w > o`, quantifying its
/// propositional variables with the modal quantifier.
pub fn modal_axiom(a: ModalAxiom, r: Term) -> Term {
    let phi = || m::pvar("Phi");
    let psi = || m::pvar("Psi");
    let bx = |t: Term| m::boxed(r.clone(), t);
    let dia = |t: Term| m::dia(r.clone(), t);
    let body = match a {
        ModalAxiom::M => m::implies(bx(phi()), phi()),
        ModalAxiom::B => m::implies(phi(), bx(dia(phi()))),
        ModalAxiom::D => m::implies(bx(phi()), dia(phi())),
        ModalAxiom::Four => m::implies(bx(phi()), bx(bx(phi()))),
        ModalAxiom::Five => m::implies(dia(phi()), bx(dia(phi()))),
        ModalAxiom::Cd => m::implies(dia(phi()), bx(phi())),
        ModalAxiom::Fun => m::equiv(dia(phi()), bx(phi())),
        ModalAxiom::C4 => m::implies(bx(bx(phi())), bx(phi())),
        ModalAxiom::Three => {
            let left = bx(m::implies(m::and(phi(), bx(phi())), psi()));
            let right = bx(m::implies(m::and(psi(), bx(psi())), phi()));
            return m::forall_prop("Phi", m::forall_prop("Psi", m::or(left, right)));
        }
        ModalAxiom::Two => m::implies(dia(bx(phi())), bx(dia(phi()))),
    };
    m::forall_prop("Phi", body)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// The frame property implies validity of the axiom.
    Forward,
    /// Validity of the axiom implies the frame property.
    Backward,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Forward => "fwd",
            Direction::Backward => "bwd",
        }
    }
}

/// `∀R. p R ⇒ valid A_R` or its converse.
pub fn correspondence_problem(p: FrameProperty, dir: Direction) -> Problem {
    let mut sig = qml_signature();
    add_frame_definition(&mut sig, p);
    let r = Term::var("R", rel());
    let prop = frame_term(p, r.clone());
    let axiom = m::valid(modal_axiom(p.axiom(), r));
    let body = match dir {
        Direction::Forward => Term::implies(prop, axiom),
        Direction::Backward => Term::implies(axiom, prop),
    };
    let name = format!("corr-{}-{}", p.name().replace('_', "-"), dir.name());
    Problem::new(&name, sig, Term::forall("R", rel(), body)).expecting(Expectation::Theorem)
}

/// A normal modal logic named by its axioms, e.g. `M5` or `KB5`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxiomSystem {
    pub name: String,
    pub axioms: Vec<ModalAxiom>,
}

impl FromStr for AxiomSystem {
    type Err = EmbedError;

    fn from_str(s: &str) -> Result<Self, EmbedError> {
        let mut axioms = Vec::new();
        for (i, c) in s.chars().enumerate() {
            let a = match c {
                'K' if i == 0 => continue,
                'M' | 'T' => ModalAxiom::M,
                'B' => ModalAxiom::B,
                'D' => ModalAxiom::D,
                '4' => ModalAxiom::Four,
                '5' => ModalAxiom::Five,
                _ => return Err(EmbedError::unknown("axiom system", s)),
            };
            if axioms.contains(&a) {
                return Err(EmbedError::unknown("axiom system", s));
            }
            axioms.push(a);
        }
        Ok(AxiomSystem { name: s.to_string(), axioms })
    }
}

impl fmt::Display for AxiomSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// The frame properties corresponding to the axioms of `name`.
pub fn axiom_system(name: &str) -> Result<Vec<FrameProperty>, EmbedError> {
    Ok(name.parse::<AxiomSystem>()?.axioms.into_iter().map(|a| a.property()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemRelation {
    Equivalent,
    Implies,
}

/// Conjunction over the system's characterization of `r`: frame conditions,
/// or validity of the axiom schemata when `schema` is set.
fn system_condition(sys: &AxiomSystem, r: &Term, schema: bool) -> Term {
    let parts = sys.axioms.iter().map(|a| {
        if schema {
            m::valid(modal_axiom(*a, r.clone()))
        } else {
            frame_term(a.property(), r.clone())
        }
    });
    Term::and_all(parts).unwrap_or_else(Term::truth)
}

/// `∀R. lhs(R) ⇔ rhs(R)` or `∀R. lhs(R) ⇒ rhs(R)`.
pub fn system_problem(
    name: &str,
    lhs: &str,
    rel_kind: SystemRelation,
    rhs: &str,
    schema: bool,
) -> Result<Problem, EmbedError> {
    let (l, r) = (lhs.parse::<AxiomSystem>()?, rhs.parse::<AxiomSystem>()?);
    let mut sig = qml_signature();
    if !schema {
        for a in l.axioms.iter().chain(&r.axioms) {
            add_frame_definition(&mut sig, a.property());
        }
    }
    let var = Term::var("R", rel());
    let (a, b) = (system_condition(&l, &var, schema), system_condition(&r, &var, schema));
    let body = match rel_kind {
        SystemRelation::Equivalent => Term::iff(a, b),
        SystemRelation::Implies => Term::implies(a, b),
    };
    let mut p = Problem::new(name, sig, Term::forall("R", rel(), body));
    p.origin = super::problem::Origin::Builder(format!("{name}{}", if schema { " (schema)" } else { "" }));
    Ok(p)
}

/// The Barcan formula and its converse over `p : i > (w > o)`.
pub fn barcan_problems() -> (Problem, Problem) {
    let mut msig = ModalSignature::new();
    let r = msig.add_index("r").expect("fresh");
    let p = msig.add_pred("p", 1).expect("fresh");
    let px = || Term::app(p.clone(), Term::var("X", Type::i()));
    let bf = m::implies(
        m::forall_ind("X", m::boxed(r.clone(), px())),
        m::boxed(r.clone(), m::forall_ind("X", px())),
    );
    let cbf = m::implies(
        m::boxed(r.clone(), m::forall_ind("X", px())),
        m::forall_ind("X", m::boxed(r.clone(), px())),
    );
    let a = Problem::new("barcan", msig.signature.clone(), m::valid(bf)).expecting(Expectation::Theorem);
    let b = Problem::new("barcan-converse", msig.signature, m::valid(cbf)).expecting(Expectation::Theorem);
    (a, b)
}

/// `(valid ∀φ. ◇_i □_j φ ⊃ □_k ◇_l φ) ⇔ (i,j,k,l)-confluence`.
pub fn confluence_problem() -> Problem {
    let mut msig = ModalSignature::new();
    let [i, j, k, l] = ["i", "j", "k", "l"].map(|n| msig.add_index(n).expect("fresh"));
    let phi = m::pvar("Phi");
    let axiom = m::valid(m::forall_prop(
        "Phi",
        m::implies(m::dia(i.clone(), m::boxed(j.clone(), phi.clone())), m::boxed(k.clone(), m::dia(l.clone(), phi))),
    ));
    let v = |n: &str| Term::var(n, Type::w());
    let rr = |r: &Term, a: &str, b: &str| Term::apps(r.clone(), [v(a), v(b)]);
    let frame = Term::forall_many(
        &["A", "B", "C"],
        Type::w(),
        Term::implies(
            Term::and(rr(&i, "A", "B"), rr(&k, "A", "C")),
            Term::exists("D", Type::w(), Term::and(rr(&j, "B", "D"), rr(&l, "C", "D"))),
        ),
    );
    Problem::new("confluence", msig.signature, Term::iff(axiom, frame)).expecting(Expectation::Theorem)
}

fn add_frames(msig: &mut ModalSignature, p: &mut Vec<(String, Term)>, r: &Term, rname: &str, props: &[FrameProperty]) {
    for fp in props {
        add_frame_definition(&mut msig.signature, *fp);
        p.push((format!("{}_{rname}", fp.name()), frame_term(*fp, r.clone())));
    }
}

/// Two S5 modalities that commute; orthogonality follows.
pub fn segerberg_problem() -> Problem {
    let mut msig = ModalSignature::new();
    let a = msig.add_index("a").expect("fresh");
    let b = msig.add_index("b").expect("fresh");
    let s5 = [FrameProperty::Reflexive, FrameProperty::Transitive, FrameProperty::Euclidean];
    let mut axioms = Vec::new();
    add_frames(&mut msig, &mut axioms, &a, "a", &s5);
    add_frames(&mut msig, &mut axioms, &b, "b", &s5);
    let phi = || m::pvar("Phi");
    let psi = || m::pvar("Psi");
    let bx = |r: &Term, t: Term| m::boxed(r.clone(), t);
    let commute = m::valid(m::forall_prop("Phi", m::equiv(bx(&a, bx(&b, phi())), bx(&b, bx(&a, phi())))));
    axioms.push(("commute".into(), commute));
    let orth = |r: &Term| {
        m::valid(m::forall_prop(
            "Phi",
            m::forall_prop(
                "Psi",
                m::implies(
                    bx(r, m::or(bx(&a, phi()), bx(&b, psi()))),
                    m::or(bx(r, phi()), bx(r, psi())),
                ),
            ),
        ))
    };
    let conj = Term::and(orth(&a), orth(&b));
    let mut p = Problem::new("segerberg", msig.signature, conj).expecting(Expectation::Theorem);
    for (n, t) in axioms {
        p = p.with_axiom(&n, t);
    }
    p
}

/// S5 knowledge and D45 belief with two linking axioms; does belief imply knowledge?
pub fn knowledge_belief_problem() -> Problem {
    let mut msig = ModalSignature::new();
    let k = msig.add_index("k").expect("fresh");
    let b = msig.add_index("b").expect("fresh");
    let mut axioms = Vec::new();
    add_frames(
        &mut msig,
        &mut axioms,
        &k,
        "k",
        &[FrameProperty::Reflexive, FrameProperty::Transitive, FrameProperty::Euclidean],
    );
    add_frames(
        &mut msig,
        &mut axioms,
        &b,
        "b",
        &[FrameProperty::Serial, FrameProperty::Transitive, FrameProperty::Euclidean],
    );
    let phi = || m::pvar("Phi");
    let bx = |r: &Term, t: Term| m::boxed(r.clone(), t);
    let schema = |body: Term| m::valid(m::forall_prop("Phi", body));
    axioms.push(("knowledge_to_belief".into(), schema(m::implies(bx(&k, phi()), bx(&b, phi())))));
    axioms.push(("belief_introspection".into(), schema(m::implies(bx(&b, phi()), bx(&b, bx(&k, phi()))))));
    let conj = schema(m::implies(bx(&b, phi()), bx(&k, phi())));
    let mut p = Problem::new("knowledge-belief", msig.signature, conj).expecting(Expectation::Theorem);
    for (n, t) in axioms {
        p = p.with_axiom(&n, t);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stt::type_of;
    use std::collections::HashMap;

    #[test]
    fn properties_and_axioms_type_check() {
        let mut sig = qml_signature();
        sig.declare("r", rel()).unwrap();
        for p in FrameProperty::ALL {
            assert_eq!(
                type_of(&frame_property(p), &qml_signature(), &HashMap::new()).unwrap(),
                frame_property_type()
            );
            let a = modal_axiom(p.axiom(), Term::constant("r", rel()));
            assert_eq!(type_of(&a, &sig, &HashMap::new()).unwrap(), Type::prop());
        }
    }

    #[test]
    fn correspondence_problems_type_check() {
        for p in FrameProperty::ALL {
            for d in [Direction::Forward, Direction::Backward] {
                correspondence_problem(p, d).check().unwrap();
            }
        }
    }

    #[test]
    fn systems() {
        use FrameProperty::*;
        assert_eq!(axiom_system("M5").unwrap(), vec![Reflexive, Euclidean]);
        assert_eq!(axiom_system("D4B").unwrap(), vec![Serial, Transitive, Symmetric]);
        assert_eq!(axiom_system("KB5").unwrap(), vec![Symmetric, Euclidean]);
        assert!(axiom_system("MX").is_err());
        for schema in [false, true] {
            system_problem("x", "M5", SystemRelation::Equivalent, "D4B", schema).unwrap().check().unwrap();
        }
    }

    #[test]
    fn builders_type_check() {
        let (a, b) = barcan_problems();
        a.check().unwrap();
        b.check().unwrap();
        confluence_problem().check().unwrap();
        segerberg_problem().check().unwrap();
        knowledge_belief_problem().check().unwrap();
        assert_eq!(segerberg_problem().axioms.len(), 7);
        assert_eq!(knowledge_belief_problem().axioms.len(), 8);
    }
}
