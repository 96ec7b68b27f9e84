//! The named problems with their expected statuses.

mod export;

pub use export::{export_corpus, ExportError};

use std::fmt::Write as _;

use crate::embed::{
    barcan_problems, confluence_problem, correspondence_problem, knowledge_belief_problem, m,
    problem_from_source, rcc_signature_and_definitions, segerberg_problem, system_problem, Direction,
    EmbedError, ModalSignature, Origin, Problem, SystemRelation,
};
use crate::frames::FrameProperty;
use crate::logics::{parse_problem, Expectation, Logic, ParseError, ProblemSource, REGION};
use crate::semantics::Bounds;
use crate::stt::{Term, Type};

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("unknown corpus entry `{0}`")]
    UnknownId(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// Where an entry's problem comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntrySource {
    /// A `.lgp` text.
    Text,
    /// A builder function; exported as `logic builtin`.
    Builtin,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub expected: Expectation,
    /// TPTP problem name, where the problem is in the library.
    pub tptp: Option<String>,
    pub source: EntrySource,
    /// Search bounds for the finite check.
    pub bounds: Bounds,
    pub summary: String,
}

/// Frame-property system pairs: `(id, lhs, relation, rhs)`.
pub const SYSTEM_PROBLEMS: [(&str, &str, SystemRelation, &str); 11] = [
    ("s5-equiv-mb5", "M5", SystemRelation::Equivalent, "MB5"),
    ("s5-equiv-m4b5", "M5", SystemRelation::Equivalent, "M4B5"),
    ("s5-equiv-m45", "M5", SystemRelation::Equivalent, "M45"),
    ("s5-equiv-m4b", "M5", SystemRelation::Equivalent, "M4B"),
    ("s5-equiv-d4b", "M5", SystemRelation::Equivalent, "D4B"),
    ("s5-equiv-d4b5", "M5", SystemRelation::Equivalent, "D4B5"),
    ("s5-equiv-db5", "M5", SystemRelation::Equivalent, "DB5"),
    ("kb5-equiv-k4b5", "KB5", SystemRelation::Equivalent, "K4B5"),
    ("kb5-equiv-k4b", "KB5", SystemRelation::Equivalent, "K4B"),
    ("m5-implies-d45", "M5", SystemRelation::Implies, "D45"),
    ("d45-implies-m5", "D45", SystemRelation::Implies, "M5"),
];

const FRIENDS: &str = include_str!("../../corpus/friends.lgp");
const RCC_CATALUNYA: &str = include_str!("../../corpus/rcc-catalunya.lgp");
const IPL: [(&str, &str); 5] = [
    ("ipl-1", include_str!("../../corpus/ipl-1.lgp")),
    ("ipl-2", include_str!("../../corpus/ipl-2.lgp")),
    ("ipl-3", include_str!("../../corpus/ipl-3.lgp")),
    ("ipl-4", include_str!("../../corpus/ipl-4.lgp")),
    ("ipl-5", include_str!("../../corpus/ipl-5.lgp")),
];

fn entry(id: &str, expected: Expectation, source: EntrySource, summary: &str) -> CorpusEntry {
    CorpusEntry {
        id: id.to_string(),
        expected,
        tptp: None,
        source,
        bounds: Bounds::default(),
        summary: summary.to_string(),
    }
}

/// Every entry, in a fixed order.
pub fn corpus_list() -> Vec<CorpusEntry> {
    use EntrySource::*;
    use Expectation::*;
    let mut out = Vec::new();
    for (n, dir) in [(699, Direction::Forward), (709, Direction::Backward)] {
        for (k, p) in FrameProperty::ALL.iter().enumerate() {
            let mut e = entry(
                &corr_id(*p, dir),
                Theorem,
                Builtin,
                &format!("{} {} axiom {}", p.name(), if n == 699 { "implies" } else { "follows from" }, p.axiom()),
            );
            e.tptp = Some(format!("LCL{}^1", n + k));
            out.push(e);
        }
    }
    for (id, l, rel, r) in SYSTEM_PROBLEMS {
        let expected = if id == "d45-implies-m5" { CounterSatisfiable } else { Theorem };
        let op = match rel {
            SystemRelation::Equivalent => "<=>",
            SystemRelation::Implies => "=>",
        };
        out.push(entry(id, expected, Builtin, &format!("{l} {op} {r} over frame conditions")));
    }
    for (id, summary) in [("barcan", "Barcan formula"), ("barcan-converse", "converse Barcan formula")] {
        let mut e = entry(id, Theorem, Builtin, summary);
        e.bounds.individuals = 3;
        out.push(e);
    }
    let mut conf = entry("confluence", Theorem, Builtin, "(i,j,k,l)-confluence axiom and frame condition");
    conf.bounds.worlds = 2;
    out.push(conf);
    out.push(entry("segerberg", Theorem, Builtin, "commuting S5 modalities are orthogonal"));
    out.push(entry("knowledge-belief", Theorem, Builtin, "S5 knowledge and D45 belief coincide"));
    let mut friends = entry("friends", Theorem, Text, "friends puzzle");
    friends.tptp = Some("PUZ086^1".into());
    out.push(friends);
    let mut wise = entry("wise-men", Theorem, Text, "wise men puzzle");
    wise.tptp = Some("PUZ087^1".into());
    out.push(wise);
    for (id, expected, summary, source) in [
        ("rcc-catalunya", Theorem, "Catalunya, Spain, France and Paris", Text),
        ("rcc-epistemic-bob", Theorem, "bob knows the spatial facts", Builtin),
        ("rcc-epistemic-fool", CounterSatisfiable, "the spatial facts are not common knowledge", Builtin),
    ] {
        let mut e = entry(id, expected, source, summary);
        e.bounds.regions = 4;
        out.push(e);
    }
    for (id, text) in IPL {
        let src = parse_problem(text, id).expect("corpus sources parse");
        out.push(entry(id, src.expected, Text, src.notes.first().map_or("", |s| s.as_str())));
    }
    out
}

fn corr_id(p: FrameProperty, dir: Direction) -> String {
    format!("corr-{}-{}", p.name().replace('_', "-"), dir.name())
}

pub fn find(id: &str) -> Option<CorpusEntry> {
    corpus_list().into_iter().find(|e| e.id == id)
}

/// The `.lgp` text of an entry; builder entries get a `logic builtin` stub.
pub fn source_text(id: &str) -> Result<String, CorpusError> {
    let e = find(id).ok_or_else(|| CorpusError::UnknownId(id.to_string()))?;
    Ok(match id {
        "friends" => FRIENDS.to_string(),
        "wise-men" => wise_men_source(),
        "rcc-catalunya" => RCC_CATALUNYA.to_string(),
        _ => match IPL.iter().find(|(i, _)| *i == id) {
            Some((_, text)) => text.to_string(),
            None => {
                let mut src = ProblemSource::new(id, Logic::Builtin);
                src.notes.push(e.summary.clone());
                src.builtin = Some(id.to_string());
                src.expected = e.expected;
                src.print()
            }
        },
    })
}

pub fn source(id: &str) -> Result<ProblemSource, CorpusError> {
    Ok(parse_problem(&source_text(id)?, id)?)
}

/// Builds the problem of an entry.
pub fn build(id: &str) -> Result<Problem, CorpusError> {
    let e = find(id).ok_or_else(|| CorpusError::UnknownId(id.to_string()))?;
    let mut p = match e.source {
        EntrySource::Text => problem_from_source(&source(id)?)?,
        EntrySource::Builtin => build_builtin(id)?,
    };
    p.name = id.to_string();
    p.expected = e.expected;
    if id == "wise-men" {
        p.search_order = Some(["fool", "a", "b", "c", "ws", "ka", "kb", "kc"].map(Into::into).to_vec());
    }
    Ok(p)
}

/// Resolves a parsed source, looking up `logic builtin` entries.
pub fn load(src: &ProblemSource) -> Result<Problem, CorpusError> {
    match src.logic {
        Logic::Builtin => {
            let id = src.builtin.clone().unwrap_or_default();
            let mut p = build(&id)?;
            if src.expected != Expectation::Unknown {
                p.expected = src.expected;
            }
            Ok(p)
        }
        _ => Ok(problem_from_source(src)?),
    }
}

fn build_builtin(id: &str) -> Result<Problem, CorpusError> {
    for dir in [Direction::Forward, Direction::Backward] {
        for p in FrameProperty::ALL {
            if corr_id(p, dir) == id {
                return Ok(correspondence_problem(p, dir));
            }
        }
    }
    if let Some((_, l, rel, r)) = SYSTEM_PROBLEMS.iter().find(|s| s.0 == id) {
        return Ok(system_problem(id, l, *rel, r, false)?);
    }
    Ok(match id {
        "barcan" => barcan_problems().0,
        "barcan-converse" => barcan_problems().1,
        "confluence" => confluence_problem(),
        "segerberg" => segerberg_problem(),
        "knowledge-belief" => knowledge_belief_problem(),
        "rcc-epistemic-bob" => epistemic_rcc(false)?,
        "rcc-epistemic-fool" => epistemic_rcc(true)?,
        _ => return Err(CorpusError::UnknownId(id.to_string())),
    })
}

/// The system problem with axiom schemata in place of frame conditions.
pub fn schema_variant(id: &str) -> Option<Result<Problem, CorpusError>> {
    let (_, l, rel, r) = SYSTEM_PROBLEMS.iter().find(|s| s.0 == id)?;
    Some(system_problem(id, l, *rel, r, true).map_err(Into::into))
}

/// The wise men puzzle as `.lgp` text: common knowledge `fool` is S4, the
/// wise men's own knowledge `ka`, `kb`, `kc` is K.
pub fn wise_men_source() -> String {
    let men = ["a", "b", "c"];
    let pairs: Vec<(&str, &str)> =
        men.iter().flat_map(|x| men.iter().filter(move |y| *y != x).map(move |y| (*x, *y))).collect();
    let mut s = String::new();
    s.push_str("# Three wise men, at least one white spot, and common knowledge of what\n");
    s.push_str("# each sees. The first two admit they do not know their colour; the third\n");
    s.push_str("# then knows his spot is white.\n");
    s.push_str("logic qml\nindex fool\nindex ka\nindex kb\nindex kc\npred ws/1\n");
    s.push_str("const a:i\nconst b:i\nconst c:i\n");
    let mut ax = |f: String| writeln!(s, "axiom {f}").expect("string write");
    ax("[fool] (ws(a) | ws(b) | ws(c))".into());
    for (x, y) in &pairs {
        ax(format!("[fool] (ws({x}) => [k{y}] ws({x}))"));
    }
    for (x, y) in &pairs {
        ax(format!("[fool] (~ws({x}) => [k{y}] ~ws({x}))"));
    }
    ax("![P:$prop]: ([fool] P => P)".into());
    ax("![P:$prop]: ([fool] P => [fool] [fool] P)".into());
    for x in men {
        ax(format!("![P:$prop]: ([fool] P => [k{x}] P)"));
    }
    for (x, y) in &pairs {
        ax(format!("![P:$prop]: (~[k{x}] P => [k{y}] ~[k{x}] P)"));
    }
    for (x, y) in &pairs {
        ax(format!("![P:$prop]: ([k{x}] P => [k{y}] [k{x}] P)"));
    }
    ax("~[ka] ws(a)".into());
    ax("~[kb] ws(b)".into());
    s.push_str("conjecture [kc] ws(c)\nexpect theorem\n");
    s
}

/// Spatial facts known to `bob` or commonly known (`fool`); the conclusion
/// holds for bob but not as common knowledge.
pub fn epistemic_rcc(common: bool) -> Result<Problem, EmbedError> {
    let (sig, rcc_axioms) = rcc_signature_and_definitions();
    let mut msig = ModalSignature::over(sig);
    let fool = msig.add_index("fool")?;
    let bob = msig.add_index("bob")?;
    let region = Type::base(REGION);
    for c in ["catalunya", "spain", "france", "paris"] {
        msig.signature.declare(c, region.clone())?;
    }
    let r = |n: &str| Term::constant(n, region.clone());
    let rel = |p: &str, a: &str, b: &str| {
        Term::apps(Term::constant(p, Type::arrows([region.clone(), region.clone()], Type::o())), [r(a), r(b)])
    };
    let lift = |t: Term| Term::lam("W", Type::w(), t);
    let name = if common { "rcc-epistemic-fool" } else { "rcc-epistemic-bob" };
    let knower = if common { fool.clone() } else { bob.clone() };
    let inclusion = m::valid(m::forall_prop(
        "Phi",
        m::implies(m::boxed(fool.clone(), m::pvar("Phi")), m::boxed(bob.clone(), m::pvar("Phi"))),
    ));
    let conj = m::valid(m::boxed(
        knower,
        lift(Term::and(rel("dc", "catalunya", "paris"), rel("dc", "spain", "paris"))),
    ));
    let mut p = Problem::new(name, msig.signature, conj);
    for a in rcc_axioms {
        p = p.with_axiom(&a.name, a.term);
    }
    p = p
        .with_axiom("fool_in_bob", inclusion)
        .with_axiom("bob_tpp", m::valid(m::boxed(bob.clone(), lift(rel("tpp", "catalunya", "spain")))))
        .with_axiom("fool_ec", m::valid(m::boxed(fool, lift(rel("ec", "spain", "france")))))
        .with_axiom("bob_ntpp", m::valid(m::boxed(bob, lift(rel("ntpp", "paris", "france")))));
    p.search_order = Some(["c", "catalunya", "spain", "france", "paris", "bob", "fool"].map(Into::into).to_vec());
    p.origin = Origin::Builder(name.to_string());
    p.check()?;
    Ok(p)
}
