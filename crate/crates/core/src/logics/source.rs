use std::fmt;
use std::str::FromStr;

use indexmap::{IndexMap, IndexSet};
use serde::{Deserialize, Serialize};

use super::error::ParseError;
use super::fo::{parse_fo_with, FoFormula, RCC_PREDICATES};
use super::ipl::{parse_ipl_with, IplFormula};
use super::parser::Declarations;
use super::qml::{parse_qml_with, QmlFormula};
use crate::frames::FrameProperty;
use crate::stt::{Name, INDIVIDUAL};

pub const REGION: &str = "region";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Logic {
    Qml,
    Ipl,
    FoRcc,
    /// An entry constructed in code; the file only names it.
    Builtin,
}

impl Logic {
    pub fn name(self) -> &'static str {
        match self {
            Logic::Qml => "qml",
            Logic::Ipl => "ipl",
            Logic::FoRcc => "fo-rcc",
            Logic::Builtin => "builtin",
        }
    }
}

impl FromStr for Logic {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "qml" => Ok(Logic::Qml),
            "ipl" => Ok(Logic::Ipl),
            "fo-rcc" => Ok(Logic::FoRcc),
            "builtin" => Ok(Logic::Builtin),
            _ => Err(()),
        }
    }
}

/// The status a prover is expected to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Expectation {
    Theorem,
    CounterSatisfiable,
    Unknown,
}

impl Expectation {
    pub fn keyword(self) -> &'static str {
        match self {
            Expectation::Theorem => "theorem",
            Expectation::CounterSatisfiable => "countersatisfiable",
            Expectation::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Expectation::Theorem => "Theorem",
            Expectation::CounterSatisfiable => "CounterSatisfiable",
            Expectation::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

impl FromStr for Expectation {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s.to_ascii_lowercase().as_str() {
            "theorem" => Ok(Expectation::Theorem),
            "countersatisfiable" => Ok(Expectation::CounterSatisfiable),
            "unknown" => Ok(Expectation::Unknown),
            _ => Err(()),
        }
    }
}

/// How an intuitionistic conjecture is turned into a modal one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IplMode {
    /// Assume the S4 axiom schemata valid.
    #[default]
    S4Schema,
    /// Assume `r` reflexive and transitive.
    FrameConditions,
}

impl IplMode {
    pub fn name(self) -> &'static str {
        match self {
            IplMode::S4Schema => "s4-schema",
            IplMode::FrameConditions => "frame-conditions",
        }
    }
}

impl FromStr for IplMode {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "s4-schema" => Ok(IplMode::S4Schema),
            "frame-conditions" => Ok(IplMode::FrameConditions),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FreeKind {
    Ind,
    Prop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceFormula {
    Qml(QmlFormula),
    Ipl(IplFormula),
    Fo(FoFormula),
    /// A frame condition on an accessibility relation.
    Frame(FrameProperty, Name),
}

impl fmt::Display for SourceFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceFormula::Qml(q) => q.fmt(f),
            SourceFormula::Ipl(q) => q.fmt(f),
            SourceFormula::Fo(q) => q.fmt(f),
            SourceFormula::Frame(p, r) => write!(f, "{p} {r}"),
        }
    }
}

/// A parsed `.lgp` problem file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSource {
    pub name: String,
    /// Leading comment lines, without the `#`.
    pub notes: Vec<String>,
    pub logic: Logic,
    pub builtin: Option<String>,
    pub mode: Option<IplMode>,
    pub indices: Vec<Name>,
    pub preds: Vec<(Name, usize)>,
    /// Individual constants with their base type.
    pub consts: Vec<(Name, Name)>,
    pub free: Vec<(Name, FreeKind)>,
    /// Axioms in file order; `frame` lines appear as [`SourceFormula::Frame`].
    pub axioms: Vec<SourceFormula>,
    pub conjecture: Option<SourceFormula>,
    pub expected: Expectation,
}

impl ProblemSource {
    pub fn new(name: &str, logic: Logic) -> Self {
        ProblemSource {
            name: name.to_string(),
            notes: Vec::new(),
            logic,
            builtin: None,
            mode: None,
            indices: Vec::new(),
            preds: Vec::new(),
            consts: Vec::new(),
            free: Vec::new(),
            axioms: Vec::new(),
            conjecture: None,
            expected: Expectation::Unknown,
        }
    }

    /// Symbol tables used when parsing this problem's formulas.
    pub fn declarations(&self) -> Declarations {
        let mut preds: IndexMap<Name, usize> = self.preds.iter().cloned().collect();
        if self.logic == Logic::FoRcc {
            for p in RCC_PREDICATES {
                preds.insert(Name::from(p), 2);
            }
        }
        let by_kind = |k: FreeKind| -> IndexSet<Name> {
            self.free.iter().filter(|(_, fk)| *fk == k).map(|(n, _)| n.clone()).collect()
        };
        Declarations {
            indices: Some(self.indices.iter().cloned().collect()),
            preds: Some(preds),
            consts: Some(self.consts.iter().map(|(n, _)| n.clone()).collect()),
            free_inds: by_kind(FreeKind::Ind),
            free_props: by_kind(FreeKind::Prop),
            strict_props: true,
        }
    }

    pub fn print(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ProblemSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.notes {
            if n.is_empty() {
                writeln!(f, "#")?;
            } else {
                writeln!(f, "# {n}")?;
            }
        }
        writeln!(f, "logic {}", self.logic.name())?;
        if let Some(b) = &self.builtin {
            writeln!(f, "builtin {b}")?;
        }
        if let Some(m) = self.mode {
            writeln!(f, "mode {}", m.name())?;
        }
        for r in &self.indices {
            writeln!(f, "index {r}")?;
        }
        for (p, n) in &self.preds {
            writeln!(f, "pred {p}/{n}")?;
        }
        for (c, ty) in &self.consts {
            writeln!(f, "const {c}:{ty}")?;
        }
        for (v, k) in &self.free {
            let ty = match k {
                FreeKind::Ind => "$i",
                FreeKind::Prop => "$prop",
            };
            writeln!(f, "free {v}:{ty}")?;
        }
        for a in &self.axioms {
            match a {
                SourceFormula::Frame(..) => writeln!(f, "frame {a}")?,
                _ => writeln!(f, "axiom {a}")?,
            }
        }
        if let Some(c) = &self.conjecture {
            writeln!(f, "conjecture {c}")?;
        }
        writeln!(f, "expect {}", self.expected.keyword())
    }
}

struct Line<'a> {
    no: usize,
    keyword: &'a str,
    rest: &'a str,
    /// 1-based column of `rest`.
    rest_col: usize,
}

fn err(line: usize, col: usize, msg: String) -> ParseError {
    ParseError::message(line, col, "", msg)
}

/// Parses the text of a `.lgp` file. `name` is usually the file stem.
pub fn parse_problem(text: &str, name: &str) -> Result<ProblemSource, ParseError> {
    let mut src = ProblemSource::new(name, Logic::Qml);
    let mut lines = Vec::new();
    let mut in_header = true;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let trimmed = raw.trim();
        if let Some(note) = trimmed.strip_prefix('#') {
            if in_header {
                src.notes.push(note.strip_prefix(' ').unwrap_or(note).to_string());
            }
            continue;
        }
        let code = raw.split('#').next().unwrap_or("");
        if code.trim().is_empty() {
            continue;
        }
        in_header = false;
        let start = code.len() - code.trim_start().len();
        let body = code.trim();
        let keyword = body.split(char::is_whitespace).next().unwrap_or(body);
        let rest = &body[keyword.len()..];
        let rest_trim = rest.trim_start();
        let rest_byte = start + keyword.len() + (rest.len() - rest_trim.len());
        let rest_col = code[..rest_byte.min(code.len())].chars().count() + 1;
        lines.push(Line { no, keyword, rest: rest_trim.trim_end(), rest_col });
    }

    let mut logic = None;
    let mut expected = None;
    let mut seen: IndexMap<Name, &'static str> = IndexMap::new();
    let mut declare = |name: &str, what: &'static str, l: &Line| -> Result<Name, ParseError> {
        if let Some(prev) = seen.get(name) {
            return Err(err(l.no, l.rest_col, format!("`{name}` is already declared as {prev}")));
        }
        seen.insert(Name::from(name), what);
        Ok(Name::from(name))
    };
    for l in &lines {
        let words: Vec<&str> = l.rest.split_whitespace().collect();
        let one = |what: &str| -> Result<&str, ParseError> {
            match words.as_slice() {
                [w] => Ok(*w),
                _ => Err(err(l.no, l.rest_col, format!("`{}` takes one {what}", l.keyword))),
            }
        };
        match l.keyword {
            "logic" => {
                if logic.is_some() {
                    return Err(err(l.no, 1, "duplicate `logic` line".into()));
                }
                let w = one("logic name")?;
                logic = Some(w.parse::<Logic>().map_err(|_| {
                    let mut e = ParseError::unexpected(l.no, l.rest_col, &["qml", "ipl", "fo-rcc", "builtin"], &format!("`{w}`"));
                    e.message = None;
                    e
                })?);
            }
            "expect" => {
                let w = one("status")?;
                expected = Some(w.parse::<Expectation>().map_err(|_| {
                    ParseError::unexpected(l.no, l.rest_col, &["theorem", "countersatisfiable", "unknown"], &format!("`{w}`"))
                })?);
            }
            "builtin" => src.builtin = Some(one("entry id")?.to_string()),
            "mode" => {
                let w = one("mode")?;
                src.mode = Some(w.parse::<IplMode>().map_err(|_| {
                    ParseError::unexpected(l.no, l.rest_col, &["s4-schema", "frame-conditions"], &format!("`{w}`"))
                })?);
            }
            "index" => {
                for w in &words {
                    src.indices.push(declare(w, "an index", l)?);
                }
            }
            "pred" => {
                for w in &words {
                    let (p, n) = w
                        .split_once('/')
                        .and_then(|(p, n)| n.parse::<usize>().ok().map(|n| (p, n)))
                        .ok_or_else(|| err(l.no, l.rest_col, format!("expected `name/arity`, found `{w}`")))?;
                    src.preds.push((declare(p, "a predicate", l)?, n));
                }
            }
            "const" => {
                for w in &words {
                    let (c, ty) = w
                        .split_once(':')
                        .ok_or_else(|| err(l.no, l.rest_col, format!("expected `name:type`, found `{w}`")))?;
                    src.consts.push((declare(c, "a constant", l)?, Name::from(ty)));
                }
            }
            "free" => {
                for w in &words {
                    let (v, ty) = w
                        .split_once(':')
                        .ok_or_else(|| err(l.no, l.rest_col, format!("expected `Var:type`, found `{w}`")))?;
                    let kind = match ty {
                        "$i" => FreeKind::Ind,
                        "$prop" => FreeKind::Prop,
                        _ => return Err(err(l.no, l.rest_col, format!("free variables have type `$i` or `$prop`, not `{ty}`"))),
                    };
                    if !v.starts_with(|c: char| c.is_ascii_uppercase()) {
                        return Err(err(l.no, l.rest_col, format!("free variable `{v}` must be uppercase")));
                    }
                    src.free.push((Name::from(v), kind));
                }
            }
            "frame" | "axiom" | "conjecture" => {}
            other => {
                return Err(ParseError::unexpected(
                    l.no,
                    1,
                    &["logic", "index", "pred", "const", "free", "frame", "mode", "builtin", "axiom", "conjecture", "expect"],
                    &format!("`{other}`"),
                ))
            }
        }
    }
    src.logic = logic.ok_or_else(|| err(1, 1, "missing `logic` line".into()))?;
    src.expected = expected.unwrap_or(Expectation::Unknown);

    for (c, ty) in &src.consts {
        let want = match src.logic {
            Logic::FoRcc => REGION,
            _ => INDIVIDUAL,
        };
        if &**ty != want {
            let l = lines.iter().find(|l| l.keyword == "const").expect("const line");
            return Err(err(l.no, l.rest_col, format!("constant `{c}` must have type `{want}`")));
        }
    }
    if src.logic == Logic::FoRcc {
        if let Some((p, _)) = src.preds.iter().find(|(p, _)| RCC_PREDICATES.contains(&&**p)) {
            let l = lines.iter().find(|l| l.keyword == "pred").expect("pred line");
            return Err(err(l.no, l.rest_col, format!("`{p}` is predeclared")));
        }
    }

    let decls = src.declarations();
    for l in &lines {
        match (l.keyword, src.logic) {
            ("frame" | "axiom" | "conjecture", Logic::Builtin) => {
                return Err(err(l.no, 1, format!("`{}` is not allowed in a builtin entry", l.keyword)))
            }
            ("axiom", Logic::Ipl) => {
                return Err(err(l.no, 1, "propositional problems take a single conjecture".into()))
            }
            ("frame", Logic::Qml) => {
                let words: Vec<&str> = l.rest.split_whitespace().collect();
                let [prop, index] = words.as_slice() else {
                    return Err(err(l.no, l.rest_col, "expected `frame <property> <index>`".into()));
                };
                let p = prop.parse::<FrameProperty>().map_err(|e| err(l.no, l.rest_col, e.to_string()))?;
                if !src.indices.iter().any(|r| &**r == *index) {
                    return Err(err(l.no, l.rest_col, format!("undeclared modal index `{index}`")));
                }
                src.axioms.push(SourceFormula::Frame(p, Name::from(*index)));
            }
            ("frame", _) => return Err(err(l.no, 1, "`frame` lines need modal indices".into())),
            ("axiom" | "conjecture", logic) => {
                let f = match logic {
                    Logic::Qml => SourceFormula::Qml(parse_qml_with(l.rest, &decls, l.no, l.rest_col)?),
                    Logic::Ipl => SourceFormula::Ipl(parse_ipl_with(l.rest, &decls, l.no, l.rest_col)?),
                    Logic::FoRcc => SourceFormula::Fo(parse_fo_with(l.rest, &decls, l.no, l.rest_col)?),
                    Logic::Builtin => unreachable!(),
                };
                if l.keyword == "axiom" {
                    src.axioms.push(f);
                } else if src.conjecture.is_some() {
                    return Err(err(l.no, 1, "a problem has exactly one conjecture".into()));
                } else {
                    src.conjecture = Some(f);
                }
            }
            _ => {}
        }
    }

    let last = lines.last().map_or(1, |l| l.no);
    match src.logic {
        Logic::Builtin if src.builtin.is_none() => {
            return Err(err(last, 1, "missing `builtin` line".into()));
        }
        Logic::Builtin => {}
        _ if src.conjecture.is_none() => return Err(err(last, 1, "missing `conjecture` line".into())),
        _ => {}
    }
    if src.builtin.is_some() && src.logic != Logic::Builtin {
        return Err(err(1, 1, "`builtin` requires `logic builtin`".into()));
    }
    if src.mode.is_some() && src.logic != Logic::Ipl {
        return Err(err(1, 1, "`mode` applies to `logic ipl` only".into()));
    }
    if src.logic == Logic::Ipl {
        if let Some((p, n)) = src.preds.iter().find(|(_, n)| *n != 0) {
            return Err(err(1, 1, format!("propositional atom `{p}` declared with arity {n}")));
        }
    }
    Ok(src)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FRIENDLY: &str = "\
# two agents
logic qml
index a b
pred p/0 k/1
const x:i
frame reflexive a
axiom ![P:$prop]: ([a] P => [b] P)
conjecture [a] p => [b] p & k(x)   # trailing comment
expect theorem
";

    #[test]
    fn parses_and_reprints() {
        let src = parse_problem(FRIENDLY, "demo").unwrap();
        assert_eq!(src.notes, vec!["two agents".to_string()]);
        assert_eq!(src.indices.len(), 2);
        assert_eq!(src.axioms.len(), 2);
        assert_eq!(src.expected, Expectation::Theorem);
        let again = parse_problem(&src.print(), "demo").unwrap();
        assert_eq!(again, src);
        assert_eq!(again.print(), src.print());
    }

    #[test]
    fn undeclared_symbol_position() {
        let text = "logic qml\nindex r\nconjecture [r] q\n";
        let e = parse_problem(text, "x").unwrap_err();
        assert_eq!((e.line, e.col), (3, 16));
    }

    #[test]
    fn unbound_variable_in_atom() {
        let text = "logic qml\npred k/1\nconjecture k(X)\n";
        let e = parse_problem(text, "x").unwrap_err();
        assert_eq!((e.line, e.col), (3, 14));
        let text = "logic qml\npred k/1\nfree X:$i\nconjecture k(X)\n";
        assert!(parse_problem(text, "x").is_ok());
    }

    #[test]
    fn single_conjecture() {
        let text = "logic ipl\npred p/0\nconjecture p\nconjecture p\n";
        assert_eq!(parse_problem(text, "x").unwrap_err().line, 4);
        let text = "logic ipl\npred p/0\n";
        assert!(parse_problem(text, "x").is_err());
    }

    #[test]
    fn rcc_predicates_are_predeclared() {
        let text = "logic fo-rcc\nconst a:region b:region\naxiom ![X]: c(X, X)\nconjecture ec(a, b) | ~ec(a, b)\n";
        let src = parse_problem(text, "x").unwrap();
        assert_eq!(src.consts.len(), 2);
        let bad = "logic fo-rcc\nconst a:i\nconjecture c(a, a)\n";
        assert!(parse_problem(bad, "x").is_err());
    }

    #[test]
    fn builtin_entries() {
        let text = "logic builtin\nbuiltin confluence\nexpect theorem\n";
        let src = parse_problem(text, "confluence").unwrap();
        assert_eq!(src.builtin.as_deref(), Some("confluence"));
        assert_eq!(parse_problem(&src.print(), "confluence").unwrap(), src);
    }

    #[test]
    fn namespace_clash() {
        let text = "logic qml\nindex a\nconst a:i\nconjecture $true\n";
        assert_eq!(parse_problem(text, "x").unwrap_err().line, 3);
    }
}
