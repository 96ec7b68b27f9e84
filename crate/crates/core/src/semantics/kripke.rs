use std::collections::HashMap;
use std::fmt;

use indexmap::IndexMap;

use super::SemanticsError;
use crate::logics::QmlFormula;
use crate::stt::Name;

/// Most worlds a [`Relation`] can range over.
pub const MAX_WORLDS: usize = 8;

/// A binary relation on worlds `0..n`, stored as a bitmask with pair `(s, t)`
/// at bit `s * n + t`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Relation {
    n: u8,
    mask: u64,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Self::from_mask(n, 0)
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!((1..=MAX_WORLDS).contains(&n), "relations range over 1 to {MAX_WORLDS} worlds");
        let bits = n * n;
        let mask = if bits == 64 { mask } else { mask & ((1u64 << bits) - 1) };
        Relation { n: n as u8, mask }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Self::empty(n);
        for (s, t) in pairs {
            r.insert(s, t);
        }
        r
    }

    pub fn identity(n: usize) -> Self {
        Self::from_pairs(n, (0..n).map(|s| (s, s)))
    }

    pub fn worlds(&self) -> usize {
        self.n as usize
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, s: usize, t: usize) -> bool {
        self.mask >> (s * self.worlds() + t) & 1 == 1
    }

    pub fn insert(&mut self, s: usize, t: usize) {
        assert!(s < self.worlds() && t < self.worlds());
        self.mask |= 1 << (s * self.worlds() + t);
    }

    pub fn successors(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.worlds()).filter(move |&t| self.contains(s, t))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.worlds();
        (0..n * n).filter(|b| self.mask >> b & 1 == 1).map(move |b| (b / n, b % n))
    }

    /// The relation with worlds renamed by `perm`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        Self::from_pairs(self.worlds(), self.pairs().map(|(s, t)| (perm[s], perm[t])))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (s, t)) in self.pairs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(w{s}, w{t})")?;
        }
        write!(f, "}}")
    }
}

/// World-dependent extension of a predicate: `holds[w * d^k + code(args)]`,
/// where `code` reads the arguments as little-endian base-`d` digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub arity: usize,
    holds: Vec<bool>,
}

impl Extension {
    fn code(individuals: usize, world: usize, args: &[u32]) -> usize {
        let tuples = individuals.pow(args.len() as u32);
        let mut code = 0;
        for a in args.iter().rev() {
            code = code * individuals + *a as usize;
        }
        world * tuples + code
    }
}

/// A constant-domain Kripke model for quantified multimodal logic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    pub worlds: usize,
    pub individuals: usize,
    pub relations: IndexMap<Name, Relation>,
    pub predicates: IndexMap<Name, Extension>,
    /// Propositional constants as sets of worlds.
    pub props: IndexMap<Name, u64>,
    pub consts: IndexMap<Name, u32>,
}

impl KripkeModel {
    pub fn new(worlds: usize, individuals: usize) -> Self {
        assert!((1..=MAX_WORLDS).contains(&worlds), "models have 1 to {MAX_WORLDS} worlds");
        assert!(individuals >= 1, "the individual domain is nonempty");
        KripkeModel {
            worlds,
            individuals,
            relations: IndexMap::new(),
            predicates: IndexMap::new(),
            props: IndexMap::new(),
            consts: IndexMap::new(),
        }
    }

    pub fn with_relation(mut self, name: &str, r: Relation) -> Self {
        assert_eq!(r.worlds(), self.worlds);
        self.relations.insert(Name::from(name), r);
        self
    }

    /// Adds a predicate with empty extension.
    pub fn with_predicate(mut self, name: &str, arity: usize) -> Self {
        let size = self.worlds * self.individuals.pow(arity as u32);
        self.predicates.insert(Name::from(name), Extension { arity, holds: vec![false; size] });
        self
    }

    pub fn with_prop(mut self, name: &str, worlds: u64) -> Self {
        self.props.insert(Name::from(name), worlds);
        self
    }

    pub fn with_const(mut self, name: &str, value: u32) -> Self {
        assert!((value as usize) < self.individuals);
        self.consts.insert(Name::from(name), value);
        self
    }

    pub fn set_pred(&mut self, name: &str, world: usize, args: &[u32], value: bool) {
        let d = self.individuals;
        let ext = self.predicates.get_mut(name).expect("declared predicate");
        assert_eq!(ext.arity, args.len());
        ext.holds[Extension::code(d, world, args)] = value;
    }

    /// Sets a whole extension from bits: bit `w * d^k + code(args)`.
    pub fn set_pred_bits(&mut self, name: &str, bits: u64) {
        let ext = self.predicates.get_mut(name).expect("declared predicate");
        for (i, h) in ext.holds.iter_mut().enumerate() {
            *h = bits >> i & 1 == 1;
        }
    }

    pub fn pred(&self, name: &str, world: usize, args: &[u32]) -> Option<bool> {
        let ext = self.predicates.get(name)?;
        (ext.arity == args.len()).then(|| ext.holds[Extension::code(self.individuals, world, args)])
    }

    pub fn prop(&self, name: &str, world: usize) -> Option<bool> {
        self.props.get(name).map(|s| s >> world & 1 == 1)
    }
}

/// Values of bound individual and propositional variables.
#[derive(Debug, Clone, Default)]
pub struct QmlEnv {
    pub individuals: HashMap<Name, u32>,
    /// Sets of worlds.
    pub props: HashMap<Name, u64>,
}

/// Truth of `f` at world `w`.
pub fn eval_qml(m: &KripkeModel, w: usize, env: &QmlEnv, f: &QmlFormula) -> Result<bool, SemanticsError> {
    let mut env = env.clone();
    Eval { m }.at(w, &mut env, f)
}

struct Eval<'a> {
    m: &'a KripkeModel,
}

impl Eval<'_> {
    fn at(&self, w: usize, env: &mut QmlEnv, f: &QmlFormula) -> Result<bool, SemanticsError> {
        use QmlFormula as F;
        Ok(match f {
            F::Top => true,
            F::Bottom => false,
            F::PropVar(p) => match env.props.get(p) {
                Some(s) => s >> w & 1 == 1,
                None => self.m.prop(p, w).ok_or_else(|| SemanticsError::unknown("proposition", p))?,
            },
            F::Atom(k, args) => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    let v = env.individuals.get(a).or_else(|| self.m.consts.get(a));
                    vals.push(*v.ok_or_else(|| SemanticsError::unknown("individual", a))?);
                }
                let ext = self.m.predicates.get(k).ok_or_else(|| SemanticsError::unknown("predicate", k))?;
                if ext.arity != vals.len() {
                    return Err(SemanticsError::unknown("predicate", &format!("{k}/{}", vals.len())));
                }
                ext.holds[Extension::code(self.m.individuals, w, &vals)]
            }
            F::Neg(a) => !self.at(w, env, a)?,
            F::Or(a, b) => self.at(w, env, a)? || self.at(w, env, b)?,
            F::And(a, b) => self.at(w, env, a)? && self.at(w, env, b)?,
            F::Implies(a, b) => !self.at(w, env, a)? || self.at(w, env, b)?,
            F::Iff(a, b) => self.at(w, env, a)? == self.at(w, env, b)?,
            F::Box(r, a) | F::Diamond(r, a) => {
                let rel = self.m.relations.get(r).ok_or_else(|| SemanticsError::unknown("modal index", r))?;
                let want = matches!(f, F::Diamond(..));
                for v in rel.successors(w) {
                    if self.at(v, env, a)? == want {
                        return Ok(want);
                    }
                }
                !want
            }
            F::ForallInd(x, a) | F::ExistsInd(x, a) => {
                let want = matches!(f, F::ExistsInd(..));
                let saved = env.individuals.get(x).copied();
                let mut result = !want;
                for d in 0..self.m.individuals as u32 {
                    env.individuals.insert(x.clone(), d);
                    let r = self.at(w, env, a);
                    if r.as_ref().map_or(true, |&b| b == want) {
                        result = want;
                        if let Err(e) = r {
                            restore(&mut env.individuals, x, saved);
                            return Err(e);
                        }
                        break;
                    }
                }
                restore(&mut env.individuals, x, saved);
                result
            }
            F::ForallProp(p, a) | F::ExistsProp(p, a) => {
                let want = matches!(f, F::ExistsProp(..));
                let saved = env.props.get(p).copied();
                let mut result = !want;
                for s in 0..1u64 << self.m.worlds {
                    env.props.insert(p.clone(), s);
                    let r = self.at(w, env, a);
                    if r.as_ref().map_or(true, |&b| b == want) {
                        result = want;
                        if let Err(e) = r {
                            restore(&mut env.props, p, saved);
                            return Err(e);
                        }
                        break;
                    }
                }
                restore(&mut env.props, p, saved);
                result
            }
        })
    }
}

fn restore<V>(map: &mut HashMap<Name, V>, key: &Name, saved: Option<V>) {
    match saved {
        Some(v) => {
            map.insert(key.clone(), v);
        }
        None => {
            map.remove(key);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logics::parse_qml;

    fn one_world() -> KripkeModel {
        KripkeModel::new(1, 1).with_relation("r", Relation::empty(1))
    }

    #[test]
    fn vacuous_box_and_empty_diamond() {
        let m = one_world();
        let env = QmlEnv::default();
        assert!(eval_qml(&m, 0, &env, &parse_qml("[r] $false").unwrap()).unwrap());
        assert!(!eval_qml(&m, 0, &env, &parse_qml("<r> $true").unwrap()).unwrap());
    }

    #[test]
    fn predicate_extension_indexing() {
        let mut m = KripkeModel::new(2, 3).with_predicate("k", 2).with_const("a", 2).with_const("b", 1);
        m.set_pred("k", 1, &[2, 1], true);
        assert_eq!(m.pred("k", 1, &[2, 1]), Some(true));
        assert_eq!(m.pred("k", 0, &[2, 1]), Some(false));
        assert_eq!(m.pred("k", 1, &[1, 2]), Some(false));
        let env = QmlEnv::default();
        let f = parse_qml("k(a, b)").unwrap();
        assert!(eval_qml(&m, 1, &env, &f).unwrap());
        assert!(!eval_qml(&m, 0, &env, &f).unwrap());
    }

    #[test]
    fn unknown_symbols() {
        let m = one_world();
        let env = QmlEnv::default();
        for s in ["[s] $true", "h(a)", "p"] {
            let f = parse_qml(s).unwrap();
            assert!(matches!(eval_qml(&m, 0, &env, &f), Err(SemanticsError::UnknownSymbol { .. })), "{s}");
        }
    }

    #[test]
    fn relation_bits() {
        let r = Relation::from_pairs(2, [(0, 1), (1, 1)]);
        assert_eq!(r.mask(), 0b1010);
        assert_eq!(r.pairs().collect::<Vec<_>>(), vec![(0, 1), (1, 1)]);
        assert_eq!(r.to_string(), "{(w0, w1), (w1, w1)}");
    }
}
