use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::compile::{Machine, Program};
use super::standard::{Evaluator, StandardModel};
use super::value::{TypeTable, Universe, Value};
use super::SemanticsError;
use crate::embed::Problem;
use crate::logics::REGION;
use crate::stt::{fresh_name, substitute, Name, Signature, Term, Unfolder, INDIVIDUAL, WORLD};

/// Largest carrier tried for each base type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub worlds: usize,
    pub individuals: usize,
    pub regions: usize,
    /// Other base types; missing ones get [`Bounds::DEFAULT_OTHER`].
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub other: BTreeMap<String, usize>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { worlds: 3, individuals: 2, regions: 3, other: BTreeMap::new() }
    }
}

impl Bounds {
    pub const DEFAULT_OTHER: usize = 2;

    pub fn new(worlds: usize, individuals: usize, regions: usize) -> Self {
        Bounds { worlds, individuals, regions, other: BTreeMap::new() }
    }

    pub fn max_for(&self, base: &str) -> usize {
        match base {
            WORLD => self.worlds,
            INDIVIDUAL => self.individuals,
            REGION => self.regions,
            _ => self.other.get(base).copied().unwrap_or(Self::DEFAULT_OTHER),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of constant assignments tried before giving up.
    pub budget: u64,
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 2_000_000_000, jobs: 1 }
    }
}

#[derive(Debug, Clone)]
pub enum BoundedVerdict {
    /// All axioms hold and the conjecture fails in `model`; `world` is the
    /// first world refuting a conjecture of the form `valid φ`.
    Refuted { model: Box<StandardModel>, world: Option<u32> },
    /// No standard model within `bounds` refutes the conjecture. This is not
    /// a validity proof.
    NoCountermodelUpToBound { bounds: Bounds },
}

impl BoundedVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, BoundedVerdict::Refuted { .. })
    }

    pub fn model(&self) -> Option<&StandardModel> {
        match self {
            BoundedVerdict::Refuted { model, .. } => Some(model),
            _ => None,
        }
    }
}

/// Truth values of a problem's formulas in one model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub axioms: Vec<(String, bool)>,
    pub conjecture: bool,
}

impl Certificate {
    /// Whether the model is a countermodel.
    pub fn refutes(&self) -> bool {
        self.axioms.iter().all(|(_, b)| *b) && !self.conjecture
    }
}

/// Re-evaluates every formula of `p` in `model` from scratch.
pub fn verify(p: &Problem, model: &StandardModel) -> Result<Certificate, SemanticsError> {
    let truth = |t: &Term| Evaluator::new(&p.signature, t).truth(model);
    let mut axioms = Vec::with_capacity(p.axioms.len());
    for a in &p.axioms {
        axioms.push((a.name.clone(), truth(&a.term)?));
    }
    Ok(Certificate { axioms, conjecture: truth(&p.conjecture.term)? })
}

pub fn countermodel_search(p: &Problem, bounds: &Bounds) -> Result<BoundedVerdict, SemanticsError> {
    countermodel_search_with(p, bounds, &SearchOptions::default())
}

/// Searches standard models with carriers up to `bounds`, smallest carriers
/// first, for one where every axiom holds and the conjecture fails.
pub fn countermodel_search_with(
    p: &Problem,
    bounds: &Bounds,
    opts: &SearchOptions,
) -> Result<BoundedVerdict, SemanticsError> {
    let plan = Plan::new(p)?;
    let bases: Vec<Name> = plan.types.bases().iter().cloned().collect();
    let maxima: Vec<usize> = bases.iter().map(|b| bounds.max_for(b)).collect();
    if maxima.contains(&0) {
        return Ok(BoundedVerdict::NoCountermodelUpToBound { bounds: bounds.clone() });
    }
    let nodes = AtomicU64::new(0);
    for sizes in size_tuples(&maxima) {
        let carriers: HashMap<Name, usize> = bases.iter().cloned().zip(sizes.iter().copied()).collect();
        let uni = plan.program.universe(plan.types.clone(), &carriers)?;
        if let Some(values) = plan.run(&uni, opts, &nodes)? {
            let mut sig = p.signature.clone();
            for (n, ty) in &plan.skolems {
                sig.declare(n, ty.clone()).expect("fresh constant");
            }
            let mut model = StandardModel::new(sig);
            model.carriers = carriers.into_iter().collect();
            model.interp = plan.program.consts.keys().cloned().zip(values).collect::<IndexMap<_, _>>();
            let world = refuting_world(p, &model)?;
            return Ok(BoundedVerdict::Refuted { model: Box::new(model), world });
        }
    }
    Ok(BoundedVerdict::NoCountermodelUpToBound { bounds: bounds.clone() })
}

/// Bounded check of a conjecture without axioms.
pub fn bounded_validity(sig: &Signature, conjecture: &Term, bounds: &Bounds) -> Result<BoundedVerdict, SemanticsError> {
    countermodel_search(&Problem::new("validity", sig.clone(), conjecture.clone()), bounds)
}

fn refuting_world(p: &Problem, model: &StandardModel) -> Result<Option<u32>, SemanticsError> {
    let (head, args) = p.conjecture.term.spine();
    if !matches!(head, Term::Const(n, _) if &**n == "valid") || args.len() != 1 || !model.carriers.contains_key(WORLD) {
        return Ok(None);
    }
    let v = Evaluator::new(&p.signature, args[0]).eval(model)?;
    Ok((0..model.carriers[WORLD]).find(|&w| !v.at(w).as_bool()).map(|w| w as u32))
}

/// Size vectors with every entry in `1..=max`, by total size and then
/// lexicographically.
fn size_tuples(maxima: &[usize]) -> Vec<Vec<usize>> {
    let mut all = vec![Vec::new()];
    for &m in maxima {
        all = all
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (1..=m).map(move |k| {
                    let mut t = t.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    all.sort_by_key(|t| (t.iter().sum::<usize>(), t.clone()));
    all
}

struct Check {
    root: usize,
    /// The conjecture prunes when true; axioms prune when false.
    conjecture: bool,
}

struct Plan {
    program: Program,
    /// Constants standing for the conjecture's outer universal variables.
    skolems: Vec<(Name, crate::stt::Type)>,
    types: Arc<TypeTable>,
    /// Formulas checked before any constant is assigned.
    initial: Vec<Check>,
    /// Checks mentioning only the constant of that depth.
    unary: Vec<Vec<Check>>,
    checks: Vec<Vec<Check>>,
    initial_slots: Vec<u32>,
    slots: Vec<Vec<u32>>,
    unary_slots: Vec<Vec<u32>>,
}

impl Plan {
    fn new(p: &Problem) -> Result<Self, SemanticsError> {
        let mut unfolder = Unfolder::new(&p.signature);
        let mut unfolded: Vec<Term> = p.formulas().map(|f| unfolder.unfold(&f.term)).collect();
        // A countermodel of `∀x. φ` is one of `φ[c/x]` for a fresh `c`.
        let mut skolems = Vec::new();
        let mut conj = unfolded.pop().expect("conjecture");
        while let Term::App(f, a) = &conj {
            let (Term::Pi(_), Term::Lam(x, ty, body)) = (&**f, &**a) else { break };
            let taken = |n: &str| {
                p.signature.constant_type(n).is_some()
                    || skolems.iter().any(|(s, _): &(Name, crate::stt::Type)| &**s == n)
                    || unfolded.iter().any(|t| t.mentions_const(n))
            };
            let name = if taken(x) { fresh_name(x, taken) } else { x.clone() };
            let c = Term::Const(name.clone(), ty.clone());
            let next = substitute(body, x, &c);
            skolems.push((name, ty.clone()));
            conj = next;
        }
        unfolded.push(conj);
        let mut mentioned: IndexMap<Name, crate::stt::Type> = IndexMap::new();
        for t in &unfolded {
            for (n, ty) in t.constants() {
                mentioned.entry(n).or_insert(ty);
            }
        }
        for n in mentioned.keys() {
            if p.signature.constant_type(n).is_none() && !skolems.iter().any(|(s, _)| s == n) {
                return Err(SemanticsError::unknown("constant", n));
            }
        }
        for (n, ty) in &skolems {
            mentioned.entry(n.clone()).or_insert(ty.clone());
        }
        let mut order: Vec<Name> = Vec::new();
        for n in p.search_order.iter().flatten() {
            if mentioned.contains_key(n) && !order.contains(n) {
                order.push(n.clone());
            }
        }
        for (n, _) in skolems.iter().map(|(n, t)| (n, t)).chain(p.signature.uninterpreted()) {
            if mentioned.contains_key(n) && !order.contains(n) {
                order.push(n.clone());
            }
        }
        let mut program = Program::new(true);
        for n in &order {
            let id = program.declare_const(n, &mentioned[n]);
            let ty_id = program.consts[id as usize].1;
            program.domain_types.insert(ty_id);
            program.value_types.insert(ty_id);
        }
        for t in &unfolded {
            program.add_root(t);
        }
        if let Some((n, _)) = program.free.first() {
            return Err(SemanticsError::unknown("free variable", n));
        }
        let k = order.len();
        let depth = |deps: &std::collections::BTreeSet<u32>| deps.iter().max().map(|d| *d as usize);
        let conj = program.roots.len() - 1;
        let mut initial = Vec::new();
        let mut unary: Vec<Vec<Check>> = (0..k).map(|_| Vec::new()).collect();
        let mut checks: Vec<Vec<Check>> = (0..k).map(|_| Vec::new()).collect();
        let mut by_size: Vec<usize> = (0..program.roots.len()).collect();
        by_size.sort_by_key(|&r| (program.root_size(r), r));
        for r in by_size {
            let c = Check { root: r, conjecture: r == conj };
            let deps = &program.roots[r].deps;
            match depth(deps) {
                None => initial.push(c),
                Some(d) if deps.len() == 1 => unary[d].push(c),
                Some(d) => checks[d].push(c),
            }
        }
        let mut initial_slots = Vec::new();
        let mut slots: Vec<Vec<u32>> = (0..k).map(|_| Vec::new()).collect();
        let mut unary_slots: Vec<Vec<u32>> = (0..k).map(|_| Vec::new()).collect();
        for (s, def) in program.slots.iter().enumerate() {
            match depth(&def.deps) {
                None => initial_slots.push(s as u32),
                Some(d) => {
                    slots[d].push(s as u32);
                    if def.deps.len() == 1 {
                        unary_slots[d].push(s as u32);
                    }
                }
            }
        }
        let types = Arc::new(program.types.clone());
        Ok(Plan { program, types, skolems, initial, unary, checks, initial_slots, slots, unary_slots })
    }

    fn run(&self, uni: &Universe, opts: &SearchOptions, nodes: &AtomicU64) -> Result<Option<Vec<Value>>, SemanticsError> {
        let k = self.program.consts.len();
        let mut state = State::new(self, uni);
        for &s in &self.initial_slots {
            state.compute_slot(s);
        }
        if !self.initial.iter().all(|c| state.passes(c)) {
            return Ok(None);
        }
        let mut candidates = Vec::with_capacity(k);
        for d in 0..k {
            let ty = self.program.consts[d].1;
            let mut keep = Vec::new();
            for v in uni.domain(ty).iter() {
                state.consts[d] = v.clone();
                for &s in &self.unary_slots[d] {
                    state.compute_slot(s);
                }
                if self.unary[d].iter().all(|c| state.passes(c)) {
                    keep.push(v.clone());
                }
            }
            if keep.is_empty() {
                return Ok(None);
            }
            candidates.push(keep);
        }
        if k == 0 {
            return Ok(Some(Vec::new()));
        }
        let jobs = opts.jobs.max(1).min(candidates[0].len());
        let best = AtomicUsize::new(usize::MAX);
        let search = |worker: usize, mut state: State| -> Result<Option<(usize, Vec<Value>)>, SemanticsError> {
            for (i, v) in candidates[0].iter().enumerate().skip(worker).step_by(jobs) {
                if i > best.load(Ordering::Relaxed) {
                    break;
                }
                if state.descend(0, v, &candidates, nodes, opts.budget)? {
                    best.fetch_min(i, Ordering::Relaxed);
                    return Ok(Some((i, state.consts)));
                }
            }
            Ok(None)
        };
        let found = if jobs <= 1 {
            search(0, state)?
        } else {
            let results: Vec<_> = std::thread::scope(|scope| {
                let handles: Vec<_> = (0..jobs)
                    .map(|w| {
                        let st = state.fresh();
                        let search = &search;
                        scope.spawn(move || search(w, st))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
            });
            let mut best: Option<(usize, Vec<Value>)> = None;
            for r in results {
                if let Some((i, vals)) = r? {
                    if best.as_ref().is_none_or(|(j, _)| i < *j) {
                        best = Some((i, vals));
                    }
                }
            }
            best
        };
        Ok(found.map(|(_, v)| v))
    }
}

struct State<'a> {
    plan: &'a Plan,
    uni: &'a Universe,
    consts: Vec<Value>,
    slots: Vec<Value>,
    env: Vec<Value>,
}

impl<'a> State<'a> {
    fn new(plan: &'a Plan, uni: &'a Universe) -> Self {
        State {
            plan,
            uni,
            consts: vec![Value::Bool(false); plan.program.consts.len()],
            slots: vec![Value::Bool(false); plan.program.slots.len()],
            env: Vec::new(),
        }
    }

    fn fresh(&self) -> Self {
        State { plan: self.plan, uni: self.uni, consts: self.consts.clone(), slots: self.slots.clone(), env: Vec::new() }
    }

    fn machine(&self) -> Machine<'_> {
        Machine { uni: self.uni, consts: &self.consts, slots: &self.slots, free: &[] }
    }

    fn compute_slot(&mut self, s: u32) {
        let mut env = std::mem::take(&mut self.env);
        let v = self.machine().eval(&self.plan.program.slots[s as usize].ir, &mut env);
        self.env = env;
        self.slots[s as usize] = v;
    }

    fn passes(&mut self, c: &Check) -> bool {
        let mut env = std::mem::take(&mut self.env);
        let t = self.machine().truth(&self.plan.program.roots[c.root].ir, &mut env);
        self.env = env;
        t != c.conjecture
    }

    /// Assigns `v` at depth `d` and searches below; on success the
    /// assignment is left in `consts`.
    fn descend(&mut self, d: usize, v: &Value, cands: &[Vec<Value>], nodes: &AtomicU64, budget: u64) -> Result<bool, SemanticsError> {
        if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
            return Err(SemanticsError::BoundTooLarge { budget });
        }
        self.consts[d] = v.clone();
        let plan = self.plan;
        for &s in &plan.slots[d] {
            self.compute_slot(s);
        }
        if !plan.checks[d].iter().all(|c| self.passes(c)) {
            return Ok(false);
        }
        if d + 1 == cands.len() {
            return Ok(true);
        }
        for v in &cands[d + 1] {
            if self.descend(d + 1, v, cands, nodes, budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
