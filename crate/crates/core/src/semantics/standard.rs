use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use indexmap::IndexMap;

use super::compile::{Machine, Program};
use super::kripke::KripkeModel;
use super::value::{TypeTable, Universe, Value};
use super::SemanticsError;
use crate::embed::ModalSignature;
use crate::stt::{Name, Signature, Term, Type, Unfolder, INDIVIDUAL, WORLD};

/// Finite carriers for base types and values for uninterpreted constants;
/// function types denote full function spaces.
#[derive(Debug, Clone)]
pub struct StandardModel {
    pub signature: Signature,
    pub carriers: BTreeMap<Name, usize>,
    pub interp: IndexMap<Name, Value>,
}

impl StandardModel {
    pub fn new(signature: Signature) -> Self {
        StandardModel { signature, carriers: BTreeMap::new(), interp: IndexMap::new() }
    }

    pub fn with_carrier(mut self, base: &str, size: usize) -> Self {
        self.carriers.insert(Name::from(base), size);
        self
    }

    pub fn with_value(mut self, name: &str, v: Value) -> Self {
        self.interp.insert(Name::from(name), v);
        self
    }

    /// Value of a closed term, with closures tabulated.
    pub fn eval(&self, t: &Term) -> Result<Value, SemanticsError> {
        eval_stt(self, &HashMap::new(), t)
    }

    pub fn truth(&self, t: &Term) -> Result<bool, SemanticsError> {
        Ok(self.eval(t)?.as_bool())
    }
}

/// Value of `t` under `model` with the free variables bound by `env`. Defined
/// constants are unfolded using the model's signature.
pub fn eval_stt(model: &StandardModel, env: &HashMap<Name, Value>, t: &Term) -> Result<Value, SemanticsError> {
    Evaluator::new(&model.signature, t).eval_with(model, env)
}

/// A term compiled once for repeated evaluation in different models.
pub struct Evaluator {
    program: Program,
    types: Arc<TypeTable>,
    cache: std::sync::Mutex<Option<(Vec<usize>, Arc<Universe>)>>,
}

impl Evaluator {
    pub fn new(sig: &Signature, t: &Term) -> Self {
        let unfolded = Unfolder::new(sig).unfold(t);
        let mut program = Program::new(false);
        program.add_root(&unfolded);
        let types = Arc::new(program.types.clone());
        Evaluator { program, types, cache: std::sync::Mutex::new(None) }
    }

    pub fn eval(&self, model: &StandardModel) -> Result<Value, SemanticsError> {
        self.eval_with(model, &HashMap::new())
    }

    pub fn truth(&self, model: &StandardModel) -> Result<bool, SemanticsError> {
        Ok(self.eval(model)?.as_bool())
    }

    pub fn eval_with(&self, model: &StandardModel, env: &HashMap<Name, Value>) -> Result<Value, SemanticsError> {
        let uni = self.universe(model)?;
        let consts = self
            .program
            .consts
            .keys()
            .map(|n| model.interp.get(n).cloned().ok_or_else(|| SemanticsError::unknown("constant", n)))
            .collect::<Result<Vec<_>, _>>()?;
        let free = self
            .program
            .free
            .keys()
            .map(|n| env.get(n).cloned().ok_or_else(|| SemanticsError::unknown("variable", n)))
            .collect::<Result<Vec<_>, _>>()?;
        let machine = Machine { uni: &uni, consts: &consts, slots: &[], free: &free };
        let root = &self.program.roots[0];
        let v = machine.eval(&root.ir, &mut Vec::new());
        Ok(machine.tabulate(&v, root.ty))
    }

    fn universe(&self, model: &StandardModel) -> Result<Arc<Universe>, SemanticsError> {
        let mut sizes = Vec::with_capacity(self.types.bases().len());
        for b in self.types.bases() {
            match model.carriers.get(b) {
                Some(&n) if n > 0 => sizes.push(n),
                _ => return Err(SemanticsError::CarrierMissing(b.clone())),
            }
        }
        let mut cache = self.cache.lock().expect("evaluator cache");
        if let Some((s, u)) = &*cache {
            if *s == sizes {
                return Ok(u.clone());
            }
        }
        let carriers: HashMap<Name, usize> = model.carriers.iter().map(|(k, v)| (k.clone(), *v)).collect();
        let u = Arc::new(self.program.universe(self.types.clone(), &carriers)?);
        *cache = Some((sizes, u.clone()));
        Ok(u)
    }
}

/// The standard model over the worlds and individuals of a Kripke model,
/// with the modal operators defined in its signature.
pub fn standard_model_of(m: &KripkeModel) -> StandardModel {
    let mut msig = ModalSignature::new();
    for r in m.relations.keys() {
        msig.add_index(r).expect("fresh relation name");
    }
    for (k, ext) in &m.predicates {
        msig.add_pred(k, ext.arity).expect("fresh predicate name");
    }
    for c in m.consts.keys() {
        msig.add_const(c).expect("fresh constant name");
    }
    for p in m.props.keys() {
        msig.add_prop(p).expect("fresh proposition name");
    }
    let mut s = StandardModel::new(msig.signature)
        .with_carrier(WORLD, m.worlds)
        .with_carrier(INDIVIDUAL, m.individuals);
    for (r, rel) in &m.relations {
        s.interp.insert(r.clone(), Value::relation(m.worlds, |a, b| rel.contains(a, b)));
    }
    for (k, ext) in &m.predicates {
        let mut args = Vec::with_capacity(ext.arity);
        s.interp.insert(k.clone(), pred_value(m, k, ext.arity, &mut args));
    }
    for (c, v) in &m.consts {
        s.interp.insert(c.clone(), Value::Elem(*v));
    }
    for (p, set) in &m.props {
        s.interp.insert(p.clone(), Value::set(m.worlds, |w| set >> w & 1 == 1));
    }
    s
}

fn pred_value(m: &KripkeModel, k: &str, arity: usize, args: &mut Vec<u32>) -> Value {
    if args.len() == arity {
        return Value::set(m.worlds, |w| m.pred(k, w, args).expect("declared predicate"));
    }
    Value::table(
        (0..m.individuals as u32)
            .map(|d| {
                args.push(d);
                let v = pred_value(m, k, arity, args);
                args.pop();
                v
            })
            .collect(),
    )
}

/// Type-directed description of a value as the tuples it maps to `true`, or
/// as argument/result pairs when the result is not boolean.
pub fn describe_value(v: &Value, ty: &Type, carriers: &BTreeMap<Name, usize>) -> String {
    fn elem(ty: &Type, e: u32) -> String {
        match ty {
            Type::Base(b) => format!("{b}{e}"),
            _ => format!("#{e}"),
        }
    }
    fn flatten(v: &Value, ty: &Type, carriers: &BTreeMap<Name, usize>, prefix: &mut Vec<String>, out: &mut Vec<String>) {
        match (v, ty) {
            (Value::Fun(_), Type::Arrow(a, b)) => {
                let n = match &**a {
                    Type::Base(base) if &**base == crate::stt::BOOL => 2,
                    Type::Base(base) => carriers.get(base).copied().unwrap_or(0),
                    _ => 0,
                };
                if n == 0 {
                    out.push(format!("{v:?}"));
                    return;
                }
                for i in 0..n {
                    let arg = match &**a {
                        Type::Base(base) if &**base == crate::stt::BOOL => (i == 1).to_string(),
                        _ => elem(a, i as u32),
                    };
                    prefix.push(arg);
                    flatten(v.at(i), b, carriers, prefix, out);
                    prefix.pop();
                }
            }
            (Value::Bool(true), _) => out.push(format!("({})", prefix.join(", "))),
            (Value::Bool(false), _) => {}
            (Value::Elem(e), _) => out.push(format!("({}) -> {}", prefix.join(", "), elem(ty, *e))),
            (Value::Fun(_), _) => out.push(format!("{v:?}")),
        }
    }
    match v {
        Value::Bool(b) => b.to_string(),
        Value::Elem(e) => elem(ty, *e),
        Value::Fun(_) => {
            let mut out = Vec::new();
            flatten(v, ty, carriers, &mut Vec::new(), &mut out);
            format!("{{{}}}", out.join(", "))
        }
    }
}
