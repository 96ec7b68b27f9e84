use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use indexmap::IndexMap;

use super::value::{Func, TyId, TyKind, TypeTable, Universe, Value};
use super::SemanticsError;
use crate::stt::{Name, Term, Type};

/// Closed terms compiled to de Bruijn form.
#[derive(Debug)]
pub enum Ir {
    Const(u32),
    Free(u32),
    Var(u32),
    Slot(u32),
    Lam(Arc<Ir>),
    /// Function, argument and the argument's type.
    App(Box<Ir>, Box<Ir>, TyId),
    Not(Box<Ir>),
    Or(Box<Ir>, Box<Ir>),
    Eq(TyId, Box<Ir>, Box<Ir>),
    /// `Π (λx. body)` with `x` bound as variable 0.
    Forall(TyId, Box<Ir>),
    /// `Π f` for a non-λ `f`.
    ForallApp(TyId, Box<Ir>),
}

impl Ir {
    pub fn size(&self) -> usize {
        match self {
            Ir::Const(_) | Ir::Free(_) | Ir::Var(_) | Ir::Slot(_) => 1,
            Ir::Lam(b) => 1 + b.size(),
            Ir::Not(b) | Ir::Forall(_, b) | Ir::ForallApp(_, b) => 1 + b.size(),
            Ir::App(a, b, _) | Ir::Or(a, b) | Ir::Eq(_, a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// A closed subterm evaluated once per assignment of the constants it uses.
#[derive(Debug)]
pub struct SlotDef {
    pub ir: Ir,
    pub deps: BTreeSet<u32>,
}

#[derive(Debug)]
pub struct Root {
    pub ir: Ir,
    pub deps: BTreeSet<u32>,
    pub ty: TyId,
}

/// Several terms over one set of constants, sharing hoisted subterms.
#[derive(Debug, Default)]
pub struct Program {
    pub types: TypeTable,
    pub consts: IndexMap<Name, (Type, TyId)>,
    pub free: IndexMap<Name, (Type, TyId)>,
    pub slots: Vec<SlotDef>,
    pub roots: Vec<Root>,
    pub domain_types: BTreeSet<TyId>,
    pub value_types: BTreeSet<TyId>,
    slot_keys: HashMap<Term, u32>,
    hoist: bool,
}

impl Program {
    pub fn new(hoist: bool) -> Self {
        Program { hoist, ..Default::default() }
    }

    /// Registers a constant ahead of compilation, fixing its index.
    pub fn declare_const(&mut self, name: &Name, ty: &Type) -> u32 {
        let id = self.types.intern(ty);
        self.consts.insert_full(name.clone(), (ty.clone(), id)).0 as u32
    }

    /// Compiles a term whose defined constants have been unfolded. Free
    /// variables become entries of [`Program::free`].
    pub fn add_root(&mut self, t: &Term) -> usize {
        let mut deps = BTreeSet::new();
        let (ir, ty) = self.compile(t, &mut Vec::new(), &mut deps);
        let ty = self.types.intern(&ty);
        self.value_types.insert(ty);
        self.roots.push(Root { ir, deps, ty });
        self.roots.len() - 1
    }

    fn compile(&mut self, t: &Term, stack: &mut Vec<Name>, deps: &mut BTreeSet<u32>) -> (Ir, Type) {
        if self.hoist && !stack.is_empty() && !matches!(t, Term::Const(..) | Term::Var(..)) {
            let fv = t.free_vars();
            if !fv.iter().any(|v| stack.contains(v)) {
                let ty = self.type_of(t);
                let slot = self.slot(t, deps);
                return (Ir::Slot(slot), ty);
            }
        }
        let (head, args) = t.spine();
        match head {
            Term::Neg | Term::Or | Term::Eq(_) | Term::Pi(_) => return self.builtin(head, &args, stack, deps),
            _ => {}
        }
        if args.is_empty() {
            return self.atom(t, stack, deps);
        }
        let (mut ir, mut ty) = self.atom(head, stack, deps);
        for a in args {
            let (arg, aty) = self.compile(a, stack, deps);
            let id = self.types.intern(&aty);
            self.value_types.insert(id);
            let Type::Arrow(_, cod) = ty else { panic!("ill-typed application in {t}") };
            ir = Ir::App(Box::new(ir), Box::new(arg), id);
            ty = (*cod).clone();
        }
        (ir, ty)
    }

    fn atom(&mut self, t: &Term, stack: &mut Vec<Name>, deps: &mut BTreeSet<u32>) -> (Ir, Type) {
        match t {
            Term::Const(n, ty) => {
                let i = match self.consts.get_index_of(n) {
                    Some(i) => i as u32,
                    None => self.declare_const(n, ty),
                };
                deps.insert(i);
                (Ir::Const(i), ty.clone())
            }
            Term::Var(n, ty) => match stack.iter().rposition(|v| v == n) {
                Some(pos) => (Ir::Var((stack.len() - 1 - pos) as u32), ty.clone()),
                None => {
                    let id = self.types.intern(ty);
                    let i = self.free.insert_full(n.clone(), (ty.clone(), id)).0;
                    (Ir::Free(i as u32), ty.clone())
                }
            },
            Term::Lam(x, ty, body) => {
                self.types.intern(ty);
                stack.push(x.clone());
                let (b, bty) = self.compile(body, stack, deps);
                stack.pop();
                (Ir::Lam(Arc::new(b)), Type::arrow(ty.clone(), bty))
            }
            _ => self.compile(t, stack, deps),
        }
    }

    fn builtin(&mut self, head: &Term, args: &[&Term], stack: &mut Vec<Name>, deps: &mut BTreeSet<u32>) -> (Ir, Type) {
        let (arity, arg_ty) = match head {
            Term::Neg => (1, Type::o()),
            Term::Or => (2, Type::o()),
            Term::Eq(ty) => (2, ty.clone()),
            Term::Pi(ty) => (1, Type::arrow(ty.clone(), Type::o())),
            _ => unreachable!(),
        };
        let missing = arity - args.len();
        if let (Term::Pi(ty), [Term::Lam(x, _, body)]) = (head, args) {
            let id = self.types.intern(ty);
            self.domain_types.insert(id);
            self.value_types.insert(id);
            stack.push(x.clone());
            let (b, _) = self.compile(body, stack, deps);
            stack.pop();
            return (Ir::Forall(id, Box::new(b)), Type::o());
        }
        // Partial applications are η-expanded: given arguments are compiled
        // under placeholder binders for the missing ones.
        for _ in 0..missing {
            stack.push(Name::from(""));
        }
        let mut irs: Vec<Ir> = args.iter().map(|a| self.compile(a, stack, deps).0).collect();
        for _ in 0..missing {
            stack.pop();
        }
        for k in (0..missing).rev() {
            irs.push(Ir::Var(k as u32));
        }
        let mut ir = match head {
            Term::Neg => Ir::Not(Box::new(irs.pop().unwrap())),
            Term::Or => {
                let b = irs.pop().unwrap();
                Ir::Or(Box::new(irs.pop().unwrap()), Box::new(b))
            }
            Term::Eq(ty) => {
                let id = self.types.intern(ty);
                self.value_types.insert(id);
                let b = irs.pop().unwrap();
                Ir::Eq(id, Box::new(irs.pop().unwrap()), Box::new(b))
            }
            Term::Pi(ty) => {
                let id = self.types.intern(ty);
                self.domain_types.insert(id);
                self.value_types.insert(id);
                Ir::ForallApp(id, Box::new(irs.pop().unwrap()))
            }
            _ => unreachable!(),
        };
        for _ in 0..missing {
            ir = Ir::Lam(Arc::new(ir));
        }
        (ir, Type::arrows(vec![arg_ty; missing], Type::o()))
    }

    fn slot(&mut self, t: &Term, deps: &mut BTreeSet<u32>) -> u32 {
        if let Some(&s) = self.slot_keys.get(t) {
            deps.extend(self.slots[s as usize].deps.iter().copied());
            return s;
        }
        let mut own = BTreeSet::new();
        let (ir, _) = self.compile(t, &mut Vec::new(), &mut own);
        deps.extend(own.iter().copied());
        let s = self.slots.len() as u32;
        self.slots.push(SlotDef { ir, deps: own });
        self.slot_keys.insert(t.clone(), s);
        s
    }

    // Types of closed-under-stack subterms; variables carry their types.
    fn type_of(&self, t: &Term) -> Type {
        match t {
            Term::Const(_, ty) | Term::Var(_, ty) => ty.clone(),
            Term::Lam(_, ty, b) => Type::arrow(ty.clone(), self.type_of(b)),
            Term::App(f, _) => match self.type_of(f) {
                Type::Arrow(_, c) => (*c).clone(),
                _ => panic!("ill-typed application"),
            },
            Term::Neg => Type::arrow(Type::o(), Type::o()),
            Term::Or => Type::arrows([Type::o(), Type::o()], Type::o()),
            Term::Eq(ty) => Type::arrows([ty.clone(), ty.clone()], Type::o()),
            Term::Pi(ty) => Type::arrow(Type::arrow(ty.clone(), Type::o()), Type::o()),
        }
    }

    pub fn root_size(&self, i: usize) -> usize {
        self.roots[i].ir.size()
    }

    /// Builds the universe for the given base carrier sizes, keyed by name.
    pub fn universe(&self, types: Arc<TypeTable>, carriers: &HashMap<Name, usize>) -> Result<Universe, SemanticsError> {
        let mut sizes = Vec::with_capacity(types.bases().len());
        for b in types.bases() {
            match carriers.get(b) {
                Some(&n) if n > 0 => sizes.push(n),
                _ => return Err(SemanticsError::CarrierMissing(b.clone())),
            }
        }
        let doms: Vec<TyId> = self.domain_types.iter().copied().collect();
        let vals: Vec<TyId> = self.value_types.iter().copied().collect();
        Universe::new(types, &sizes, &doms, &vals)
    }
}

/// Evaluation state: constant values, hoisted slots and free variables.
pub struct Machine<'a> {
    pub uni: &'a Universe,
    pub consts: &'a [Value],
    pub slots: &'a [Value],
    pub free: &'a [Value],
}

impl Machine<'_> {
    pub fn eval(&self, ir: &Ir, env: &mut Vec<Value>) -> Value {
        match ir {
            Ir::Const(i) => self.consts[*i as usize].clone(),
            Ir::Free(i) => self.free[*i as usize].clone(),
            Ir::Var(i) => env[env.len() - 1 - *i as usize].clone(),
            Ir::Slot(i) => self.slots[*i as usize].clone(),
            Ir::Lam(body) => Value::Fun(Arc::new(Func::Closure { body: body.clone(), env: env.clone() })),
            Ir::App(f, a, ty) => {
                let f = self.eval(f, env);
                let a = self.eval(a, env);
                self.apply(&f, a, *ty)
            }
            _ => Value::Bool(self.truth(ir, env)),
        }
    }

    pub fn truth(&self, ir: &Ir, env: &mut Vec<Value>) -> bool {
        match ir {
            Ir::Not(a) => !self.truth(a, env),
            Ir::Or(a, b) => self.truth(a, env) || self.truth(b, env),
            Ir::Eq(ty, a, b) => {
                let a = self.eval(a, env);
                let b = self.eval(b, env);
                self.equal(&a, &b, *ty)
            }
            Ir::Forall(ty, body) => {
                let dom = self.uni.domain(*ty);
                for d in dom.iter() {
                    env.push(d.clone());
                    let ok = self.truth(body, env);
                    env.pop();
                    if !ok {
                        return false;
                    }
                }
                true
            }
            Ir::ForallApp(ty, f) => {
                let f = self.eval(f, env);
                self.uni.domain(*ty).iter().all(|d| self.apply(&f, d.clone(), *ty).as_bool())
            }
            _ => self.eval(ir, env).as_bool(),
        }
    }

    pub fn apply(&self, f: &Value, arg: Value, arg_ty: TyId) -> Value {
        let Value::Fun(func) = f else { panic!("applying a non-function") };
        match &**func {
            Func::Table(t) => t[self.encode(&arg, arg_ty) as usize].clone(),
            Func::Closure { body, env } => {
                let mut env = env.clone();
                env.push(arg);
                self.eval(body, &mut env)
            }
        }
    }

    /// Position of a value in the enumerated domain of its type.
    pub fn encode(&self, v: &Value, ty: TyId) -> u64 {
        match v {
            Value::Bool(b) => *b as u64,
            Value::Elem(e) => *e as u64,
            Value::Fun(_) => {
                let TyKind::Arrow(a, b) = self.uni.types.kind(ty) else { panic!("function at base type") };
                let m = self.uni.size(b);
                let mut code = 0u64;
                for d in self.uni.domain(a).iter().rev() {
                    code = code * m + self.encode(&self.apply(v, d.clone(), a), b);
                }
                code
            }
        }
    }

    pub fn equal(&self, x: &Value, y: &Value, ty: TyId) -> bool {
        match (x, y) {
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Elem(a), Value::Elem(b)) => a == b,
            (Value::Fun(f), Value::Fun(g)) => {
                if Arc::ptr_eq(f, g) {
                    return true;
                }
                let TyKind::Arrow(a, b) = self.uni.types.kind(ty) else { panic!("function at base type") };
                self.uni
                    .domain(a)
                    .iter()
                    .all(|d| self.equal(&self.apply(x, d.clone(), a), &self.apply(y, d.clone(), a), b))
            }
            _ => panic!("comparing values of different kinds"),
        }
    }

    /// Replaces closures by tables, recursively.
    pub fn tabulate(&self, v: &Value, ty: TyId) -> Value {
        match (v, self.uni.types.kind(ty)) {
            (Value::Fun(_), TyKind::Arrow(a, b)) => Value::table(
                self.uni.domain(a).iter().map(|d| self.tabulate(&self.apply(v, d.clone(), a), b)).collect(),
            ),
            _ => v.clone(),
        }
    }
}
