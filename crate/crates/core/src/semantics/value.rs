use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;

use super::compile::Ir;
use super::SemanticsError;
use crate::stt::{Name, Type, BOOL};

/// Largest domain the evaluator will enumerate.
pub const DOMAIN_LIMIT: u64 = 1 << 22;

/// An element of a finite standard model.
#[derive(Clone)]
pub enum Value {
    Bool(bool),
    /// Element of a base-type carrier, numbered from 0.
    Elem(u32),
    Fun(Arc<Func>),
}

pub enum Func {
    /// Values indexed by the code of the argument.
    Table(Box<[Value]>),
    Closure { body: Arc<Ir>, env: Vec<Value> },
}

impl Value {
    pub fn as_bool(&self) -> bool {
        match self {
            Value::Bool(b) => *b,
            _ => panic!("expected a boolean value"),
        }
    }

    pub fn as_elem(&self) -> u32 {
        match self {
            Value::Elem(e) => *e,
            _ => panic!("expected a carrier element"),
        }
    }

    pub fn table(entries: Vec<Value>) -> Value {
        Value::Fun(Arc::new(Func::Table(entries.into_boxed_slice())))
    }

    /// Characteristic function of a binary relation over `n` elements.
    pub fn relation(n: usize, holds: impl Fn(usize, usize) -> bool) -> Value {
        Value::table((0..n).map(|s| Value::table((0..n).map(|t| Value::Bool(holds(s, t))).collect())).collect())
    }

    /// Characteristic function of a set of elements.
    pub fn set(n: usize, holds: impl Fn(usize) -> bool) -> Value {
        Value::table((0..n).map(|s| Value::Bool(holds(s))).collect())
    }

    /// Applies a table-valued function; closures need an evaluation context.
    pub fn at(&self, index: usize) -> &Value {
        match self {
            Value::Fun(f) => match &**f {
                Func::Table(t) => &t[index],
                Func::Closure { .. } => panic!("closure applied without a context"),
            },
            _ => panic!("expected a function value"),
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Elem(e) => write!(f, "#{e}"),
            Value::Fun(func) => match &**func {
                Func::Table(t) => f.debug_list().entries(t.iter()).finish(),
                Func::Closure { .. } => write!(f, "<closure>"),
            },
        }
    }
}

impl PartialEq for Value {
    /// Structural equality; closures compare by identity. Use
    /// an evaluator for extensional equality.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Elem(a), Value::Elem(b)) => a == b,
            (Value::Fun(a), Value::Fun(b)) => match (&**a, &**b) {
                (Func::Table(x), Func::Table(y)) => x == y,
                _ => Arc::ptr_eq(a, b),
            },
            _ => false,
        }
    }
}

pub type TyId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TyKind {
    Bool,
    Base(u32),
    Arrow(TyId, TyId),
}

/// Interned types of one compiled program.
#[derive(Debug, Clone, Default)]
pub struct TypeTable {
    kinds: Vec<TyKind>,
    ids: HashMap<Type, TyId>,
    pub(crate) bases: IndexSet<Name>,
}

impl TypeTable {
    pub fn intern(&mut self, ty: &Type) -> TyId {
        if let Some(id) = self.ids.get(ty) {
            return *id;
        }
        let kind = match ty {
            Type::Base(n) if &**n == BOOL => TyKind::Bool,
            Type::Base(n) => TyKind::Base(self.bases.insert_full(n.clone()).0 as u32),
            Type::Arrow(a, b) => {
                let a = self.intern(a);
                let b = self.intern(b);
                TyKind::Arrow(a, b)
            }
        };
        let id = self.kinds.len() as TyId;
        self.kinds.push(kind);
        self.ids.insert(ty.clone(), id);
        id
    }

    pub fn kind(&self, id: TyId) -> TyKind {
        self.kinds[id as usize]
    }

    pub fn bases(&self) -> &IndexSet<Name> {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    fn display(&self, id: TyId) -> String {
        match self.kind(id) {
            TyKind::Bool => BOOL.to_string(),
            TyKind::Base(b) => self.bases[b as usize].to_string(),
            TyKind::Arrow(a, b) => format!("({} > {})", self.display(a), self.display(b)),
        }
    }
}

/// Carrier sizes together with the enumerated domains a program needs.
pub struct Universe {
    pub(crate) types: Arc<TypeTable>,
    sizes: Vec<u64>,
    domains: Vec<Option<Arc<[Value]>>>,
}

impl Universe {
    /// `carriers[b]` is the size of base type `b` of the table. Builds the
    /// domain of every type in `domains` and whatever comparing or encoding
    /// values of the types in `values` requires.
    pub fn new(
        types: Arc<TypeTable>,
        carriers: &[usize],
        domains: &[TyId],
        values: &[TyId],
    ) -> Result<Self, SemanticsError> {
        let sizes = (0..types.len() as TyId)
            .map(|id| Self::size_of(&types, carriers, id))
            .collect();
        let mut u = Universe { domains: vec![None; types.len()], types, sizes };
        for &t in domains {
            u.require_domain(t)?;
        }
        for &t in values {
            u.require_values(t)?;
        }
        Ok(u)
    }

    fn size_of(types: &TypeTable, carriers: &[usize], id: TyId) -> u64 {
        match types.kind(id) {
            TyKind::Bool => 2,
            TyKind::Base(b) => carriers[b as usize] as u64,
            TyKind::Arrow(a, b) => {
                let (a, b) = (Self::size_of(types, carriers, a), Self::size_of(types, carriers, b));
                u32::try_from(a).ok().and_then(|a| b.checked_pow(a)).unwrap_or(u64::MAX)
            }
        }
    }

    pub fn size(&self, id: TyId) -> u64 {
        self.sizes[id as usize]
    }

    fn require_domain(&mut self, id: TyId) -> Result<(), SemanticsError> {
        if self.domains[id as usize].is_some() {
            return Ok(());
        }
        let size = self.size(id);
        if size > DOMAIN_LIMIT {
            return Err(SemanticsError::DomainTooLarge { ty: self.types.display(id), size });
        }
        let dom: Arc<[Value]> = match self.types.kind(id) {
            TyKind::Bool => Arc::from([Value::Bool(false), Value::Bool(true)]),
            TyKind::Base(_) => (0..size as u32).map(Value::Elem).collect(),
            TyKind::Arrow(a, b) => {
                self.require_values(a)?;
                self.require_domain(b)?;
                let n = self.size(a) as usize;
                let cod = self.domains[b as usize].clone().expect("required above");
                let m = cod.len() as u64;
                (0..size)
                    .map(|mut code| {
                        let mut entries = Vec::with_capacity(n);
                        for _ in 0..n {
                            entries.push(cod[(code % m) as usize].clone());
                            code /= m;
                        }
                        Value::table(entries)
                    })
                    .collect()
            }
        };
        self.domains[id as usize] = Some(dom);
        Ok(())
    }

    fn require_values(&mut self, id: TyId) -> Result<(), SemanticsError> {
        if let TyKind::Arrow(a, b) = self.types.kind(id) {
            self.require_domain(a)?;
            self.require_values(b)?;
        }
        Ok(())
    }

    /// Enumerated domain of a type; code `k` is the `k`-th element.
    pub fn domain(&self, id: TyId) -> &Arc<[Value]> {
        self.domains[id as usize].as_ref().expect("domain was not requested")
    }
}
