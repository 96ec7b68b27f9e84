use std::fmt;
use std::sync::Arc;

/// Interned-ish symbol used for type, constant and variable names.
pub type Name = Arc<str>;

/// Name of the boolean base type.
pub const BOOL: &str = "o";
/// Name of the individual base type.
pub const INDIVIDUAL: &str = "i";
/// Name of the possible-world base type.
pub const WORLD: &str = "w";

/// A simple type: a base type or a function type.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Base(Name),
    Arrow(Arc<Type>, Arc<Type>),
}

impl Type {
    pub fn base(name: &str) -> Type {
        Type::Base(Name::from(name))
    }

    pub fn o() -> Type {
        Type::base(BOOL)
    }

    pub fn i() -> Type {
        Type::base(INDIVIDUAL)
    }

    pub fn w() -> Type {
        Type::base(WORLD)
    }

    pub fn arrow(domain: Type, codomain: Type) -> Type {
        Type::Arrow(Arc::new(domain), Arc::new(codomain))
    }

    /// `a1 > a2 > ... > result`
    pub fn arrows<I>(domains: I, result: Type) -> Type
    where
        I: IntoIterator<Item = Type>,
        I::IntoIter: DoubleEndedIterator,
    {
        domains
            .into_iter()
            .rev()
            .fold(result, |acc, d| Type::arrow(d, acc))
    }

    /// Worlds to booleans: the type of embedded modal propositions.
    pub fn prop() -> Type {
        Type::arrow(Type::w(), Type::o())
    }

    /// The type of accessibility relations.
    pub fn relation() -> Type {
        Type::arrows([Type::w(), Type::w()], Type::o())
    }

    pub fn is_bool(&self) -> bool {
        matches!(self, Type::Base(n) if &**n == BOOL)
    }

    pub fn is_base(&self) -> bool {
        matches!(self, Type::Base(_))
    }

    pub fn domain(&self) -> Option<&Type> {
        match self {
            Type::Arrow(d, _) => Some(d),
            Type::Base(_) => None,
        }
    }

    pub fn codomain(&self) -> Option<&Type> {
        match self {
            Type::Arrow(_, c) => Some(c),
            Type::Base(_) => None,
        }
    }

    /// Splits `a1 > ... > an > b` into `([a1..an], b)` with `b` a base type.
    pub fn uncurry(&self) -> (Vec<&Type>, &Type) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Type::Arrow(d, c) = cur {
            args.push(&**d);
            cur = c;
        }
        (args, cur)
    }

    /// Every base type name occurring in this type.
    pub fn base_names(&self, out: &mut Vec<Name>) {
        match self {
            Type::Base(n) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            Type::Arrow(d, c) => {
                d.base_names(out);
                c.base_names(out);
            }
        }
    }

    /// Order of the type: 0 for base types, `max(order(d) + 1, order(c))` otherwise.
    pub fn order(&self) -> usize {
        match self {
            Type::Base(_) => 0,
            Type::Arrow(d, c) => (d.order() + 1).max(c.order()),
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Base(n) => write!(f, "{n}"),
            Type::Arrow(d, c) => {
                if d.is_base() {
                    write!(f, "{d} > {c}")
                } else {
                    write!(f, "({d}) > {c}")
                }
            }
        }
    }
}

impl fmt::Debug for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrows_are_right_associative_in_print() {
        let box_ty = Type::arrows([Type::relation(), Type::prop()], Type::prop());
        assert_eq!(box_ty.to_string(), "(w > w > o) > (w > o) > w > o");
    }

    #[test]
    fn uncurry_splits_argument_list() {
        let t = Type::arrows([Type::i(), Type::i()], Type::prop());
        let (args, res) = t.uncurry();
        assert_eq!(args.len(), 3);
        assert_eq!(res, &Type::o());
    }

    #[test]
    fn order_of_relation_quantifier_domain() {
        assert_eq!(Type::o().order(), 0);
        assert_eq!(Type::relation().order(), 1);
        assert_eq!(Type::arrow(Type::relation(), Type::o()).order(), 2);
    }
}
