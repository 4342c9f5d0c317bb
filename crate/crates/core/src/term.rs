//! Terms with nameless bound variables and named context variables.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::types::SimpleType;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Self {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

impl From<String> for Name {
    fn from(s: String) -> Self {
        Name(Arc::from(s))
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A lambda term. `Bound(i)` is a de Bruijn index (0 = innermost binder);
/// `Free` refers to a context variable by name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Bound(u32),
    Free(Name),
    App(Arc<Term>, Arc<Term>),
    Lam(SimpleType, Arc<Term>),
}

impl Term {
    pub fn free(name: impl Into<Name>) -> Term {
        Term::Free(name.into())
    }

    pub fn app(f: Term, x: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(x))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    /// `\name:ty. body`, turning free occurrences of `name` into the new binder.
    pub fn lam(name: &Name, ty: SimpleType, body: Term) -> Term {
        Term::Lam(ty, Arc::new(body.abstract_name(name, 0)))
    }

    /// Nested lambdas, outermost first.
    pub fn lams(binders: &[(Name, SimpleType)], body: Term) -> Term {
        binders
            .iter()
            .rev()
            .fold(body, |acc, (n, ty)| Term::lam(n, ty.clone(), acc))
    }

    /// Binds every variable of `ctx`, leftmost outermost.
    pub fn close_over(ctx: &Context, body: Term) -> Term {
        Term::lams(ctx.entries(), body)
    }

    fn abstract_name(&self, name: &Name, depth: u32) -> Term {
        match self {
            Term::Free(n) if n == name => Term::Bound(depth),
            Term::Free(_) | Term::Bound(_) => self.clone(),
            Term::App(f, x) => Term::app(
                f.abstract_name(name, depth),
                x.abstract_name(name, depth),
            ),
            Term::Lam(ty, b) => Term::Lam(ty.clone(), Arc::new(b.abstract_name(name, depth + 1))),
        }
    }

    /// Variable occurrences + binders + application nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Bound(_) | Term::Free(_) => 1,
            Term::App(f, x) => 1 + f.size() + x.size(),
            Term::Lam(_, b) => 1 + b.size(),
        }
    }

    /// Splits `h N1 ... Nm` into `h` and the arguments.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let Term::App(f, x) = t {
            args.push(&**x);
            t = f;
        }
        args.reverse();
        (t, args)
    }

    /// Strips leading lambdas, returning their types and the body.
    pub fn binders(&self) -> (Vec<&SimpleType>, &Term) {
        let mut tys = Vec::new();
        let mut t = self;
        while let Term::Lam(ty, b) = t {
            tys.push(ty);
            t = b;
        }
        (tys, t)
    }

    pub fn free_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Free(n) => {
                out.insert(n.clone());
            }
            Term::Bound(_) => {}
            Term::App(f, x) => {
                f.collect_free(out);
                x.collect_free(out);
            }
            Term::Lam(_, b) => b.collect_free(out),
        }
    }

    pub fn mentions(&self, name: &Name) -> bool {
        match self {
            Term::Free(n) => n == name,
            Term::Bound(_) => false,
            Term::App(f, x) => f.mentions(name) || x.mentions(name),
            Term::Lam(_, b) => b.mentions(name),
        }
    }

    /// True if no de Bruijn index escapes its binders.
    pub fn is_locally_closed(&self) -> bool {
        self.max_loose(0).is_none()
    }

    /// The largest loose index, adjusted to the outside of the term.
    pub(crate) fn max_loose(&self, depth: u32) -> Option<u32> {
        match self {
            Term::Bound(i) if *i >= depth => Some(*i - depth),
            Term::Bound(_) | Term::Free(_) => None,
            Term::App(f, x) => match (f.max_loose(depth), x.max_loose(depth)) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            },
            Term::Lam(_, b) => b.max_loose(depth + 1),
        }
    }

    /// True if the term contains no free context variables and no loose indices.
    pub fn is_closed(&self) -> bool {
        self.is_locally_closed() && self.free_names().is_empty()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_term(self))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_term(self))
    }
}

/// An ordered list of distinct typed variables.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Context {
    entries: Vec<(Name, SimpleType)>,
}

impl Context {
    pub fn empty() -> Self {
        Context::default()
    }

    /// Builds a context, rejecting duplicate names.
    pub fn new(entries: Vec<(Name, SimpleType)>) -> Result<Self, DuplicateName> {
        let mut seen = BTreeSet::new();
        for (n, _) in &entries {
            if !seen.insert(n.clone()) {
                return Err(DuplicateName(n.clone()));
            }
        }
        Ok(Context { entries })
    }

    /// `prefix1, ..., prefixn` typed by `tys`.
    pub fn numbered(prefix: &str, tys: &[SimpleType]) -> Self {
        Context {
            entries: tys
                .iter()
                .enumerate()
                .map(|(i, t)| (Name::from(format!("{prefix}{}", i + 1)), t.clone()))
                .collect(),
        }
    }

    /// The component context of a type, with numbered names.
    pub fn of_type(prefix: &str, ty: &SimpleType) -> Self {
        Self::numbered(prefix, ty.components())
    }

    pub fn entries(&self) -> &[(Name, SimpleType)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.entries.iter().map(|(n, _)| n)
    }

    pub fn types(&self) -> Vec<SimpleType> {
        self.entries.iter().map(|(_, t)| t.clone()).collect()
    }

    /// `[C1,...,Cn]` for the context `x1:C1,...,xn:Cn`.
    pub fn as_type(&self) -> SimpleType {
        SimpleType::new(self.types())
    }

    pub fn lookup(&self, name: &Name) -> Option<&SimpleType> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn position(&self, name: &Name) -> Option<usize> {
        self.entries.iter().position(|(n, _)| n == name)
    }

    pub fn contains(&self, name: &Name) -> bool {
        self.lookup(name).is_some()
    }

    /// Appends a variable whose name must be new.
    pub fn push(&mut self, name: Name, ty: SimpleType) -> Result<(), DuplicateName> {
        if self.contains(&name) {
            return Err(DuplicateName(name));
        }
        self.entries.push((name, ty));
        Ok(())
    }

    /// Appends a variable under the first name `base`, `base1`, `base2`, ...
    /// that is not already taken, and returns that name.
    pub fn push_fresh(&mut self, base: &str, ty: SimpleType) -> Name {
        let name = self.fresh_name(base);
        self.entries.push((name.clone(), ty));
        name
    }

    pub fn fresh_name(&self, base: &str) -> Name {
        let mut i = 0usize;
        loop {
            let candidate = Name::from(format!("{base}{i}"));
            if !self.contains(&candidate) {
                return candidate;
            }
            i += 1;
        }
    }

    /// Concatenation; fails on a name clash.
    pub fn concat(&self, other: &Context) -> Result<Context, DuplicateName> {
        let mut out = self.clone();
        for (n, t) in &other.entries {
            out.push(n.clone(), t.clone())?;
        }
        Ok(out)
    }

    /// Types sorted, as a key insensitive to names and order.
    pub fn signature(&self) -> Vec<SimpleType> {
        let mut tys = self.types();
        tys.sort();
        tys
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, t)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}:{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("duplicate variable `{0}` in context")]
pub struct DuplicateName(pub Name);
