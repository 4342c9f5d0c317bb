//! Helpers for writing witness terms with named binders.
//!
//! Binder names start with an underscore, which no parsed or generated
//! context variable does, so they cannot capture context variables.

use crate::term::{Context, Name, Term};
use crate::types::SimpleType;

#[derive(Default)]
pub(crate) struct Temps {
    next: usize,
}

impl Temps {
    pub fn name(&mut self) -> Name {
        self.next += 1;
        Name::from(format!("_t{}", self.next))
    }

    pub fn binder(&mut self, ty: &SimpleType) -> (Name, SimpleType) {
        (self.name(), ty.clone())
    }

    /// One fresh binder per component of `ty`.
    pub fn binders_for(&mut self, ty: &SimpleType) -> Vec<(Name, SimpleType)> {
        ty.components().iter().map(|c| self.binder(c)).collect()
    }
}

pub(crate) fn var(n: &Name) -> Term {
    Term::Free(n.clone())
}

pub(crate) fn vars(bs: &[(Name, SimpleType)]) -> Vec<Term> {
    bs.iter().map(|(n, _)| var(n)).collect()
}

pub(crate) fn name_at(ctx: &Context, i: usize) -> Name {
    ctx.entries()[i].0.clone()
}

pub(crate) fn lam1(b: (Name, SimpleType), body: Term) -> Term {
    Term::lam(&b.0, b.1, body)
}

/// `f^n(x)`.
pub(crate) fn iterate(f: &Term, n: usize, x: Term) -> Term {
    (0..n).fold(x, |acc, _| Term::app(f.clone(), acc))
}
