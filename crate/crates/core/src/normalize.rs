//! Type checking, beta normalization and eta-long forms.

use std::sync::Arc;

use crate::term::{Context, Name, Term};
use crate::types::SimpleType;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LambdaError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(Name),
    #[error("loose de Bruijn index {0}")]
    LooseIndex(u32),
    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch {
        expected: SimpleType,
        found: SimpleType,
    },
    #[error("cannot apply a term of base type")]
    NotAFunction,
    #[error("term is not beta-normal")]
    NotNormal,
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error(transparent)]
    Duplicate(#[from] crate::term::DuplicateName),
}

fn bound_type(stack: &[SimpleType], i: u32) -> Result<&SimpleType, LambdaError> {
    let i = i as usize;
    if i < stack.len() {
        Ok(&stack[stack.len() - 1 - i])
    } else {
        Err(LambdaError::LooseIndex(i as u32))
    }
}

fn head_type<'a>(
    t: &Term,
    ctx: &'a Context,
    stack: &'a [SimpleType],
) -> Result<&'a SimpleType, LambdaError> {
    match t {
        Term::Bound(i) => bound_type(stack, *i),
        Term::Free(n) => ctx
            .lookup(n)
            .ok_or_else(|| LambdaError::UnboundVariable(n.clone())),
        _ => Err(LambdaError::NotNormal),
    }
}

/// Infers the type of `t` over `ctx`.
pub fn typecheck(t: &Term, ctx: &Context) -> Result<SimpleType, LambdaError> {
    let mut stack = Vec::new();
    infer(t, ctx, &mut stack)
}

fn infer(t: &Term, ctx: &Context, stack: &mut Vec<SimpleType>) -> Result<SimpleType, LambdaError> {
    match t {
        Term::Bound(_) | Term::Free(_) => head_type(t, ctx, stack).cloned(),
        Term::Lam(ty, b) => {
            stack.push(ty.clone());
            let body = infer(b, ctx, stack);
            stack.pop();
            Ok(SimpleType::arrow(ty.clone(), &body?))
        }
        Term::App(f, x) => {
            let fty = infer(f, ctx, stack)?;
            let Some(arg) = fty.components().first() else {
                return Err(LambdaError::NotAFunction);
            };
            let xty = infer(x, ctx, stack)?;
            if &xty != arg {
                return Err(LambdaError::TypeMismatch {
                    expected: arg.clone(),
                    found: xty,
                });
            }
            Ok(fty.drop_components(1))
        }
    }
}

/// Checks that `t` has type `ty` over `ctx`.
pub fn check(t: &Term, ctx: &Context, ty: &SimpleType) -> Result<(), LambdaError> {
    let found = typecheck(t, ctx)?;
    if &found == ty {
        Ok(())
    } else {
        Err(LambdaError::TypeMismatch {
            expected: ty.clone(),
            found,
        })
    }
}

/// Adds `d` to every index at or above `cutoff`.
fn shift(t: &Term, d: u32, cutoff: u32) -> Term {
    if d == 0 {
        return t.clone();
    }
    match t {
        Term::Bound(i) if *i >= cutoff => Term::Bound(i + d),
        Term::Bound(_) | Term::Free(_) => t.clone(),
        Term::App(f, x) => Term::app(shift(f, d, cutoff), shift(x, d, cutoff)),
        Term::Lam(ty, b) => Term::Lam(ty.clone(), Arc::new(shift(b, d, cutoff + 1))),
    }
}

/// `body[depth := arg]`, lowering the indices above `depth`.
fn instantiate(body: &Term, arg: &Term, arg_closed: bool, depth: u32) -> Term {
    match body {
        Term::Bound(i) if *i == depth => {
            if arg_closed {
                arg.clone()
            } else {
                shift(arg, depth, 0)
            }
        }
        Term::Bound(i) if *i > depth => Term::Bound(i - 1),
        Term::Bound(_) | Term::Free(_) => body.clone(),
        Term::App(f, x) => Term::app(
            instantiate(f, arg, arg_closed, depth),
            instantiate(x, arg, arg_closed, depth),
        ),
        Term::Lam(ty, b) => Term::Lam(
            ty.clone(),
            Arc::new(instantiate(b, arg, arg_closed, depth + 1)),
        ),
    }
}

fn beta(body: &Term, arg: &Term) -> Term {
    instantiate(body, arg, arg.is_locally_closed(), 0)
}

/// Beta normalization. The argument of each redex is normalized before it
/// is substituted, so copies of it are never reduced twice.
pub fn beta_normalize(t: &Term) -> Term {
    let mut cur = t.clone();
    loop {
        if let Term::Lam(ty, b) = &cur {
            return Term::Lam(ty.clone(), Arc::new(beta_normalize(b)));
        }
        let (head, args) = cur.spine();
        if let (Term::Lam(_, body), Some(first)) = (head, args.first()) {
            let reduced = beta(body, &beta_normalize(first));
            let rest: Vec<Term> = args[1..].iter().map(|a| (*a).clone()).collect();
            cur = Term::apps(reduced, rest);
            continue;
        }
        let head = head.clone();
        let args: Vec<Term> = args.iter().map(|a| beta_normalize(a)).collect();
        return Term::apps(head, args);
    }
}

/// Eta-expands a beta-normal term of type `ty` over `ctx` into long form.
pub fn eta_long(t: &Term, ty: &SimpleType, ctx: &Context) -> Result<Term, LambdaError> {
    let mut stack = Vec::new();
    expand(t, ty, ctx, &mut stack)
}

fn expand(
    t: &Term,
    ty: &SimpleType,
    ctx: &Context,
    stack: &mut Vec<SimpleType>,
) -> Result<Term, LambdaError> {
    if ty.is_base() {
        let (head, args) = t.spine();
        let hty = head_type(head, ctx, stack)?.clone();
        if hty.arity() != args.len() {
            return Err(LambdaError::TypeMismatch {
                expected: ty.clone(),
                found: hty.drop_components(args.len().min(hty.arity())),
            });
        }
        let mut out = head.clone();
        for (a, c) in args.iter().zip(hty.components()) {
            out = Term::app(out, expand(a, c, ctx, stack)?);
        }
        return Ok(out);
    }
    let first = &ty.components()[0];
    let rest = ty.drop_components(1);
    let body = match t {
        Term::Lam(a, b) => {
            if a != first {
                return Err(LambdaError::TypeMismatch {
                    expected: first.clone(),
                    found: a.clone(),
                });
            }
            stack.push(first.clone());
            let r = expand(b, &rest, ctx, stack);
            stack.pop();
            r?
        }
        _ => {
            let applied = Term::app(shift(t, 1, 0), Term::Bound(0));
            stack.push(first.clone());
            let r = expand(&applied, &rest, ctx, stack);
            stack.pop();
            r?
        }
    };
    Ok(Term::Lam(first.clone(), Arc::new(body)))
}

/// The long normal form: beta-normal and eta-long.
pub fn lnf(t: &Term, ctx: &Context) -> Result<Term, LambdaError> {
    let ty = typecheck(t, ctx)?;
    eta_long(&beta_normalize(t), &ty, ctx)
}

/// The long normal form at a known type.
pub fn lnf_at(t: &Term, ty: &SimpleType, ctx: &Context) -> Result<Term, LambdaError> {
    check(t, ctx, ty)?;
    eta_long(&beta_normalize(t), ty, ctx)
}

pub fn is_lnf(t: &Term, ctx: &Context) -> bool {
    matches!(lnf(t, ctx), Ok(n) if &n == t)
}

/// Beta-eta equality of two well-typed terms over the same context.
pub fn beta_eta_eq(s: &Term, t: &Term, ctx: &Context) -> Result<bool, LambdaError> {
    let a = typecheck(s, ctx)?;
    let b = typecheck(t, ctx)?;
    if a != b {
        return Ok(false);
    }
    Ok(eta_long(&beta_normalize(s), &a, ctx)? == eta_long(&beta_normalize(t), &b, ctx)?)
}

/// The long form of a context variable.
pub fn eta_var(name: &Name, ty: &SimpleType) -> Term {
    let ctx = Context::new(vec![(name.clone(), ty.clone())]).expect("single entry");
    eta_long(&Term::Free(name.clone()), ty, &ctx).expect("variable is well typed")
}

/// One-step eta contraction everywhere it applies; used to produce
/// equivalent non-long variants in tests.
pub fn eta_reduce(t: &Term) -> Term {
    match t {
        Term::Bound(_) | Term::Free(_) => t.clone(),
        Term::App(f, x) => Term::app(eta_reduce(f), eta_reduce(x)),
        Term::Lam(ty, b) => {
            let b = eta_reduce(b);
            if let Term::App(f, x) = &b {
                if **x == Term::Bound(0) && !uses_index(f, 0) {
                    return unshift(f, 0);
                }
            }
            Term::Lam(ty.clone(), Arc::new(b))
        }
    }
}

fn uses_index(t: &Term, depth: u32) -> bool {
    match t {
        Term::Bound(i) => *i == depth,
        Term::Free(_) => false,
        Term::App(f, x) => uses_index(f, depth) || uses_index(x, depth),
        Term::Lam(_, b) => uses_index(b, depth + 1),
    }
}

fn unshift(t: &Term, cutoff: u32) -> Term {
    match t {
        Term::Bound(i) if *i > cutoff => Term::Bound(i - 1),
        Term::Bound(_) | Term::Free(_) => t.clone(),
        Term::App(f, x) => Term::app(unshift(f, cutoff), unshift(x, cutoff)),
        Term::Lam(ty, b) => Term::Lam(ty.clone(), Arc::new(unshift(b, cutoff + 1))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, parse_type};

    fn closed(src: &str) -> Term {
        parse_term(src).unwrap()
    }

    fn church(n: usize) -> Term {
        let mut body = Term::Bound(0);
        for _ in 0..n {
            body = Term::app(Term::Bound(1), body);
        }
        Term::Lam(
            SimpleType::nat(1),
            Arc::new(Term::Lam(SimpleType::base(), Arc::new(body))),
        )
    }

    #[test]
    fn typecheck_numeral() {
        assert_eq!(typecheck(&church(3), &Context::empty()).unwrap(), parse_type("[1,0]").unwrap());
    }

    #[test]
    fn typecheck_rejects_bad_application() {
        let t = closed(r"\x:0. x x");
        assert!(typecheck(&t, &Context::empty()).is_err());
    }

    #[test]
    fn plus_reduces_to_sum() {
        let plus = closed(r"\a:[1,0]. \b:[1,0]. \f:1. \c:0. a f (b f c)");
        let t = Term::apps(plus, [church(2), church(3)]);
        assert_eq!(beta_normalize(&t), church(5));
    }

    #[test]
    fn eta_long_expands_identity_on_two() {
        // \F:2. F  at type [2,1] expands to \F. \x. F (\y. x y)
        let t = closed(r"\F:2. F");
        let expected = closed(r"\F:2. \x:1. F (\y:0. x y)");
        let ty = parse_type("[2,1]").unwrap();
        assert_eq!(eta_long(&t, &ty, &Context::empty()).unwrap(), expected);
    }

    #[test]
    fn lnf_of_eta_short_numeral() {
        // \f:1. f is c1 up to eta
        let t = closed(r"\f:1. f");
        assert_eq!(lnf(&t, &Context::empty()).unwrap(), church(1));
    }

    #[test]
    fn free_variables_in_open_terms() {
        let ctx = Context::new(vec![
            (Name::new("F"), SimpleType::nat(2)),
        ])
        .unwrap();
        let t = parse_term("F").unwrap();
        let long = lnf(&t, &ctx).unwrap();
        assert_eq!(long, parse_term(r"\h:[0]. F (\x:0. h x)").unwrap());
    }

    #[test]
    fn open_beta_under_binder_keeps_indices() {
        // (\x:0. \y:0. x) applied under a binder that is then referenced
        let t = closed(r"\z:0. (\x:0. \y:0. x) z");
        assert_eq!(beta_normalize(&t), closed(r"\z:0. \y:0. z"));
    }

    #[test]
    fn eta_reduce_round_trip() {
        let long = closed(r"\F:2. F (\x:0. x)");
        assert_eq!(lnf(&eta_reduce(&long), &Context::empty()).unwrap(), long);
        let c1 = church(1);
        assert_eq!(eta_reduce(&c1), closed(r"\f:1. f"));
    }

    #[test]
    fn beta_eta_equality() {
        let ctx = Context::empty();
        assert!(beta_eta_eq(&closed(r"\f:1. f"), &church(1), &ctx).unwrap());
        assert!(!beta_eta_eq(&church(1), &church(2), &ctx).unwrap());
    }
}
