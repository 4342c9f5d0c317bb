//! Substitutions between contexts and the Böhm transformation.

use std::fmt;

use crate::normalize::{check, lnf_at, LambdaError};
use crate::term::{Context, Name, Term};
use crate::types::SimpleType;

/// Assigns to each variable of `source` a long normal term over `target`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    source: Context,
    target: Context,
    terms: Vec<Term>,
}

impl Substitution {
    /// Checks each term against its source type and stores its long normal form.
    pub fn new(source: Context, target: Context, terms: Vec<Term>) -> Result<Self, LambdaError> {
        if terms.len() != source.len() {
            return Err(LambdaError::ContextMismatch(format!(
                "{} terms for {} source variables",
                terms.len(),
                source.len()
            )));
        }
        let terms = source
            .entries()
            .iter()
            .zip(&terms)
            .map(|((_, ty), t)| lnf_at(t, ty, &target))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Substitution {
            source,
            target,
            terms,
        })
    }

    /// Trusts that `terms` are already long normal over `target`.
    pub(crate) fn from_long_terms(source: Context, target: Context, terms: Vec<Term>) -> Self {
        debug_assert_eq!(source.len(), terms.len());
        Substitution {
            source,
            target,
            terms,
        }
    }

    /// Maps every source variable to the target variable at the same position.
    pub fn renaming(source: Context, target: Context) -> Result<Self, LambdaError> {
        if source.types() != target.types() {
            return Err(LambdaError::ContextMismatch(format!(
                "cannot rename {{{source}}} to {{{target}}}"
            )));
        }
        let terms = target.names().map(|n| Term::Free(n.clone())).collect();
        Self::new(source, target, terms)
    }

    pub fn identity(ctx: Context) -> Self {
        Self::renaming(ctx.clone(), ctx).expect("identical contexts")
    }

    pub fn source(&self) -> &Context {
        &self.source
    }

    pub fn target(&self) -> &Context {
        &self.target
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn get(&self, name: &Name) -> Option<&Term> {
        self.source.position(name).map(|i| &self.terms[i])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Name, &SimpleType, &Term)> {
        self.source
            .entries()
            .iter()
            .zip(&self.terms)
            .map(|((n, t), m)| (n, t, m))
    }

    /// Relabels the source variables; the terms are untouched.
    pub fn with_source(&self, source: Context) -> Result<Self, LambdaError> {
        if source.types() != self.source.types() {
            return Err(LambdaError::ContextMismatch(format!(
                "source {{{}}} does not match {{{source}}}",
                self.source
            )));
        }
        Ok(Substitution {
            source,
            target: self.target.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Renames the target variables positionally.
    pub fn with_target(&self, target: Context) -> Result<Self, LambdaError> {
        let r = Substitution::renaming(self.target.clone(), target)?;
        compose(&r, self)
    }

    /// The Böhm term `\m:[source]. \target. m rho_1 ... rho_n`.
    pub fn bohm_term(&self) -> Term {
        let m = self.target.fresh_name("m");
        let body = Term::apps(Term::Free(m.clone()), self.terms.iter().cloned());
        let mut binders = vec![(m, self.source.as_type())];
        binders.extend(self.target.entries().iter().cloned());
        Term::lams(&binders, body)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}} -> {{{}}}: ", self.source, self.target)?;
        for (i, (n, _, t)) in self.pairs().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{n} := {t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Replaces free occurrences of source variables in `t`; no normalization.
/// Every free variable of `t` must belong to the source context.
pub fn apply_substitution(rho: &Substitution, t: &Term) -> Result<Term, LambdaError> {
    match t {
        Term::Free(n) => rho
            .get(n)
            .cloned()
            .ok_or_else(|| LambdaError::UnboundVariable(n.clone())),
        Term::Bound(_) => Ok(t.clone()),
        Term::App(f, x) => Ok(Term::app(
            apply_substitution(rho, f)?,
            apply_substitution(rho, x)?,
        )),
        Term::Lam(ty, b) => Ok(Term::Lam(
            ty.clone(),
            std::sync::Arc::new(apply_substitution(rho, b)?),
        )),
    }
}

/// `sigma . rho`: first `rho`, then `sigma`.
pub fn compose(sigma: &Substitution, rho: &Substitution) -> Result<Substitution, LambdaError> {
    if rho.target != sigma.source {
        return Err(LambdaError::ContextMismatch(format!(
            "target {{{}}} is not source {{{}}}",
            rho.target, sigma.source
        )));
    }
    let terms = rho
        .pairs()
        .map(|(_, ty, t)| lnf_at(&apply_substitution(sigma, t)?, ty, &sigma.target))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Substitution {
        source: rho.source.clone(),
        target: sigma.target.clone(),
        terms,
    })
}

/// `rho^xi`: maps `xi, source` to `xi, target`, fixing the variables of `xi`.
pub fn extend_substitution(rho: &Substitution, xi: &Context) -> Result<Substitution, LambdaError> {
    let source = xi.concat(&rho.source)?;
    let target = xi.concat(&rho.target)?;
    let mut terms: Vec<Term> = xi.names().map(|n| Term::Free(n.clone())).collect();
    terms.extend(rho.terms.iter().cloned());
    Substitution::new(source, target, terms)
}

/// `rho^(M)`: for a closed `m : [source]`, the long normal form of
/// `\target. m rho_1 ... rho_n`.
pub fn bohm_transform(rho: &Substitution, m: &Term) -> Result<Term, LambdaError> {
    check(m, &Context::empty(), &rho.source.as_type())?;
    let body = Term::apps(m.clone(), rho.terms.iter().cloned());
    let body = lnf_at(&body, &SimpleType::base(), &rho.target)?;
    Ok(Term::close_over(&rho.target, body))
}

/// `rho` applied to an open term over the source context, normalized.
pub fn transform_open(rho: &Substitution, n: &Term) -> Result<Term, LambdaError> {
    let ty = crate::normalize::typecheck(n, &rho.source)?;
    lnf_at(&apply_substitution(rho, n)?, &ty, &rho.target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, parse_type};

    fn ty(s: &str) -> SimpleType {
        parse_type(s).unwrap()
    }

    fn ctx(entries: &[(&str, &str)]) -> Context {
        Context::new(entries.iter().map(|(n, t)| (Name::new(n), ty(t))).collect()).unwrap()
    }

    fn term(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn numeral_subst() -> Substitution {
        // [1,0] -> [1,0]: f := \x. f (f x), c := f c
        Substitution::new(
            ctx(&[("f", "1"), ("c", "0")]),
            ctx(&[("f", "1"), ("c", "0")]),
            vec![term(r"\x:0. f (f x)"), term("f c")],
        )
        .unwrap()
    }

    #[test]
    fn bohm_on_numerals() {
        // c_n maps to c_(2n+1)
        let rho = numeral_subst();
        let c2 = term(r"\f:1. \c:0. f (f c)");
        let c5 = term(r"\f:1. \c:0. f (f (f (f (f c))))");
        assert_eq!(bohm_transform(&rho, &c2).unwrap(), c5);
    }

    #[test]
    fn rejects_ill_typed_assignment() {
        let r = Substitution::new(
            ctx(&[("f", "1")]),
            ctx(&[("c", "0")]),
            vec![term("c")],
        );
        assert!(r.is_err());
    }

    #[test]
    fn compose_is_sequential() {
        let rho = numeral_subst();
        let twice = compose(&rho, &rho).unwrap();
        let c1 = term(r"\f:1. \c:0. f c");
        let once = bohm_transform(&rho, &c1).unwrap();
        assert_eq!(bohm_transform(&twice, &c1).unwrap(), bohm_transform(&rho, &once).unwrap());
    }

    #[test]
    fn compose_checks_contexts() {
        let rho = numeral_subst();
        let other = Substitution::identity(ctx(&[("c", "0")]));
        assert!(compose(&other, &rho).is_err());
    }

    #[test]
    fn extension_fixes_new_variables() {
        let rho = numeral_subst();
        let xi = ctx(&[("d", "0")]);
        let ext = extend_substitution(&rho, &xi).unwrap();
        assert_eq!(ext.get(&Name::new("d")), Some(&term("d")));
        assert_eq!(ext.source().len(), 3);
    }

    #[test]
    fn bohm_term_shape() {
        let rho = numeral_subst();
        let b = rho.bohm_term();
        assert_eq!(
            b,
            term(r"\m:[1,0]. \f:1. \c:0. m (\x:0. f (f x)) (f c)")
        );
    }

    #[test]
    fn renaming_target() {
        let rho = numeral_subst();
        let renamed = rho.with_target(ctx(&[("g", "1"), ("d", "0")])).unwrap();
        assert_eq!(renamed.get(&Name::new("c")), Some(&term("g d")));
    }
}
