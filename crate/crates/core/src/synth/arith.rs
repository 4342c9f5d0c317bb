//! Church numeral arithmetic and the numeral-valued witnesses.

use super::build::{lam1, var, Temps};
use super::SynthError;
use crate::normalize::{lnf_at, LambdaError};
use crate::subst::Substitution;
use crate::term::{Context, Name, Term};
use crate::types::SimpleType;

/// `[1,0]`.
fn numeral() -> SimpleType {
    SimpleType::new(vec![SimpleType::nat(1), SimpleType::base()])
}

/// `[1,0] -> [1,0] -> [1,0]`.
fn binary() -> SimpleType {
    SimpleType::arrow(numeral(), &SimpleType::arrow(numeral(), &numeral()))
}

fn closed(t: &Term, ty: &SimpleType) -> Term {
    lnf_at(t, ty, &Context::empty()).expect("well-typed by construction")
}

pub use crate::enumerate::church;

/// The `n` with `t = c_n`, if `t` is a Church numeral in long normal form.
pub fn decode_numeral(t: &Term) -> Option<usize> {
    let Term::Lam(_, b) = t else { return None };
    let Term::Lam(_, b) = &**b else { return None };
    let mut cur: &Term = b;
    let mut n = 0;
    loop {
        match cur {
            Term::Bound(0) => return Some(n),
            Term::App(f, x) if matches!(**f, Term::Bound(1)) => {
                n += 1;
                cur = x;
            }
            _ => return None,
        }
    }
}

fn binary_op(build: impl Fn(Term, Term, Term, Term) -> Term) -> Term {
    let mut t = Temps::default();
    let a = t.binder(&numeral());
    let b = t.binder(&numeral());
    let f = t.binder(&SimpleType::nat(1));
    let c = t.binder(&SimpleType::base());
    let body = build(var(&a.0), var(&b.0), var(&f.0), var(&c.0));
    let term = Term::lams(&[a, b, f, c], body);
    closed(&term, &binary())
}

/// `\a b f c. a f (b f c)`.
pub fn church_add() -> Term {
    binary_op(|a, b, f, c| Term::apps(a, [f.clone(), Term::apps(b, [f, c])]))
}

/// `\a b f c. a (b f) c`.
pub fn church_mul() -> Term {
    binary_op(|a, b, f, c| Term::apps(a, [Term::app(b, f), c]))
}

/// A pairing term on numerals: `M c_n c_m = c_(2 P(n,m))` for the Cantor
/// pairing `P(n,m) = (n+m)(n+m+1)/2 + m`, computed without halving as
/// `s (s + 1) + 2m` with `s = n + m`.
pub fn cantor_pair_term() -> Term {
    let add = church_add();
    let mul = church_mul();
    let mut t = Temps::default();
    let a = t.binder(&numeral());
    let b = t.binder(&numeral());
    let plus = |x: Term, y: Term| Term::apps(add.clone(), [x, y]);
    let s = plus(var(&a.0), var(&b.0));
    let s1 = plus(s.clone(), church(1));
    let body = plus(Term::apps(mul, [s, s1]), plus(var(&b.0), var(&b.0)));
    closed(&Term::lams(&[a, b], body), &binary())
}

/// `2 P(n, m)`, the value computed by [`cantor_pair_term`].
pub fn pairing_value(n: usize, m: usize) -> usize {
    let s = n + m;
    s * (s + 1) + 2 * m
}

/// The inhabitant `<i,j>` of `[2]`, for `1 <= j <= i`.
pub fn pair_term(i: usize, j: usize) -> Result<Term, SynthError> {
    crate::enumerate::pair(i, j).map_err(|e| SynthError::InvalidArgument(e.to_string()))
}

/// The two substitutions from `F:2` to `f:1, c:0` that are jointly
/// injective on `[2]`: `F := \h. f (h c)` and `F := \h. f (h (f (h c)))`.
pub fn hplus_family() -> Vec<Substitution> {
    let src = Context::numbered("F", &[SimpleType::nat(2)]);
    let tgt = Context::new(vec![(Name::new("f"), SimpleType::nat(1)), (Name::new("c"), SimpleType::base())])
        .expect("distinct");
    let f = var(&Name::new("f"));
    let c = var(&Name::new("c"));
    let mut t = Temps::default();
    let h = t.binder(&SimpleType::nat(1));
    let hv = var(&h.0);
    let rho = lam1(h.clone(), Term::app(f.clone(), Term::app(hv.clone(), c.clone())));
    let inner = Term::app(f.clone(), Term::app(hv.clone(), c));
    let sigma = lam1(h, Term::app(f, Term::app(hv, inner)));
    [rho, sigma]
        .into_iter()
        .map(|x| Substitution::new(src.clone(), tgt.clone(), vec![x]).expect("well-typed"))
        .collect()
}

/// A closed injective `[2] -> [1,0]`: `\m. M (m rho) (m sigma)` over the
/// two family members.
pub fn pairing_bridge() -> Term {
    let fam = hplus_family();
    let two = SimpleType::nat(3);
    let mut t = Temps::default();
    let m = t.binder(&two);
    let images = fam.iter().map(|s| Term::app(s.bohm_term(), var(&m.0)));
    let body = Term::apps(cantor_pair_term(), images);
    closed(&lam1(m, body), &SimpleType::arrow(two, &numeral()))
}

/// Separators from `x1..xk : 0` to `a, b : 0`: the `i`-th sends `xi` to
/// `a` and every other variable to `b`, for `i < k`.
pub fn separators(k: usize) -> Result<Vec<Substitution>, LambdaError> {
    let src = Context::numbered("x", &vec![SimpleType::base(); k]);
    let tgt = Context::numbered("y", &[SimpleType::base(), SimpleType::base()]);
    (1..k.max(1))
        .map(|i| {
            let terms = (1..=k)
                .map(|l| Term::free(if l == i { "y1" } else { "y2" }))
                .collect();
            Substitution::new(src.clone(), tgt.clone(), terms)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::typecheck;
    use crate::subst::bohm_transform;

    fn eval2(op: &Term, a: usize, b: usize) -> Option<usize> {
        let t = lnf_at(&Term::apps(op.clone(), [church(a), church(b)]), &numeral(), &Context::empty()).unwrap();
        decode_numeral(&t)
    }

    #[test]
    fn numerals_round_trip() {
        for n in 0..12 {
            assert_eq!(decode_numeral(&church(n)), Some(n));
        }
        assert_eq!(typecheck(&church(3), &Context::empty()).unwrap(), numeral());
    }

    #[test]
    fn add_and_mul() {
        assert_eq!(eval2(&church_add(), 2, 3), Some(5));
        assert_eq!(eval2(&church_mul(), 0, 7), Some(0));
        assert_eq!(eval2(&church_mul(), 3, 4), Some(12));
    }

    #[test]
    fn doubled_cantor_pairing() {
        let p = cantor_pair_term();
        assert_eq!(eval2(&p, 0, 0), Some(0));
        assert_eq!(eval2(&p, 1, 2), Some(16));
        assert_eq!(eval2(&p, 3, 1), Some(pairing_value(3, 1)));
    }

    #[test]
    fn family_values() {
        let fam = hplus_family();
        let p = pair_term(3, 1).unwrap();
        let img: Vec<_> = fam.iter().map(|s| decode_numeral(&bohm_transform(s, &p).unwrap())).collect();
        assert_eq!(img, vec![Some(3), Some(6)]);
    }

    #[test]
    fn bad_pairs_rejected() {
        assert!(pair_term(2, 0).is_err());
        assert!(pair_term(2, 3).is_err());
    }
}
