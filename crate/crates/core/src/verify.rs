//! Bounded checks: injectivity of witnesses, certificate validation and
//! the indiscernibility suites behind the negative results.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::classify::derivatives_up_to;
use crate::decide::Relation;
use crate::enumerate::Enumerator;
use crate::normalize::{is_lnf, typecheck, LambdaError};
use crate::par::Execution;
use crate::subst::{bohm_transform, Substitution};
use crate::synth::{pair_term, Lemma, ReductionCertificate, Step, Witness};
use crate::syntax::{parse_term, print_term};
use crate::term::{Context, Name, Term};
use crate::types::SimpleType;

/// Bounds for the sampled checks.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// At most this many source inhabitants are tested.
    pub sample_limit: usize,
    /// Largest size of a tested source inhabitant.
    pub size_bound: usize,
    /// Largest size of a term in an enumerated substitution.
    pub subst_bound: usize,
    pub derivative_depth: usize,
    pub execution: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            sample_limit: 200,
            size_bound: 14,
            subst_bound: 9,
            derivative_depth: 2,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    /// Two distinct sources with equal images.
    Collision { first: String, second: String },
    /// Two terms that should be identified but are not.
    Discrepancy { first: String, second: String, detail: String },
    TypeFailure { detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub samples_tested: usize,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    fn type_failure(subject: String, detail: impl fmt::Display) -> Self {
        VerificationReport {
            subject,
            samples_tested: 0,
            outcome: Outcome::TypeFailure {
                detail: detail.to_string(),
            },
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.subject)?;
        match &self.outcome {
            Outcome::Pass => write!(f, "pass ({} samples)", self.samples_tested),
            Outcome::Collision { first, second } => {
                write!(f, "collision after {} samples: {first} and {second}", self.samples_tested)
            }
            Outcome::Discrepancy { first, second, detail } => {
                write!(f, "discrepancy: {first} and {second} separated by {detail}")
            }
            Outcome::TypeFailure { detail } => write!(f, "type failure: {detail}"),
        }
    }
}

/// Closed inhabitants of `ty` used as samples, smallest first.
pub fn samples(ty: &SimpleType, cfg: &VerifyConfig) -> Vec<Term> {
    Enumerator::new(Context::empty()).first(ty, cfg.size_bound, cfg.sample_limit)
}

/// Tests that `image` is injective on `sources`.
pub fn check_images<K, F>(subject: String, sources: &[Term], exec: Execution, image: F) -> VerificationReport
where
    K: std::hash::Hash + Eq + Send,
    F: Fn(&Term) -> Result<K, LambdaError> + Sync + Send,
{
    let images = exec.map(sources, |m| image(m));
    let mut seen: HashMap<K, usize> = HashMap::with_capacity(images.len());
    for (i, img) in images.into_iter().enumerate() {
        let img = match img {
            Ok(x) => x,
            Err(e) => return VerificationReport::type_failure(subject, e),
        };
        if let Some(&j) = seen.get(&img) {
            return VerificationReport {
                subject,
                samples_tested: i + 1,
                outcome: Outcome::Collision {
                    first: print_term(&sources[j]),
                    second: print_term(&sources[i]),
                },
            };
        }
        seen.insert(img, i);
    }
    VerificationReport {
        subject,
        samples_tested: sources.len(),
        outcome: Outcome::Pass,
    }
}

/// Injectivity of the witness (joint injectivity for a family) on sampled
/// source inhabitants.
pub fn check_injective(cert: &ReductionCertificate, cfg: &VerifyConfig) -> VerificationReport {
    let subject = format!("{} <={} {}", cert.source, cert.relation, cert.target);
    let sources = samples(&cert.source, cfg);
    check_images(subject, &sources, cfg.execution, |m| cert.images(m))
}

/// Injectivity of the Böhm transformation of one substitution.
pub fn check_substitution_injective(s: &Substitution, sources: &[Term], exec: Execution) -> VerificationReport {
    check_images(s.to_string(), sources, exec, |m| bohm_transform(s, m))
}

/// Joint injectivity of a family of substitutions.
pub fn check_jointly_injective(family: &[Substitution], sources: &[Term], exec: Execution) -> VerificationReport {
    let subject = format!("family of {}", family.len());
    if family.is_empty() {
        return VerificationReport::type_failure(subject, "empty family");
    }
    check_images(subject, sources, exec, |m| {
        family.iter().map(|s| bohm_transform(s, m)).collect::<Result<Vec<_>, _>>()
    })
}

fn check_subst_shape(s: &Substitution, source: &SimpleType, target: &SimpleType) -> Result<(), String> {
    if &s.source().as_type() != source || &s.target().as_type() != target {
        return Err(format!("substitution is {{{}}} -> {{{}}}, expected {source} -> {target}", s.source(), s.target()));
    }
    for (n, ty, t) in s.pairs() {
        let found = typecheck(t, s.target()).map_err(|e| format!("{n}: {e}"))?;
        if &found != ty {
            return Err(format!("{n} := {t} has type {found}, expected {ty}"));
        }
        if !is_lnf(t, s.target()) {
            return Err(format!("{n} := {t} is not long normal"));
        }
    }
    if !is_bohm_term(&s.bohm_term(), source, target) {
        return Err("witness is not a Böhm term".into());
    }
    Ok(())
}

/// `t = \m b1..bn. m N1 .. Nk` with `m : source`, `b : target` and no `Ni`
/// mentioning `m`.
pub fn is_bohm_term(t: &Term, source: &SimpleType, target: &SimpleType) -> bool {
    let (tys, body) = t.binders();
    let n = target.arity();
    if tys.len() != n + 1 || tys[0] != source || tys[1..].iter().zip(target.components()).any(|(a, b)| *a != b) {
        return false;
    }
    let (head, args) = body.spine();
    let m = n as u32;
    *head == Term::Bound(m) && args.len() == source.arity() && args.iter().all(|a| !uses_index(a, m))
}

fn uses_index(t: &Term, i: u32) -> bool {
    match t {
        Term::Bound(j) => *j == i,
        Term::Free(_) => false,
        Term::App(f, x) => uses_index(f, i) || uses_index(x, i),
        Term::Lam(_, b) => uses_index(b, i + 1),
    }
}

/// Replays a derivation on a stack of (source, target) pairs.
pub fn check_derivation(steps: &[Step], source: &SimpleType, target: &SimpleType) -> Result<(), String> {
    let mut stack: Vec<(SimpleType, SimpleType)> = Vec::new();
    for (i, s) in steps.iter().enumerate() {
        let fail = |why: &str| Err(format!("step {i} ({}): {why}", s.lemma));
        let here = (s.source.clone(), s.target.clone());
        let needs = match s.lemma {
            Lemma::Compose | Lemma::Sum => 2,
            Lemma::Congruence | Lemma::DerivativeLift => 1,
            Lemma::Product | Lemma::Family => s.arity,
            _ => 0,
        };
        if s.arity != needs || (needs == 0 && matches!(s.lemma, Lemma::Product | Lemma::Family)) {
            return fail("wrong arity");
        }
        if stack.len() < needs {
            return fail("not enough operands");
        }
        let ops = stack.split_off(stack.len() - needs);
        let ok = match s.lemma {
            Lemma::Compose => ops[0].1 == ops[1].0 && ops[0].0 == s.source && ops[1].1 == s.target,
            Lemma::Sum => {
                let mut cs = ops[0].0.components().to_vec();
                cs.extend(ops[1].0.components().iter().cloned());
                ops[0].1 == ops[1].1 && ops[0].1 == s.target && SimpleType::new(cs) == s.source
            }
            Lemma::Product => {
                let (mut src, mut tgt) = (Vec::new(), Vec::new());
                for (a, b) in &ops {
                    src.extend(a.components().iter().cloned());
                    tgt.extend(b.components().iter().cloned());
                }
                SimpleType::new(src) == s.source && SimpleType::new(tgt) == s.target
            }
            Lemma::Congruence => {
                let wraps = |outer: &SimpleType, inner: &SimpleType, other: &SimpleType| {
                    outer.arity() == 1
                        && outer.components()[0].components().first() == Some(inner)
                        && outer.components()[0].components()[1..] == other.components()[0].components()[1..]
                };
                s.source.arity() == 1
                    && s.target.arity() == 1
                    && wraps(&s.source, &ops[0].0, &s.target)
                    && wraps(&s.target, &ops[0].1, &s.source)
            }
            Lemma::DerivativeLift => {
                let t = s.target.components();
                ops[0].0 == s.source && ops[0].1.components().len() >= t.len() && &ops[0].1.components()[..t.len()] == t
            }
            Lemma::Family => ops.iter().all(|o| *o == here),
            _ => true,
        };
        if !ok {
            return fail("operand types do not match");
        }
        stack.push(here);
    }
    if stack.len() == 1 && stack[0] == (source.clone(), target.clone()) {
        Ok(())
    } else {
        Err(format!("derivation does not end in a single {source} -> {target}"))
    }
}

/// Typing, Böhm shape and derivation consistency of a certificate.
pub fn validate_certificate(cert: &ReductionCertificate) -> VerificationReport {
    let subject = format!("certificate {} <={} {}", cert.source, cert.relation, cert.target);
    let witness = match &cert.witness {
        Witness::Substitution(s) => check_subst_shape(s, &cert.source, &cert.target),
        Witness::Term(t) => {
            let expected = SimpleType::arrow(cert.source.clone(), &cert.target);
            match typecheck(t, &Context::empty()) {
                Ok(ty) if ty == expected => Ok(()),
                Ok(ty) => Err(format!("term has type {ty}, expected {expected}")),
                Err(e) => Err(e.to_string()),
            }
        }
        Witness::Family(fs) if fs.is_empty() => Err("empty family".into()),
        Witness::Family(fs) => fs.iter().try_for_each(|s| check_subst_shape(s, &cert.source, &cert.target)),
    };
    let kind_ok = match (cert.relation, &cert.witness) {
        (Relation::Head, Witness::Substitution(_))
        | (Relation::BetaEta, Witness::Term(_))
        | (Relation::HeadFamily, Witness::Family(_)) => Ok(()),
        _ => Err(format!("wrong witness kind for relation {}", cert.relation)),
    };
    let checked = witness
        .and(kind_ok)
        .and_then(|_| check_derivation(&cert.derivation, &cert.source, &cert.target));
    match checked {
        Ok(()) => VerificationReport {
            subject,
            samples_tested: 0,
            outcome: Outcome::Pass,
        },
        Err(e) => VerificationReport::type_failure(subject, e),
    }
}

/// Two distinct inhabitants of `source` that no Böhm transformation into
/// a derivative of `m:source, target` separates.
#[derive(Debug, Clone)]
pub struct IndiscerniblePair {
    pub name: &'static str,
    pub source: SimpleType,
    pub first: Term,
    pub second: Term,
    pub target: Context,
}

fn ctx(entries: &[(&str, SimpleType)]) -> Context {
    Context::new(entries.iter().map(|(n, t)| (Name::new(n), t.clone())).collect()).expect("distinct names")
}

fn t(s: &str) -> Term {
    parse_term(s).expect("catalog term")
}

/// The catalogue of indiscernible pairs.
pub fn indiscernible_catalog(k: usize) -> Vec<IndiscerniblePair> {
    let one = SimpleType::nat(1);
    let z = SimpleType::base();
    let three = SimpleType::nat(3);
    let ty = |s: &str| crate::syntax::parse_type(s).expect("catalog type");
    vec![
        IndiscerniblePair {
            name: "[1,1,0] -> [2]",
            source: ty("[1,1,0]"),
            first: t(r"\f:1. \g:1. \c:0. f (g (f (g c)))"),
            second: t(r"\f:1. \g:1. \c:0. f (g (g (f c)))"),
            target: ctx(&[("F", SimpleType::nat(2))]),
        },
        IndiscerniblePair {
            name: "[1,0] -> [0^k]",
            source: ty("[1,0]"),
            first: t(r"\f:1. \c:0. f c"),
            second: t(r"\f:1. \c:0. f (f c)"),
            target: Context::numbered("y", &vec![z.clone(); k]),
        },
        IndiscerniblePair {
            name: "[3,0] -> [1,1,0]",
            source: ty("[3,0]"),
            first: t(r"\P:3. \c:0. P (\f:1. f (P (\g:1. g (f c))))"),
            second: t(r"\P:3. \c:0. P (\f:1. f (P (\g:1. g (g c))))"),
            target: ctx(&[("f", one.clone()), ("g", one), ("d", z.clone())]),
        },
        IndiscerniblePair {
            name: "[[0,0],0] -> [3,0]",
            source: ty("[[0,0],0]"),
            first: t(r"\b:[0,0]. \c:0. b (b c (b c c)) (b c c)"),
            second: t(r"\b:[0,0]. \c:0. b (b c c) (b (b c c) c)"),
            target: ctx(&[("P", three), ("c", z)]),
        },
    ]
}

/// Checks that every substitution from `case.source` into a derivative of
/// `m:source, target` (minus `m`) identifies the two terms.
pub fn indiscernibility_suite(case: &IndiscerniblePair, cfg: &VerifyConfig) -> VerificationReport {
    let m = Name::new("m");
    let base = match Context::new(vec![(m.clone(), case.source.clone())]).and_then(|c| c.concat(&case.target)) {
        Ok(c) => c,
        Err(e) => return VerificationReport::type_failure(case.name.into(), e),
    };
    let src = Context::of_type("a", &case.source);
    let mut tested = 0usize;
    for d in derivatives_up_to(&base, cfg.derivative_depth) {
        let target = Context::new(d.entries().iter().filter(|(n, _)| *n != m).cloned().collect())
            .expect("subset of a context");
        let mut en = Enumerator::new(target.clone());
        let choices: Vec<Vec<Term>> = src.entries().iter().map(|(_, ty)| en.up_to(ty, cfg.subst_bound)).collect();
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        let firsts: Vec<usize> = (0..choices[0].len()).collect();
        let found = cfg.execution.find_map_first(&firsts, |&i| {
            let mut idx = vec![0usize; choices.len()];
            idx[0] = i;
            loop {
                let terms = idx.iter().zip(&choices).map(|(&j, c)| c[j].clone()).collect();
                let rho = Substitution::from_long_terms(src.clone(), target.clone(), terms);
                let a = bohm_transform(&rho, &case.first);
                let b = bohm_transform(&rho, &case.second);
                match (a, b) {
                    (Ok(a), Ok(b)) if a == b => {}
                    (Ok(_), Ok(_)) => return Some(Ok(rho.to_string())),
                    (Err(e), _) | (_, Err(e)) => return Some(Err(e.to_string())),
                }
                let mut p = choices.len() - 1;
                loop {
                    if p == 0 {
                        return None;
                    }
                    idx[p] += 1;
                    if idx[p] < choices[p].len() {
                        break;
                    }
                    idx[p] = 0;
                    p -= 1;
                }
            }
        });
        tested += choices.iter().map(|c| c.len()).product::<usize>();
        match found {
            None => {}
            Some(Ok(detail)) => {
                return VerificationReport {
                    subject: case.name.into(),
                    samples_tested: tested,
                    outcome: Outcome::Discrepancy {
                        first: print_term(&case.first),
                        second: print_term(&case.second),
                        detail,
                    },
                }
            }
            Some(Err(e)) => return VerificationReport::type_failure(case.name.into(), e),
        }
    }
    VerificationReport {
        subject: case.name.into(),
        samples_tested: tested,
        outcome: Outcome::Pass,
    }
}

/// The pairs `<i,j>` of `[2]` with `i <= max_i`.
pub fn pair_terms(max_i: usize) -> Vec<(usize, usize, Term)> {
    let mut out = Vec::new();
    for i in 1..=max_i {
        for j in 1..=i {
            out.push((i, j, pair_term(i, j).expect("valid index")));
        }
    }
    out
}

/// A pair `<i,j>`, `<k,l>` identified by `rho`, if any exists with `i, k <= max_i`.
pub fn find_collision(rho: &Substitution, max_i: usize) -> Option<((usize, usize), (usize, usize))> {
    let mut seen = HashMap::new();
    for (i, j, p) in pair_terms(max_i) {
        let img = bohm_transform(rho, &p).ok()?;
        if let Some(&first) = seen.get(&img) {
            return Some((first, (i, j)));
        }
        seen.insert(img, (i, j));
    }
    None
}

/// For every substitution from `F:2` to `f:1, c:0` with terms of size at
/// most `bound`, a collision among the pairs with `i <= max_i`. Returns the
/// number of substitutions checked, or the first injective one found.
pub fn collision_search(bound: usize, max_i: usize, exec: Execution) -> Result<usize, Substitution> {
    let src = Context::numbered("F", &[SimpleType::nat(2)]);
    let tgt = ctx(&[("f", SimpleType::nat(1)), ("c", SimpleType::base())]);
    let all = crate::enumerate::enumerate_substitutions(&src, &tgt, bound);
    match exec.find_map_first(&all, |rho| find_collision(rho, max_i).is_none().then(|| rho.clone())) {
        Some(rho) => Err(rho),
        None => Ok(all.len()),
    }
}

/// `|[0^(k+1)]| = k + 1` and `|[0^k]| = k`, counted by enumeration.
pub fn pigeonhole_check(k: usize) -> bool {
    let count = |n: usize| Enumerator::new(Context::empty()).count_up_to(&SimpleType::zeros(n), n + 2);
    count(k + 1) == (k + 1) as u128 && count(k) == k as u128
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_type;

    #[test]
    fn non_witness_collides_on_equal_depth() {
        let src = Context::numbered("F", &[SimpleType::nat(2)]);
        let tgt = ctx(&[("f", SimpleType::nat(1)), ("c", SimpleType::base())]);
        let rho = Substitution::new(src, tgt, vec![t(r"\h:1. f (h c)")]).unwrap();
        assert_eq!(find_collision(&rho, 4), Some(((2, 1), (2, 2))));
    }

    #[test]
    fn pigeonhole_small() {
        for k in 0..5 {
            assert!(pigeonhole_check(k));
        }
    }

    #[test]
    fn bohm_shape() {
        let a = parse_type("[1,0]").unwrap();
        let s = Substitution::identity(Context::of_type("a", &a));
        assert!(is_bohm_term(&s.bohm_term(), &a, &a));
        assert!(!is_bohm_term(&t(r"\m:[1,0]. \f:1. \c:0. c"), &a, &a));
    }

    #[test]
    fn derivation_replay_rejects_mismatch() {
        let a = parse_type("[1,0]").unwrap();
        let b = parse_type("[2]").unwrap();
        let steps = vec![Step::leaf(Lemma::Embed, a.clone(), b.clone())];
        assert!(check_derivation(&steps, &a, &b).is_ok());
        assert!(check_derivation(&steps, &b, &a).is_err());
        let bad = vec![
            Step::leaf(Lemma::Embed, a.clone(), b.clone()),
            Step::leaf(Lemma::Embed, a.clone(), b.clone()),
            Step { lemma: Lemma::Compose, arity: 2, source: a.clone(), target: b.clone() },
        ];
        assert!(check_derivation(&bad, &a, &b).is_err());
    }
}
