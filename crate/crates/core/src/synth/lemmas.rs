//! The reduction combinators.

use super::build::{lam1, name_at, var, vars, Temps};
use super::{Lemma, Reduction, Step, Strength, SynthError};
use crate::classify::{derive, hierarchy_class, smallest_inhabitant_in, DerivativeStep, HierarchyClass};
use crate::normalize::lnf_at;
use crate::subst::{compose, Substitution};
use crate::term::{Context, Name, Term};
use crate::types::SimpleType;

type Result<T> = std::result::Result<T, SynthError>;

fn named(entries: Vec<(&str, SimpleType)>) -> Context {
    Context::new(entries.into_iter().map(|(n, t)| (Name::new(n), t)).collect())
        .expect("distinct literal names")
}

fn node(lemma: Lemma, arity: usize, subst: &Substitution) -> Step {
    Step {
        lemma,
        arity,
        source: subst.source().as_type(),
        target: subst.target().as_type(),
    }
}

/// `Gamma <= Delta` by sending each variable of `from` to a distinct
/// variable of `into` of the same type, leftmost first.
pub fn embed(from: &Context, into: &Context) -> Result<Reduction> {
    let mut used = vec![false; into.len()];
    let mut terms = Vec::with_capacity(from.len());
    for (_, ty) in from.entries() {
        let j = (0..into.len())
            .find(|&j| !used[j] && &into.entries()[j].1 == ty)
            .ok_or_else(|| SynthError::NotSubcontext(from.clone(), into.clone()))?;
        used[j] = true;
        terms.push(var(&name_at(into, j)));
    }
    let s = Substitution::new(from.clone(), into.clone(), terms)?;
    Ok(Reduction::leaf(Lemma::Embed, s, Strength::Atomic))
}

/// `[C1..Ck] <= [C_p(1)..C_p(k)]`, where component `i` of the target is
/// component `perm[i]` of the source.
pub fn permute(a: &SimpleType, perm: &[usize]) -> Result<Reduction> {
    let n = a.arity();
    let mut inverse = vec![usize::MAX; n];
    if perm.len() != n {
        return Err(SynthError::InvalidArgument(format!("permutation of length {} for {a}", perm.len())));
    }
    for (i, &p) in perm.iter().enumerate() {
        if p >= n || inverse[p] != usize::MAX {
            return Err(SynthError::InvalidArgument(format!("{perm:?} is not a permutation")));
        }
        inverse[p] = i;
    }
    let src = Context::of_type("a", a);
    let tys: Vec<SimpleType> = perm.iter().map(|&p| a.components()[p].clone()).collect();
    let tgt = Context::numbered("b", &tys);
    let terms = (0..n).map(|j| var(&name_at(&tgt, inverse[j]))).collect();
    let s = Substitution::new(src, tgt, terms)?;
    Ok(Reduction::leaf(Lemma::Permute, s, Strength::Atomic))
}

/// `[[C1..Ck]] <= [[C_p(1)..C_p(k)]]`.
pub fn inner_permute(cs: &[SimpleType], perm: &[usize]) -> Result<Reduction> {
    let inner = SimpleType::new(cs.to_vec());
    let p = permute(&inner, perm)?;
    let permuted = p.target_type();
    let src = named(vec![("F", inner)]);
    let tgt = named(vec![("G", permuted)]);
    let mut t = Temps::default();
    let gs: Vec<_> = cs.iter().map(|c| t.binder(c)).collect();
    let args = perm.iter().map(|&i| var(&gs[i].0));
    let rho = Term::lams(&gs, Term::apps(var(&Name::new("G")), args));
    let s = Substitution::new(src, tgt, vec![rho])?;
    Ok(Reduction::leaf(Lemma::InnerPermute, s, Strength::Atomic))
}

/// From a strong `A <= B`, the atomic `[[A,C..]] <= [[B,C..]]`.
pub fn congruence(r: &Reduction, cs: &[SimpleType]) -> Result<Reduction> {
    if r.strength < Strength::Strong {
        return Err(SynthError::NotStrong);
    }
    let a = r.source_type();
    let b = r.target_type();
    let with = |x: SimpleType| {
        let mut v = vec![x];
        v.extend(cs.iter().cloned());
        SimpleType::new(v)
    };
    let g = r.target().fresh_name("G");
    let src = named(vec![("F", with(a.clone()))]);
    let tgt = Context::new(vec![(g.clone(), with(b))])?;
    let mut t = Temps::default();
    let ab = t.binder(&a);
    let cbs: Vec<_> = cs.iter().map(|c| t.binder(c)).collect();
    let inner = Term::lams(
        r.target().entries(),
        Term::apps(var(&ab.0), r.subst.terms().iter().cloned()),
    );
    let mut args = vec![inner];
    args.extend(vars(&cbs));
    let mut binders = vec![ab];
    binders.extend(cbs);
    let rho = Term::lams(&binders, Term::apps(var(&g), args));
    let s = Substitution::new(src, tgt, vec![rho])?;
    let mut steps = r.steps.clone();
    steps.push(node(Lemma::Congruence, 1, &s));
    Ok(Reduction {
        subst: s,
        strength: Strength::Atomic,
        steps,
    })
}

/// `A <= [[A]]`: `d := \Delta. F (\Gamma. d Delta)` for `A = [Gamma]`.
pub fn double_embed(a: &SimpleType) -> Result<Reduction> {
    let src = Context::of_type("a", a);
    let f = Name::new("F");
    let tgt = Context::new(vec![(f.clone(), SimpleType::new(vec![a.clone()]))])?;
    let mut t = Temps::default();
    let terms = a
        .components()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let delta = t.binders_for(d);
            let gamma = t.binders_for(a);
            let inner = Term::lams(&gamma, Term::apps(var(&gamma[i].0), vars(&delta)));
            Term::lams(&delta, Term::app(var(&f), inner))
        })
        .collect();
    let s = Substitution::new(src, tgt, terms)?;
    Ok(Reduction::leaf(Lemma::DoubleEmbed, s, Strength::Atomic))
}

/// `[[A1..An]] <= [[A1],...,[An],[0^n]]`.
pub fn split(cs: &[SimpleType]) -> Result<Reduction> {
    if cs.is_empty() {
        return Err(SynthError::InvalidArgument("split needs at least one component".into()));
    }
    let src = named(vec![("F", SimpleType::new(cs.to_vec()))]);
    let mut entries: Vec<(Name, SimpleType)> = cs
        .iter()
        .enumerate()
        .map(|(i, c)| (Name::from(format!("F{}", i + 1)), SimpleType::new(vec![c.clone()])))
        .collect();
    let p = Name::new("p");
    entries.push((p.clone(), SimpleType::zeros(cs.len())));
    let tgt = Context::new(entries)?;
    let mut t = Temps::default();
    let ms: Vec<_> = cs.iter().map(|c| t.binder(c)).collect();
    let args = ms
        .iter()
        .enumerate()
        .map(|(i, (m, _))| Term::app(var(&name_at(&tgt, i)), var(m)));
    let rho = Term::lams(&ms, Term::apps(var(&p), args));
    let s = Substitution::new(src, tgt, vec![rho])?;
    Ok(Reduction::leaf(Lemma::Split, s, Strength::Atomic))
}

/// `[[C1..Ck]] <= [[A1]],...,[[An]]`, each `C_j` handled by the first equal `A_i`.
pub fn tuple_merge(cs: &[SimpleType], family: &[SimpleType]) -> Result<Reduction> {
    let assign = cs
        .iter()
        .map(|c| {
            family
                .iter()
                .position(|a| a == c)
                .ok_or_else(|| SynthError::InvalidArgument(format!("{c} is not in the family")))
        })
        .collect::<Result<Vec<_>>>()?;
    tuple_merge_with(cs, family, &assign)
}

/// Tuple merge where component `j` is handled by `family[assign[j]]`.
pub(crate) fn tuple_merge_with(cs: &[SimpleType], family: &[SimpleType], assign: &[usize]) -> Result<Reduction> {
    if cs.is_empty() {
        return Err(SynthError::InvalidArgument("tuple merge needs at least one component".into()));
    }
    if assign.len() != cs.len() || assign.iter().zip(cs).any(|(&i, c)| family.get(i) != Some(c)) {
        return Err(SynthError::InvalidArgument("tuple merge assignment does not match".into()));
    }
    let src = named(vec![("F", SimpleType::boxed(cs.to_vec()))]);
    let tys: Vec<SimpleType> = family.iter().map(|a| SimpleType::boxed(vec![a.clone()])).collect();
    let tgt = Context::numbered("T", &tys);
    let mut t = Temps::default();
    let m = t.binder(&SimpleType::new(cs.to_vec()));
    let cb: Vec<_> = cs.iter().map(|c| t.binder(c)).collect();
    let mut body = Term::apps(var(&m.0), vars(&cb));
    for j in (0..cs.len()).rev() {
        body = Term::app(var(&name_at(&tgt, assign[j])), lam1(cb[j].clone(), body));
    }
    let s = Substitution::new(src, tgt, vec![lam1(m, body)])?;
    Ok(Reduction::leaf(Lemma::TupleMerge, s, Strength::Atomic))
}

/// `[[[A]]] <= [3,A]`: `F := \m. P (\f. m (\Delta. f (a Delta)))`.
pub fn recursion_cap(a: &SimpleType) -> Result<Reduction> {
    let src = named(vec![("F", SimpleType::boxed(vec![a.clone()]))]);
    let tgt = named(vec![("P", SimpleType::nat(3)), ("a", a.clone())]);
    let mut t = Temps::default();
    let m = t.binder(&SimpleType::new(vec![a.clone()]));
    let f = t.binder(&SimpleType::nat(1));
    let delta = t.binders_for(a);
    let arg = Term::lams(
        &delta,
        Term::app(var(&f.0), Term::apps(var(&Name::new("a")), vars(&delta))),
    );
    let body = Term::app(var(&Name::new("P")), lam1(f, Term::app(var(&m.0), arg)));
    let s = Substitution::new(src, tgt, vec![lam1(m, body)])?;
    Ok(Reduction::leaf(Lemma::RecursionCap, s, Strength::Atomic))
}

/// `[[[A]]] <= [[0,0],A,A]`: `F := \m. b (m c) (m d)`.
pub fn pair_cap(a: &SimpleType) -> Result<Reduction> {
    let src = named(vec![("F", SimpleType::boxed(vec![a.clone()]))]);
    let tgt = named(vec![("b", SimpleType::zeros(2)), ("c", a.clone()), ("d", a.clone())]);
    let mut t = Temps::default();
    let m = t.binder(&SimpleType::new(vec![a.clone()]));
    let mc = Term::app(var(&m.0), var(&Name::new("c")));
    let md = Term::app(var(&m.0), var(&Name::new("d")));
    let body = Term::apps(var(&Name::new("b")), [mc, md]);
    let s = Substitution::new(src, tgt, vec![lam1(m, body)])?;
    Ok(Reduction::leaf(Lemma::PairCap, s, Strength::Atomic))
}

/// `[2] <= [1,1,0]`: `F := \h. f (h (g (h c)))`.
pub fn word_reduction() -> Result<Reduction> {
    let src = named(vec![("F", SimpleType::nat(2))]);
    let tgt = named(vec![("f", SimpleType::nat(1)), ("g", SimpleType::nat(1)), ("c", SimpleType::base())]);
    let mut t = Temps::default();
    let h = t.binder(&SimpleType::nat(1));
    let (f, g, c) = (var(&Name::new("f")), var(&Name::new("g")), var(&Name::new("c")));
    let hv = var(&h.0);
    let body = Term::app(
        f,
        Term::app(hv.clone(), Term::app(g, Term::app(hv, c))),
    );
    let s = Substitution::new(src, tgt, vec![lam1(h, body)])?;
    Ok(Reduction::leaf(Lemma::WordReduction, s, Strength::Strong))
}

/// `b:[0,0] <= Delta` through a fat `p : [[G1],...,[Gk]]` of `Delta`:
/// `b := \x y. p (\G1. x) (\G2. y) ... (\Gk. y)`.
fn fat_pairing(delta: &Context, p: usize) -> Result<Reduction> {
    let (pname, pty) = &delta.entries()[p];
    let src = named(vec![("b", SimpleType::zeros(2))]);
    let mut t = Temps::default();
    let x = t.binder(&SimpleType::base());
    let y = t.binder(&SimpleType::base());
    let args: Vec<Term> = pty
        .components()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let bs = t.binders_for(a);
            Term::lams(&bs, var(if i == 0 { &x.0 } else { &y.0 }))
        })
        .collect();
    let rho = Term::lams(&[x, y], Term::apps(var(pname), args));
    let s = Substitution::new(src, delta.clone(), vec![rho])?;
    Ok(Reduction::leaf(Lemma::FatPairing, s, Strength::Atomic))
}

/// Path to a derivative holding a fat variable, searching only the
/// variables in `candidates`.
fn find_fat(ctx: &Context, candidates: std::ops::Range<usize>) -> Option<(Vec<DerivativeStep>, usize)> {
    for v in candidates.clone() {
        if ctx.entries()[v].1.is_fat() {
            return Some((Vec::new(), v));
        }
    }
    for v in candidates {
        let ty = &ctx.entries()[v].1;
        for (component, c) in ty.components().iter().enumerate() {
            if !c.is_large() {
                continue;
            }
            let step = DerivativeStep { var: v, component };
            let next = derive(ctx, step)?;
            if let Some((mut path, p)) = find_fat(&next, ctx.len()..next.len()) {
                path.insert(0, step);
                return Some((path, p));
            }
        }
    }
    None
}

pub(crate) fn large_pairing_in(ctx: &Context) -> Result<Reduction> {
    let (path, p) = find_fat(ctx, 0..ctx.len()).ok_or_else(|| {
        SynthError::InvalidArgument(format!("[{}] is not large", ctx.as_type()))
    })?;
    let mut derived = ctx.clone();
    for s in &path {
        derived = derive(&derived, *s).expect("path found by search");
    }
    let leaf = fat_pairing(&derived, p)?;
    derivative_lift(leaf, ctx, &path)
}

/// `[[0,0]] <= A` for a large type `A`.
pub fn large_pairing(a: &SimpleType) -> Result<Reduction> {
    large_pairing_in(&Context::of_type("a", a))
}

/// Lifts `Theta <= Delta`, with `Delta` reached from `base` by `path`, to
/// `Theta <= base`. Each step sends `t:[D]` to `\D. F M1 ... Mn`, where
/// the derived component carries the original image and the others an
/// inhabitant.
pub fn derivative_lift(r: Reduction, base: &Context, path: &[DerivativeStep]) -> Result<Reduction> {
    let mut ctxs = vec![base.clone()];
    for s in path {
        let next = derive(ctxs.last().expect("nonempty"), *s)
            .ok_or_else(|| SynthError::NotDerivative(format!("invalid step {s:?}")))?;
        ctxs.push(next);
    }
    if r.target() != ctxs.last().expect("nonempty") {
        return Err(SynthError::NotDerivative(format!(
            "{{{}}} is not the derivative {{{}}}",
            r.target(),
            ctxs.last().expect("nonempty")
        )));
    }
    let mut cur = r;
    for j in (0..path.len()).rev() {
        let (dj, dj1) = (&ctxs[j], &ctxs[j + 1]);
        let step = path[j];
        let (fname, fty) = &dj.entries()[step.var];
        let bound_here = &dj1.entries()[dj.len()..];
        let mut t = Temps::default();
        let mut terms = Vec::with_capacity(cur.source().len());
        for ((_, tty), rho_t) in cur.source().entries().iter().zip(cur.subst.terms()) {
            let delta = t.binders_for(tty);
            let mut args = Vec::with_capacity(fty.arity());
            for (i, ai) in fty.components().iter().enumerate() {
                if i == step.component {
                    args.push(Term::lams(bound_here, Term::apps(rho_t.clone(), vars(&delta))));
                } else {
                    let gamma = t.binders_for(ai);
                    let ext = dj
                        .concat(&Context::new(gamma.clone())?)?
                        .concat(&Context::new(delta.clone())?)?;
                    let h = smallest_inhabitant_in(&ext, &SimpleType::base()).ok_or_else(|| {
                        SynthError::SideConditionFails(format!(
                            "[{ai}] has no inhabitant next to {{{dj}}}"
                        ))
                    })?;
                    args.push(Term::lams(&gamma, h));
                }
            }
            terms.push(Term::lams(&delta, Term::apps(var(fname), args)));
        }
        let s = Substitution::new(cur.source().clone(), dj.clone(), terms)?;
        let mut steps = cur.steps;
        steps.push(node(Lemma::DerivativeLift, 1, &s));
        cur = Reduction {
            subst: s,
            strength: cur.strength,
            steps,
        };
    }
    Ok(cur)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Wide,
    Tall,
    Fat,
}

/// Two terms `X1, X2 : 1` over `context` witnessing `[1,1] <=a [context]`.
#[derive(Clone, Debug)]
pub struct AtomicPair {
    pub kind: PairKind,
    pub context: Context,
    pub x1: Term,
    pub x2: Term,
}

/// `X = \z. F (\G. z)` for a variable `F : [[G]]`.
fn wide_term(ctx: &Context, v: usize, t: &mut Temps) -> Term {
    let (fname, fty) = &ctx.entries()[v];
    let z = t.binder(&SimpleType::base());
    let gamma = t.binders_for(&fty.components()[0]);
    let zv = var(&z.0);
    lam1(z, Term::app(var(fname), Term::lams(&gamma, zv)))
}

fn wide_pair(ctx: &Context, i: usize, j: usize) -> Result<Reduction> {
    let mut t = Temps::default();
    let src = Context::numbered("f", &[SimpleType::nat(1), SimpleType::nat(1)]);
    let terms = vec![wide_term(ctx, i, &mut t), wide_term(ctx, j, &mut t)];
    let s = Substitution::new(src, ctx.clone(), terms)?;
    Ok(Reduction::leaf(Lemma::WidePairing, s, Strength::Atomic))
}

fn pair_from(kind: PairKind, r: &Reduction) -> AtomicPair {
    AtomicPair {
        kind,
        context: r.target().clone(),
        x1: r.subst.terms()[0].clone(),
        x2: r.subst.terms()[1].clone(),
    }
}

/// The atomic pair for a context of class omega+2 (two single-component
/// variables), omega+3 (through a derivative) or omega+4. In the last case
/// the pairing `b` of a large context is tagged with two distinct closed
/// terms, `X1 = \x. b x h` and `X2 = \x. b x (b h h)`, so that neither
/// copies its argument.
pub fn atomic_pair(ctx: &Context) -> Result<AtomicPair> {
    let ty = ctx.as_type();
    match hierarchy_class(&ty) {
        HierarchyClass::OmegaPlus(2) => {
            let singles: Vec<usize> = (0..ctx.len()).filter(|&v| ctx.entries()[v].1.arity() == 1).collect();
            if singles.len() < 2 {
                return Err(SynthError::NotAtomicPair(ctx.clone()));
            }
            Ok(pair_from(PairKind::Wide, &wide_pair(ctx, singles[0], singles[1])?))
        }
        HierarchyClass::OmegaPlus(3) => {
            let b = (0..ctx.len())
                .find(|&v| ctx.entries()[v].1.rank() >= 3)
                .ok_or_else(|| SynthError::NotAtomicPair(ctx.clone()))?;
            let theta = &ctx.entries()[b].1.components()[0];
            let c = theta
                .components()
                .iter()
                .position(|c| c.rank() >= 1)
                .ok_or_else(|| SynthError::NotAtomicPair(ctx.clone()))?;
            let step = DerivativeStep { var: b, component: 0 };
            let derived = derive(ctx, step).expect("b has a component");
            let leaf = wide_pair(&derived, b, ctx.len() + c)?;
            let lifted = derivative_lift(leaf, ctx, &[step])?;
            Ok(pair_from(PairKind::Tall, &lifted))
        }
        HierarchyClass::OmegaPlus(4) => {
            let r = large_pairing_in(ctx)?;
            let rho_b = r.subst.terms()[0].clone();
            let h = smallest_inhabitant_in(ctx, &SimpleType::base())
                .ok_or_else(|| SynthError::NotAtomicPair(ctx.clone()))?;
            let hh = Term::apps(rho_b.clone(), [h.clone(), h.clone()]);
            let mut t = Temps::default();
            let with_tag = |t: &mut Temps, tag: Term| {
                let x = t.binder(&SimpleType::base());
                let xv = var(&x.0);
                lam1(x, Term::apps(rho_b.clone(), [xv, tag]))
            };
            let x1 = with_tag(&mut t, h);
            let x2 = with_tag(&mut t, hh);
            let one = SimpleType::nat(1);
            Ok(AtomicPair {
                kind: PairKind::Fat,
                context: ctx.clone(),
                x1: lnf_at(&x1, &one, ctx)?,
                x2: lnf_at(&x2, &one, ctx)?,
            })
        }
        _ => Err(SynthError::NotAtomicPair(ctx.clone())),
    }
}

/// `t := \G. X (t G)` on every variable of the pair's context.
fn wrap(pair_ctx: &Context, x: &Term) -> Result<Substitution> {
    let mut t = Temps::default();
    let terms = pair_ctx
        .entries()
        .iter()
        .map(|(n, ty)| {
            let gamma = t.binders_for(ty);
            Term::lams(&gamma, Term::app(x.clone(), Term::apps(var(n), vars(&gamma))))
        })
        .collect();
    Ok(Substitution::new(pair_ctx.clone(), pair_ctx.clone(), terms)?)
}

/// Concatenates contexts, renaming clashing names.
fn disjoint_concat(parts: &[&Context]) -> (Context, Vec<Context>) {
    let mut all = Context::empty();
    let mut renamed = Vec::with_capacity(parts.len());
    for p in parts {
        let mut mine = Vec::with_capacity(p.len());
        for (n, ty) in p.entries() {
            let name = if all.contains(n) {
                all.fresh_name(&format!("{n}_"))
            } else {
                n.clone()
            };
            all.push(name.clone(), ty.clone()).expect("fresh");
            mine.push((name, ty.clone()));
        }
        renamed.push(Context::new(mine).expect("distinct"));
    }
    (all, renamed)
}

/// `Gamma <=s Theta` and `Delta <=s Theta` give `Gamma, Delta <=s Theta`.
pub fn sum(a: Reduction, b: Reduction, pair: &AtomicPair) -> Result<Reduction> {
    let theta = a.target().clone();
    if b.target().types() != theta.types() || pair.context.types() != theta.types() {
        return Err(SynthError::InvalidArgument("summands and pair must share a target".into()));
    }
    if a.strength < Strength::Strong || b.strength < Strength::Strong {
        return Err(SynthError::NotStrong);
    }
    let b_subst = b.subst.with_target(theta.clone())?;
    let pair_subst = Substitution::new(
        Context::numbered("f", &[SimpleType::nat(1), SimpleType::nat(1)]),
        pair.context.clone(),
        vec![pair.x1.clone(), pair.x2.clone()],
    )?
    .with_target(theta.clone())?;
    let mut steps = a.steps;
    steps.extend(b.steps);
    let subst = if a.subst.source().is_empty() {
        b_subst
    } else if b_subst.source().is_empty() {
        a.subst
    } else {
        let left = compose(&wrap(&theta, &pair_subst.terms()[0])?, &a.subst)?;
        let right = compose(&wrap(&theta, &pair_subst.terms()[1])?, &b_subst)?;
        let (source, _) = disjoint_concat(&[left.source(), right.source()]);
        let mut terms = left.terms().to_vec();
        terms.extend(right.terms().iter().cloned());
        Substitution::new(source, theta, terms)?
    };
    steps.push(node(Lemma::Sum, 2, &subst));
    Ok(Reduction {
        subst,
        strength: Strength::Strong,
        steps,
    })
}

/// Left-to-right sum of reductions into `target`.
pub fn sum_all(parts: Vec<Reduction>, pair: &AtomicPair, target: &Context) -> Result<Reduction> {
    let mut it = parts.into_iter();
    let Some(first) = it.next() else {
        return embed(&Context::empty(), target);
    };
    it.try_fold(first, |acc, p| sum(acc, p, pair))
}

/// Side-by-side reductions: `Gamma1,...,Gamman <= Delta1,...,Deltan`.
pub fn product(parts: Vec<Reduction>) -> Result<Reduction> {
    if parts.len() == 1 {
        return Ok(parts.into_iter().next().expect("one part"));
    }
    let sources: Vec<&Context> = parts.iter().map(|p| p.source()).collect();
    let targets: Vec<&Context> = parts.iter().map(|p| p.target()).collect();
    let (source, _) = disjoint_concat(&sources);
    let (target, renamed) = disjoint_concat(&targets);
    let arity = parts.len();
    let mut terms = Vec::new();
    let mut strength = Strength::Strong;
    let mut steps = Vec::new();
    for (p, tgt) in parts.into_iter().zip(renamed) {
        terms.extend(p.subst.with_target(tgt)?.terms().iter().cloned());
        strength = strength.min(p.strength);
        steps.extend(p.steps);
    }
    let subst = Substitution::new(source, target, terms)?;
    steps.push(node(Lemma::Product, arity, &subst));
    Ok(Reduction {
        subst,
        strength,
        steps,
    })
}
