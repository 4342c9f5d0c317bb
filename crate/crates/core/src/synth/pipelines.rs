//! Reductions into and out of the canonical types, and their assembly
//! into certificates.

use super::arith::{hplus_family, pairing_bridge, separators};
use super::build::{iterate, lam1, var, Temps};
use super::lemmas::{
    atomic_pair, congruence, double_embed, embed, large_pairing_in, pair_cap, recursion_cap, split, sum_all,
    tuple_merge_with, word_reduction, AtomicPair,
};
use super::{Lemma, Reduction, ReductionCertificate, Step, Strength, SynthError, Witness};
use crate::classify::{hierarchy_class, smallest_inhabitant, smallest_inhabitant_in, HierarchyClass};
use crate::decide::{decide, Relation};
use crate::normalize::lnf_at;
use crate::subst::Substitution;
use crate::term::{Context, Name, Term};
use crate::types::SimpleType;

type Result<T> = std::result::Result<T, SynthError>;

const OMEGA: HierarchyClass = HierarchyClass::OmegaPlus(0);

fn named(entries: &[(&str, SimpleType)]) -> Context {
    Context::new(entries.iter().map(|(n, t)| (Name::new(n), t.clone())).collect()).expect("distinct literal names")
}

fn single(name: &Name, ty: &SimpleType) -> Context {
    Context::new(vec![(name.clone(), ty.clone())]).expect("one variable")
}

/// The context whose type is the canonical type of `class`.
pub(crate) fn canonical_context(class: HierarchyClass) -> Context {
    let z = SimpleType::base;
    let nat = SimpleType::nat;
    match class {
        HierarchyClass::Finite(k) => Context::numbered("c", &vec![z(); k as usize]),
        HierarchyClass::OmegaPlus(0) => named(&[("f", nat(1)), ("c", z())]),
        HierarchyClass::OmegaPlus(1) => named(&[("F", nat(2))]),
        HierarchyClass::OmegaPlus(2) => named(&[("f", nat(1)), ("g", nat(1)), ("c", z())]),
        HierarchyClass::OmegaPlus(3) => named(&[("P", nat(3)), ("c", z())]),
        HierarchyClass::OmegaPlus(_) => named(&[("b", SimpleType::zeros(2)), ("c", z())]),
    }
}

fn source_context(a: &SimpleType) -> Context {
    Context::of_type("a", a)
}

fn target_context(b: &SimpleType) -> Context {
    Context::of_type("b", b)
}

/// `n` when `ty` is the numeral type `n`.
fn nat_level(ty: &SimpleType) -> Option<usize> {
    match ty.arity() {
        0 => Some(0),
        1 => nat_level(&ty.components()[0]).map(|n| n + 1),
        _ => None,
    }
}

fn leaf(lemma: Lemma, strength: Strength, src: Context, tgt: Context, terms: Vec<Term>) -> Result<Reduction> {
    Ok(Reduction::leaf(lemma, Substitution::new(src, tgt, terms)?, strength))
}

/// Every variable of an uninhabited context sent to a closed inhabitant.
fn zero_collapse(src: &Context) -> Result<Reduction> {
    let terms = src
        .entries()
        .iter()
        .map(|(n, ty)| {
            smallest_inhabitant(ty).ok_or_else(|| SynthError::SideConditionFails(format!("{n} : {ty} is empty")))
        })
        .collect::<Result<Vec<_>>>()?;
    leaf(Lemma::ZeroCollapse, Strength::Head, src.clone(), Context::empty(), terms)
}

/// A variable of type 0 sent to the first inhabitant of 0 over `tgt`.
fn inhabitant(name: &Name, tgt: &Context) -> Result<Reduction> {
    let h = smallest_inhabitant_in(tgt, &SimpleType::base())
        .ok_or_else(|| SynthError::SideConditionFails(format!("no inhabitant of 0 over {{{tgt}}}")))?;
    leaf(Lemma::Inhabitant, Strength::Strong, single(name, &SimpleType::base()), tgt.clone(), vec![h])
}

/// `[1,0^k] <= [1,0]`: `f := f^k`, the `i`-th constant to `f^i c`.
fn numeral_encoding(src: &Context, theta: &Context) -> Result<Reduction> {
    let (f, c) = (var(&Name::new("f")), var(&Name::new("c")));
    let k = src.entries().iter().filter(|(_, t)| t.is_base()).count();
    let mut t = Temps::default();
    let mut i = 0;
    let terms = src
        .entries()
        .iter()
        .map(|(_, ty)| {
            if ty.is_base() {
                i += 1;
                iterate(&f, i - 1, c.clone())
            } else {
                let x = t.binder(&SimpleType::base());
                let body = iterate(&f, k, var(&x.0));
                lam1(x, body)
            }
        })
        .collect();
    leaf(Lemma::NumeralEncoding, Strength::Head, src.clone(), theta.clone(), terms)
}

type Binder = (Name, SimpleType);

/// `[2,0^l] <= [2]` by layers: `F := \f. G (\z. G (\x1. ... G (\xl. f z)))`
/// and the `i`-th constant to `G (\x1. ... G (\xi. x1))`.
fn layer_encoding(src: &Context, theta: &Context) -> Result<Reduction> {
    let g = var(&theta.entries()[0].0);
    let l = src.entries().iter().filter(|(_, t)| t.is_base()).count();
    let mut t = Temps::default();
    let zero = SimpleType::base();
    let layers = |t: &mut Temps, n: usize, inner: &dyn Fn(&[Binder]) -> Term| {
        let xs: Vec<_> = (0..n).map(|_| t.binder(&zero)).collect();
        let mut body = inner(&xs);
        for x in xs.into_iter().rev() {
            body = Term::app(g.clone(), lam1(x, body));
        }
        body
    };
    let mut i = 0;
    let terms = src
        .entries()
        .iter()
        .map(|(_, ty)| {
            if ty.is_base() {
                i += 1;
                layers(&mut t, i, &|xs| var(&xs[0].0))
            } else {
                let f = t.binder(&SimpleType::nat(1));
                let fv = var(&f.0);
                let body = layers(&mut t, l + 1, &|xs| Term::app(fv.clone(), var(&xs[0].0)));
                lam1(f, body)
            }
        })
        .collect();
    leaf(Lemma::LayerEncoding, Strength::Head, src.clone(), theta.clone(), terms)
}

fn rank_two_part(name: &Name, ty: &SimpleType, theta: &Context) -> Result<Reduction> {
    match nat_level(ty) {
        Some(2) => word_reduction(),
        Some(0 | 1) => embed(&single(name, ty), theta),
        _ => Err(SynthError::InvalidArgument(format!("{ty} is not a component of a type of class omega+2"))),
    }
}

/// `x : n <=s P:3, c:0` for the numeral type `n`.
fn nat_into_three(n: usize, theta: &Context, pair: &AtomicPair) -> Result<Reduction> {
    let x = Name::new("x");
    match n {
        0 | 3 => embed(&single(&x, &SimpleType::nat(n)), theta),
        1 => {
            let d = double_embed(&SimpleType::nat(2))?;
            let into = embed(d.target(), theta)?;
            d.then(into)
        }
        _ => {
            let cap = recursion_cap(&SimpleType::nat(n - 2))?;
            let phi = embed(&single(&Name::new("P"), &SimpleType::nat(3)), theta)?;
            let rest = nat_into_three(n - 2, theta, pair)?;
            cap.then(sum_all(vec![phi, rest], pair, theta)?)
        }
    }
}

/// `A <=s [3,0]` for a small type `A`, summing over its components.
pub fn small_into_three(a: &SimpleType) -> Result<Reduction> {
    let theta = canonical_context(HierarchyClass::OmegaPlus(3));
    let pair = atomic_pair(&theta)?;
    let parts = a
        .components()
        .iter()
        .map(|c| {
            let n = nat_level(c).ok_or_else(|| SynthError::InvalidArgument(format!("{a} is not small")))?;
            nat_into_three(n, &theta, &pair)
        })
        .collect::<Result<Vec<_>>>()?;
    sum_all(parts, &pair, &theta)?.relabel(source_context(a), theta)
}

/// `p : [0^k] <=s b:[0,0], c:0`: `p := \x1..xk. b x1 (b x2 (... (b xk c)))`.
fn tree_encoding(k: usize, theta: &Context) -> Result<Reduction> {
    let b = var(&Name::new("b"));
    let mut t = Temps::default();
    let xs: Vec<_> = (0..k).map(|_| t.binder(&SimpleType::base())).collect();
    let body = xs
        .iter()
        .rev()
        .fold(var(&Name::new("c")), |acc, x| Term::apps(b.clone(), [var(&x.0), acc]));
    let rho = Term::lams(&xs, body);
    let src = single(&Name::new("p"), &SimpleType::zeros(k));
    leaf(Lemma::TreeEncoding, Strength::Strong, src, theta.clone(), vec![rho])
}

/// `x : C <=s b:[0,0], c:0`.
fn top_var(c: &SimpleType, theta: &Context, pair: &AtomicPair) -> Result<Reduction> {
    if c.is_base() {
        return embed(&single(&Name::new("x"), c), theta);
    }
    let cs = c.components();
    let mut parts = cs
        .iter()
        .map(|ci| top_var_boxed(ci, theta, pair))
        .collect::<Result<Vec<_>>>()?;
    parts.push(tree_encoding(cs.len(), theta)?);
    split(cs)?.then(sum_all(parts, pair, theta)?)
}

/// `F : [C] <=s b:[0,0], c:0`.
fn top_var_boxed(c: &SimpleType, theta: &Context, pair: &AtomicPair) -> Result<Reduction> {
    if c.is_base() {
        return tree_encoding(1, theta);
    }
    let ds = c.components();
    let identity: Vec<usize> = (0..ds.len()).collect();
    let merge = tuple_merge_with(ds, ds, &identity)?;
    let caps = ds
        .iter()
        .map(|d| {
            let parts = vec![
                embed(&single(&Name::new("b"), &SimpleType::zeros(2)), theta)?,
                top_var(d, theta, pair)?,
                top_var(d, theta, pair)?,
            ];
            pair_cap(d)?.then(sum_all(parts, pair, theta)?)
        })
        .collect::<Result<Vec<_>>>()?;
    merge.then(sum_all(caps, pair, theta)?)
}

/// `A <=s [[0,0],0]` for every type `A`.
pub fn top(a: &SimpleType) -> Result<Reduction> {
    let theta = canonical_context(HierarchyClass::OmegaPlus(4));
    let pair = atomic_pair(&theta)?;
    let parts = a
        .components()
        .iter()
        .map(|c| top_var(c, &theta, &pair))
        .collect::<Result<Vec<_>>>()?;
    sum_all(parts, &pair, &theta)?.relabel(source_context(a), theta)
}

/// `A <= H`, with `H` the canonical type of the class of `A`.
pub fn into_canonical(a: &SimpleType) -> Result<Reduction> {
    let class = hierarchy_class(a);
    let src = source_context(a);
    let theta = canonical_context(class);
    if src.len() == theta.len() {
        if let Ok(r) = embed(&src, &theta) {
            return r.relabel(src, theta);
        }
    }
    let r = match class {
        HierarchyClass::Finite(0) => zero_collapse(&src)?,
        HierarchyClass::Finite(_) => embed(&src, &theta)?,
        HierarchyClass::OmegaPlus(0) => numeral_encoding(&src, &theta)?,
        HierarchyClass::OmegaPlus(1) => layer_encoding(&src, &theta)?,
        HierarchyClass::OmegaPlus(2) => {
            let pair = atomic_pair(&theta)?;
            let parts = src
                .entries()
                .iter()
                .map(|(n, ty)| rank_two_part(n, ty, &theta))
                .collect::<Result<Vec<_>>>()?;
            sum_all(parts, &pair, &theta)?
        }
        HierarchyClass::OmegaPlus(3) => small_into_three(a)?,
        HierarchyClass::OmegaPlus(_) => top(a)?,
    };
    r.relabel(src, theta)
}

/// `f : 1 <=s Delta` through the first single-component variable `y`:
/// `f := \z. y (\G. z)`.
fn unary_into(tgt: &Context) -> Result<Reduction> {
    let (y, ty) = tgt
        .entries()
        .iter()
        .find(|(_, t)| t.arity() == 1)
        .ok_or_else(|| SynthError::NotAtomicPair(tgt.clone()))?;
    let base = embed(&Context::empty(), &Context::of_type("d", &ty.components()[0]))?;
    let lifted = congruence(&base, &[])?;
    lifted.then(embed(&single(y, ty), tgt)?)
}

/// `P : 3 <=s Delta` through the first variable of rank at least 3.
fn three_into(tgt: &Context) -> Result<Reduction> {
    let (y, ty) = tgt
        .entries()
        .iter()
        .find(|(_, t)| t.rank() >= 3)
        .ok_or_else(|| SynthError::NotAtomicPair(tgt.clone()))?;
    let n = nat_level(ty).ok_or_else(|| SynthError::InvalidArgument(format!("{ty} is not small")))?;
    let base = embed(&Context::empty(), &Context::of_type("d", &SimpleType::nat(n - 3)))?;
    let lifted = congruence(&congruence(&base, &[])?, &[])?;
    lifted.then(embed(&single(y, ty), tgt)?)
}

/// `H <= B`, with `H` the canonical type of the class of `B`.
pub fn canonical_into(b: &SimpleType) -> Result<Reduction> {
    let class = hierarchy_class(b);
    let theta = canonical_context(class);
    let tgt = target_context(b);
    let c = Name::new("c");
    if let Ok(r) = embed(&theta, &tgt) {
        return r.relabel(theta, tgt);
    }
    let r = match class {
        HierarchyClass::Finite(_) | HierarchyClass::OmegaPlus(0) | HierarchyClass::OmegaPlus(1) => embed(&theta, &tgt)?,
        HierarchyClass::OmegaPlus(2) => {
            let pair = atomic_pair(&tgt)?;
            let parts = vec![unary_into(&tgt)?, unary_into(&tgt)?, inhabitant(&c, &tgt)?];
            sum_all(parts, &pair, &tgt)?
        }
        HierarchyClass::OmegaPlus(3) => {
            let pair = atomic_pair(&tgt)?;
            sum_all(vec![three_into(&tgt)?, inhabitant(&c, &tgt)?], &pair, &tgt)?
        }
        HierarchyClass::OmegaPlus(_) => {
            let pair = atomic_pair(&tgt)?;
            sum_all(vec![large_pairing_in(&tgt)?, inhabitant(&c, &tgt)?], &pair, &tgt)?
        }
    };
    r.relabel(theta, tgt)
}

/// `c1..cj <= f, c`: `ci := f^(i-1) c`.
fn numeral_projection(src: &Context, theta: &Context) -> Result<Reduction> {
    let (f, c) = (var(&Name::new("f")), var(&Name::new("c")));
    let terms = (0..src.len()).map(|i| iterate(&f, i, c.clone())).collect();
    leaf(Lemma::NumeralProjection, Strength::Head, src.clone(), theta.clone(), terms)
}

/// `f:1, c:0 <= F:2, c:0`: `f := \x. F (\y. x)`.
fn constant_lift() -> Result<Reduction> {
    let src = canonical_context(OMEGA);
    let tgt = named(&[("F", SimpleType::nat(2)), ("c", SimpleType::base())]);
    let mut t = Temps::default();
    let x = t.binder(&SimpleType::base());
    let y = t.binder(&SimpleType::base());
    let xv = var(&x.0);
    let f = lam1(x, Term::app(var(&Name::new("F")), lam1(y, xv)));
    leaf(Lemma::ConstantLift, Strength::Head, src, tgt, vec![f, var(&Name::new("c"))])
}

/// Words in `f, g` as right combs: `f := \x. b c x`, `g := \x. b (b c c) x`.
fn word_trees(theta: &Context) -> Result<Reduction> {
    let b = var(&Name::new("b"));
    let c = var(&Name::new("c"));
    let mut t = Temps::default();
    let tag = |t: &mut Temps, head: Term| {
        let x = t.binder(&SimpleType::base());
        let xv = var(&x.0);
        lam1(x, Term::apps(b.clone(), [head, xv]))
    };
    let f = tag(&mut t, c.clone());
    let g = tag(&mut t, Term::apps(b.clone(), [c.clone(), c.clone()]));
    let src = canonical_context(HierarchyClass::OmegaPlus(2));
    leaf(Lemma::TreeEncoding, Strength::Head, src, theta.clone(), vec![f, g, c])
}

fn segment(from: HierarchyClass, to: HierarchyClass) -> Result<Reduction> {
    let src = canonical_context(from);
    let tgt = canonical_context(to);
    let r = match (from, to) {
        (HierarchyClass::Finite(0), _) | (HierarchyClass::Finite(_), HierarchyClass::Finite(_)) => embed(&src, &tgt)?,
        (HierarchyClass::Finite(_), _) => numeral_projection(&src, &tgt)?,
        (HierarchyClass::OmegaPlus(0), _) => {
            let lift = constant_lift()?;
            let layers = layer_encoding(lift.target(), &tgt)?;
            lift.then(layers)?
        }
        (HierarchyClass::OmegaPlus(1), _) => word_reduction()?,
        (HierarchyClass::OmegaPlus(2), HierarchyClass::OmegaPlus(4)) => word_trees(&tgt)?,
        (HierarchyClass::OmegaPlus(2), _) => small_into_three(&src.as_type())?,
        _ => top(&src.as_type())?,
    };
    r.relabel(src, tgt)
}

/// `H_alpha <= H_beta` for `alpha <= beta`, one class step at a time.
pub fn canonical_chain(from: HierarchyClass, to: HierarchyClass) -> Result<Reduction> {
    if from > to {
        return Err(SynthError::NotReducible {
            relation: Relation::Head,
            from: from.canonical_type(),
            to: to.canonical_type(),
        });
    }
    if from == to {
        let ctx = canonical_context(from);
        return embed(&ctx, &ctx);
    }
    let next = |c: HierarchyClass| match c {
        HierarchyClass::Finite(0) => to,
        HierarchyClass::Finite(_) if to.is_finite() => to,
        HierarchyClass::Finite(_) => OMEGA,
        HierarchyClass::OmegaPlus(2) if to == HierarchyClass::OmegaPlus(4) => to,
        HierarchyClass::OmegaPlus(j) => HierarchyClass::OmegaPlus(j + 1),
    };
    let mut cur = from;
    let mut acc: Option<Reduction> = None;
    while cur < to {
        let n = next(cur);
        let seg = segment(cur, n)?;
        acc = Some(match acc {
            None => seg,
            Some(r) => r.then(seg)?,
        });
        cur = n;
    }
    Ok(acc.expect("at least one step"))
}

/// A head reduction from `A` to `B`, through the canonical types.
pub fn head_reduction(a: &SimpleType, b: &SimpleType) -> Result<Reduction> {
    let (ca, cb) = (hierarchy_class(a), hierarchy_class(b));
    if ca > cb {
        return Err(SynthError::NotReducible {
            relation: Relation::Head,
            from: a.clone(),
            to: b.clone(),
        });
    }
    if let Ok(r) = embed(&source_context(a), &target_context(b)) {
        return Ok(r);
    }
    let into = if cb == HierarchyClass::OmegaPlus(4) && ca >= HierarchyClass::OmegaPlus(3) {
        top(a)?
    } else {
        into_canonical(a)?.then(canonical_chain(ca, cb)?)?
    };
    into.then(canonical_into(b)?)?.relabel(source_context(a), target_context(b))
}

fn bohm_of(r: &Reduction) -> Term {
    r.subst.bohm_term()
}

/// `R_B (bridge (R_A m))` for `A` of class omega+1 and `B` of class omega.
fn bridged_term(a: &SimpleType, b: &SimpleType) -> Result<(Term, Vec<Step>)> {
    let ra = into_canonical(a)?;
    let rb = canonical_into(b)?;
    let mut t = Temps::default();
    let m = t.binder(a);
    let body = Term::app(bohm_of(&rb), Term::app(pairing_bridge(), Term::app(bohm_of(&ra), var(&m.0))));
    let ty = SimpleType::arrow(a.clone(), b);
    let term = lnf_at(&lam1(m, body), &ty, &Context::empty())?;
    let two = ra.target_type();
    let one_zero = rb.source_type();
    let mut steps = ra.steps;
    steps.push(Step::leaf(Lemma::PairingBridge, two, one_zero.clone()));
    steps.push(Step {
        lemma: Lemma::Compose,
        arity: 2,
        source: a.clone(),
        target: one_zero,
    });
    steps.extend(rb.steps);
    steps.push(Step {
        lemma: Lemma::Compose,
        arity: 2,
        source: a.clone(),
        target: b.clone(),
    });
    Ok((term, steps))
}

/// Family members `A <= H -> (member) -> H' <= B`.
fn family_through(
    a: &SimpleType,
    b: &SimpleType,
    lemma: Lemma,
    members: Vec<Substitution>,
    after: Option<Reduction>,
) -> Result<(Vec<Substitution>, Vec<Step>)> {
    let ra = into_canonical(a)?;
    let rb = canonical_into(b)?;
    let mut substs = Vec::with_capacity(members.len());
    let mut steps = Vec::new();
    for s in members {
        let mut r = ra.clone().then(Reduction::leaf(lemma, s, Strength::Joint))?;
        if let Some(x) = &after {
            r = r.then(x.clone())?;
        }
        let r = r.then(rb.clone())?.relabel(source_context(a), target_context(b))?;
        substs.push(r.subst);
        steps.extend(r.steps);
    }
    steps.push(Step {
        lemma: Lemma::Family,
        arity: substs.len(),
        source: a.clone(),
        target: b.clone(),
    });
    Ok((substs, steps))
}

/// A certificate for `A <= B` under `rel`, or `NotReducible`.
pub fn witness(rel: Relation, a: &SimpleType, b: &SimpleType) -> Result<ReductionCertificate> {
    if !decide(rel, a, b) {
        return Err(SynthError::NotReducible {
            relation: rel,
            from: a.clone(),
            to: b.clone(),
        });
    }
    let (ca, cb) = (hierarchy_class(a), hierarchy_class(b));
    let cert = |strength, witness, derivation| ReductionCertificate {
        relation: rel,
        strength,
        source: a.clone(),
        target: b.clone(),
        witness,
        derivation,
    };
    if ca <= cb {
        let r = head_reduction(a, b)?;
        return Ok(match rel {
            Relation::Head => cert(r.strength, Witness::Substitution(r.subst), r.steps),
            Relation::BetaEta => cert(r.strength, Witness::Term(r.subst.bohm_term()), r.steps),
            Relation::HeadFamily => {
                let mut steps = r.steps;
                steps.push(Step {
                    lemma: Lemma::Family,
                    arity: 1,
                    source: a.clone(),
                    target: b.clone(),
                });
                cert(r.strength, Witness::Family(vec![r.subst]), steps)
            }
        });
    }
    match (rel, ca, cb) {
        (Relation::BetaEta, HierarchyClass::OmegaPlus(1), HierarchyClass::OmegaPlus(0)) => {
            let (t, steps) = bridged_term(a, b)?;
            Ok(cert(Strength::Injective, Witness::Term(t), steps))
        }
        (Relation::HeadFamily, HierarchyClass::OmegaPlus(1), HierarchyClass::OmegaPlus(0)) => {
            let (fam, steps) = family_through(a, b, Lemma::NumeralFamily, hplus_family(), None)?;
            Ok(cert(Strength::Joint, Witness::Family(fam), steps))
        }
        (Relation::HeadFamily, HierarchyClass::Finite(j), HierarchyClass::Finite(k)) => {
            let seps = separators(j as usize)?;
            let two = seps[0].target().clone();
            let widen = embed(&two, &canonical_context(cb))?;
            let (fam, steps) = family_through(a, b, Lemma::Separator, seps, Some(widen))?;
            debug_assert!(k >= 2);
            Ok(cert(Strength::Joint, Witness::Family(fam), steps))
        }
        _ => Err(SynthError::NotReducible {
            relation: rel,
            from: a.clone(),
            to: b.clone(),
        }),
    }
}
