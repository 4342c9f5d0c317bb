//! Enumeration of long normal inhabitants and of substitutions.
//!
//! Terms come out in nondecreasing size, ties broken by the derived order
//! on [`Term`]. Results are memoized per (bound-variable stack, type, size).

use std::collections::HashMap;
use std::sync::Arc;

use crate::subst::Substitution;
use crate::term::{Context, Term};
use crate::types::SimpleType;

pub mod shapes;

pub use shapes::{canonical_inhabitants, church, pair, projection, tree, word, word_list, BadIndex, Letter, Tree};

type Key = (Vec<SimpleType>, SimpleType, usize);

/// Enumerates long normal terms over a fixed context.
pub struct Enumerator {
    ctx: Context,
    terms: HashMap<Key, Arc<Vec<Term>>>,
    counts: HashMap<Key, u128>,
}

/// The smallest possible size of a long normal term of type `ty`.
fn min_size(ty: &SimpleType) -> usize {
    ty.arity() + 1
}

/// All ways to write `total` as `mins.len()` parts with `part[i] >= mins[i]`.
fn compositions(total: usize, mins: &[usize]) -> Vec<Vec<usize>> {
    fn go(rest: usize, mins: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if mins.is_empty() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let tail_min: usize = mins[1..].iter().sum();
        if rest < mins[0] + tail_min {
            return;
        }
        for s in mins[0]..=rest - tail_min {
            cur.push(s);
            go(rest - s, &mins[1..], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, mins, &mut Vec::new(), &mut out);
    out
}

impl Enumerator {
    pub fn new(ctx: Context) -> Self {
        Enumerator {
            ctx,
            terms: HashMap::new(),
            counts: HashMap::new(),
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// Heads available under `stack`, with their types.
    fn heads(&self, stack: &[SimpleType]) -> Vec<(Term, SimpleType)> {
        let mut hs: Vec<(Term, SimpleType)> = self
            .ctx
            .entries()
            .iter()
            .map(|(n, t)| (Term::Free(n.clone()), t.clone()))
            .collect();
        for (i, t) in stack.iter().rev().enumerate() {
            hs.push((Term::Bound(i as u32), t.clone()));
        }
        hs
    }

    /// Terms of type `ty` and exactly `size` under the bound variables `stack`.
    fn gen(&mut self, stack: &[SimpleType], ty: &SimpleType, size: usize) -> Arc<Vec<Term>> {
        let key = (stack.to_vec(), ty.clone(), size);
        if let Some(r) = self.terms.get(&key) {
            return r.clone();
        }
        let result = if size < min_size(ty) {
            Vec::new()
        } else if ty.is_base() {
            self.gen_neutral(stack, size)
        } else {
            let mut inner = stack.to_vec();
            inner.extend(ty.components().iter().cloned());
            let bodies = self.gen(&inner, &SimpleType::base(), size - ty.arity());
            bodies
                .iter()
                .map(|b| {
                    ty.components()
                        .iter()
                        .rev()
                        .fold(b.clone(), |acc, c| Term::Lam(c.clone(), Arc::new(acc)))
                })
                .collect()
        };
        let result = Arc::new(result);
        self.terms.insert(key, result.clone());
        result
    }

    fn gen_neutral(&mut self, stack: &[SimpleType], size: usize) -> Vec<Term> {
        let mut out = Vec::new();
        for (head, hty) in self.heads(stack) {
            let m = hty.arity();
            if size < 1 + m {
                continue;
            }
            let mins: Vec<usize> = hty.components().iter().map(min_size).collect();
            for split in compositions(size - 1 - m, &mins) {
                let lists: Vec<Arc<Vec<Term>>> = hty
                    .components()
                    .iter()
                    .zip(&split)
                    .map(|(c, s)| self.gen(stack, c, *s))
                    .collect();
                if lists.iter().any(|l| l.is_empty()) {
                    continue;
                }
                product(&head, &lists, &mut out);
            }
        }
        out.sort();
        out
    }

    fn count_at(&mut self, stack: &[SimpleType], ty: &SimpleType, size: usize) -> u128 {
        let key = (stack.to_vec(), ty.clone(), size);
        if let Some(r) = self.counts.get(&key) {
            return *r;
        }
        let result = if size < min_size(ty) {
            0
        } else if ty.is_base() {
            let mut total = 0u128;
            for (_, hty) in self.heads(stack) {
                let m = hty.arity();
                if size < 1 + m {
                    continue;
                }
                let mins: Vec<usize> = hty.components().iter().map(min_size).collect();
                for split in compositions(size - 1 - m, &mins) {
                    let mut prod = 1u128;
                    for (c, s) in hty.components().iter().zip(&split) {
                        prod = prod.saturating_mul(self.count_at(stack, c, *s));
                        if prod == 0 {
                            break;
                        }
                    }
                    total = total.saturating_add(prod);
                }
            }
            total
        } else {
            let mut inner = stack.to_vec();
            inner.extend(ty.components().iter().cloned());
            self.count_at(&inner, &SimpleType::base(), size - ty.arity())
        };
        self.counts.insert(key, result);
        result
    }

    /// All terms of type `ty` with size exactly `size`.
    pub fn of_size(&mut self, ty: &SimpleType, size: usize) -> Arc<Vec<Term>> {
        self.gen(&[], ty, size)
    }

    /// All terms of type `ty` with size at most `bound`.
    pub fn up_to(&mut self, ty: &SimpleType, bound: usize) -> Vec<Term> {
        let mut out = Vec::new();
        for s in 0..=bound {
            out.extend(self.of_size(ty, s).iter().cloned());
        }
        out
    }

    /// The first `limit` terms of size at most `bound`.
    pub fn first(&mut self, ty: &SimpleType, bound: usize, limit: usize) -> Vec<Term> {
        let mut out = Vec::new();
        for s in 0..=bound {
            if out.len() >= limit {
                break;
            }
            let bucket = self.of_size(ty, s);
            out.extend(bucket.iter().take(limit - out.len()).cloned());
        }
        out
    }

    /// Number of terms of type `ty` with size at most `bound`, saturating.
    /// The number of terms of type `ty` with size exactly `size`.
    pub fn count_of_size(&mut self, ty: &SimpleType, size: usize) -> u128 {
        self.count_at(&[], ty, size)
    }

    pub fn count_up_to(&mut self, ty: &SimpleType, bound: usize) -> u128 {
        (0..=bound).fold(0u128, |acc, s| acc.saturating_add(self.count_at(&[], ty, s)))
    }

    /// The first term in enumeration order, searching sizes up to `max_size`.
    pub fn smallest(&mut self, ty: &SimpleType, max_size: usize) -> Option<Term> {
        (0..=max_size).find_map(|s| {
            if self.count_at(&[], ty, s) == 0 {
                None
            } else {
                self.of_size(ty, s).first().cloned()
            }
        })
    }
}

fn product(head: &Term, lists: &[Arc<Vec<Term>>], out: &mut Vec<Term>) {
    fn go(acc: Term, lists: &[Arc<Vec<Term>>], out: &mut Vec<Term>) {
        match lists.split_first() {
            None => out.push(acc),
            Some((first, rest)) => {
                for t in first.iter() {
                    go(Term::app(acc.clone(), t.clone()), rest, out);
                }
            }
        }
    }
    go(head.clone(), lists, out);
}

/// Long normal inhabitants of `ty` over `ctx` with size at most `bound`.
pub fn enumerate_inhabitants(ctx: &Context, ty: &SimpleType, bound: usize) -> Vec<Term> {
    Enumerator::new(ctx.clone()).up_to(ty, bound)
}

/// Closed inhabitants of `ty` with size at most `bound`.
pub fn enumerate_closed(ty: &SimpleType, bound: usize) -> Vec<Term> {
    enumerate_inhabitants(&Context::empty(), ty, bound)
}

pub fn count_inhabitants(ctx: &Context, ty: &SimpleType, bound: usize) -> u128 {
    Enumerator::new(ctx.clone()).count_up_to(ty, bound)
}

/// All substitutions from `source` to `target` whose terms each have size at
/// most `bound`, ordered by total size and then by per-variable order.
pub fn enumerate_substitutions(source: &Context, target: &Context, bound: usize) -> Vec<Substitution> {
    let mut en = Enumerator::new(target.clone());
    let choices: Vec<Vec<Term>> = source
        .entries()
        .iter()
        .map(|(_, ty)| en.up_to(ty, bound))
        .collect();
    let mut tuples: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
    for list in &choices {
        let mut next = Vec::with_capacity(tuples.len() * list.len());
        for (size, idx) in &tuples {
            for (j, t) in list.iter().enumerate() {
                let mut idx = idx.clone();
                idx.push(j);
                next.push((size + t.size(), idx));
            }
        }
        tuples = next;
    }
    tuples.sort();
    tuples
        .into_iter()
        .map(|(_, idx)| {
            let terms = idx.iter().zip(&choices).map(|(j, l)| l[*j].clone()).collect();
            Substitution::from_long_terms(source.clone(), target.clone(), terms)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::{is_lnf, typecheck};
    use crate::syntax::{parse_term, parse_type};

    fn ty(s: &str) -> SimpleType {
        parse_type(s).unwrap()
    }

    #[test]
    fn compositions_respect_minimums() {
        assert_eq!(compositions(3, &[1, 1]), vec![vec![1, 2], vec![2, 1]]);
        assert!(compositions(1, &[1, 1]).is_empty());
        assert_eq!(compositions(0, &[]), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn numerals_in_order() {
        let terms = enumerate_closed(&ty("[1,0]"), 9);
        let expected: Vec<Term> = [
            r"\f:1. \c:0. c",
            r"\f:1. \c:0. f c",
            r"\f:1. \c:0. f (f c)",
            r"\f:1. \c:0. f (f (f c))",
        ]
        .iter()
        .map(|s| parse_term(s).unwrap())
        .collect();
        assert_eq!(terms, expected);
    }

    #[test]
    fn projections() {
        let terms = enumerate_closed(&ty("[0,0,0]"), 10);
        assert_eq!(terms.len(), 3);
        for t in &terms {
            assert_eq!(t.size(), 4);
        }
    }

    #[test]
    fn uninhabited_is_empty() {
        assert!(enumerate_closed(&ty("0"), 10).is_empty());
        assert!(enumerate_closed(&ty("2"), 12).is_empty());
    }

    #[test]
    fn pairs_in_two() {
        // <i,j> has size 3i + 2 and there are i of each height
        let terms = enumerate_closed(&ty("[2]"), 14);
        assert_eq!(terms.len(), 1 + 2 + 3 + 4);
        assert_eq!(count_inhabitants(&Context::empty(), &ty("[2]"), 14), 10);
    }

    #[test]
    fn results_are_long_normal_and_sorted() {
        for t in ["[1,1,0]", "[3,0]", "[[0,0],0]", "[2,0]", "[0,[1,0]]"] {
            let terms = enumerate_closed(&ty(t), 12);
            let ctx = Context::empty();
            for w in terms.windows(2) {
                assert!((w[0].size(), &w[0]) < (w[1].size(), &w[1]));
            }
            for m in &terms {
                assert!(m.size() <= 12);
                assert_eq!(typecheck(m, &ctx).unwrap(), ty(t));
                assert!(is_lnf(m, &ctx));
            }
            assert_eq!(terms.len() as u128, count_inhabitants(&ctx, &ty(t), 12));
        }
    }

    #[test]
    fn first_is_prefix() {
        let mut en = Enumerator::new(Context::empty());
        let all = en.up_to(&ty("[1,1,0]"), 14);
        let some = en.first(&ty("[1,1,0]"), 14, 10);
        assert_eq!(&all[..10], &some[..]);
    }

    #[test]
    fn substitution_product_size() {
        let src = Context::of_type("a", &ty("[1,0]"));
        let tgt = Context::of_type("b", &ty("[1,0]"));
        let subs = enumerate_substitutions(&src, &tgt, 5);
        // type 1: \x. x, \x. b2, \x. b1 x, \x. b1 b2; type 0: b2, b1 b2, b1 (b1 b2)
        assert_eq!(subs.len(), 12);
        let sizes: Vec<usize> = subs.iter().map(|s| s.terms().iter().map(|t| t.size()).sum()).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    }
}
