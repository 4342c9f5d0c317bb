//! The iconic inhabitants of the canonical types and direct iterators over
//! them.
//!
//! Each constructor is a bijection from its shorthand domain onto the long
//! normal closed inhabitants of one canonical type.

use std::sync::Arc;

use crate::classify::HierarchyClass;
use crate::term::Term;
use crate::types::SimpleType;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad index: {0}")]
pub struct BadIndex(pub String);

fn lam(ty: SimpleType, body: Term) -> Term {
    Term::Lam(ty, Arc::new(body))
}

fn app2(h: Term, a: Term, b: Term) -> Term {
    Term::apps(h, [a, b])
}

/// `c_n = \f c. f^n c`, an inhabitant of `[1,0]`.
pub fn church(n: usize) -> Term {
    let body = (0..n).fold(Term::Bound(0), |acc, _| Term::app(Term::Bound(1), acc));
    lam(SimpleType::nat(1), lam(SimpleType::base(), body))
}

/// `<i,j> = \F. F (\x1. ... F (\xi. xj))`, an inhabitant of `[2]`.
pub fn pair(i: usize, j: usize) -> Result<Term, BadIndex> {
    if j == 0 || j > i {
        return Err(BadIndex(format!("pair <{i},{j}> needs 1 <= j <= i")));
    }
    let mut body = Term::Bound((i - j) as u32);
    for depth in (0..i).rev() {
        body = Term::app(Term::Bound(depth as u32), lam(SimpleType::base(), body));
    }
    Ok(lam(SimpleType::nat(2), body))
}

/// `U^k_i = \x1..xk. xi`, an inhabitant of `[0^k]`.
pub fn projection(k: usize, i: usize) -> Result<Term, BadIndex> {
    if i == 0 || i > k {
        return Err(BadIndex(format!("projection U^{k}_{i} needs 1 <= i <= k")));
    }
    let body = Term::Bound((k - i) as u32);
    Ok((0..k).fold(body, |acc, _| lam(SimpleType::base(), acc)))
}

/// A letter of a word over `f, g`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Letter {
    F,
    G,
}

/// `\f g c. w c`, an inhabitant of `[1,1,0]`; the first letter is outermost.
pub fn word(w: &[Letter]) -> Term {
    let body = w.iter().rev().fold(Term::Bound(0), |acc, l| {
        let head = match l {
            Letter::F => Term::Bound(2),
            Letter::G => Term::Bound(1),
        };
        Term::app(head, acc)
    });
    let one = SimpleType::nat(1);
    lam(one.clone(), lam(one, lam(SimpleType::base(), body)))
}

/// `\P c. P (\f1. w1 (P (\f2. w2 ... (P (\fn. wn c)))))`, an inhabitant of
/// `[3,0]`. Letters of `w_i` name the binders `f_1..f_i`.
pub fn word_list(ws: &[Vec<usize>]) -> Result<Term, BadIndex> {
    let n = ws.len();
    let mut body = Term::Bound(n as u32);
    for (i, w) in ws.iter().enumerate().rev() {
        let level = i + 1;
        if let Some(&bad) = w.iter().find(|&&l| l == 0 || l > level) {
            return Err(BadIndex(format!("letter {bad} in word {level}")));
        }
        body = w
            .iter()
            .rev()
            .fold(body, |acc, &l| Term::app(Term::Bound((level - l) as u32), acc));
        body = Term::app(Term::Bound(level as u32), lam(SimpleType::nat(1), body));
    }
    Ok(lam(SimpleType::nat(3), lam(SimpleType::base(), body)))
}

/// Binary trees with unlabelled leaves.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn node(l: Tree, r: Tree) -> Tree {
        Tree::Node(Box::new(l), Box::new(r))
    }

    pub fn nodes(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(l, r) => 1 + l.nodes() + r.nodes(),
        }
    }

    /// All trees with exactly `n` nodes.
    pub fn all(n: usize) -> Vec<Tree> {
        if n == 0 {
            return vec![Tree::Leaf];
        }
        let mut out = Vec::new();
        for k in 0..n {
            for l in Tree::all(k) {
                for r in Tree::all(n - 1 - k) {
                    out.push(Tree::node(l.clone(), r));
                }
            }
        }
        out
    }
}

/// `\b c. T`, an inhabitant of `[[0,0],0]`.
pub fn tree(t: &Tree) -> Term {
    fn go(t: &Tree) -> Term {
        match t {
            Tree::Leaf => Term::Bound(0),
            Tree::Node(l, r) => app2(Term::Bound(1), go(l), go(r)),
        }
    }
    lam(SimpleType::zeros(2), lam(SimpleType::base(), go(t)))
}

fn words(len: usize) -> Vec<Vec<Letter>> {
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|w| {
                [Letter::F, Letter::G].map(|l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect()
    })
}

/// Word lists whose term has size at most `bound`.
fn word_lists(bound: usize) -> Vec<Vec<Vec<usize>>> {
    // Three for each `P (\f. _)` and two for each letter, over a base of three.
    fn go(level: usize, budget: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        out.push(cur.clone());
        if budget < 3 {
            return;
        }
        let next = level + 1;
        let mut w = Vec::new();
        extend(next, budget - 3, &mut w, cur, out);
    }
    fn extend(level: usize, budget: usize, w: &mut Vec<usize>, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        cur.push(w.clone());
        go(level, budget, cur, out);
        cur.pop();
        if budget < 2 {
            return;
        }
        for l in 1..=level {
            w.push(l);
            extend(level, budget - 2, w, cur, out);
            w.pop();
        }
    }
    let mut out = Vec::new();
    if bound >= 3 {
        go(0, bound - 3, &mut Vec::new(), &mut out);
    }
    out
}

/// The closed inhabitants of the canonical type of `class` with size at most
/// `bound`, built from the shapes above, in enumeration order.
pub fn canonical_inhabitants(class: HierarchyClass, bound: usize) -> Vec<Term> {
    let mut out: Vec<Term> = match class {
        HierarchyClass::Finite(k) => {
            let k = k as usize;
            (1..=k).filter_map(|i| projection(k, i).ok()).collect()
        }
        HierarchyClass::OmegaPlus(0) => (0..).map(church).take_while(|t| t.size() <= bound).collect(),
        HierarchyClass::OmegaPlus(1) => (1..=bound / 3)
            .flat_map(|i| (1..=i).map(move |j| pair(i, j).expect("1 <= j <= i")))
            .collect(),
        HierarchyClass::OmegaPlus(2) => (0..=bound / 2).flat_map(words).map(|w| word(&w)).collect(),
        HierarchyClass::OmegaPlus(3) => word_lists(bound)
            .iter()
            .map(|ws| word_list(ws).expect("letters in range"))
            .collect(),
        HierarchyClass::OmegaPlus(_) => (0..=bound / 4).flat_map(Tree::all).map(|t| tree(&t)).collect(),
    };
    out.retain(|t| t.size() <= bound);
    out.sort_by(|a, b| (a.size(), a).cmp(&(b.size(), b)));
    out
}
