//! Structural predicates, hierarchy classes and context derivatives.

use std::fmt;
use std::str::FromStr;

use crate::enumerate::Enumerator;
use crate::term::{Context, Term};
use crate::types::SimpleType;

/// A position in the hierarchy `0 < 1 < 2 < ... < omega < ... < omega+4`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum HierarchyClass {
    Finite(u32),
    /// `OmegaPlus(j)` is `omega + j`, with `j <= 4`.
    OmegaPlus(u8),
}

impl HierarchyClass {
    pub const OMEGA: HierarchyClass = HierarchyClass::OmegaPlus(0);

    pub fn is_finite(self) -> bool {
        matches!(self, HierarchyClass::Finite(_))
    }

    /// The representative type of the class.
    pub fn canonical_type(self) -> SimpleType {
        let nat = SimpleType::nat;
        let z = SimpleType::base;
        match self {
            HierarchyClass::Finite(0) => z(),
            HierarchyClass::Finite(k) => SimpleType::zeros(k as usize),
            HierarchyClass::OmegaPlus(0) => SimpleType::new(vec![nat(1), z()]),
            HierarchyClass::OmegaPlus(1) => SimpleType::new(vec![nat(2)]),
            HierarchyClass::OmegaPlus(2) => SimpleType::new(vec![nat(1), nat(1), z()]),
            HierarchyClass::OmegaPlus(3) => SimpleType::new(vec![nat(3), z()]),
            HierarchyClass::OmegaPlus(_) => {
                SimpleType::new(vec![SimpleType::zeros(2), z()])
            }
        }
    }

    /// The infinite classes, in order.
    pub fn infinite() -> [HierarchyClass; 5] {
        [0, 1, 2, 3, 4].map(HierarchyClass::OmegaPlus)
    }
}

impl fmt::Display for HierarchyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HierarchyClass::Finite(k) => write!(f, "{k}"),
            HierarchyClass::OmegaPlus(0) => f.write_str("omega"),
            HierarchyClass::OmegaPlus(j) => write!(f, "omega+{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a hierarchy class: `{0}`")]
pub struct BadClass(pub String);

impl FromStr for HierarchyClass {
    type Err = BadClass;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BadClass(s.to_string());
        if s == "omega" {
            return Ok(HierarchyClass::OMEGA);
        }
        if let Some(j) = s.strip_prefix("omega+") {
            let j: u8 = j.parse().map_err(|_| bad())?;
            return if j <= 4 { Ok(HierarchyClass::OmegaPlus(j)) } else { Err(bad()) };
        }
        s.parse().map(HierarchyClass::Finite).map_err(|_| bad())
    }
}

pub fn rank(ty: &SimpleType) -> usize {
    ty.rank()
}

pub fn is_fat(ty: &SimpleType) -> bool {
    ty.is_fat()
}

pub fn is_large(ty: &SimpleType) -> bool {
    ty.is_large()
}

pub fn is_inhabited(ty: &SimpleType) -> bool {
    ty.is_inhabited()
}

/// The hierarchy class of a type.
pub fn hierarchy_class(ty: &SimpleType) -> HierarchyClass {
    if !ty.is_inhabited() {
        return HierarchyClass::Finite(0);
    }
    if ty.is_large() {
        return HierarchyClass::OmegaPlus(4);
    }
    let positive = ty.components().iter().filter(|c| c.rank() >= 1).count();
    match ty.rank() {
        1 => HierarchyClass::Finite(ty.arity() as u32),
        2 if positive == 1 => HierarchyClass::OmegaPlus(0),
        3 if positive == 1 => HierarchyClass::OmegaPlus(1),
        2 | 3 => HierarchyClass::OmegaPlus(2),
        _ => HierarchyClass::OmegaPlus(3),
    }
}

/// The first closed inhabitant in enumeration order.
pub fn smallest_inhabitant(ty: &SimpleType) -> Option<Term> {
    smallest_inhabitant_in(&Context::empty(), ty)
}

/// The first inhabitant of `ty` over `ctx` in enumeration order, if any.
pub fn smallest_inhabitant_in(ctx: &Context, ty: &SimpleType) -> Option<Term> {
    let mut closed_over = ctx.types();
    closed_over.extend(ty.components().iter().cloned());
    if !SimpleType::new(closed_over).is_inhabited() {
        return None;
    }
    let mut en = Enumerator::new(ctx.clone());
    let mut size = 0;
    loop {
        if let Some(t) = en.smallest(ty, size) {
            return Some(t);
        }
        size += 4;
    }
}

/// One step of derivation: bind the component context of component
/// `component` of the variable at position `var`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DerivativeStep {
    pub var: usize,
    pub component: usize,
}

/// The names given to variables introduced by derivation.
fn derived_base(ty: &SimpleType) -> &'static str {
    match ty.rank() {
        0 => "d",
        1 => "f",
        _ => "G",
    }
}

/// Applies one derivation step, naming new variables freshly.
pub fn derive(ctx: &Context, step: DerivativeStep) -> Option<Context> {
    let (_, ty) = ctx.entries().get(step.var)?;
    let comp = ty.components().get(step.component)?;
    let mut out = ctx.clone();
    for c in comp.components() {
        out.push_fresh(derived_base(c), c.clone());
    }
    Some(out)
}

/// All derivation steps available in `ctx`, by position then component.
pub fn derivative_steps(ctx: &Context) -> Vec<DerivativeStep> {
    ctx.entries()
        .iter()
        .enumerate()
        .flat_map(|(var, (_, ty))| {
            (0..ty.arity()).map(move |component| DerivativeStep { var, component })
        })
        .collect()
}

/// The direct derivatives `ctx, Gamma_i` for `a : [[Gamma_1],...,[Gamma_k]]` in `ctx`.
pub fn direct_derivatives(ctx: &Context) -> Vec<Context> {
    derivative_steps(ctx)
        .into_iter()
        .filter_map(|s| derive(ctx, s))
        .collect()
}

/// `ctx` and its derivatives of depth at most `depth`, without repeats of
/// the same type multiset.
pub fn derivatives_up_to(ctx: &Context, depth: usize) -> Vec<Context> {
    let mut seen = std::collections::HashSet::new();
    let mut out = vec![ctx.clone()];
    seen.insert(ctx.signature());
    let mut frontier = vec![ctx.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for c in &frontier {
            for d in direct_derivatives(c) {
                if seen.insert(d.signature()) {
                    out.push(d.clone());
                    next.push(d);
                }
            }
        }
        frontier = next;
    }
    out
}

/// The reference corpus: the canonical types of every infinite class,
/// `0` and `[0^k]` for `k <= 6`, and six mixed types.
pub fn corpus() -> Vec<SimpleType> {
    let mut out: Vec<SimpleType> = (0..=6).map(|k| HierarchyClass::Finite(k).canonical_type()).collect();
    out.extend(HierarchyClass::infinite().map(HierarchyClass::canonical_type));
    out.extend(
        ["[1,0,0]", "[1,1,1,0]", "[0,[2]]", "[0,[1,0]]", "[2,0]", "[[0,0],0,0]"]
            .iter()
            .map(|s| crate::syntax::parse_type(s).expect("corpus type")),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, parse_type};
    use crate::term::Name;

    fn class(s: &str) -> HierarchyClass {
        hierarchy_class(&parse_type(s).unwrap())
    }

    #[test]
    fn canonical_types_classify_to_themselves() {
        for k in 0..7 {
            let c = HierarchyClass::Finite(k);
            assert_eq!(hierarchy_class(&c.canonical_type()), c);
        }
        for c in HierarchyClass::infinite() {
            assert_eq!(hierarchy_class(&c.canonical_type()), c);
        }
    }

    #[test]
    fn corpus_classes() {
        assert_eq!(class("[1,0,0]"), HierarchyClass::OmegaPlus(0));
        assert_eq!(class("[1,1,1,0]"), HierarchyClass::OmegaPlus(2));
        assert_eq!(class("[0,[2]]"), HierarchyClass::OmegaPlus(3));
        assert_eq!(class("[0,[1,0]]"), HierarchyClass::OmegaPlus(4));
        assert_eq!(class("[2,0]"), HierarchyClass::OmegaPlus(1));
        assert_eq!(class("[[0,0],0,0]"), HierarchyClass::OmegaPlus(4));
        assert_eq!(class("[0,0,0,0]"), HierarchyClass::Finite(4));
        assert_eq!(class("[1,1]"), HierarchyClass::Finite(0));
        assert_eq!(class("1"), HierarchyClass::Finite(1));
    }

    #[test]
    fn rank_two_and_three_mixed() {
        // one component of rank >= 1 at rank 3, one at rank 2: omega+2
        assert_eq!(class("[2,1,0]"), HierarchyClass::OmegaPlus(2));
        assert_eq!(class("[2,2]"), HierarchyClass::OmegaPlus(2));
        assert_eq!(class("[[0,0,0],0]"), HierarchyClass::OmegaPlus(4));
        assert_eq!(class("[[[0,0,0]]]"), HierarchyClass::OmegaPlus(1));
    }

    #[test]
    fn class_order_and_names() {
        assert!(HierarchyClass::Finite(100) < HierarchyClass::OMEGA);
        assert!(HierarchyClass::OmegaPlus(1) < HierarchyClass::OmegaPlus(2));
        for c in HierarchyClass::infinite() {
            assert_eq!(c.to_string().parse::<HierarchyClass>().unwrap(), c);
        }
        assert_eq!(HierarchyClass::OmegaPlus(3).to_string(), "omega+3");
        assert!("omega+5".parse::<HierarchyClass>().is_err());
    }

    #[test]
    fn smallest_inhabitants() {
        let t = |s: &str| smallest_inhabitant(&parse_type(s).unwrap());
        assert_eq!(t("[1,0]"), Some(parse_term(r"\f:1. \c:0. c").unwrap()));
        assert_eq!(t("[2]"), Some(parse_term(r"\F:2. F (\x:0. x)").unwrap()));
        assert_eq!(t("0"), None);
        assert_eq!(t("[1,1]"), None);
    }

    #[test]
    fn derivatives_of_numeral_context() {
        let ctx = Context::new(vec![(Name::new("x"), SimpleType::base()), (Name::new("f"), SimpleType::nat(1))]).unwrap();
        assert_eq!(direct_derivatives(&ctx), vec![ctx.clone()]);
    }

    #[test]
    fn derivatives_of_three() {
        let ctx = Context::numbered("p", &[SimpleType::nat(3)]);
        let ds = direct_derivatives(&ctx);
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].types(), vec![SimpleType::nat(3), SimpleType::nat(1)]);
        let deep = derivatives_up_to(&ctx, 2);
        assert_eq!(deep.len(), 3);
    }
}
