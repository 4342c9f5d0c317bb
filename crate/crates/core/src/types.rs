//! Simple types over a single base type.
//!
//! Every type is a list of component types `[C1,...,Cn]`, read as
//! `C1 -> ... -> Cn -> 0`. The base type is the empty list.

use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    components: Arc<[SimpleType]>,
}

impl SimpleType {
    pub fn base() -> Self {
        SimpleType {
            components: Arc::from(Vec::new()),
        }
    }

    pub fn new(components: Vec<SimpleType>) -> Self {
        SimpleType {
            components: Arc::from(components),
        }
    }

    /// The numeral type: `0 = []`, `n+1 = [n]`.
    pub fn nat(n: usize) -> Self {
        let mut t = Self::base();
        for _ in 0..n {
            t = Self::new(vec![t]);
        }
        t
    }

    /// `[0^k]`.
    pub fn zeros(k: usize) -> Self {
        Self::new(vec![Self::base(); k])
    }

    /// `[[C1,...,Cn]]`, the type with the single component `[C1,...,Cn]`.
    pub fn boxed(inner: Vec<SimpleType>) -> Self {
        Self::new(vec![Self::new(inner)])
    }

    pub fn components(&self) -> &[SimpleType] {
        &self.components
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn is_base(&self) -> bool {
        self.components.is_empty()
    }

    /// `A -> B`, which is `[A, B1, ..., Bm]` for `B = [B1, ..., Bm]`.
    pub fn arrow(from: SimpleType, to: &SimpleType) -> Self {
        let mut cs = Vec::with_capacity(to.arity() + 1);
        cs.push(from);
        cs.extend(to.components.iter().cloned());
        Self::new(cs)
    }

    /// Drops the first `n` components.
    pub fn drop_components(&self, n: usize) -> Self {
        Self::new(self.components[n..].to_vec())
    }

    pub fn rank(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.rank() + 1)
            .max()
            .unwrap_or(0)
    }

    /// Number of bracket nodes in the type tree.
    pub fn size(&self) -> usize {
        1 + self.components.iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn is_fat(&self) -> bool {
        self.arity() >= 2
    }

    /// A type is large if it has a fat component, or a component that has a
    /// large component.
    pub fn is_large(&self) -> bool {
        self.components
            .iter()
            .any(|c| c.is_fat() || c.components.iter().any(|d| d.is_large()))
    }

    pub fn is_small(&self) -> bool {
        !self.is_large()
    }

    /// A type is inhabited iff not every component is inhabited.
    pub fn is_inhabited(&self) -> bool {
        !self.components.iter().all(|c| c.is_inhabited())
    }

    /// The base type prints as `0`; everything else prints in bracket form.
    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_base() {
            return f.write_str("0");
        }
        f.write_str("[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            c.write(f)?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}

impl fmt::Debug for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> SimpleType {
        crate::syntax::parse_type(s).unwrap()
    }

    #[test]
    fn numerals() {
        assert_eq!(SimpleType::nat(0), SimpleType::base());
        assert_eq!(SimpleType::nat(3).to_string(), "[[[0]]]");
        assert_eq!(SimpleType::nat(3).rank(), 3);
    }

    #[test]
    fn rank_and_shape() {
        assert_eq!(t("[1,1,0]").rank(), 2);
        assert_eq!(t("[3,0]").rank(), 4);
        assert!(t("[[0,0],0]").is_large());
        assert!(t("[[0,0]]").is_large());
        assert!(t("[0,[1,0]]").is_large());
        assert!(!t("[0,[2]]").is_large());
        assert!(t("[[[[0,0]]]]").is_large());
        assert!(!t("[[[0,0]]]").is_large());
    }

    #[test]
    fn inhabitation() {
        assert!(!t("0").is_inhabited());
        assert!(t("1").is_inhabited());
        assert!(t("[1,0]").is_inhabited());
        assert!(!t("[1,1]").is_inhabited());
        assert!(!t("2").is_inhabited());
        assert!(t("[2]").is_inhabited());
        assert!(t("[0,0]").is_inhabited());
    }

    #[test]
    fn arrow_flattens() {
        assert_eq!(SimpleType::arrow(t("1"), &t("[0]")), t("[1,0]"));
        assert_eq!(t("1 -> 0 -> 0"), t("[1,0]"));
    }
}
