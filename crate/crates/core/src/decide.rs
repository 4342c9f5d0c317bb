//! Decision procedures for the three reducibility relations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classify::{hierarchy_class, HierarchyClass};
use crate::types::SimpleType;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// Head reducibility: one injective Böhm substitution.
    #[serde(rename = "h")]
    Head,
    /// Beta-eta reducibility: one injective closed term.
    #[serde(rename = "be")]
    BetaEta,
    /// Head reducibility by a finite jointly injective family.
    #[serde(rename = "hp")]
    HeadFamily,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Head => "h",
            Relation::BetaEta => "be",
            Relation::HeadFamily => "hp",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown relation `{0}` (expected h, be or hp)")]
pub struct BadRelation(pub String);

impl FromStr for Relation {
    type Err = BadRelation;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "h" => Ok(Relation::Head),
            "be" => Ok(Relation::BetaEta),
            "hp" => Ok(Relation::HeadFamily),
            _ => Err(BadRelation(s.to_string())),
        }
    }
}

fn omega_pair(a: HierarchyClass, b: HierarchyClass) -> bool {
    let low = |c| matches!(c, HierarchyClass::OmegaPlus(0) | HierarchyClass::OmegaPlus(1));
    low(a) && low(b)
}

pub fn decide_class(rel: Relation, a: HierarchyClass, b: HierarchyClass) -> bool {
    match rel {
        Relation::Head => a <= b,
        Relation::BetaEta => a <= b || omega_pair(a, b),
        Relation::HeadFamily => {
            a <= b
                || omega_pair(a, b)
                || matches!((a, b), (HierarchyClass::Finite(j), HierarchyClass::Finite(k)) if j >= 2 && k >= 2)
        }
    }
}

pub fn decide(rel: Relation, a: &SimpleType, b: &SimpleType) -> bool {
    decide_class(rel, hierarchy_class(a), hierarchy_class(b))
}

pub fn decide_h(a: &SimpleType, b: &SimpleType) -> bool {
    decide(Relation::Head, a, b)
}

pub fn decide_be(a: &SimpleType, b: &SimpleType) -> bool {
    decide(Relation::BetaEta, a, b)
}

pub fn decide_hp(a: &SimpleType, b: &SimpleType) -> bool {
    decide(Relation::HeadFamily, a, b)
}
