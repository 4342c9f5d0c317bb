//! Witness synthesis.
//!
//! Reductions are built between concrete contexts: a reduction from
//! `Gamma` to `Delta` is a substitution assigning to each variable of
//! `Gamma` a term over `Delta`, and witnesses `[Gamma] <= [Delta]`.
//! Every construction step is logged so that a certificate carries a
//! checkable derivation.

mod arith;
mod build;
mod lemmas;
mod pipelines;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decide::Relation;
use crate::normalize::LambdaError;
use crate::subst::{compose, Substitution};
use crate::term::{Context, Term};
use crate::types::SimpleType;

pub use arith::{
    cantor_pair_term, church, church_add, church_mul, decode_numeral, hplus_family, pair_term,
    pairing_bridge, pairing_value, separators,
};
pub use lemmas::{
    atomic_pair, congruence, derivative_lift, double_embed, embed, inner_permute, large_pairing,
    pair_cap, permute, product, recursion_cap, split, sum, sum_all, tuple_merge, word_reduction, AtomicPair,
    PairKind,
};
pub use pipelines::{canonical_chain, canonical_into, head_reduction, into_canonical, small_into_three, top, witness};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SynthError {
    #[error("{from} is not reducible to {to} under {relation}")]
    NotReducible {
        relation: Relation,
        from: SimpleType,
        to: SimpleType,
    },
    #[error("{{{0}}} does not embed into {{{1}}}")]
    NotSubcontext(Context, Context),
    #[error("step requires a strong reduction")]
    NotStrong,
    #[error("no atomic pair for {{{0}}}")]
    NotAtomicPair(Context),
    #[error("side condition fails: {0}")]
    SideConditionFails(String),
    #[error("not a derivative: {0}")]
    NotDerivative(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Lambda(#[from] LambdaError),
}

impl From<crate::term::DuplicateName> for SynthError {
    fn from(e: crate::term::DuplicateName) -> Self {
        SynthError::Lambda(e.into())
    }
}

/// What is known of a witness, weakest first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strength {
    /// A finite family that is jointly injective.
    Joint,
    /// A single injective closed term.
    Injective,
    /// An injective Böhm substitution.
    Head,
    /// Injective under every extension by fresh variables.
    Strong,
    /// The atomic condition holds.
    Atomic,
}

impl Strength {
    /// Chaining two steps. Atomic steps compose to a strong one.
    pub fn then(self, other: Strength) -> Strength {
        match (self, other) {
            (Strength::Atomic, Strength::Atomic) => Strength::Strong,
            (a, b) => a.min(b),
        }
    }
}

impl fmt::Display for Strength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strength::Joint => "joint",
            Strength::Injective => "injective",
            Strength::Head => "head",
            Strength::Strong => "strong",
            Strength::Atomic => "atomic",
        })
    }
}

/// Construction steps recorded in derivations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    Embed,
    Permute,
    InnerPermute,
    DoubleEmbed,
    Split,
    TupleMerge,
    RecursionCap,
    PairCap,
    FatPairing,
    WidePairing,
    WordReduction,
    Inhabitant,
    ZeroCollapse,
    NumeralEncoding,
    LayerEncoding,
    NumeralProjection,
    ConstantLift,
    TreeEncoding,
    Separator,
    NumeralFamily,
    PairingBridge,
    Congruence,
    DerivativeLift,
    Compose,
    Sum,
    Product,
    Family,
}

impl Lemma {
    pub const ALL: [Lemma; 27] = [
        Lemma::Embed,
        Lemma::Permute,
        Lemma::InnerPermute,
        Lemma::DoubleEmbed,
        Lemma::Split,
        Lemma::TupleMerge,
        Lemma::RecursionCap,
        Lemma::PairCap,
        Lemma::FatPairing,
        Lemma::WidePairing,
        Lemma::WordReduction,
        Lemma::Inhabitant,
        Lemma::ZeroCollapse,
        Lemma::NumeralEncoding,
        Lemma::LayerEncoding,
        Lemma::NumeralProjection,
        Lemma::ConstantLift,
        Lemma::TreeEncoding,
        Lemma::Separator,
        Lemma::NumeralFamily,
        Lemma::PairingBridge,
        Lemma::Congruence,
        Lemma::DerivativeLift,
        Lemma::Compose,
        Lemma::Sum,
        Lemma::Product,
        Lemma::Family,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::Embed => "embed",
            Lemma::Permute => "permute",
            Lemma::InnerPermute => "inner-permute",
            Lemma::DoubleEmbed => "double-embed",
            Lemma::Split => "split",
            Lemma::TupleMerge => "tuple-merge",
            Lemma::RecursionCap => "recursion-cap",
            Lemma::PairCap => "pair-cap",
            Lemma::FatPairing => "fat-pairing",
            Lemma::WidePairing => "wide-pairing",
            Lemma::WordReduction => "word-reduction",
            Lemma::Inhabitant => "inhabitant",
            Lemma::ZeroCollapse => "zero-collapse",
            Lemma::NumeralEncoding => "numeral-encoding",
            Lemma::LayerEncoding => "layer-encoding",
            Lemma::NumeralProjection => "numeral-projection",
            Lemma::ConstantLift => "constant-lift",
            Lemma::TreeEncoding => "tree-encoding",
            Lemma::Separator => "separator",
            Lemma::NumeralFamily => "numeral-family",
            Lemma::PairingBridge => "pairing-bridge",
            Lemma::Congruence => "congruence",
            Lemma::DerivativeLift => "derivative-lift",
            Lemma::Compose => "compose",
            Lemma::Sum => "sum",
            Lemma::Product => "product",
            Lemma::Family => "family",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown lemma `{0}`")]
pub struct UnknownLemma(pub String);

impl FromStr for Lemma {
    type Err = UnknownLemma;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Lemma::ALL
            .iter()
            .copied()
            .find(|l| l.name() == s)
            .ok_or_else(|| UnknownLemma(s.to_string()))
    }
}

/// One derivation entry. Derivations are post-order: combining steps
/// (`compose`, `sum`, `product`, `congruence`, `derivative-lift`,
/// `family`) refer to the entries produced just before them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Step {
    pub lemma: Lemma,
    /// Number of earlier results consumed, for the n-ary steps.
    pub arity: usize,
    pub source: SimpleType,
    pub target: SimpleType,
}

impl Step {
    pub fn leaf(lemma: Lemma, source: SimpleType, target: SimpleType) -> Self {
        Step {
            lemma,
            arity: 0,
            source,
            target,
        }
    }
}

/// A substitution together with its strength and derivation.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub subst: Substitution,
    pub strength: Strength,
    pub steps: Vec<Step>,
}

impl Reduction {
    pub(crate) fn leaf(lemma: Lemma, subst: Substitution, strength: Strength) -> Self {
        let step = Step::leaf(lemma, subst.source().as_type(), subst.target().as_type());
        Reduction {
            subst,
            strength,
            steps: vec![step],
        }
    }

    pub fn source(&self) -> &Context {
        self.subst.source()
    }

    pub fn target(&self) -> &Context {
        self.subst.target()
    }

    pub fn source_type(&self) -> SimpleType {
        self.subst.source().as_type()
    }

    pub fn target_type(&self) -> SimpleType {
        self.subst.target().as_type()
    }

    /// This reduction followed by `next`; contexts are matched by position.
    pub fn then(self, next: Reduction) -> Result<Reduction, SynthError> {
        let next_subst = next.subst.with_source(self.subst.target().clone())?;
        let subst = compose(&next_subst, &self.subst)?;
        let mut steps = self.steps;
        steps.extend(next.steps);
        steps.push(Step {
            lemma: Lemma::Compose,
            arity: 2,
            source: subst.source().as_type(),
            target: subst.target().as_type(),
        });
        Ok(Reduction {
            subst,
            strength: self.strength.then(next.strength),
            steps,
        })
    }

    /// Same reduction with relabelled source and target contexts.
    pub fn relabel(self, source: Context, target: Context) -> Result<Reduction, SynthError> {
        let subst = self.subst.with_source(source)?.with_target(target)?;
        Ok(Reduction { subst, ..self })
    }
}

/// The witness part of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Substitution(Substitution),
    Term(Term),
    Family(Vec<Substitution>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub relation: Relation,
    pub strength: Strength,
    pub source: SimpleType,
    pub target: SimpleType,
    pub witness: Witness,
    pub derivation: Vec<Step>,
}

impl ReductionCertificate {
    /// Images of `m : source` under the witness, one per family member.
    pub fn images(&self, m: &Term) -> Result<Vec<Term>, LambdaError> {
        match &self.witness {
            Witness::Substitution(s) => Ok(vec![crate::subst::bohm_transform(s, m)?]),
            Witness::Term(r) => Ok(vec![crate::normalize::lnf_at(
                &Term::app(r.clone(), m.clone()),
                &self.target,
                &Context::empty(),
            )?]),
            Witness::Family(fs) => fs.iter().map(|s| crate::subst::bohm_transform(s, m)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strength_chaining() {
        assert_eq!(Strength::Atomic.then(Strength::Atomic), Strength::Strong);
        assert_eq!(Strength::Atomic.then(Strength::Strong), Strength::Strong);
        assert_eq!(Strength::Strong.then(Strength::Head), Strength::Head);
    }

    #[test]
    fn lemma_names_round_trip() {
        for l in Lemma::ALL {
            assert_eq!(l.name().parse::<Lemma>().unwrap(), l);
        }
    }
}
