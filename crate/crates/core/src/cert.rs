//! Certificate documents.
//!
//! Certificates are stored as JSON with types in bracket form and terms in
//! the surface term syntax, so that a document can be read and edited by
//! hand.

use serde::{Deserialize, Serialize};

use crate::decide::Relation;
use crate::normalize::LambdaError;
use crate::subst::Substitution;
use crate::synth::{Lemma, ReductionCertificate, Step, Strength, Witness};
use crate::syntax::{parse_term, parse_type, print_term, ParseError};
use crate::term::{Context, Name};
use crate::types::SimpleType;

#[derive(Debug, thiserror::Error)]
pub enum CertError {
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad syntax in certificate: {0}")]
    Parse(#[from] ParseError),
    #[error("ill-typed certificate: {0}")]
    Lambda(#[from] LambdaError),
}

#[derive(Serialize, Deserialize)]
struct VarDoc {
    name: String,
    #[serde(rename = "type")]
    ty: String,
}

#[derive(Serialize, Deserialize)]
struct SubstDoc {
    source: Vec<VarDoc>,
    target: Vec<VarDoc>,
    assignments: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum WitnessDoc {
    Substitution(SubstDoc),
    Term { term: String },
    Family { members: Vec<SubstDoc> },
}

#[derive(Serialize, Deserialize)]
struct StepDoc {
    lemma: Lemma,
    arity: usize,
    source: String,
    target: String,
}

#[derive(Serialize, Deserialize)]
struct CertDoc {
    relation: Relation,
    strength: Strength,
    source: String,
    target: String,
    witness: WitnessDoc,
    derivation: Vec<StepDoc>,
}

fn ctx_doc(c: &Context) -> Vec<VarDoc> {
    c.entries()
        .iter()
        .map(|(n, t)| VarDoc {
            name: n.to_string(),
            ty: t.to_string(),
        })
        .collect()
}

fn subst_doc(s: &Substitution) -> SubstDoc {
    SubstDoc {
        source: ctx_doc(s.source()),
        target: ctx_doc(s.target()),
        assignments: s.terms().iter().map(print_term).collect(),
    }
}

fn read_ctx(vs: &[VarDoc]) -> Result<Context, CertError> {
    let entries = vs
        .iter()
        .map(|v| Ok((Name::new(&v.name), parse_type(&v.ty)?)))
        .collect::<Result<Vec<_>, CertError>>()?;
    Ok(Context::new(entries).map_err(LambdaError::from)?)
}

fn read_subst(d: &SubstDoc) -> Result<Substitution, CertError> {
    let terms = d.assignments.iter().map(|s| parse_term(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(Substitution::new(read_ctx(&d.source)?, read_ctx(&d.target)?, terms)?)
}

fn type_of(s: &str) -> Result<SimpleType, CertError> {
    Ok(parse_type(s)?)
}

pub fn to_json(cert: &ReductionCertificate) -> String {
    let doc = CertDoc {
        relation: cert.relation,
        strength: cert.strength,
        source: cert.source.to_string(),
        target: cert.target.to_string(),
        witness: match &cert.witness {
            Witness::Substitution(s) => WitnessDoc::Substitution(subst_doc(s)),
            Witness::Term(t) => WitnessDoc::Term { term: print_term(t) },
            Witness::Family(fs) => WitnessDoc::Family {
                members: fs.iter().map(subst_doc).collect(),
            },
        },
        derivation: cert
            .derivation
            .iter()
            .map(|s| StepDoc {
                lemma: s.lemma,
                arity: s.arity,
                source: s.source.to_string(),
                target: s.target.to_string(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("documents always serialize")
}

/// Reads a certificate; terms are brought to long normal form.
pub fn from_json(text: &str) -> Result<ReductionCertificate, CertError> {
    let doc: CertDoc = serde_json::from_str(text)?;
    let witness = match &doc.witness {
        WitnessDoc::Substitution(s) => Witness::Substitution(read_subst(s)?),
        WitnessDoc::Term { term } => Witness::Term(parse_term(term)?),
        WitnessDoc::Family { members } => Witness::Family(members.iter().map(read_subst).collect::<Result<_, _>>()?),
    };
    let derivation = doc
        .derivation
        .iter()
        .map(|s| {
            Ok(Step {
                lemma: s.lemma,
                arity: s.arity,
                source: type_of(&s.source)?,
                target: type_of(&s.target)?,
            })
        })
        .collect::<Result<Vec<_>, CertError>>()?;
    Ok(ReductionCertificate {
        relation: doc.relation,
        strength: doc.strength,
        source: type_of(&doc.source)?,
        target: type_of(&doc.target)?,
        witness,
        derivation,
    })
}
