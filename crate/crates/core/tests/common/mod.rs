//! Kernel law instances shared by the property tests and the acceptance run.

#![allow(dead_code)]

use statman_core::enumerate::{enumerate_closed, enumerate_substitutions};
use statman_core::normalize::{beta_eta_eq, eta_reduce, lnf_at};
use statman_core::subst::{bohm_transform, compose, extend_substitution};
use statman_core::syntax::parse_type;
use statman_core::{Context, Name, SimpleType, Substitution, Term};

fn ctx(entries: &[(&str, &str)]) -> Context {
    Context::new(
        entries
            .iter()
            .map(|(n, t)| (Name::new(n), parse_type(t).unwrap()))
            .collect(),
    )
    .unwrap()
}

/// Contexts the instances range over.
pub fn contexts() -> Vec<Context> {
    vec![
        ctx(&[("f", "1"), ("c", "0")]),
        ctx(&[("F", "2")]),
        ctx(&[("f", "1"), ("g", "1"), ("c", "0")]),
        ctx(&[("b", "[0,0]"), ("c", "0")]),
        ctx(&[("x", "0"), ("y", "0")]),
    ]
}

/// One law instance: `m` over the source of `rho`, `rho` followed by `sigma`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub m: Term,
    pub rho: Substitution,
    pub sigma: Substitution,
}

/// Enumerated pools: for each pair of contexts, the substitutions between
/// them, and for each context, the closed inhabitants of its type.
pub struct Pools {
    pub ctxs: Vec<Context>,
    pub substs: Vec<Vec<Vec<Substitution>>>,
    pub terms: Vec<Vec<Term>>,
}

impl Pools {
    pub fn new(subst_bound: usize, term_bound: usize) -> Pools {
        let ctxs = contexts();
        let substs = ctxs
            .iter()
            .map(|a| ctxs.iter().map(|b| enumerate_substitutions(a, b, subst_bound)).collect())
            .collect();
        let terms = ctxs.iter().map(|c| enumerate_closed(&c.as_type(), term_bound)).collect();
        Pools { ctxs, substs, terms }
    }

    /// The instance picked by the given indices, reduced modulo pool sizes.
    pub fn pick(&self, a: usize, b: usize, c: usize, i: usize, j: usize, k: usize) -> Option<Instance> {
        let n = self.ctxs.len();
        let (a, b, c) = (a % n, b % n, c % n);
        let terms = &self.terms[a];
        let rhos = &self.substs[a][b];
        let sigmas = &self.substs[b][c];
        if terms.is_empty() || rhos.is_empty() || sigmas.is_empty() {
            return None;
        }
        Some(Instance {
            m: terms[i % terms.len()].clone(),
            rho: rhos[j % rhos.len()].clone(),
            sigma: sigmas[k % sigmas.len()].clone(),
        })
    }

    /// `count` instances spread evenly over the pools.
    pub fn instances(&self, count: usize) -> Vec<Instance> {
        let n = self.ctxs.len();
        let mut out = Vec::with_capacity(count);
        let mut step = 0usize;
        while out.len() < count {
            let s = step;
            step += 1;
            let (a, b, c) = (s % n, (s / n) % n, (s / (n * n)) % n);
            let r = s / (n * n * n);
            if let Some(inst) = self.pick(a, b, c, r * 7 + s, r * 13 + s / 3, r * 31 + s / 5) {
                out.push(inst);
            }
            if step > count * 1000 {
                break;
            }
        }
        out
    }
}

/// Checks every kernel law on one instance.
pub fn check_laws(inst: &Instance) -> Result<(), String> {
    let Instance { m, rho, sigma } = inst;
    let base = SimpleType::base();
    let err = |e: statman_core::LambdaError| e.to_string();

    // lnf is idempotent and undoes eta reduction.
    let body = Term::apps(m.clone(), rho.terms().iter().cloned());
    let once = lnf_at(&body, &base, rho.target()).map_err(err)?;
    let twice = lnf_at(&once, &base, rho.target()).map_err(err)?;
    if once != twice {
        return Err(format!("lnf not idempotent on {body}"));
    }
    let ty = rho.source().as_type();
    let short = eta_reduce(m);
    if lnf_at(&short, &ty, &Context::empty()).map_err(err)? != *m {
        return Err(format!("eta round trip fails on {m}"));
    }

    // The Böhm term applied to m is convertible to the transform of m.
    let image = bohm_transform(rho, m).map_err(err)?;
    let applied = Term::app(rho.bohm_term(), m.clone());
    if !beta_eta_eq(&applied, &image, &Context::empty()).map_err(err)? {
        return Err(format!("{} {m} is not {image}", rho.bohm_term()));
    }
    if !beta_eta_eq(&image, &applied, &Context::empty()).map_err(err)? {
        return Err("convertibility is not symmetric".into());
    }

    // Composition is functorial on transforms.
    let composed = compose(sigma, rho).map_err(err)?;
    let left = bohm_transform(&composed, m).map_err(err)?;
    let right = bohm_transform(sigma, &image).map_err(err)?;
    if left != right {
        return Err(format!("(sigma . rho)^ {m} = {left}, but sigma^(rho^ {m}) = {right}"));
    }
    let id = Substitution::identity(rho.source().clone());
    if compose(rho, &id).map_err(err)? != *rho {
        return Err("identity is not neutral".into());
    }

    // Extending twice is extending by the concatenation.
    let x1 = Context::numbered("u", &[SimpleType::nat(1)]);
    let x2 = Context::numbered("v", &[SimpleType::base(), SimpleType::nat(2)]);
    let nested = extend_substitution(&extend_substitution(rho, &x1).map_err(err)?, &x2).map_err(err)?;
    let flat = extend_substitution(rho, &x2.concat(&x1).map_err(|e| e.to_string())?).map_err(err)?;
    if nested != flat {
        return Err(format!("extension law fails for {rho}"));
    }
    Ok(())
}
