//! Composition of genus computations for a general finite abelian extension:
//! per-prime parts are dispatched to the radical pipelines or the
//! Artin-Schreier-Witt pipeline, and the genus field is the product of the
//! per-part genus fields.

use crate::error::{Error, Result};
use crate::field::ord_mod;
use crate::group::Tower;
use crate::kummer::{genus_field_kummer, KummerComponent, KummerGenusReport, KummerSpec};
use crate::nonkummer::{
    genus_field_nonkummer, NonKummerComponent, NonKummerGenusReport, NonKummerSpec,
};
use crate::poly::Poly;
use crate::radicand::Radicand;
use crate::witt::{genus_field_wittp, WittGenusReport, WittSpec};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

#[derive(Debug, Clone)]
pub enum AbelianPart {
    Kummer(KummerSpec),
    NonKummer(NonKummerSpec),
    Witt(WittSpec),
}

impl AbelianPart {
    /// The rational prime the part is attached to.
    pub fn prime(&self) -> u64 {
        match self {
            AbelianPart::Kummer(s) => s.l,
            AbelianPart::NonKummer(s) => s.l,
            AbelianPart::Witt(s) => s.field.p(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AbelianSpec {
    pub parts: Vec<AbelianPart>,
}

#[derive(Debug, Clone)]
pub enum PartReport {
    Kummer(KummerGenusReport),
    NonKummer(NonKummerGenusReport),
    Witt(WittGenusReport),
}

impl PartReport {
    pub fn generator_count(&self) -> usize {
        match self {
            PartReport::Kummer(r) => r.generators.len(),
            PartReport::NonKummer(r) => r.generators.len(),
            PartReport::Witt(r) => r.generators.len(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CompositeGenusReport {
    /// (attached prime, report) in input order.
    pub parts: Vec<(u64, PartReport)>,
}

impl CompositeGenusReport {
    pub fn generator_count(&self) -> usize {
        self.parts.iter().map(|(_, r)| r.generator_count()).sum()
    }
}

/// Convert Kummer-shaped data into orbit-exponent form over the constant
/// extension of degree w (embedding the unit part).
fn kummer_to_nonkummer(spec: &KummerSpec, w: usize) -> Result<NonKummerSpec> {
    let tower = Tower::new(spec.field.clone(), w)?;
    let mut components = Vec::new();
    for c in &spec.components {
        let rad = Radicand::from_poly(&spec.field, &c.d_poly)?;
        let le = crate::arith::pow_u64(spec.l, c.n_eps);
        let mut alphas = BTreeMap::new();
        for (p, &e) in rad.factors() {
            let a = e.rem_euclid(le as i64) as u64;
            if a != 0 {
                alphas.insert(p.clone(), a);
            }
        }
        components.push(NonKummerComponent {
            n_eps: c.n_eps,
            gamma: tower.emb().apply(&c.gamma),
            alphas,
        });
    }
    Ok(NonKummerSpec {
        field: spec.field.clone(),
        l: spec.l,
        n: spec.exponent(),
        components,
    })
}

/// Convert orbit-exponent data in the Kummer regime (w = 1) into radical
/// components over the base.
fn nonkummer_to_kummer(spec: &NonKummerSpec) -> Result<KummerSpec> {
    let mut components = Vec::new();
    for c in &spec.components {
        let mut d = Poly::one(&spec.field);
        for (p, &a) in &c.alphas {
            if a != 0 {
                d = d.mul(&spec.field, &p.pow(&spec.field, a));
            }
        }
        components.push(KummerComponent {
            n_eps: c.n_eps,
            gamma: c.gamma.clone(),
            d_poly: d,
        });
    }
    Ok(KummerSpec {
        field: spec.field.clone(),
        l: spec.l,
        components,
    })
}

/// Dispatch one part by the exponent-vs-constants rule: characteristic parts
/// run the Artin-Schreier-Witt pipeline, radical parts run the Kummer
/// pipeline when the exponent divides q - 1 and the constant-extension
/// pipeline otherwise.
pub fn dispatch_part(part: &AbelianPart) -> Result<PartReport> {
    match part {
        AbelianPart::Witt(s) => Ok(PartReport::Witt(genus_field_wittp(s)?)),
        AbelianPart::Kummer(s) => {
            s.validate_structure()?;
            let ln = crate::arith::pow_u64(s.l, s.exponent());
            if (s.field.order() - 1) % ln == 0 {
                Ok(PartReport::Kummer(genus_field_kummer(s)?))
            } else {
                let w = ord_mod(s.field.order(), ln)? as usize;
                let converted = kummer_to_nonkummer(s, w)?;
                Ok(PartReport::NonKummer(genus_field_nonkummer(&converted)?))
            }
        }
        AbelianPart::NonKummer(s) => {
            s.validate_structure()?;
            match genus_field_nonkummer(s) {
                Err(Error::UseKummerPipeline) => {
                    let converted = nonkummer_to_kummer(s)?;
                    Ok(PartReport::Kummer(genus_field_kummer(&converted)?))
                }
                other => Ok(PartReport::NonKummer(other?)),
            }
        }
    }
}

/// Genus field of the composite: every part is routed to its pipeline and
/// the outputs are returned labeled, in input order.
pub fn genus_field(spec: &AbelianSpec) -> Result<CompositeGenusReport> {
    if spec.parts.is_empty() {
        return Err(Error::MalformedSpec("no parts".into()));
    }
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    for part in &spec.parts {
        if !seen.insert(part.prime()) {
            return Err(Error::InvalidParameter(format!(
                "duplicate part prime {}",
                part.prime()
            )));
        }
    }
    let mut parts = Vec::new();
    for part in &spec.parts {
        parts.push((part.prime(), dispatch_part(part)?));
    }
    Ok(CompositeGenusReport { parts })
}
