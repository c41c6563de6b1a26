//! JSON variety description files.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{parse_divisor, parse_monomial, ConeDescriptor, DivisorClass, Kappa, Monomial, VarietyData, VarietyParts};
use crate::error::{Error, Result};

/// On-disk form of a [`VarietyData`]. Monomial keys use caret exponents and
/// space separation (`"a b^3"`); the empty monomial is `"1"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyDescription {
    pub name: String,
    pub dim: usize,
    pub generators: Vec<String>,
    pub intersections: BTreeMap<String, i64>,
    pub canonical: Vec<i64>,
    #[serde(default)]
    pub c2_pairings: BTreeMap<String, i64>,
    pub hodge: Vec<i64>,
    pub nef_cone: ConeDescriptor,
    #[serde(default, rename = "kappa_X")]
    pub kappa_x: Option<Kappa>,
    /// Polarization (divisor syntax) -> twist `a` -> `κ(K_X + a L)`.
    #[serde(default)]
    pub kappa_adjoint: BTreeMap<String, BTreeMap<u32, Kappa>>,
    #[serde(default)]
    pub oracle: Option<String>,
    /// Unchecked declaration that the variety has only isolated terminal
    /// Gorenstein singularities.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub sre_declared: bool,
}

fn collect_monomials(
    generators: &[String],
    raw: &BTreeMap<String, i64>,
    what: &str,
) -> Result<BTreeMap<Monomial, i64>> {
    let mut out: BTreeMap<Monomial, (String, i64)> = BTreeMap::new();
    for (key, &value) in raw {
        let mono = parse_monomial(generators, key)?;
        if let Some((other, prev)) = out.get(&mono) {
            if *prev != value {
                return Err(Error::InvalidInput(format!(
                    "asymmetric {what}: `{other}` = {prev} but `{key}` = {value}"
                )));
            }
        }
        out.insert(mono, (key.clone(), value));
    }
    Ok(out.into_iter().map(|(m, (_, v))| (m, v)).collect())
}

impl VarietyDescription {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            let full = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            Error::Parse {
                line: e.line(),
                column: e.column(),
                message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
            }
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("description serializes")
    }

    pub fn into_variety(self) -> Result<VarietyData> {
        let g = &self.generators;
        let mut kappa_adjoint = BTreeMap::new();
        for (expr, twists) in self.kappa_adjoint {
            let l: DivisorClass = parse_divisor(g, None, &expr)?;
            kappa_adjoint.insert(l, twists);
        }
        VarietyData::assemble(VarietyParts {
            intersection_form: collect_monomials(g, &self.intersections, "intersection form")?,
            c2_pairings: collect_monomials(g, &self.c2_pairings, "c2 pairings")?,
            canonical: DivisorClass(self.canonical),
            oracle: self.oracle.as_deref().map(str::parse).transpose()?,
            name: self.name,
            dim: self.dim,
            generators: self.generators,
            hodge: self.hodge,
            nef_cone: self.nef_cone,
            kappa_x: self.kappa_x,
            kappa_adjoint,
            sre_declared: self.sre_declared,
        })
    }

    pub fn from_variety(v: &VarietyData) -> Self {
        let keyed = |t: &BTreeMap<Monomial, i64>| t.iter().map(|(m, x)| (v.monomial_key(m), *x)).collect();
        VarietyDescription {
            name: v.name.clone(),
            dim: v.dim,
            generators: v.generators.clone(),
            intersections: keyed(&v.intersection_form),
            canonical: v.canonical.0.clone(),
            c2_pairings: keyed(&v.c2_pairings),
            hodge: v.hodge.clone(),
            nef_cone: v.nef_cone,
            kappa_x: v.kappa_x,
            kappa_adjoint: v
                .kappa_adjoint
                .iter()
                .map(|(l, t)| (v.format_divisor(l), t.clone()))
                .collect(),
            oracle: v.oracle.map(|o| o.to_string()),
            sre_declared: v.sre_declared,
        }
    }
}

impl VarietyData {
    pub fn from_json(text: &str) -> Result<Self> {
        VarietyDescription::from_json(text)?.into_variety()
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        VarietyDescription::from_variety(self).to_json()
    }
}
