//! Session configuration: lattice, field, named descriptors and truncation.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exactnum::{QuadField, RawQuad};
use crate::lattice::{GramLattice, HVec, LatVec};
use crate::monoid::{MonoidDescriptor, DEFAULT_BOX_RADIUS};
use crate::vertexops::TruncationCtx;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub gram: [[i64; 2]; 2],
    #[serde(rename = "D", default = "one")]
    pub d: u64,
    #[serde(default)]
    pub names: Option<[String; 2]>,
}

fn one() -> u64 {
    1
}

/// A descriptor as written in JSON, before `D` is attached.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RawDescriptor {
    Cone { a1: LatVec, a2: LatVec },
    #[serde(rename = "type1")]
    TypeI { gamma: [RawQuad; 2], #[serde(default)] alpha: Option<LatVec> },
    #[serde(rename = "type2")]
    TypeII { gamma: [RawQuad; 2] },
    Generators { gens: Vec<LatVec> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TruncationSpec {
    pub max_degree: i64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct RawConfig {
    lattice: LatticeSpec,
    #[serde(default)]
    descriptors: BTreeMap<String, RawDescriptor>,
    truncation: TruncationSpec,
    #[serde(default = "default_radius")]
    box_radius: i64,
    #[serde(default)]
    seed: u64,
}

fn default_radius() -> i64 {
    DEFAULT_BOX_RADIUS
}

/// A validated session.
#[derive(Debug, Clone)]
pub struct SessionConfig {
    pub lattice: GramLattice,
    pub field: QuadField,
    pub descriptors: BTreeMap<String, MonoidDescriptor>,
    pub truncation: TruncationCtx,
    pub box_radius: i64,
    pub seed: u64,
}

impl SessionConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        let spec = &raw.lattice;
        let lattice = match &spec.names {
            Some(n) => GramLattice::with_names(spec.gram, n.clone()),
            None => GramLattice::new(spec.gram),
        }
        .map_err(|e| Error::Config(format!("lattice: {e}")))?;
        let field = QuadField::new(spec.d).map_err(|e| Error::Config(format!("D: {e}")))?;
        if raw.truncation.max_degree < 0 {
            return Err(Error::Config("truncation.maxDegree must be >= 0".into()));
        }
        if raw.box_radius < 1 {
            return Err(Error::Config("boxRadius must be >= 1".into()));
        }
        let mut descriptors = BTreeMap::new();
        for (name, d) in &raw.descriptors {
            let desc = build_descriptor(&lattice, &field, d).map_err(|e| Error::Config(format!("descriptor {name}: {e}")))?;
            descriptors.insert(name.clone(), desc);
        }
        Ok(SessionConfig {
            lattice,
            field,
            descriptors,
            truncation: TruncationCtx::new(raw.truncation.max_degree),
            box_radius: raw.box_radius,
            seed: raw.seed,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn descriptor(&self, name: &str) -> Result<&MonoidDescriptor> {
        self.descriptors.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.descriptors.keys().map(String::as_str).collect();
            Error::Usage(format!("unknown descriptor {name:?}; known: {}", known.join(", ")))
        })
    }

    /// The first type-II descriptor, in name order.
    pub fn first_type_ii(&self) -> Option<(&str, &MonoidDescriptor)> {
        self.descriptors.iter().find(|(_, d)| matches!(d, MonoidDescriptor::TypeII { .. })).map(|(k, d)| (k.as_str(), d))
    }

    pub fn hvec(&self, raw: &[RawQuad; 2]) -> HVec {
        HVec(self.field.from_raw(&raw[0]), self.field.from_raw(&raw[1]))
    }
}

pub fn build_descriptor(l: &GramLattice, field: &QuadField, d: &RawDescriptor) -> Result<MonoidDescriptor> {
    let hv = |g: &[RawQuad; 2]| HVec(field.from_raw(&g[0]), field.from_raw(&g[1]));
    let desc = match d {
        RawDescriptor::Cone { a1, a2 } => MonoidDescriptor::cone(*a1, *a2)?,
        RawDescriptor::TypeI { gamma, alpha: None } => MonoidDescriptor::type_i(l, hv(gamma))?,
        RawDescriptor::TypeI { gamma, alpha: Some(a) } => MonoidDescriptor::type_i_with_alpha(l, hv(gamma), *a)?,
        RawDescriptor::TypeII { gamma } => MonoidDescriptor::type_ii(l, hv(gamma))?,
        RawDescriptor::Generators { gens } => MonoidDescriptor::generators(gens.clone()),
    };
    desc.validate(l)?;
    Ok(desc)
}

pub const DIAG22: &str = include_str!("../configs/diag22.json");
pub const A2: &str = include_str!("../configs/a2.json");
