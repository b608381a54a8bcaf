//! JSON document formats for covers, orbifold structures and bundles.
//!
//! Permutations are written as lists of cycles of 0-based points with fixed
//! points omitted. Branch points are listed in product-relation order.
//! Fractions are `{num, den}` integer pairs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::blocks::BlockSystem;
use crate::cover::{CoverData, MonodromyCover, PointId};
use crate::error::{Error, Result};
use crate::orbifold::{IntermediateCoverReport, OrbifoldStructure};
use crate::parabolic::{
    Namespace, ParabolicLineBundle, Rational, SplitParabolicBundle, Weight, WeightProfile,
};
use crate::perm::Permutation;

pub type Cycles = Vec<Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchEntry {
    pub point: String,
    pub perm: Cycles,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDocument {
    pub degree: usize,
    pub base_genus: usize,
    pub branch: Vec<BranchEntry>,
    #[serde(default)]
    pub handles: Vec<Cycles>,
}

/// Structural problems in a document that prevent building the data at all
/// (as opposed to data that builds but violates an invariant).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed document: {0}")]
pub struct MalformedDocument(pub String);

fn perm_from_cycles(
    degree: usize,
    cycles: &Cycles,
    what: &str,
) -> Result<Permutation, MalformedDocument> {
    Permutation::from_cycles(degree, cycles).map_err(|e| MalformedDocument(format!("{what}: {e}")))
}

fn canonical_cycles(p: &Permutation) -> Cycles {
    p.nontrivial_cycles()
}

impl CoverDocument {
    pub fn to_cover_data(&self) -> Result<CoverData, MalformedDocument> {
        let branch = self
            .branch
            .iter()
            .map(|b| {
                let point =
                    PointId::new(b.point.clone()).map_err(|e| MalformedDocument(e.to_string()))?;
                let perm =
                    perm_from_cycles(self.degree, &b.perm, &format!("branch point {}", b.point))?;
                Ok((point, perm))
            })
            .collect::<Result<Vec<_>, MalformedDocument>>()?;
        let handles = self
            .handles
            .iter()
            .enumerate()
            .map(|(k, h)| perm_from_cycles(self.degree, h, &format!("handle {k}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CoverData {
            degree: self.degree,
            base_genus: self.base_genus,
            branch,
            handles,
        })
    }

    pub fn from_cover(cover: &MonodromyCover) -> Self {
        CoverDocument {
            degree: cover.degree(),
            base_genus: cover.base_genus(),
            branch: cover
                .branch()
                .iter()
                .map(|(x, s)| BranchEntry {
                    point: x.to_string(),
                    perm: canonical_cycles(s),
                })
                .collect(),
            handles: cover.handles().iter().map(canonical_cycles).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mark {
    pub point: String,
    #[serde(rename = "N")]
    pub n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbifoldDocument {
    pub marked: Vec<Mark>,
}

impl OrbifoldDocument {
    pub fn to_orbifold(&self) -> Result<OrbifoldStructure> {
        let marks = self
            .marked
            .iter()
            .map(|m| Ok((PointId::new(m.point.clone())?, m.n)))
            .collect::<Result<Vec<_>>>()?;
        OrbifoldStructure::new(marks)
    }

    pub fn from_orbifold(o: &OrbifoldStructure) -> Self {
        OrbifoldDocument {
            marked: o
                .marked()
                .iter()
                .map(|(x, &n)| Mark {
                    point: x.to_string(),
                    n,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl From<Rational> for Fraction {
    fn from(r: Rational) -> Self {
        Fraction {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointWeight {
    pub point: String,
    pub num: i64,
    pub den: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineDocument {
    pub deg: i64,
    #[serde(default)]
    pub weights: Vec<PointWeight>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum BundleDocument {
    Line(LineDocument),
    Split(Vec<LineDocument>),
}

impl LineDocument {
    pub fn to_line(&self, namespace: Namespace) -> Result<ParabolicLineBundle> {
        let mut weights = BTreeMap::new();
        for pw in &self.weights {
            let x = PointId::new(pw.point.clone())?;
            let w = Weight::from_fraction(pw.num, pw.den)?;
            if weights.insert(x.clone(), w).is_some() {
                return Err(Error::InvalidProfile(format!("weight at {x} given twice")));
            }
        }
        Ok(ParabolicLineBundle::new(namespace, self.deg, weights))
    }

    pub fn from_line(line: &ParabolicLineBundle) -> Self {
        LineDocument {
            deg: line.deg(),
            weights: line
                .weights()
                .iter()
                .map(|(x, w)| PointWeight {
                    point: x.to_string(),
                    num: *w.value().numer(),
                    den: *w.value().denom(),
                })
                .collect(),
        }
    }
}

impl BundleDocument {
    pub fn to_bundle(&self, namespace: Namespace) -> Result<SplitParabolicBundle> {
        let lines = match self {
            BundleDocument::Line(l) => vec![l.to_line(namespace)?],
            BundleDocument::Split(ls) => ls
                .iter()
                .map(|l| l.to_line(namespace))
                .collect::<Result<Vec<_>>>()?,
        };
        SplitParabolicBundle::new(lines)
    }

    /// A single summand is written as `line`, anything else as `split`.
    pub fn from_bundle(bundle: &SplitParabolicBundle) -> Self {
        match bundle.summands() {
            [one] => BundleDocument::Line(LineDocument::from_line(one)),
            many => BundleDocument::Split(many.iter().map(LineDocument::from_line).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMultiplicity {
    pub num: i64,
    pub den: i64,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointProfile {
    pub point: String,
    pub weights: Vec<WeightMultiplicity>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileDocument {
    pub rank: usize,
    pub deg: i64,
    pub weights: Vec<PointProfile>,
}

impl ProfileDocument {
    pub fn from_profile(p: &WeightProfile) -> Self {
        use crate::parabolic::ParabolicDegree;
        ProfileDocument {
            rank: p.rank(),
            deg: p.deg(),
            weights: p
                .points()
                .iter()
                .map(|(x, m)| PointProfile {
                    point: x.to_string(),
                    weights: m
                        .iter()
                        .map(|(w, &mult)| WeightMultiplicity {
                            num: *w.value().numer(),
                            den: *w.value().denom(),
                            mult,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSystemDocument {
    pub num_blocks: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl From<&BlockSystem> for BlockSystemDocument {
    fn from(s: &BlockSystem) -> Self {
        BlockSystemDocument {
            num_blocks: s.num_blocks(),
            blocks: s.blocks(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntermediateCoverDocument {
    pub degree_over_x: usize,
    pub blocks: Vec<Vec<usize>>,
    pub etale: bool,
    pub ramification: BTreeMap<String, Vec<usize>>,
}

impl From<&IntermediateCoverReport> for IntermediateCoverDocument {
    fn from(r: &IntermediateCoverReport) -> Self {
        IntermediateCoverDocument {
            degree_over_x: r.degree_over_x,
            blocks: r.system.blocks(),
            etale: r.etale,
            ramification: r
                .ramification
                .iter()
                .map(|(x, l)| (x.to_string(), l.clone()))
                .collect(),
        }
    }
}
