//! Branched covers `f: Y -> X` of curves given by monodromy data.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{is_transitive, Permutation};

/// Label of a point on a curve, e.g. `"0"`, `"infty"`, `"p1"`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PointId(String);

impl PointId {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::InvalidPoint(label));
        }
        Ok(PointId(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for PointId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        PointId::new(s)
    }
}

impl From<PointId> for String {
    fn from(p: PointId) -> String {
        p.0
    }
}

impl fmt::Debug for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A point of `Y` over `base`: the one corresponding to the `cycle`-th cycle
/// of the local monodromy, cycles ordered by their smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberPointId {
    pub base: PointId,
    pub cycle: usize,
}

impl FiberPointId {
    /// The label used for this point in the `Y` namespace, `"<x>#<c>"`.
    pub fn label(&self) -> PointId {
        PointId(format!("{}#{}", self.base, self.cycle))
    }
}

impl fmt::Display for FiberPointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.base, self.cycle)
    }
}

/// Unvalidated monodromy data. `branch` order is the order used in the
/// product relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverData {
    pub degree: usize,
    pub base_genus: usize,
    pub branch: Vec<(PointId, Permutation)>,
    pub handles: Vec<Permutation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ZeroDegree,
    DegreeMismatch { location: String, found: usize },
    HandleCount { expected: usize, found: usize },
    DuplicatePoint(PointId),
    IdentityBranch(PointId),
    ProductRelation,
    NotTransitive,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroDegree => f.write_str("degree must be positive"),
            Violation::DegreeMismatch { location, found } => {
                write!(f, "degree mismatch: {location} has degree {found}")
            }
            Violation::HandleCount { expected, found } => write!(
                f,
                "handle count mismatch: expected {expected} handle permutations, found {found}"
            ),
            Violation::DuplicatePoint(p) => write!(f, "branch point {p} listed twice"),
            Violation::IdentityBranch(p) => {
                write!(f, "identity permutation listed as branch point {p}")
            }
            Violation::ProductRelation => f.write_str("product relation fails"),
            Violation::NotTransitive => f.write_str("action not transitive (Y reducible)"),
        }
    }
}

/// Every invariant a [`CoverData`] violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A validated cover: the product relation holds, the monodromy group is
/// transitive, and every listed branch permutation is nontrivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyCover {
    data: CoverData,
}

pub fn validate_cover(data: CoverData) -> Result<MonodromyCover, ValidationReport> {
    let mut violations = Vec::new();
    let d = data.degree;
    if d == 0 {
        violations.push(Violation::ZeroDegree);
    }
    if data.handles.len() != 2 * data.base_genus {
        violations.push(Violation::HandleCount {
            expected: 2 * data.base_genus,
            found: data.handles.len(),
        });
    }
    let mut degrees_ok = d > 0;
    for (k, h) in data.handles.iter().enumerate() {
        if h.degree() != d {
            degrees_ok = false;
            violations.push(Violation::DegreeMismatch {
                location: format!("handle {k}"),
                found: h.degree(),
            });
        }
    }
    let mut seen = HashSet::new();
    for (x, sigma) in &data.branch {
        if !seen.insert(x) {
            violations.push(Violation::DuplicatePoint(x.clone()));
        }
        if sigma.degree() != d {
            degrees_ok = false;
            violations.push(Violation::DegreeMismatch {
                location: format!("branch point {x}"),
                found: sigma.degree(),
            });
        } else if sigma.is_identity() {
            violations.push(Violation::IdentityBranch(x.clone()));
        }
    }
    if degrees_ok {
        if !product_relation_holds(&data) {
            violations.push(Violation::ProductRelation);
        }
        let gens: Vec<Permutation> = generators_of(&data);
        if !is_transitive(&gens, d) {
            violations.push(Violation::NotTransitive);
        }
    }
    if violations.is_empty() {
        Ok(MonodromyCover { data })
    } else {
        Err(ValidationReport { violations })
    }
}

fn generators_of(data: &CoverData) -> Vec<Permutation> {
    data.handles
        .iter()
        .chain(data.branch.iter().map(|(_, s)| s))
        .cloned()
        .collect()
}

/// Degrees must already agree.
fn product_relation_holds(data: &CoverData) -> bool {
    let mut acc = Permutation::identity(data.degree);
    for pair in data.handles.chunks(2) {
        if let [a, b] = pair {
            acc = acc
                .compose(&a.commutator(b).expect("degrees checked"))
                .expect("degrees checked");
        }
    }
    for (_, sigma) in &data.branch {
        acc = acc.compose(sigma).expect("degrees checked");
    }
    acc.is_identity()
}

impl MonodromyCover {
    pub fn new(data: CoverData) -> Result<Self> {
        validate_cover(data).map_err(Error::InvalidCover)
    }

    pub fn degree(&self) -> usize {
        self.data.degree
    }

    pub fn base_genus(&self) -> usize {
        self.data.base_genus
    }

    pub fn branch(&self) -> &[(PointId, Permutation)] {
        &self.data.branch
    }

    pub fn handles(&self) -> &[Permutation] {
        &self.data.handles
    }

    pub fn data(&self) -> &CoverData {
        &self.data
    }

    /// Handle permutations followed by branch permutations.
    pub fn generators(&self) -> Vec<Permutation> {
        generators_of(&self.data)
    }

    /// Local monodromy at `x`; the identity when `x` is not a branch point.
    pub fn monodromy_at(&self, x: &PointId) -> Permutation {
        self.data
            .branch
            .iter()
            .find(|(p, _)| p == x)
            .map(|(_, s)| s.clone())
            .unwrap_or_else(|| Permutation::identity(self.degree()))
    }

    pub fn branch_locus(&self) -> BTreeSet<PointId> {
        self.data.branch.iter().map(|(p, _)| p.clone()).collect()
    }

    /// Multiplicities of `f` at the points over `x`, descending.
    pub fn ramification_profile(&self, x: &PointId) -> Vec<usize> {
        self.monodromy_at(x).cycle_type()
    }

    /// Points of `Y` over `x` with their multiplicities.
    pub fn fiber(&self, x: &PointId) -> Vec<(FiberPointId, usize)> {
        self.monodromy_at(x)
            .cycles()
            .iter()
            .enumerate()
            .map(|(c, cycle)| {
                (
                    FiberPointId {
                        base: x.clone(),
                        cycle: c,
                    },
                    cycle.len(),
                )
            })
            .collect()
    }

    /// Total ramification `sum (e - 1)` over all points of `Y`.
    pub fn ramification_degree(&self) -> usize {
        self.data
            .branch
            .iter()
            .map(|(_, s)| self.degree() - s.cycles().len())
            .sum()
    }

    /// Genus of `Y` by Riemann-Hurwitz.
    pub fn genus_of_y(&self) -> Result<usize> {
        let d = self.degree() as i64;
        let twice = d * (2 * self.base_genus() as i64 - 2) + self.ramification_degree() as i64;
        if twice % 2 != 0 || twice < -2 {
            return Err(Error::BadGenus(twice));
        }
        Ok(((twice + 2) / 2) as usize)
    }
}
