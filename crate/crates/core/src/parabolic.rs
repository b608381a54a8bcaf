//! Exact parabolic degree calculus for line-type and weight-profile data:
//! parabolic degree and slope, duals, tensor products of line bundles,
//! pullback along a cover, and the parabolic structure on `f_* O_Y`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::cover::{MonodromyCover, PointId};
use crate::error::{Error, Result};
use crate::orbifold::OrbifoldStructure;

pub type Rational = Ratio<i64>;

/// A parabolic weight `0 <= α < 1`, kept reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Rational);

impl Weight {
    pub fn new(value: Rational) -> Result<Self> {
        if value < Rational::zero() || value >= Rational::one() {
            return Err(Error::InvalidWeight {
                num: *value.numer(),
                den: *value.denom(),
            });
        }
        Ok(Weight(value))
    }

    /// `num/den` in any form; `den` must be nonzero.
    pub fn from_fraction(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidWeight { num, den });
        }
        Self::new(Rational::new(num, den))
    }

    pub fn zero() -> Self {
        Weight(Rational::zero())
    }

    pub fn value(self) -> Rational {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    /// Splits `t >= 0` into its integer part and a weight.
    fn split(t: Rational) -> (i64, Weight) {
        let floor = t.floor();
        (floor.to_integer(), Weight(t - floor))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which curve a bundle lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Namespace {
    /// The base curve `X`.
    Base,
    /// The covering curve `Y`; points are named `"<x>#<cycle>"`.
    Cover,
}

impl Namespace {
    fn name(self) -> &'static str {
        match self {
            Namespace::Base => "X",
            Namespace::Cover => "Y",
        }
    }
}

pub trait ParabolicDegree {
    fn rank(&self) -> usize;

    fn par_deg(&self) -> Rational;

    fn par_mu(&self) -> Rational {
        self.par_deg() / Rational::from_integer(self.rank() as i64)
    }
}

/// A parabolic line bundle. Points without an entry carry weight 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicLineBundle {
    deg: i64,
    weights: BTreeMap<PointId, Weight>,
    namespace: Namespace,
}

impl ParabolicLineBundle {
    pub fn new<I>(namespace: Namespace, deg: i64, weights: I) -> Self
    where
        I: IntoIterator<Item = (PointId, Weight)>,
    {
        let weights = weights.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        ParabolicLineBundle {
            deg,
            weights,
            namespace,
        }
    }

    pub fn trivial(namespace: Namespace) -> Self {
        Self::new(namespace, 0, [])
    }

    pub fn deg(&self) -> i64 {
        self.deg
    }

    pub fn namespace(&self) -> Namespace {
        self.namespace
    }

    /// Nonzero weights only.
    pub fn weights(&self) -> &BTreeMap<PointId, Weight> {
        &self.weights
    }

    pub fn weight_at(&self, x: &PointId) -> Weight {
        self.weights.get(x).copied().unwrap_or_else(Weight::zero)
    }
}

impl ParabolicDegree for ParabolicLineBundle {
    fn rank(&self) -> usize {
        1
    }

    fn par_deg(&self) -> Rational {
        self.weights
            .values()
            .fold(Rational::from_integer(self.deg), |acc, w| acc + w.value())
    }
}

/// A direct sum of parabolic line bundles on one curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitParabolicBundle {
    summands: Vec<ParabolicLineBundle>,
}

impl SplitParabolicBundle {
    pub fn new(summands: Vec<ParabolicLineBundle>) -> Result<Self> {
        let first = summands
            .first()
            .ok_or_else(|| Error::InvalidProfile("split bundle needs at least one summand".into()))?
            .namespace();
        if let Some(bad) = summands.iter().find(|s| s.namespace() != first) {
            return Err(Error::NamespaceMismatch {
                expected: first.name(),
                found: bad.namespace().name(),
            });
        }
        Ok(SplitParabolicBundle { summands })
    }

    pub fn summands(&self) -> &[ParabolicLineBundle] {
        &self.summands
    }

    pub fn namespace(&self) -> Namespace {
        self.summands[0].namespace()
    }

    /// Forgets the splitting, keeping rank, degree and weight multiplicities.
    pub fn to_profile(&self) -> WeightProfile {
        let rank = self.summands.len();
        let deg = self.summands.iter().map(|s| s.deg).sum();
        let mut points: BTreeMap<PointId, BTreeMap<Weight, usize>> = BTreeMap::new();
        for s in &self.summands {
            for x in s.weights.keys() {
                points.entry(x.clone()).or_default();
            }
        }
        for (x, multiset) in points.iter_mut() {
            for s in &self.summands {
                *multiset.entry(s.weight_at(x)).or_insert(0) += 1;
            }
        }
        WeightProfile::new(rank, deg, points).expect("multiplicities sum to the rank")
    }
}

impl ParabolicDegree for SplitParabolicBundle {
    fn rank(&self) -> usize {
        self.summands.len()
    }

    fn par_deg(&self) -> Rational {
        self.summands.iter().map(ParabolicDegree::par_deg).sum()
    }
}

/// Rank, degree and per-point weight multiplicities of a parabolic bundle.
///
/// Zero weights are stored with their multiplicity so each listed point's
/// multiplicities sum to the rank. Points whose weights are all zero are
/// dropped, which makes `==` a meaningful equality of parabolic data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile {
    rank: usize,
    deg: i64,
    points: BTreeMap<PointId, BTreeMap<Weight, usize>>,
}

impl WeightProfile {
    pub fn new(
        rank: usize,
        deg: i64,
        points: BTreeMap<PointId, BTreeMap<Weight, usize>>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidProfile("rank must be positive".into()));
        }
        let mut normalized = BTreeMap::new();
        for (x, mut multiset) in points {
            multiset.retain(|_, m| *m > 0);
            let total: usize = multiset.values().sum();
            if total != rank {
                return Err(Error::InvalidProfile(format!(
                    "multiplicities at {x} sum to {total}, expected rank {rank}"
                )));
            }
            if multiset.keys().any(|w| !w.is_zero()) {
                normalized.insert(x, multiset);
            }
        }
        Ok(WeightProfile {
            rank,
            deg,
            points: normalized,
        })
    }

    pub fn deg(&self) -> i64 {
        self.deg
    }

    pub fn points(&self) -> &BTreeMap<PointId, BTreeMap<Weight, usize>> {
        &self.points
    }

    /// Multiset at `x`; all zeros when `x` is unlisted.
    pub fn weights_at(&self, x: &PointId) -> BTreeMap<Weight, usize> {
        self.points
            .get(x)
            .cloned()
            .unwrap_or_else(|| BTreeMap::from([(Weight::zero(), self.rank)]))
    }
}

impl ParabolicDegree for WeightProfile {
    fn rank(&self) -> usize {
        self.rank
    }

    fn par_deg(&self) -> Rational {
        let weight_sum: Rational = self
            .points
            .values()
            .flat_map(|m| m.iter())
            .map(|(w, &mult)| w.value() * Rational::from_integer(mult as i64))
            .sum();
        Rational::from_integer(self.deg) + weight_sum
    }
}

/// The parabolic structure on `f_* O_Y`: rank `d`, weights `j/ℓ` for
/// `0 <= j < ℓ` from each cycle of length `ℓ` over a branch point, and
/// degree `χ(O_Y) - d χ(O_X)`.
pub fn direct_image_structure(cover: &MonodromyCover) -> Result<WeightProfile> {
    let d = cover.degree();
    let g_y = cover.genus_of_y()? as i64;
    let deg = (1 - g_y) - d as i64 * (1 - cover.base_genus() as i64);
    let mut points = BTreeMap::new();
    for (x, sigma) in cover.branch() {
        let mut multiset: BTreeMap<Weight, usize> = BTreeMap::new();
        for len in sigma.cycle_type() {
            for j in 0..len {
                let w = Weight::from_fraction(j as i64, len as i64)?;
                *multiset.entry(w).or_insert(0) += 1;
            }
        }
        points.insert(x.clone(), multiset);
    }
    WeightProfile::new(d, deg, points)
}

/// Parabolic dual: nonzero weights `α ↦ 1 - α`, and the degree becomes
/// `-deg - #{nonzero weights}` so that the parabolic degree negates.
pub fn dual(profile: &WeightProfile) -> WeightProfile {
    let mut shift = 0i64;
    let points = profile
        .points
        .iter()
        .map(|(x, multiset)| {
            let flipped = multiset
                .iter()
                .map(|(&w, &m)| {
                    if w.is_zero() {
                        (w, m)
                    } else {
                        shift += m as i64;
                        (Weight(Rational::one() - w.value()), m)
                    }
                })
                .collect();
            (x.clone(), flipped)
        })
        .collect();
    WeightProfile::new(profile.rank, -profile.deg - shift, points)
        .expect("dual preserves multiplicities")
}

/// Tensor product of parabolic line bundles on the same curve.
pub fn tensor_line(
    l: &ParabolicLineBundle,
    m: &ParabolicLineBundle,
) -> Result<ParabolicLineBundle> {
    if l.namespace != m.namespace {
        return Err(Error::NamespaceMismatch {
            expected: l.namespace.name(),
            found: m.namespace.name(),
        });
    }
    let mut deg = l.deg + m.deg;
    let mut weights = l.weights.clone();
    for (x, &beta) in &m.weights {
        let alpha = l.weight_at(x);
        let (carry, w) = Weight::split(alpha.value() + beta.value());
        deg += carry;
        weights.insert(x.clone(), w);
    }
    Ok(ParabolicLineBundle::new(l.namespace, deg, weights))
}

/// Pullback of a parabolic line bundle on `X` along the cover. Over a point
/// of multiplicity `m` above `x`, the weight `α` becomes the fractional part
/// of `mα` and the integer part twists the underlying bundle.
pub fn pullback_line(
    cover: &MonodromyCover,
    line: &ParabolicLineBundle,
) -> Result<ParabolicLineBundle> {
    if line.namespace != Namespace::Base {
        return Err(Error::NamespaceMismatch {
            expected: Namespace::Base.name(),
            found: line.namespace.name(),
        });
    }
    let mut deg = cover.degree() as i64 * line.deg;
    let mut weights = Vec::new();
    for (x, &alpha) in &line.weights {
        for (y, mult) in cover.fiber(x) {
            let (twist, w) = Weight::split(alpha.value() * Rational::from_integer(mult as i64));
            deg += twist;
            weights.push((y.label(), w));
        }
    }
    Ok(ParabolicLineBundle::new(Namespace::Cover, deg, weights))
}

pub fn pullback_split(
    cover: &MonodromyCover,
    bundle: &SplitParabolicBundle,
) -> Result<SplitParabolicBundle> {
    let summands = bundle
        .summands
        .iter()
        .map(|l| pullback_line(cover, l))
        .collect::<Result<Vec<_>>>()?;
    SplitParabolicBundle::new(summands)
}

/// Every nonzero weight sits at a marked point `x` and lies in `(1/N_x)Z`.
pub fn weights_divisible(profile: &WeightProfile, orbifold: &OrbifoldStructure) -> bool {
    profile.points.iter().all(|(x, multiset)| {
        multiset.keys().filter(|w| !w.is_zero()).all(|w| {
            orbifold
                .order_at(x)
                .is_some_and(|n| (w.value() * Rational::from_integer(n as i64)).is_integer())
        })
    })
}
