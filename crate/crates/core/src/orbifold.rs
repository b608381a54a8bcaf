//! Orbifold-etale intermediate covers and the rank of the canonical
//! subbundle `F ⊂ f_* O_Y`.
//!
//! An intermediate cover `Y -> Z -> X` is a block system of the monodromy
//! action; `Z -> X` has degree equal to the number of blocks and its
//! ramification over `x` is the cycle type of `σ_x` acting on blocks. The
//! cover `Z` is orbifold-etale when it is unramified away from the marked
//! points and every ramification index over a marked `x` divides `N_x`.
//! The maximal such `Z` is unique, and `rank F = deg(Z -> X)`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::blocks::{action_on_blocks, all_block_systems, BlockSystem};
use crate::cover::{MonodromyCover, PointId};
use crate::error::{Error, Result};

/// Marked points `x` with orders `N_x >= 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrbifoldStructure {
    marked: BTreeMap<PointId, u64>,
}

impl OrbifoldStructure {
    pub fn new<I: IntoIterator<Item = (PointId, u64)>>(marks: I) -> Result<Self> {
        let mut marked = BTreeMap::new();
        for (x, n) in marks {
            if n == 0 {
                return Err(Error::InvalidOrbifold(format!(
                    "N at {x} must be at least 1"
                )));
            }
            if marked.insert(x.clone(), n).is_some() {
                return Err(Error::InvalidOrbifold(format!("point {x} marked twice")));
            }
        }
        Ok(OrbifoldStructure { marked })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn order_at(&self, x: &PointId) -> Option<u64> {
        self.marked.get(x).copied()
    }

    pub fn marked(&self) -> &BTreeMap<PointId, u64> {
        &self.marked
    }
}

/// One intermediate cover `Z` of `f`, described by its block system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntermediateCoverReport {
    pub system: BlockSystem,
    /// `deg(Z -> X)`, the number of blocks.
    pub degree_over_x: usize,
    pub etale: bool,
    /// Ramification indices of `Z -> X` over each branch point of `f`.
    pub ramification: BTreeMap<PointId, Vec<usize>>,
}

fn block_ramification(
    system: &BlockSystem,
    cover: &MonodromyCover,
) -> Result<BTreeMap<PointId, Vec<usize>>> {
    cover
        .branch()
        .iter()
        .map(|(x, sigma)| Ok((x.clone(), action_on_blocks(sigma, system)?.1)))
        .collect()
}

fn etale_given(ramification: &BTreeMap<PointId, Vec<usize>>, orbifold: &OrbifoldStructure) -> bool {
    ramification
        .iter()
        .all(|(x, lengths)| match orbifold.order_at(x) {
            None => lengths.iter().all(|&l| l == 1),
            Some(n) => lengths.iter().all(|&l| n % l as u64 == 0),
        })
}

/// Whether the intermediate cover given by `system` is orbifold-etale.
pub fn is_orbifold_etale(
    system: &BlockSystem,
    cover: &MonodromyCover,
    orbifold: &OrbifoldStructure,
) -> Result<bool> {
    Ok(etale_given(&block_ramification(system, cover)?, orbifold))
}

pub fn intermediate_cover_report(
    system: &BlockSystem,
    cover: &MonodromyCover,
    orbifold: &OrbifoldStructure,
) -> Result<IntermediateCoverReport> {
    let ramification = block_ramification(system, cover)?;
    Ok(IntermediateCoverReport {
        system: system.clone(),
        degree_over_x: system.num_blocks(),
        etale: etale_given(&ramification, orbifold),
        ramification,
    })
}

/// Reports for every block system of the monodromy action, etale or not.
pub fn all_intermediate_covers(
    cover: &MonodromyCover,
    orbifold: &OrbifoldStructure,
    max_degree: usize,
) -> Result<Vec<IntermediateCoverReport>> {
    all_block_systems(&cover.generators(), cover.degree(), max_degree)?
        .iter()
        .map(|s| intermediate_cover_report(s, cover, orbifold))
        .collect()
}

/// The orbifold-etale intermediate covers; always includes the one-block system.
pub fn etale_intermediate_covers(
    cover: &MonodromyCover,
    orbifold: &OrbifoldStructure,
    max_degree: usize,
) -> Result<Vec<IntermediateCoverReport>> {
    let mut reports = all_intermediate_covers(cover, orbifold, max_degree)?;
    reports.retain(|r| r.etale);
    Ok(reports)
}

/// Picks the etale system with the most blocks, checking that it refines
/// every other etale system.
fn select_maximal(etale: &[IntermediateCoverReport]) -> Result<IntermediateCoverReport> {
    let best = etale
        .iter()
        .max_by_key(|r| r.degree_over_x)
        .ok_or_else(|| Error::SelfCheck("no etale intermediate cover found".into()))?;
    let ties = etale
        .iter()
        .filter(|r| r.degree_over_x == best.degree_over_x)
        .count();
    if ties > 1 {
        return Err(Error::SelfCheck(format!(
            "uniqueness violated: {ties} etale systems with {} blocks",
            best.degree_over_x
        )));
    }
    if let Some(other) = etale.iter().find(|r| !best.system.refines(&r.system)) {
        return Err(Error::SelfCheck(format!(
            "uniqueness violated: maximal system {} does not refine etale system {}",
            best.system, other.system
        )));
    }
    Ok(best.clone())
}

/// The unique maximal orbifold-etale intermediate cover.
pub fn maximal_etale_cover(
    cover: &MonodromyCover,
    orbifold: &OrbifoldStructure,
    max_degree: usize,
) -> Result<IntermediateCoverReport> {
    select_maximal(&etale_intermediate_covers(cover, orbifold, max_degree)?)
}

/// `rank F`, the degree of the maximal orbifold-etale intermediate cover.
pub fn rank_of_f(
    cover: &MonodromyCover,
    orbifold: &OrbifoldStructure,
    max_degree: usize,
) -> Result<usize> {
    Ok(maximal_etale_cover(cover, orbifold, max_degree)?.degree_over_x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Pullback of every stable parabolic bundle with weights in `(1/N_x)Z` is stable.
    Preserved,
    /// Some such stable bundle pulls back to a non-stable one.
    NotPreserved,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Preserved => "PRESERVED",
            Verdict::NotPreserved => "NOT_PRESERVED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub verdict: Verdict,
    pub rank: usize,
    /// The maximal etale intermediate cover when it is nontrivial.
    pub witness: Option<IntermediateCoverReport>,
}

pub fn stability_verdict(
    cover: &MonodromyCover,
    orbifold: &OrbifoldStructure,
    max_degree: usize,
) -> Result<StabilityVerdict> {
    let maximal = maximal_etale_cover(cover, orbifold, max_degree)?;
    Ok(verdict_from_maximal(maximal))
}

pub(crate) fn verdict_from_maximal(maximal: IntermediateCoverReport) -> StabilityVerdict {
    let rank = maximal.degree_over_x;
    if rank == 1 {
        StabilityVerdict {
            verdict: Verdict::Preserved,
            rank,
            witness: None,
        }
    } else {
        StabilityVerdict {
            verdict: Verdict::NotPreserved,
            rank,
            witness: Some(maximal),
        }
    }
}

/// Whether every `N_x` is coprime to the ramification indices of `f` over `x`.
pub fn gr1_hypothesis_holds(cover: &MonodromyCover, orbifold: &OrbifoldStructure) -> bool {
    orbifold.marked().iter().all(|(x, &n)| {
        cover
            .ramification_profile(x)
            .iter()
            .all(|&m| n.gcd(&(m as u64)) == 1)
    })
}

/// Everything the `analyze` command reports, computed from one enumeration.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub verdict: StabilityVerdict,
    pub etale: Vec<IntermediateCoverReport>,
    pub all: Vec<IntermediateCoverReport>,
    pub gr1_hypothesis: bool,
}

pub fn analyze(
    cover: &MonodromyCover,
    orbifold: &OrbifoldStructure,
    max_degree: usize,
) -> Result<Analysis> {
    let all = all_intermediate_covers(cover, orbifold, max_degree)?;
    let etale: Vec<_> = all.iter().filter(|r| r.etale).cloned().collect();
    let verdict = verdict_from_maximal(select_maximal(&etale)?);
    Ok(Analysis {
        verdict,
        etale,
        all,
        gr1_hypothesis: gr1_hypothesis_holds(cover, orbifold),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::DEFAULT_MAX_DEGREE;
    use crate::cover::CoverData;
    use crate::perm::Permutation;

    fn pt(s: &str) -> PointId {
        PointId::new(s).unwrap()
    }

    fn cyclic_six() -> MonodromyCover {
        let sigma = Permutation::cycle(6, &[0, 1, 2, 3, 4, 5]).unwrap();
        MonodromyCover::new(CoverData {
            degree: 6,
            base_genus: 0,
            branch: vec![(pt("0"), sigma.clone()), (pt("infty"), sigma.inverse())],
            handles: vec![],
        })
        .unwrap()
    }

    fn marks(n0: u64, ninf: u64) -> OrbifoldStructure {
        OrbifoldStructure::new([(pt("0"), n0), (pt("infty"), ninf)]).unwrap()
    }

    #[test]
    fn etale_checks_on_cyclic_six() {
        let c = cyclic_six();
        let thirds = BlockSystem::from_labels(&[0, 1, 2, 0, 1, 2]);
        let halves = BlockSystem::from_labels(&[0, 1, 0, 1, 0, 1]);
        assert!(!is_orbifold_etale(&thirds, &c, &marks(2, 3)).unwrap());
        assert!(!is_orbifold_etale(&halves, &c, &marks(2, 3)).unwrap());
        assert!(is_orbifold_etale(&BlockSystem::one_block(6), &c, &marks(2, 3)).unwrap());
        assert!(is_orbifold_etale(&BlockSystem::singletons(6), &c, &marks(6, 6)).unwrap());
    }

    #[test]
    fn etale_lists_and_ranks() {
        let c = cyclic_six();
        let counts = |n0, ninf| -> Vec<usize> {
            etale_intermediate_covers(&c, &marks(n0, ninf), DEFAULT_MAX_DEGREE)
                .unwrap()
                .iter()
                .map(|r| r.degree_over_x)
                .collect()
        };
        assert_eq!(counts(2, 3), vec![1]);
        let mut c22 = counts(2, 2);
        c22.sort_unstable();
        assert_eq!(c22, vec![1, 2]);
        let mut c66 = counts(6, 6);
        c66.sort_unstable();
        assert_eq!(c66, vec![1, 2, 3, 6]);

        assert_eq!(rank_of_f(&c, &marks(2, 3), DEFAULT_MAX_DEGREE).unwrap(), 1);
        assert_eq!(rank_of_f(&c, &marks(2, 2), DEFAULT_MAX_DEGREE).unwrap(), 2);
        assert_eq!(rank_of_f(&c, &marks(6, 6), DEFAULT_MAX_DEGREE).unwrap(), 6);
    }

    #[test]
    fn maximal_for_even_marks_is_parity_split() {
        let m = maximal_etale_cover(&cyclic_six(), &marks(2, 2), DEFAULT_MAX_DEGREE).unwrap();
        assert_eq!(m.system.blocks(), vec![vec![0, 2, 4], vec![1, 3, 5]]);
        assert_eq!(m.ramification[&pt("0")], vec![2]);
    }

    #[test]
    fn verdicts() {
        let c = cyclic_six();
        let v = stability_verdict(&c, &marks(2, 3), DEFAULT_MAX_DEGREE).unwrap();
        assert_eq!(v.verdict, Verdict::Preserved);
        assert_eq!(v.rank, 1);
        assert!(v.witness.is_none());
        assert!(!gr1_hypothesis_holds(&c, &marks(2, 3)));

        let v = stability_verdict(&c, &marks(2, 2), DEFAULT_MAX_DEGREE).unwrap();
        assert_eq!(v.verdict, Verdict::NotPreserved);
        assert_eq!(v.witness.unwrap().degree_over_x, 2);
    }

    #[test]
    fn unramified_everything_etale() {
        let shift = Permutation::cycle(3, &[0, 1, 2]).unwrap();
        let c = MonodromyCover::new(CoverData {
            degree: 3,
            base_genus: 1,
            branch: vec![],
            handles: vec![shift, Permutation::identity(3)],
        })
        .unwrap();
        let m = maximal_etale_cover(&c, &OrbifoldStructure::empty(), DEFAULT_MAX_DEGREE).unwrap();
        assert_eq!(m.system, BlockSystem::singletons(3));
        assert_eq!(m.degree_over_x, 3);
    }

    #[test]
    fn primitive_monodromy_preserves() {
        // Natural S5: branch (0 1), (0 1 2 3 4) and the inverse of their product.
        let a = Permutation::cycle(5, &[0, 1]).unwrap();
        let b = Permutation::cycle(5, &[0, 1, 2, 3, 4]).unwrap();
        let c = a.compose(&b).unwrap().inverse();
        let cover = MonodromyCover::new(CoverData {
            degree: 5,
            base_genus: 0,
            branch: vec![(pt("a"), a), (pt("b"), b), (pt("c"), c)],
            handles: vec![],
        })
        .unwrap();
        let v = stability_verdict(&cover, &OrbifoldStructure::empty(), DEFAULT_MAX_DEGREE).unwrap();
        assert_eq!(v.verdict, Verdict::Preserved);
    }

    #[test]
    fn gr1_cases() {
        let c = cyclic_six();
        assert!(gr1_hypothesis_holds(&c, &marks(1, 1)));
        let t = Permutation::cycle(2, &[0, 1]).unwrap();
        let double = MonodromyCover::new(CoverData {
            degree: 2,
            base_genus: 0,
            branch: vec![(pt("0"), t.clone()), (pt("infty"), t)],
            handles: vec![],
        })
        .unwrap();
        let o = OrbifoldStructure::new([(pt("0"), 3)]).unwrap();
        assert!(gr1_hypothesis_holds(&double, &o));
    }

    #[test]
    fn marked_unbranched_point_is_vacuous() {
        let c = cyclic_six();
        let o = OrbifoldStructure::new([(pt("0"), 2), (pt("infty"), 2), (pt("q"), 5)]).unwrap();
        assert_eq!(rank_of_f(&c, &o, DEFAULT_MAX_DEGREE).unwrap(), 2);
    }

    #[test]
    fn orbifold_rejects_bad_marks() {
        assert!(OrbifoldStructure::new([(pt("0"), 0)]).is_err());
        assert!(OrbifoldStructure::new([(pt("0"), 2), (pt("0"), 3)]).is_err());
    }

    #[test]
    fn self_check_detects_non_unique_maximum() {
        let mk = |labels: &[usize]| IntermediateCoverReport {
            system: BlockSystem::from_labels(labels),
            degree_over_x: BlockSystem::from_labels(labels).num_blocks(),
            etale: true,
            ramification: BTreeMap::new(),
        };
        let reports = vec![mk(&[0, 0, 0, 0]), mk(&[0, 0, 1, 1]), mk(&[0, 1, 0, 1])];
        assert!(matches!(select_maximal(&reports), Err(Error::SelfCheck(_))));
    }
}
