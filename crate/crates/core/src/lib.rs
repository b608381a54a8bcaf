//! Stability of pulled-back parabolic bundles along branched covers of
//! curves, decided from monodromy data.
//!
//! A cover `f: Y -> X` of degree `d` is given by permutations of
//! `{0, ..., d-1}` ([`cover`]). Intermediate covers are block systems of the
//! monodromy action ([`blocks`]). Given orders `N_x` at marked points
//! ([`orbifold`]), the maximal orbifold-etale intermediate cover has degree
//! `rank F`, and pullback preserves stability of parabolic bundles with
//! weights in `(1/N_x)Z` exactly when `rank F = 1`. The [`parabolic`]
//! module holds the exact weight and degree calculus.

pub mod blocks;
pub mod cli;
pub mod cover;
pub mod doc;
pub mod error;
pub mod orbifold;
pub mod parabolic;
pub mod perm;
pub mod report;

pub use blocks::{
    action_on_blocks, all_block_systems, block_closure, BlockSystem, DEFAULT_MAX_DEGREE,
};
pub use cover::{
    validate_cover, CoverData, FiberPointId, MonodromyCover, PointId, ValidationReport, Violation,
};
pub use error::{Error, Result};
pub use orbifold::{
    etale_intermediate_covers, gr1_hypothesis_holds, is_orbifold_etale, maximal_etale_cover,
    rank_of_f, stability_verdict, IntermediateCoverReport, OrbifoldStructure, StabilityVerdict,
    Verdict,
};
pub use parabolic::{
    direct_image_structure, dual, pullback_line, pullback_split, tensor_line, weights_divisible,
    Namespace, ParabolicDegree, ParabolicLineBundle, Rational, SplitParabolicBundle, Weight,
    WeightProfile,
};
pub use perm::{is_transitive, Permutation};
