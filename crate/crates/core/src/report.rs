//! Machine-readable reports shared by the CLI and the C interface.

use serde_json::{json, Value};

use crate::cover::MonodromyCover;
use crate::doc::{
    BundleDocument, Fraction, IntermediateCoverDocument, OrbifoldDocument, ProfileDocument,
};
use crate::error::{Error, Result};
use crate::orbifold::{analyze, Analysis, OrbifoldStructure};
use crate::parabolic::{
    direct_image_structure, dual, pullback_split, ParabolicDegree, Rational, SplitParabolicBundle,
    WeightProfile,
};

pub fn analysis_json(
    cover: &MonodromyCover,
    orbifold: &OrbifoldStructure,
    analysis: &Analysis,
    list_blocks: bool,
) -> Value {
    let v = &analysis.verdict;
    let etale: Vec<IntermediateCoverDocument> = analysis.etale.iter().map(Into::into).collect();
    let mut doc = json!({
        "degree": cover.degree(),
        "orbifold": OrbifoldDocument::from_orbifold(orbifold),
        "rank_of_f": v.rank,
        "verdict": v.verdict.to_string(),
        "gr1_hypothesis": analysis.gr1_hypothesis,
        "witness": v.witness.as_ref().map(IntermediateCoverDocument::from),
        "etale_covers": etale,
    });
    if list_blocks {
        let all: Vec<IntermediateCoverDocument> = analysis.all.iter().map(Into::into).collect();
        doc["block_systems"] = json!(all);
    }
    doc
}

pub fn analyze_json(
    cover: &MonodromyCover,
    orbifold: &OrbifoldStructure,
    max_degree: usize,
    list_blocks: bool,
) -> Result<Value> {
    let analysis = analyze(cover, orbifold, max_degree)?;
    Ok(analysis_json(cover, orbifold, &analysis, list_blocks))
}

/// The direct-image profile after checking it has parabolic degree 0 and is self-dual.
pub fn checked_direct_image(cover: &MonodromyCover) -> Result<WeightProfile> {
    let profile = direct_image_structure(cover)?;
    if profile.par_deg() != Rational::from_integer(0) {
        return Err(Error::SelfCheck(format!(
            "parabolic degree of the direct image is {} instead of 0",
            profile.par_deg()
        )));
    }
    if dual(&profile) != profile {
        return Err(Error::SelfCheck("direct image is not self-dual".into()));
    }
    Ok(profile)
}

pub fn direct_image_json(profile: &WeightProfile) -> Value {
    json!({
        "profile": ProfileDocument::from_profile(profile),
        "par_deg": Fraction::from(profile.par_deg()),
        "par_deg_is_zero": profile.par_deg() == Rational::from_integer(0),
        "self_dual": dual(profile) == *profile,
    })
}

/// Pulls `bundle` back and checks that the parabolic degree scales by the
/// cover degree.
pub fn checked_pullback(
    cover: &MonodromyCover,
    bundle: &SplitParabolicBundle,
) -> Result<SplitParabolicBundle> {
    let pulled = pullback_split(cover, bundle)?;
    let expected = Rational::from_integer(cover.degree() as i64) * bundle.par_deg();
    if pulled.par_deg() != expected {
        return Err(Error::SelfCheck(format!(
            "par-deg of pullback {} differs from degree times par-deg {expected}",
            pulled.par_deg()
        )));
    }
    Ok(pulled)
}

pub fn pullback_json(
    cover: &MonodromyCover,
    bundle: &SplitParabolicBundle,
    pulled: &SplitParabolicBundle,
) -> Value {
    let lhs = pulled.par_deg();
    let rhs = Rational::from_integer(cover.degree() as i64) * bundle.par_deg();
    json!({
        "bundle": BundleDocument::from_bundle(pulled),
        "par_deg_pullback": Fraction::from(lhs),
        "degree": cover.degree(),
        "par_deg_base": Fraction::from(bundle.par_deg()),
        "identity_holds": lhs == rhs,
    })
}
