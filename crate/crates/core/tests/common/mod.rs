//! Shared test support: a seeded generator of random valid covers, marks and
//! bundles, and a brute-force block-system oracle over all set partitions.

#![allow(dead_code)]

use std::collections::BTreeSet;

use parstab::{
    CoverData, MonodromyCover, Namespace, OrbifoldStructure, ParabolicLineBundle, Permutation,
    PointId, SplitParabolicBundle, Weight,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pt(s: &str) -> PointId {
    PointId::new(s).unwrap()
}

/// The degree-6 cyclic cover of the line branched at 0 and infinity.
pub fn cyclic_six() -> MonodromyCover {
    let sigma = Permutation::cycle(6, &[0, 1, 2, 3, 4, 5]).unwrap();
    MonodromyCover::new(CoverData {
        degree: 6,
        base_genus: 0,
        branch: vec![(pt("0"), sigma.clone()), (pt("infty"), sigma.inverse())],
        handles: vec![],
    })
    .unwrap()
}

pub fn marks(entries: &[(&str, u64)]) -> OrbifoldStructure {
    OrbifoldStructure::new(entries.iter().map(|&(x, n)| (pt(x), n))).unwrap()
}

/// Groups the random elements are drawn from. The symmetric group is almost
/// always primitive, so the other two families supply block structure.
#[derive(Clone, Copy, Debug)]
enum Family {
    Symmetric,
    Imprimitive { blocks: usize },
    Cyclic,
}

struct Sampler {
    degree: usize,
    family: Family,
    relabel: Permutation,
}

fn random_perm(rng: &mut TestRng, d: usize) -> Permutation {
    let mut images: Vec<usize> = (0..d).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

impl Sampler {
    fn new(rng: &mut TestRng, degree: usize) -> Self {
        let divisors: Vec<usize> = (2..degree).filter(|a| degree.is_multiple_of(*a)).collect();
        let family = match rng.gen_range(0..3) {
            0 => Family::Symmetric,
            1 if !divisors.is_empty() => Family::Imprimitive {
                blocks: *divisors.choose(rng).unwrap(),
            },
            _ => Family::Cyclic,
        };
        Sampler {
            degree,
            family,
            relabel: random_perm(rng, degree),
        }
    }

    fn sample(&self, rng: &mut TestRng) -> Permutation {
        let d = self.degree;
        let raw = match self.family {
            Family::Symmetric => random_perm(rng, d),
            Family::Imprimitive { blocks } => {
                let size = d / blocks;
                let outer = random_perm(rng, blocks);
                let inner: Vec<Permutation> = (0..blocks).map(|_| random_perm(rng, size)).collect();
                let images = (0..d)
                    .map(|i| outer.apply(i / size) * size + inner[i / size].apply(i % size))
                    .collect();
                Permutation::from_images(images).unwrap()
            }
            Family::Cyclic => {
                let shift = rng.gen_range(0..d);
                Permutation::from_images((0..d).map(|i| (i + shift) % d).collect()).unwrap()
            }
        };
        // relabel ∘ raw ∘ relabel⁻¹
        self.relabel
            .compose(&raw)
            .unwrap()
            .compose(&self.relabel.inverse())
            .unwrap()
    }
}

const LABELS: [&str; 6] = ["0", "infty", "1", "p", "q", "r"];

/// A random valid cover with degree at most `max_d` and base genus at most
/// `max_g`. The last branch permutation is chosen to close the product
/// relation and dropped if it comes out trivial; intransitive draws are
/// rejected and redrawn.
pub fn random_cover(rng: &mut TestRng, max_d: usize, max_g: usize) -> MonodromyCover {
    loop {
        let d = rng.gen_range(1..=max_d);
        let g = rng.gen_range(0..=max_g);
        let sampler = Sampler::new(rng, d);
        let handles: Vec<Permutation> = (0..2 * g).map(|_| sampler.sample(rng)).collect();
        let k: usize = rng.gen_range(0..=4);
        let mut branch = Vec::new();
        let mut product = Permutation::identity(d);
        for pair in handles.chunks(2) {
            product = product
                .compose(&pair[0].commutator(&pair[1]).unwrap())
                .unwrap();
        }
        let mut labels = LABELS.to_vec();
        labels.shuffle(rng);
        for label in labels.iter().take(k.saturating_sub(1)) {
            let sigma = sampler.sample(rng);
            if sigma.is_identity() {
                continue;
            }
            product = product.compose(&sigma).unwrap();
            branch.push((pt(label), sigma));
        }
        let closing = product.inverse();
        if !closing.is_identity() {
            branch.push((pt(labels[5]), closing));
        }
        let data = CoverData {
            degree: d,
            base_genus: g,
            branch,
            handles,
        };
        if let Ok(cover) = MonodromyCover::new(data) {
            return cover;
        }
    }
}

/// Marks a random subset of branch points with orders in 1..=12, sometimes
/// adding an unbranched marked point.
pub fn random_marks(rng: &mut TestRng, cover: &MonodromyCover) -> OrbifoldStructure {
    let mut entries = Vec::new();
    for (x, _) in cover.branch() {
        if rng.gen_bool(0.7) {
            entries.push((x.clone(), rng.gen_range(1..=12)));
        }
    }
    if rng.gen_bool(0.2) {
        entries.push((pt("unbranched-mark"), rng.gen_range(1..=12)));
    }
    OrbifoldStructure::new(entries).unwrap()
}

/// A weight with denominator at most `max_den`, zero included.
pub fn random_weight(rng: &mut TestRng, max_den: i64) -> Weight {
    let den = rng.gen_range(1..=max_den);
    Weight::from_fraction(rng.gen_range(0..den), den).unwrap()
}

/// A random split bundle on the base with weights at branch points and at
/// one unbranched point.
pub fn random_split_bundle(rng: &mut TestRng, cover: &MonodromyCover) -> SplitParabolicBundle {
    let mut points: Vec<PointId> = cover.branch().iter().map(|(x, _)| x.clone()).collect();
    points.push(pt("elsewhere"));
    let summands = (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut weights: Vec<(PointId, Weight)> = Vec::new();
            for x in &points {
                if rng.gen_bool(0.6) {
                    weights.push((x.clone(), random_weight(rng, 12)));
                }
            }
            ParabolicLineBundle::new(Namespace::Base, rng.gen_range(-3..=3), weights)
        })
        .collect();
    SplitParabolicBundle::new(summands).unwrap()
}

/// Random transitive generators (1 to 3 of them) of degree at most `max_d`.
pub fn random_transitive_generators(rng: &mut TestRng, max_d: usize) -> (Vec<Permutation>, usize) {
    loop {
        let d = rng.gen_range(1..=max_d);
        let sampler = Sampler::new(rng, d);
        let gens: Vec<Permutation> = (0..rng.gen_range(1..=3))
            .map(|_| sampler.sample(rng))
            .collect();
        if parstab::is_transitive(&gens, d) {
            return (gens, d);
        }
    }
}

/// Every set partition of `{0, ..., d-1}` as a restricted growth string,
/// which is exactly the normalized block labelling.
pub fn set_partitions(d: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, max: usize, d: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == d {
            out.push(prefix.clone());
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for label in 0..=limit {
            prefix.push(label);
            extend(prefix, max.max(label), d, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        extend(&mut Vec::new(), 0, d, &mut out);
    }
    out
}

/// Brute-force block systems: set partitions such that every generator
/// sends any two points of a block to points of a common block.
pub fn brute_force_block_systems(gens: &[Permutation], d: usize) -> BTreeSet<Vec<usize>> {
    set_partitions(d)
        .into_iter()
        .filter(|labels| {
            gens.iter().all(|g| {
                (0..d).all(|i| {
                    (0..d)
                        .all(|j| labels[i] != labels[j] || labels[g.apply(i)] == labels[g.apply(j)])
                })
            })
        })
        .collect()
}
