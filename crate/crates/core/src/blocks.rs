//! Block systems (systems of imprimitivity) of a transitive permutation
//! action, found by union-find closure of candidate seeds.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{is_transitive, Permutation};

/// Default upper bound on the degree accepted by [`all_block_systems`].
pub const DEFAULT_MAX_DEGREE: usize = 16;

/// A partition of `{0, ..., d-1}` invariant under a permutation group.
///
/// Block ids are normalized: block 0 contains point 0 and ids appear in
/// first-use order, so two systems are equal iff their `block_of` tables are.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSystem {
    block_of: Vec<usize>,
    num_blocks: usize,
}

impl BlockSystem {
    /// Normalizes an arbitrary labelling of points into a block system.
    /// Invariance under any group is not checked here.
    pub fn from_labels<T: Eq + Clone>(labels: &[T]) -> Self {
        let mut seen: Vec<T> = Vec::new();
        let block_of = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(k) => k,
                None => {
                    seen.push(l.clone());
                    seen.len() - 1
                }
            })
            .collect();
        BlockSystem {
            block_of,
            num_blocks: seen.len(),
        }
    }

    pub fn singletons(degree: usize) -> Self {
        BlockSystem {
            block_of: (0..degree).collect(),
            num_blocks: degree,
        }
    }

    pub fn one_block(degree: usize) -> Self {
        BlockSystem {
            block_of: vec![0; degree],
            num_blocks: usize::from(degree > 0),
        }
    }

    pub fn degree(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn block_size(&self) -> usize {
        self.degree() / self.num_blocks.max(1)
    }

    /// The blocks as sorted point lists, indexed by block id.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks];
        for (i, &b) in self.block_of.iter().enumerate() {
            out[b].push(i);
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.num_blocks <= 1 || self.num_blocks == self.degree()
    }

    /// Every generator maps blocks onto blocks.
    pub fn is_invariant_under(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree() {
            return false;
        }
        let mut image = vec![usize::MAX; self.num_blocks];
        for (i, &b) in self.block_of.iter().enumerate() {
            let target = self.block_of[g.apply(i)];
            if image[b] == usize::MAX {
                image[b] = target;
            } else if image[b] != target {
                return false;
            }
        }
        true
    }

    /// `self` is finer than or equal to `other`: each block of `self` lies
    /// inside a block of `other`.
    pub fn refines(&self, other: &BlockSystem) -> bool {
        if self.degree() != other.degree() {
            return false;
        }
        let mut to_other = vec![usize::MAX; self.num_blocks];
        for (i, &b) in self.block_of.iter().enumerate() {
            let o = other.block_of[i];
            if to_other[b] == usize::MAX {
                to_other[b] = o;
            } else if to_other[b] != o {
                return false;
            }
        }
        true
    }

    /// The partition into pairwise intersections of blocks.
    pub fn common_refinement(&self, other: &BlockSystem) -> Result<BlockSystem> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        let pairs: Vec<(usize, usize)> = self
            .block_of
            .iter()
            .zip(&other.block_of)
            .map(|(&a, &b)| (a, b))
            .collect();
        Ok(BlockSystem::from_labels(&pairs))
    }
}

impl fmt::Debug for BlockSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockSystem{self}")
    }
}

impl fmt::Display for BlockSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, block) in self.blocks().iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Closure without the transitivity check; `generators` must all have degree `degree`.
fn closure_unchecked(generators: &[Permutation], degree: usize, seed: &[usize]) -> BlockSystem {
    let mut uf = UnionFind::new(degree);
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let base = seed[0];
    for &s in &seed[1..] {
        if uf.union(base, s) {
            pending.push((base, s));
        }
    }
    // Each successful union is pushed exactly once, so this terminates after
    // at most d - 1 unions.
    while let Some((a, b)) = pending.pop() {
        for g in generators {
            let (ga, gb) = (g.apply(a), g.apply(b));
            if uf.union(ga, gb) {
                pending.push((ga, gb));
            }
        }
    }
    let roots: Vec<usize> = (0..degree).map(|i| uf.find(i)).collect();
    BlockSystem::from_labels(&roots)
}

fn check_generators(generators: &[Permutation], degree: usize) -> Result<()> {
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch {
            expected: degree,
            found: g.degree(),
        });
    }
    if !is_transitive(generators, degree) {
        return Err(Error::NotTransitive { degree });
    }
    Ok(())
}

/// The finest block system of the group generated by `generators` in which
/// all of `seed` lies in a single block. `seed` must contain 0.
pub fn block_closure(
    generators: &[Permutation],
    degree: usize,
    seed: &[usize],
) -> Result<BlockSystem> {
    check_generators(generators, degree)?;
    if !seed.contains(&0) {
        return Err(Error::SeedMissingBase);
    }
    if let Some(&bad) = seed.iter().find(|&&s| s >= degree) {
        return Err(Error::InvalidPermutation(format!(
            "seed point {bad} out of range for degree {degree}"
        )));
    }
    let system = closure_unchecked(generators, degree, seed);
    debug_assert!(generators.iter().all(|g| system.is_invariant_under(g)));
    Ok(system)
}

/// Every block system of a transitive action, trivial ones included, sorted
/// by their normalized `block_of` tables.
///
/// Each system is the closure of `{0} ∪ S` for the set `S` of other points
/// in the block of 0, so running over all `S` finds all of them.
pub fn all_block_systems(
    generators: &[Permutation],
    degree: usize,
    max_degree: usize,
) -> Result<Vec<BlockSystem>> {
    if degree > max_degree {
        return Err(Error::DegreeCapExceeded {
            degree,
            cap: max_degree,
        });
    }
    check_generators(generators, degree)?;
    let mut found = BTreeSet::new();
    let mut seed = Vec::with_capacity(degree);
    let subsets: u64 = 1 << (degree - 1);
    for mask in 0..subsets {
        seed.clear();
        seed.push(0);
        seed.extend((1..degree).filter(|&i| mask & (1 << (i - 1)) != 0));
        let system = closure_unchecked(generators, degree, &seed);
        // A system is determined by the block of 0; keep it only when that
        // block is exactly the seed.
        if system.block_of().iter().filter(|&&b| b == 0).count() == seed.len() {
            found.insert(system);
        }
    }
    let systems: Vec<BlockSystem> = found.into_iter().collect();
    for s in &systems {
        assert!(
            generators.iter().all(|g| s.is_invariant_under(g)),
            "closure produced a non-invariant partition {s}"
        );
        assert_eq!(
            s.block_size() * s.num_blocks(),
            degree,
            "unequal block sizes in {s}"
        );
    }
    Ok(systems)
}

/// The permutation induced by `p` on the blocks of `system`, and its cycle type.
pub fn action_on_blocks(
    p: &Permutation,
    system: &BlockSystem,
) -> Result<(Permutation, Vec<usize>)> {
    if p.degree() != system.degree() {
        return Err(Error::DegreeMismatch {
            expected: system.degree(),
            found: p.degree(),
        });
    }
    if !system.is_invariant_under(p) {
        return Err(Error::NotInvariant(p.to_string()));
    }
    let mut images = vec![0; system.num_blocks()];
    for (i, &b) in system.block_of().iter().enumerate() {
        images[b] = system.block_of()[p.apply(i)];
    }
    let induced = Permutation::from_images(images)?;
    let lengths = induced.cycle_type();
    Ok((induced, lengths))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(d, cycles).unwrap()
    }

    fn c6() -> Vec<Permutation> {
        vec![p(6, &[&[0, 1, 2, 3, 4, 5]])]
    }

    #[test]
    fn closure_trivial_seeds() {
        let gens = c6();
        assert_eq!(
            block_closure(&gens, 6, &[0]).unwrap(),
            BlockSystem::singletons(6)
        );
        assert_eq!(
            block_closure(&gens, 6, &[0, 1, 2, 3, 4, 5]).unwrap(),
            BlockSystem::one_block(6)
        );
    }

    #[test]
    fn closure_of_antipodal_pair() {
        let s = block_closure(&c6(), 6, &[0, 3]).unwrap();
        assert_eq!(s.num_blocks(), 3);
        assert_eq!(s.blocks(), vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
    }

    #[test]
    fn closure_errors() {
        let gens = vec![p(3, &[&[0, 1]])];
        assert_eq!(
            block_closure(&gens, 3, &[0]).unwrap_err(),
            Error::NotTransitive { degree: 3 }
        );
        assert_eq!(
            block_closure(&c6(), 6, &[1, 2]).unwrap_err(),
            Error::SeedMissingBase
        );
    }

    #[test]
    fn cyclic_six_has_four_systems() {
        let systems = all_block_systems(&c6(), 6, DEFAULT_MAX_DEGREE).unwrap();
        let mut counts: Vec<usize> = systems.iter().map(BlockSystem::num_blocks).collect();
        counts.sort_unstable();
        assert_eq!(counts, vec![1, 2, 3, 6]);
    }

    #[test]
    fn natural_s5_is_primitive() {
        let gens = vec![p(5, &[&[0, 1]]), p(5, &[&[0, 1, 2, 3, 4]])];
        let systems = all_block_systems(&gens, 5, DEFAULT_MAX_DEGREE).unwrap();
        assert_eq!(systems.len(), 2);
        assert!(systems.iter().all(BlockSystem::is_trivial));
    }

    #[test]
    fn degree_one() {
        let systems = all_block_systems(&[], 1, DEFAULT_MAX_DEGREE).unwrap();
        assert_eq!(systems, vec![BlockSystem::one_block(1)]);
    }

    #[test]
    fn cap_is_enforced() {
        let gens = vec![Permutation::cycle(17, &(0..17).collect::<Vec<_>>()).unwrap()];
        let err = all_block_systems(&gens, 17, DEFAULT_MAX_DEGREE).unwrap_err();
        assert_eq!(
            err,
            Error::DegreeCapExceeded {
                degree: 17,
                cap: 16
            }
        );
        assert!(err.to_string().contains("16"));
    }

    #[test]
    fn induced_actions() {
        let sigma = p(6, &[&[0, 1, 2, 3, 4, 5]]);
        let thirds = BlockSystem::from_labels(&[0, 1, 2, 0, 1, 2]);
        let (induced, lengths) = action_on_blocks(&sigma, &thirds).unwrap();
        assert_eq!(lengths, vec![3]);
        assert_eq!(induced.to_string(), "(0 1 2)");

        let halves = BlockSystem::from_labels(&[0, 1, 0, 1, 0, 1]);
        let (_, lengths) = action_on_blocks(&sigma, &halves).unwrap();
        assert_eq!(lengths, vec![2]);

        let (induced, lengths) = action_on_blocks(&Permutation::identity(6), &thirds).unwrap();
        assert!(induced.is_identity());
        assert_eq!(lengths, vec![1, 1, 1]);
    }

    #[test]
    fn induced_action_rejects_non_invariant() {
        let sigma = p(4, &[&[0, 1]]);
        let bad = BlockSystem::from_labels(&[0, 0, 1, 1]);
        assert!(action_on_blocks(&sigma, &bad).is_ok());
        let bad = BlockSystem::from_labels(&[0, 1, 0, 1]);
        assert!(matches!(
            action_on_blocks(&sigma, &bad),
            Err(Error::NotInvariant(_))
        ));
    }

    #[test]
    fn refinement_and_meet() {
        let halves = BlockSystem::from_labels(&[0, 1, 0, 1, 0, 1]);
        let thirds = BlockSystem::from_labels(&[0, 1, 2, 0, 1, 2]);
        let meet = halves.common_refinement(&thirds).unwrap();
        assert_eq!(meet, BlockSystem::singletons(6));
        assert!(meet.refines(&halves) && meet.refines(&thirds));
        assert!(!halves.refines(&thirds));
        assert!(halves.refines(&BlockSystem::one_block(6)));
    }

    #[test]
    fn labels_are_normalized() {
        let s = BlockSystem::from_labels(&['z', 'a', 'z', 'q']);
        assert_eq!(s.block_of(), &[0, 1, 0, 2]);
        assert_eq!(s.to_string(), "{{0,2},{1},{3}}");
    }
}
