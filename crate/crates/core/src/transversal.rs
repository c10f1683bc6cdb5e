//! Right transversals of a subgroup and the right loops they induce.
//!
//! A right transversal of `H` in `G` picks one representative from every
//! right coset `Hg`.  Here transversals are *normalized*: the coset `H`
//! itself is represented by the identity, and representatives are stored
//! aligned with the coset blocks of [`crate::group::right_cosets`] (so
//! `reps[i]` lies in `blocks[i]`).  With that alignment the induced loop
//! operation is simply `i * j = block containing reps[i] * reps[j]`.

use std::collections::BTreeSet;

use crate::group::{coset_block_of, right_cosets, FiniteGroup, GroupError, Subgroup};
use crate::rightloop::{LoopRelation, RightLoop};
use crate::rng::SplitMix64;

/// A normalized right transversal: one representative per right coset,
/// identity first, aligned with the sorted coset blocks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Transversal {
    reps: Vec<usize>,
}

impl Transversal {
    /// Validate a set of representatives (in any order) against the right
    /// cosets of `h` and store them block-aligned.
    pub fn new(
        group: &FiniteGroup,
        h: &Subgroup,
        raw_reps: &[usize],
    ) -> Result<Transversal, GroupError> {
        let blocks = right_cosets(group, h);
        if raw_reps.len() != blocks.len() {
            return Err(GroupError::InvalidTransversal(format!(
                "expected {} representatives (one per coset), got {}",
                blocks.len(),
                raw_reps.len()
            )));
        }
        let block_of = coset_block_of(group, h);
        let mut reps = vec![usize::MAX; blocks.len()];
        for &r in raw_reps {
            if r >= group.order() {
                return Err(GroupError::ElementOutOfRange {
                    index: r,
                    order: group.order(),
                });
            }
            let b = block_of[r];
            if reps[b] != usize::MAX {
                return Err(GroupError::InvalidTransversal(format!(
                    "elements {} and {} represent the same coset",
                    reps[b], r
                )));
            }
            reps[b] = r;
        }
        if let Some(missing) = reps.iter().position(|&r| r == usize::MAX) {
            return Err(GroupError::InvalidTransversal(format!(
                "coset {:?} has no representative",
                blocks[missing]
            )));
        }
        if reps[0] != 0 {
            return Err(GroupError::InvalidTransversal(format!(
                "the subgroup's own coset must be represented by the identity, got {}",
                reps[0]
            )));
        }
        Ok(Transversal { reps })
    }

    fn from_aligned(reps: Vec<usize>) -> Transversal {
        Transversal { reps }
    }

    /// Representatives, block-aligned (`reps[0]` is the identity).
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// Number of normalized right transversals, `|H| ^ (number of cosets - 1)`,
/// as long as it does not exceed `limit`; `None` if it does.
pub fn count_within(group: &FiniteGroup, h: &Subgroup, limit: u64) -> Option<u64> {
    let blocks = right_cosets(group, h);
    let mut total: u64 = 1;
    for _ in 1..blocks.len() {
        total = total.checked_mul(h.order() as u64)?;
        if total > limit {
            return None;
        }
    }
    if total > limit {
        return None;
    }
    Some(total)
}

/// Lazy lexicographic enumeration of every normalized right transversal.
pub struct TransversalIter {
    candidates: Vec<Vec<usize>>,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for TransversalIter {
    type Item = Transversal;

    fn next(&mut self) -> Option<Transversal> {
        if self.done {
            return None;
        }
        let reps: Vec<usize> = self
            .digits
            .iter()
            .zip(&self.candidates)
            .map(|(&d, block)| block[d])
            .collect();
        // mixed-radix increment, rightmost digit fastest: tuple-lex order
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.candidates[i].len() {
                break;
            }
            self.digits[i] = 0;
        }
        Some(Transversal::from_aligned(reps))
    }
}

/// All normalized right transversals of `h`, ascending in lexicographic
/// order of their representative tuples.
pub fn all_transversals(group: &FiniteGroup, h: &Subgroup) -> TransversalIter {
    let blocks = right_cosets(group, h);
    let mut candidates: Vec<Vec<usize>> = blocks.into_iter().collect();
    candidates[0] = vec![0];
    let digits = vec![0; candidates.len()];
    TransversalIter {
        candidates,
        digits,
        done: false,
    }
}

/// `count` distinct transversals drawn with a seeded generator, returned in
/// ascending order.  Falls back to full enumeration when there are at most
/// `count` transversals in total.
pub fn sample_transversals(
    group: &FiniteGroup,
    h: &Subgroup,
    count: usize,
    seed: u64,
) -> Vec<Transversal> {
    if count_within(group, h, count as u64).is_some() {
        return all_transversals(group, h).collect();
    }
    let blocks = right_cosets(group, h);
    let mut rng = SplitMix64::new(seed);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    while seen.len() < count {
        let mut reps = Vec::with_capacity(blocks.len());
        reps.push(0);
        for block in &blocks[1..] {
            reps.push(block[rng.below(block.len())]);
        }
        seen.insert(reps);
    }
    seen.into_iter().map(Transversal::from_aligned).collect()
}

/// Survey/CLI cap rule: list everything when the total count is at most
/// `limit`, otherwise draw `sample` seeded distinct transversals.  The
/// second component reports whether sampling kicked in.
pub fn transversals_capped(
    group: &FiniteGroup,
    h: &Subgroup,
    limit: u64,
    sample: usize,
    seed: u64,
) -> (Vec<Transversal>, bool) {
    if count_within(group, h, limit).is_some() {
        (all_transversals(group, h).collect(), false)
    } else {
        (sample_transversals(group, h, sample, seed), true)
    }
}

/// The right loop induced on coset positions: `i * j` is the block holding
/// `reps[i] * reps[j]`.
pub fn induced_loop(group: &FiniteGroup, h: &Subgroup, t: &Transversal) -> RightLoop {
    let blocks = right_cosets(group, h);
    let block_of = coset_block_of(group, h);
    let k = blocks.len();
    let table: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| block_of[group.mul(t.reps()[i], t.reps()[j])])
                .collect()
        })
        .collect();
    let label = format!("{} mod {:?} via {:?}", group.name(), h.elements(), t.reps());
    RightLoop::from_table(&label, table).expect("coset positions always form a right loop")
}

/// Whether the representatives generate the whole group.
pub fn is_generating(group: &FiniteGroup, t: &Transversal) -> bool {
    Subgroup::generated(group, t.reps())
        .expect("transversal representatives are valid elements")
        .order()
        == group.order()
}

/// The lexicographically first generating transversal, if one exists.
pub fn find_generating_transversal(group: &FiniteGroup, h: &Subgroup) -> Option<Transversal> {
    all_transversals(group, h).find(|t| is_generating(group, t))
}

/// The action of a subgroup element on coset positions through the
/// transversal: position `x` moves to the block holding `reps[x] * helem`.
pub fn theta_action(
    group: &FiniteGroup,
    h: &Subgroup,
    t: &Transversal,
    x: usize,
    helem: usize,
) -> usize {
    debug_assert!(h.contains(helem));
    let block_of = coset_block_of(group, h);
    block_of[group.mul(t.reps()[x], helem)]
}

/// Elements of `h` whose [`theta_action`] fixes position `x`.
pub fn stab_h(group: &FiniteGroup, h: &Subgroup, t: &Transversal, x: usize) -> Vec<usize> {
    let block_of = coset_block_of(group, h);
    h.elements()
        .iter()
        .copied()
        .filter(|&helem| block_of[group.mul(t.reps()[x], helem)] == x)
        .collect()
}

/// Partition of coset positions by equal [`stab_h`] sets.
pub fn stab_partition(group: &FiniteGroup, h: &Subgroup, t: &Transversal) -> LoopRelation {
    let k = t.len();
    let signatures: Vec<Vec<usize>> = (0..k).map(|x| stab_h(group, h, t, x)).collect();
    partition_by_signature(&signatures)
}

/// Stabilizer of position `x` under the right-multiplication action of the
/// whole group on the coset space: every `g` keeping `reps[x] * g` inside the
/// coset at `x`, i.e. the conjugate `reps[x]^-1 * H * reps[x]` as a sorted
/// element list.
pub fn coset_stab(group: &FiniteGroup, h: &Subgroup, t: &Transversal, x: usize) -> Vec<usize> {
    let block_of = coset_block_of(group, h);
    (0..group.order())
        .filter(|&g| block_of[group.mul(t.reps()[x], g)] == x)
        .collect()
}

/// Partition of coset positions by equal [`coset_stab`] sets (the stability
/// relation of the coset action).
pub fn coset_stab_partition(group: &FiniteGroup, h: &Subgroup, t: &Transversal) -> LoopRelation {
    let k = t.len();
    let signatures: Vec<Vec<usize>> = (0..k).map(|x| coset_stab(group, h, t, x)).collect();
    partition_by_signature(&signatures)
}

fn partition_by_signature(signatures: &[Vec<usize>]) -> LoopRelation {
    let k = signatures.len();
    let mut class_of = vec![usize::MAX; k];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..k {
        match reps.iter().position(|&r| signatures[r] == signatures[x]) {
            Some(c) => class_of[x] = c,
            None => {
                class_of[x] = reps.len();
                reps.push(x);
            }
        }
    }
    LoopRelation::from_class_map(&class_of)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, Family};

    fn s3_with_h() -> (FiniteGroup, Subgroup) {
        let g = catalog(&Family::Symmetric(3)).unwrap();
        let h = Subgroup::generated(&g, &[2]).unwrap(); // {identity, the (1 2) swap}
        (g, h)
    }

    #[test]
    fn s3_has_four_transversals_in_order() {
        let (g, h) = s3_with_h();
        assert_eq!(count_within(&g, &h, 100), Some(4));
        let all: Vec<Vec<usize>> = all_transversals(&g, &h)
            .map(|t| t.reps().to_vec())
            .collect();
        assert_eq!(
            all,
            vec![vec![0, 1, 3], vec![0, 1, 5], vec![0, 4, 3], vec![0, 4, 5]]
        );
    }

    #[test]
    fn validation_rejects_bad_representative_sets() {
        let (g, h) = s3_with_h();
        // two reps from one coset
        assert!(matches!(
            Transversal::new(&g, &h, &[0, 1, 4]),
            Err(GroupError::InvalidTransversal(_))
        ));
        // wrong length
        assert!(matches!(
            Transversal::new(&g, &h, &[0, 1]),
            Err(GroupError::InvalidTransversal(_))
        ));
        // subgroup coset represented by a non-identity element
        assert!(matches!(
            Transversal::new(&g, &h, &[2, 1, 3]),
            Err(GroupError::InvalidTransversal(_))
        ));
        // out-of-range element
        assert!(matches!(
            Transversal::new(&g, &h, &[0, 1, 9]),
            Err(GroupError::ElementOutOfRange { .. })
        ));
        // unordered input is fine and gets aligned
        let t = Transversal::new(&g, &h, &[3, 0, 1]).unwrap();
        assert_eq!(t.reps(), &[0, 1, 3]);
    }

    #[test]
    fn s3_induced_loop_matches_hand_computation() {
        let (g, h) = s3_with_h();
        let t = Transversal::new(&g, &h, &[0, 1, 5]).unwrap();
        let lp = induced_loop(&g, &h, &t);
        assert_eq!(lp.table(), &[vec![0, 1, 2], vec![1, 0, 1], vec![2, 2, 0]]);
        // exactly one of the four transversals (the cyclic complement) is
        // closed under the group operation and induces a group
        let assoc: Vec<Vec<usize>> = all_transversals(&g, &h)
            .filter(|t| induced_loop(&g, &h, t).is_associative())
            .map(|t| t.reps().to_vec())
            .collect();
        assert_eq!(assoc, vec![vec![0, 4, 3]]);
    }

    #[test]
    fn d4_transversals_and_first_generating() {
        let g = catalog(&Family::Dihedral(4)).unwrap();
        let h = Subgroup::generated(&g, &[4]).unwrap(); // {identity, reflection}
        assert_eq!(h.elements(), &[0, 4]);
        let blocks = right_cosets(&g, &h);
        assert_eq!(blocks, vec![vec![0, 4], vec![1, 7], vec![2, 6], vec![3, 5]]);
        assert_eq!(count_within(&g, &h, 100), Some(8));
        let all: Vec<Transversal> = all_transversals(&g, &h).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0].reps(), &[0, 1, 2, 3]);
        // the rotation subgroup is a proper subgroup, so [0,1,2,3] does not generate
        assert!(!is_generating(&g, &all[0]));
        let first = find_generating_transversal(&g, &h).unwrap();
        assert_eq!(first.reps(), &[0, 1, 2, 5]);
    }

    #[test]
    fn whole_group_and_trivial_subgroup_edge_cases() {
        let g = catalog(&Family::Cyclic(4)).unwrap();
        let whole = Subgroup::whole(&g);
        let all: Vec<Transversal> = all_transversals(&g, &whole).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].reps(), &[0]);
        assert_eq!(induced_loop(&g, &whole, &all[0]).order(), 1);

        let trivial = Subgroup::trivial();
        let all: Vec<Transversal> = all_transversals(&g, &trivial).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].reps(), &[0, 1, 2, 3]);
        let lp = induced_loop(&g, &trivial, &all[0]);
        assert_eq!(lp.table(), g.table());
    }

    #[test]
    fn sampling_is_deterministic_distinct_and_sorted() {
        let g = catalog(&Family::Dihedral(4)).unwrap();
        let h = Subgroup::generated(&g, &[4]).unwrap();
        let a = sample_transversals(&g, &h, 5, 42);
        let b = sample_transversals(&g, &h, 5, 42);
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        let mut sorted = a.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, a);
        let c = sample_transversals(&g, &h, 5, 43);
        assert_eq!(c.len(), 5);
        // oversampling falls back to the full list
        let full = sample_transversals(&g, &h, 100, 7);
        assert_eq!(full.len(), 8);
    }

    #[test]
    fn capped_rule_switches_between_all_and_sample() {
        let g = catalog(&Family::Dihedral(4)).unwrap();
        let h = Subgroup::generated(&g, &[4]).unwrap();
        let (all, sampled) = transversals_capped(&g, &h, 8, 4, 0);
        assert_eq!(all.len(), 8);
        assert!(!sampled);
        let (some, sampled) = transversals_capped(&g, &h, 7, 4, 0);
        assert_eq!(some.len(), 4);
        assert!(sampled);
    }

    #[test]
    fn theta_action_and_stabilizers_on_s3() {
        let (g, h) = s3_with_h();
        let t = Transversal::new(&g, &h, &[0, 1, 5]).unwrap();
        // identity of the subgroup never moves a position
        for x in 0..3 {
            assert_eq!(theta_action(&g, &h, &t, x, 0), x);
        }
        // the swap fixes position 0 and exchanges the other two cosets
        assert_eq!(theta_action(&g, &h, &t, 0, 2), 0);
        assert_eq!(theta_action(&g, &h, &t, 1, 2), 2);
        assert_eq!(theta_action(&g, &h, &t, 2, 2), 1);
        assert_eq!(stab_h(&g, &h, &t, 0), vec![0, 2]);
        assert_eq!(stab_h(&g, &h, &t, 1), vec![0]);
        assert_eq!(stab_h(&g, &h, &t, 2), vec![0]);
        let part = stab_partition(&g, &h, &t);
        assert_eq!(part.classes(), &[vec![0], vec![1, 2]]);
    }

    #[test]
    fn theta_action_is_an_action() {
        let g = catalog(&Family::Dihedral(4)).unwrap();
        let h = Subgroup::generated(&g, &[4]).unwrap();
        for t in all_transversals(&g, &h) {
            for x in 0..t.len() {
                for &h1 in h.elements() {
                    for &h2 in h.elements() {
                        let step = theta_action(&g, &h, &t, theta_action(&g, &h, &t, x, h1), h2);
                        let joint = theta_action(&g, &h, &t, x, g.mul(h1, h2));
                        assert_eq!(step, joint);
                    }
                }
            }
        }
    }
}
