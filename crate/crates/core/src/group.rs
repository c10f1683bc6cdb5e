//! Finite groups as validated Cayley tables over `0..n`, with the identity
//! pinned at index 0, plus the subgroup machinery (closure, full subgroup
//! enumeration, cosets, core, normalizer) used throughout the crate.
//!
//! Everything here works on element *indices*; when a group is built from
//! permutations the concrete realization is kept alongside so callers can
//! translate cycle words back to indices.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::perm::{PermGroup, Permutation};

/// Default ceiling for full subgroup enumeration.
pub const DEFAULT_SUBGROUP_CAP: usize = 48;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not square or has out-of-range entries")]
    MalformedTable,
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("row {0} of the table is not a permutation")]
    RowNotBijective(usize),
    #[error("column {0} of the table is not a permutation")]
    ColumnNotBijective(usize),
    #[error("associativity fails at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("image table {image:?} is not a bijection")]
    NotABijection { image: Vec<usize> },
    #[error("cycle word {text:?} is malformed: {why}")]
    MalformedCycle { text: String, why: String },
    #[error("point {point} outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("closure exceeded the cap of {cap} elements")]
    ClosureTooLarge { cap: usize },
    #[error("group of order {order} exceeds the subgroup-enumeration cap of {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("argument is not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("element index {index} outside 0..{order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("set is not a subgroup: {0}")]
    SubgroupInvalid(String),
    #[error("not a transversal: {0}")]
    InvalidTransversal(String),
    #[error("unknown catalog family {0:?}")]
    UnknownFamily(String),
    #[error("parameter {parameter} out of range for family {family}: {why}")]
    ParameterOutOfRange {
        family: String,
        parameter: usize,
        why: String,
    },
}

/// A finite group: validated Cayley table, identity at index 0, inverses
/// precomputed.  Immutable after construction.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    /// Concrete permutation per element when the group was built from
    /// permutations (catalog symmetric/alternating, generator files).
    perms: Option<Vec<Permutation>>,
}

impl FiniteGroup {
    /// Validates a raw Cayley table.  If the two-sided identity is not at
    /// index 0, elements are relabeled by swapping it there first.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Self::build(name, table, None, true)
    }

    /// Closes `generators` under composition and builds the Cayley table of
    /// the abstract group on the enumerated elements (sorted
    /// lexicographically by image table, which puts the identity first).
    pub fn from_permutations(
        name: &str,
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        let pg = PermGroup::generate(degree, generators, cap)?;
        Self::from_perm_elements(name, pg.elements().to_vec())
    }

    /// Builds the abstract group on an already-closed element list.
    pub(crate) fn from_perm_elements(
        name: &str,
        elements: Vec<Permutation>,
    ) -> Result<Self, GroupError> {
        let n = elements.len();
        let index_of = |p: &Permutation| -> usize {
            elements
                .binary_search(p)
                .expect("closure must contain all products")
        };
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                table[i][j] = index_of(&elements[i].compose(&elements[j]));
            }
        }
        // Associativity is inherited from function composition; the full
        // triple scan is still run at desk scale as a tripwire for closure
        // bugs, and skipped only where it would be quadratically absurd.
        Self::build(name, table, Some(elements), n <= 512)
    }

    fn build(
        name: &str,
        mut table: Vec<Vec<usize>>,
        mut perms: Option<Vec<Permutation>>,
        check_associativity: bool,
    ) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n) {
            return Err(GroupError::MalformedTable);
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(GroupError::MalformedTable);
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| table[e][j] == j) && (0..n).all(|i| table[i][e] == i))
            .ok_or(GroupError::NoIdentity)?;
        if identity != 0 {
            let relabel = |x: usize| {
                if x == identity {
                    0
                } else if x == 0 {
                    identity
                } else {
                    x
                }
            };
            let old = table.clone();
            for i in 0..n {
                for j in 0..n {
                    table[i][j] = relabel(old[relabel(i)][relabel(j)]);
                }
            }
            if let Some(ps) = perms.as_mut() {
                ps.swap(0, identity);
            }
        }
        for (i, row) in table.iter().enumerate() {
            let mut seen = vec![false; n];
            for &x in row {
                if seen[x] {
                    return Err(GroupError::RowNotBijective(i));
                }
                seen[x] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if seen[row[j]] {
                    return Err(GroupError::ColumnNotBijective(j));
                }
                seen[row[j]] = true;
            }
        }
        if check_associativity {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a][b];
                    for c in 0..n {
                        if table[ab][c] != table[a][table[b][c]] {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|i| (0..n).find(|&j| table[i][j] == 0).expect("Latin row"))
            .collect::<Vec<_>>();
        for (i, &j) in inverse.iter().enumerate() {
            if table[j][i] != 0 {
                // cannot happen once associativity holds; kept as a tripwire
                return Err(GroupError::NotAssociative { a: j, b: i, c: j });
            }
        }
        Ok(FiniteGroup {
            name: name.to_string(),
            table,
            inverse,
            perms,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conjugate(&self, x: usize, by: usize) -> usize {
        self.mul(self.mul(self.inv(by), x), by)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Concrete permutation realization of element `i`, when known.
    pub fn element_perm(&self, i: usize) -> Option<&Permutation> {
        self.perms.as_ref().map(|ps| &ps[i])
    }

    pub fn has_perm_realization(&self) -> bool {
        self.perms.is_some()
    }

    /// Index of a concrete permutation, when the group has a realization.
    pub fn perm_index(&self, p: &Permutation) -> Option<usize> {
        let ps = self.perms.as_ref()?;
        ps.iter().position(|q| q == p)
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (a..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// A subgroup, stored as its sorted element-index list (so index 0 of the
/// list is always the group identity).  Validated against a parent group at
/// construction; operations take the parent explicitly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validates that `elements` is closed, contains the identity, and
    /// contains inverses.
    pub fn new(g: &FiniteGroup, elements: Vec<usize>) -> Result<Self, GroupError> {
        let mut sorted: Vec<usize> = elements;
        sorted.sort_unstable();
        sorted.dedup();
        for &x in &sorted {
            if x >= g.order() {
                return Err(GroupError::ElementOutOfRange {
                    index: x,
                    order: g.order(),
                });
            }
        }
        if sorted.first() != Some(&0) {
            return Err(GroupError::SubgroupInvalid("missing the identity".into()));
        }
        for &a in &sorted {
            if sorted.binary_search(&g.inv(a)).is_err() {
                return Err(GroupError::SubgroupInvalid(format!(
                    "inverse of {a} is missing"
                )));
            }
            for &b in &sorted {
                if sorted.binary_search(&g.mul(a, b)).is_err() {
                    return Err(GroupError::SubgroupInvalid(format!(
                        "not closed: {a} * {b} escapes"
                    )));
                }
            }
        }
        Ok(Subgroup { elements: sorted })
    }

    /// The subgroup generated by `seed` (the trivial subgroup for an empty
    /// seed).
    pub fn generated(g: &FiniteGroup, seed: &[usize]) -> Result<Self, GroupError> {
        for &x in seed {
            if x >= g.order() {
                return Err(GroupError::ElementOutOfRange {
                    index: x,
                    order: g.order(),
                });
            }
        }
        let mut elements: BTreeSet<usize> = BTreeSet::new();
        elements.insert(0);
        let mut queue: Vec<usize> = vec![0];
        while let Some(a) = queue.pop() {
            for &s in seed {
                let b = g.mul(a, s);
                if elements.insert(b) {
                    queue.push(b);
                }
            }
        }
        Ok(Subgroup {
            elements: elements.into_iter().collect(),
        })
    }

    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            elements: (0..g.order()).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn index_in(&self, g: &FiniteGroup) -> usize {
        g.order() / self.order()
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.elements.iter().all(|&x| self.contains(x))
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        (0..g.order()).all(|x| {
            self.elements
                .iter()
                .all(|&h| self.contains(g.conjugate(h, x)))
        })
    }

    /// Every element is an involution (or the identity) and any two
    /// commute.  The square condition forces commutativity, but both are
    /// checked independently.
    pub fn is_elementary_abelian_2(&self, g: &FiniteGroup) -> bool {
        let squares = self.elements.iter().all(|&x| g.mul(x, x) == 0);
        let abelian = self
            .elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
        squares && abelian
    }

    /// The Cayley table of the subgroup itself, elements relabeled by their
    /// sorted position.
    pub fn as_group(&self, g: &FiniteGroup, name: &str) -> Result<FiniteGroup, GroupError> {
        let pos = |x: usize| self.elements.binary_search(&x).expect("closed");
        let table: Vec<Vec<usize>> = self
            .elements
            .iter()
            .map(|&a| self.elements.iter().map(|&b| pos(g.mul(a, b))).collect())
            .collect();
        FiniteGroup::from_table(name, table)
    }
}

/// The partition of `G` into right cosets `Hg`.  Blocks are sorted
/// ascending internally and ordered by smallest member, so block 0 is `H`
/// itself.
pub fn right_cosets(g: &FiniteGroup, h: &Subgroup) -> Vec<Vec<usize>> {
    let mut block_of = vec![usize::MAX; g.order()];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..g.order() {
        if block_of[x] != usize::MAX {
            continue;
        }
        let mut block: Vec<usize> = h.elements().iter().map(|&e| g.mul(e, x)).collect();
        block.sort_unstable();
        for &y in &block {
            block_of[y] = blocks.len();
        }
        blocks.push(block);
    }
    blocks
}

/// `element -> right-coset block index` lookup for the partition returned
/// by [`right_cosets`].
pub fn coset_block_of(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let blocks = right_cosets(g, h);
    let mut block_of = vec![0; g.order()];
    for (b, block) in blocks.iter().enumerate() {
        for &x in block {
            block_of[x] = b;
        }
    }
    block_of
}

/// The core of `H` in `G`: the intersection of all conjugates of `H`, i.e.
/// the largest normal subgroup of `G` inside `H`.
pub fn core(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let elements: Vec<usize> = h
        .elements()
        .iter()
        .copied()
        .filter(|&x| (0..g.order()).all(|c| h.contains(g.conjugate(x, c))))
        .collect();
    Subgroup::new(g, elements).expect("core is a subgroup")
}

pub fn is_core_free(g: &FiniteGroup, h: &Subgroup) -> bool {
    core(g, h).is_trivial()
}

/// `N_G(H) = {x | x^-1 H x = H}`, by scanning all of `G`.
pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let elements: Vec<usize> = (0..g.order())
        .filter(|&x| h.elements().iter().all(|&e| h.contains(g.conjugate(e, x))))
        .collect();
    Subgroup::new(g, elements).expect("normalizer is a subgroup")
}

pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>, GroupError> {
    all_subgroups_with_cap(g, DEFAULT_SUBGROUP_CAP)
}

/// Every subgroup of `G`, by saturating the set of known subgroups under
/// "adjoin one generator and close".  Exhaustive because any subgroup is
/// reached one generator at a time from the trivial one.  Sorted by
/// (order, elements).
pub fn all_subgroups_with_cap(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
    if g.order() > cap {
        return Err(GroupError::GroupTooLarge {
            order: g.order(),
            cap,
        });
    }
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(vec![0]);
    let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
    while let Some(base) = frontier.pop() {
        for x in 1..g.order() {
            if base.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = base.clone();
            seed.push(x);
            let bigger = Subgroup::generated(g, &seed).expect("indices in range");
            if found.insert(bigger.elements().to_vec()) {
                frontier.push(bigger.elements().to_vec());
            }
        }
    }
    let mut subgroups: Vec<Subgroup> = found
        .into_iter()
        .map(|elements| Subgroup { elements })
        .collect();
    subgroups.sort_by_key(|s| (s.order(), s.elements().to_vec()));
    Ok(subgroups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, Family};

    fn z4() -> FiniteGroup {
        catalog(&Family::Cyclic(4)).unwrap()
    }

    fn sym3() -> FiniteGroup {
        catalog(&Family::Symmetric(3)).unwrap()
    }

    #[test]
    fn identity_is_relocated_to_index_zero() {
        // Z2 written with the identity at index 1
        let g = FiniteGroup::from_table("z2-shifted", vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.mul(0, 0), 0);
        assert_eq!(g.mul(1, 1), 0);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn missing_identity_is_reported() {
        let t = vec![vec![1, 0], vec![1, 0]];
        assert!(matches!(
            FiniteGroup::from_table("bad", t),
            Err(GroupError::NoIdentity)
        ));
    }

    #[test]
    fn non_latin_rows_are_reported() {
        // identity row/column fine, but row 1 repeats an entry
        let t = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]];
        assert!(matches!(
            FiniteGroup::from_table("bad", t),
            Err(GroupError::RowNotBijective(1)) | Err(GroupError::ColumnNotBijective(_))
        ));
    }

    #[test]
    fn subgroup_validation() {
        let g = z4();
        assert!(Subgroup::new(&g, vec![0, 2]).is_ok());
        assert!(matches!(
            Subgroup::new(&g, vec![0, 1]),
            Err(GroupError::SubgroupInvalid(_))
        ));
        assert!(matches!(
            Subgroup::new(&g, vec![1, 2]),
            Err(GroupError::SubgroupInvalid(_))
        ));
        assert!(matches!(
            Subgroup::new(&g, vec![0, 9]),
            Err(GroupError::ElementOutOfRange { index: 9, .. })
        ));
    }

    #[test]
    fn generated_subgroup_of_empty_seed_is_trivial() {
        let g = z4();
        assert_eq!(Subgroup::generated(&g, &[]).unwrap().elements(), &[0]);
        assert_eq!(Subgroup::generated(&g, &[1]).unwrap().order(), 4);
        assert_eq!(Subgroup::generated(&g, &[2]).unwrap().elements(), &[0, 2]);
    }

    #[test]
    fn z4_has_three_subgroups() {
        let subs = all_subgroups(&z4()).unwrap();
        let sets: Vec<&[usize]> = subs.iter().map(|s| s.elements()).collect();
        assert_eq!(sets, vec![&[0][..], &[0, 2][..], &[0, 1, 2, 3][..]]);
    }

    #[test]
    fn sym3_has_six_subgroups() {
        let subs = all_subgroups(&sym3()).unwrap();
        assert_eq!(subs.len(), 6);
        let orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn subgroup_cap_is_enforced() {
        let g = catalog(&Family::Cyclic(12)).unwrap();
        assert!(matches!(
            all_subgroups_with_cap(&g, 10),
            Err(GroupError::GroupTooLarge { order: 12, cap: 10 })
        ));
    }

    #[test]
    fn right_cosets_partition_by_smallest_member() {
        let g = sym3();
        let h = Subgroup::generated(&g, &[2]).unwrap(); // generated by (1 2)
        assert_eq!(h.elements(), &[0, 2]);
        let blocks = right_cosets(&g, &h);
        assert_eq!(blocks, vec![vec![0, 2], vec![1, 4], vec![3, 5]]);
    }

    #[test]
    fn core_and_normalizer_in_sym3() {
        let g = sym3();
        let h = Subgroup::generated(&g, &[2]).unwrap();
        assert!(is_core_free(&g, &h));
        assert_eq!(normalizer(&g, &h).elements(), h.elements());
        let a3 = Subgroup::generated(&g, &[3]).unwrap();
        assert_eq!(a3.order(), 3);
        assert!(a3.is_normal(&g));
        assert_eq!(core(&g, &a3).elements(), a3.elements());
        assert_eq!(normalizer(&g, &a3).order(), 6);
    }

    #[test]
    fn elementary_abelian_two_subgroups() {
        let g = catalog(&Family::Klein4).unwrap();
        assert!(Subgroup::whole(&g).is_elementary_abelian_2(&g));
        let z4 = z4();
        assert!(!Subgroup::whole(&z4).is_elementary_abelian_2(&z4));
        assert!(Subgroup::new(&z4, vec![0, 2])
            .unwrap()
            .is_elementary_abelian_2(&z4));
    }

    #[test]
    fn subgroup_as_group_relabels() {
        let g = sym3();
        let a3 = Subgroup::generated(&g, &[3]).unwrap();
        let q = a3.as_group(&g, "a3").unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(q.table(), catalog(&Family::Cyclic(3)).unwrap().table());
    }
}
