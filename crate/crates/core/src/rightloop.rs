//! Right loops: magmas with a two-sided identity in which every equation
//! `X * a = b` has a unique solution.  Equivalently, the table's columns
//! are bijections while rows are unconstrained, so these are strictly more
//! general than groups and quasigroups.
//!
//! Congruences, invariant subloops, quotients, and brute-force isomorphism
//! live here too.  A relation is a congruence when it is closed under the
//! componentwise operation *and* componentwise right division, i.e. when it
//! is a sub-right-loop of the direct square.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::group::FiniteGroup;
use crate::perm::Permutation;

/// Default ceiling for congruence enumeration (Bell-number growth).
pub const DEFAULT_CONGRUENCE_CAP: usize = 12;
/// Default ceiling for brute-force isomorphism (factorial growth).
pub const DEFAULT_ISO_CAP: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LoopError {
    #[error("table is not square or has out-of-range entries")]
    MalformedTable,
    #[error("element 0 is not a two-sided identity")]
    NoIdentity,
    #[error("column {0} is not a bijection (some X * {0} = b is unsolvable or ambiguous)")]
    ColumnNotBijective(usize),
    #[error("inner map at ({y}, {z}) differs between its defining equation and the translation composite; composition order is inconsistent")]
    ConventionMismatch { y: usize, z: usize },
    #[error("loop of order {order} exceeds the cap of {cap} for this operation")]
    LoopTooLarge { order: usize, cap: usize },
    #[error("closure exceeded the cap of {cap} elements")]
    ClosureTooLarge { cap: usize },
    #[error("classes do not partition the loop: {0}")]
    MalformedRelation(String),
    #[error("relation is not a congruence")]
    NotACongruence,
    #[error("quotient is ill-defined: representatives of the same class disagree at ({x}, {y})")]
    IllDefined { x: usize, y: usize },
    #[error("permutation is not a member of the right multiplication group")]
    NotInMultGroup,
}

/// A right loop of order `k` on the elements `0..k`, with 0 the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightLoop {
    label: String,
    table: Vec<Vec<usize>>,
}

impl RightLoop {
    /// Validates identity and column bijectivity; rows may be arbitrary.
    pub fn from_table(label: &str, table: Vec<Vec<usize>>) -> Result<Self, LoopError> {
        let k = table.len();
        if k == 0 || table.iter().any(|row| row.len() != k) {
            return Err(LoopError::MalformedTable);
        }
        if table.iter().flatten().any(|&x| x >= k) {
            return Err(LoopError::MalformedTable);
        }
        if (0..k).any(|j| table[0][j] != j) || (0..k).any(|i| table[i][0] != i) {
            return Err(LoopError::NoIdentity);
        }
        for y in 0..k {
            let mut seen = vec![false; k];
            for row in &table {
                if seen[row[y]] {
                    return Err(LoopError::ColumnNotBijective(y));
                }
                seen[row[y]] = true;
            }
        }
        Ok(RightLoop {
            label: label.to_string(),
            table,
        })
    }

    /// Any group table is a right loop.
    pub fn from_group(g: &FiniteGroup) -> Self {
        RightLoop::from_table(g.name(), g.table().to_vec()).expect("group tables are right loops")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// The right translation `R_y : x -> x * y` (column `y` of the table).
    pub fn right_translation(&self, y: usize) -> Permutation {
        Permutation::from_images(self.table.iter().map(|row| row[y]).collect())
            .expect("columns are bijections")
    }

    /// The unique `x` with `x * y = b`.
    pub fn right_divide(&self, b: usize, y: usize) -> usize {
        (0..self.order())
            .find(|&x| self.table[x][y] == b)
            .expect("columns are bijections")
    }

    /// Full triple scan.  For a finite right loop associativity already
    /// forces a group structure.
    pub fn is_associative(&self) -> bool {
        let k = self.order();
        (0..k).all(|x| {
            (0..k).all(|y| (0..k).all(|z| self.op(x, self.op(y, z)) == self.op(self.op(x, y), z)))
        })
    }
}

/// An equivalence relation on loop elements, kept in canonical form:
/// each class sorted ascending, classes ordered by smallest member (so the
/// class of the identity is always first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopRelation {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl LoopRelation {
    pub fn from_classes(order: usize, classes: Vec<Vec<usize>>) -> Result<Self, LoopError> {
        let mut class_of = vec![usize::MAX; order];
        let mut seen = 0usize;
        let mut canonical: Vec<Vec<usize>> = classes
            .into_iter()
            .map(|mut class| {
                class.sort_unstable();
                class.dedup();
                class
            })
            .collect();
        canonical.retain(|class| !class.is_empty());
        canonical.sort_by_key(|class| class[0]);
        for (c, class) in canonical.iter().enumerate() {
            for &x in class {
                if x >= order {
                    return Err(LoopError::MalformedRelation(format!(
                        "element {x} out of range"
                    )));
                }
                if class_of[x] != usize::MAX {
                    return Err(LoopError::MalformedRelation(format!(
                        "element {x} appears twice"
                    )));
                }
                class_of[x] = c;
                seen += 1;
            }
        }
        if seen != order {
            return Err(LoopError::MalformedRelation(
                "some element is missing".to_string(),
            ));
        }
        Ok(LoopRelation {
            classes: canonical,
            class_of,
        })
    }

    pub(crate) fn from_class_map(class_of_raw: &[usize]) -> Self {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut relabel: Vec<Option<usize>> = vec![None; class_of_raw.len()];
        let mut class_of = vec![0; class_of_raw.len()];
        for (x, &c) in class_of_raw.iter().enumerate() {
            let idx = *relabel[c].get_or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[idx].push(x);
            class_of[x] = idx;
        }
        LoopRelation { classes, class_of }
    }

    /// The diagonal relation (every class a singleton).
    pub fn discrete(order: usize) -> Self {
        LoopRelation {
            classes: (0..order).map(|x| vec![x]).collect(),
            class_of: (0..order).collect(),
        }
    }

    /// The all-in-one-class relation.
    pub fn full(order: usize) -> Self {
        LoopRelation {
            classes: vec![(0..order).collect()],
            class_of: vec![0; order],
        }
    }

    pub fn order(&self) -> usize {
        self.class_of.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn same_class(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn class_containing(&self, x: usize) -> &[usize] {
        &self.classes[self.class_of[x]]
    }
}

/// A congruence is an equivalence relation that is a sub-right-loop of
/// `S x S`: closed under the componentwise operation and componentwise
/// right division.  Related pairs include the diagonal, so closure is
/// demanded for mixed diagonal/off-diagonal combinations as well.
pub fn is_congruence(lp: &RightLoop, rel: &LoopRelation) -> bool {
    congruence_holds(lp, &|x, y| rel.same_class(x, y))
}

fn congruence_holds(lp: &RightLoop, related: &dyn Fn(usize, usize) -> bool) -> bool {
    let k = lp.order();
    for a in 0..k {
        for b in 0..k {
            if !related(a, b) {
                continue;
            }
            for c in 0..k {
                for d in 0..k {
                    if !related(c, d) {
                        continue;
                    }
                    if !related(lp.op(a, c), lp.op(b, d)) {
                        return false;
                    }
                    if !related(lp.right_divide(a, c), lp.right_divide(b, d)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every congruence of the loop, by exhaustive scan over all partitions
/// (restricted-growth-string enumeration).  Results are in a deterministic
/// order: sorted by number of classes descending, then by class lists.
pub fn congruences(lp: &RightLoop, cap: usize) -> Result<Vec<LoopRelation>, LoopError> {
    let k = lp.order();
    if k > cap {
        return Err(LoopError::LoopTooLarge { order: k, cap });
    }
    let mut out: Vec<LoopRelation> = Vec::new();
    // restricted growth string: rgs[0] = 0, rgs[i] <= max(rgs[..i]) + 1
    let mut rgs = vec![0usize; k];
    let mut maxes = vec![0usize; k];
    let mut i = if k > 1 { 1 } else { 0 };
    loop {
        if i == 0 {
            // single-element loop: only the full relation exists
            let rel = LoopRelation::full(1);
            if is_congruence(lp, &rel) {
                out.push(rel);
            }
            break;
        }
        if i == k {
            let related = |x: usize, y: usize| rgs[x] == rgs[y];
            if congruence_holds(lp, &related) {
                out.push(LoopRelation::from_class_map(&rgs));
            }
            // backtrack to the last position that can still be bumped
            i -= 1;
            while i > 0 && rgs[i] == maxes[i - 1] + 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            rgs[i] += 1;
            maxes[i] = maxes[i - 1].max(rgs[i]);
            i += 1;
            continue;
        }
        rgs[i] = 0;
        maxes[i] = maxes[i - 1];
        i += 1;
    }
    out.sort_by(|a, b| {
        b.num_classes()
            .cmp(&a.num_classes())
            .then_with(|| a.classes.cmp(&b.classes))
    });
    Ok(out)
}

/// An invariant subloop: the class of the identity under some congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSubloop {
    pub elements: Vec<usize>,
    /// All congruences whose identity class is `elements`.
    pub witnesses: Vec<LoopRelation>,
}

/// Invariant subloops, grouped from the full congruence enumeration.
/// Sorted by (size, elements); each subloop lists every witnessing
/// congruence.
pub fn invariant_subloops(lp: &RightLoop, cap: usize) -> Result<Vec<InvariantSubloop>, LoopError> {
    let mut by_class: Vec<InvariantSubloop> = Vec::new();
    for rel in congruences(lp, cap)? {
        let class = rel.class_containing(0).to_vec();
        match by_class.iter_mut().find(|s| s.elements == class) {
            Some(entry) => entry.witnesses.push(rel),
            None => by_class.push(InvariantSubloop {
                elements: class,
                witnesses: vec![rel],
            }),
        }
    }
    by_class.sort_by_key(|s| (s.elements.len(), s.elements.clone()));
    Ok(by_class)
}

/// The unique congruence candidate whose identity class is `t`, if it is
/// one.  For any congruence, the class of `x` must equal `t * x` (divide a
/// related pair by the diagonal to land back in the identity class), so the
/// candidate partition is forced and only needs checking.
pub fn congruence_with_identity_class(lp: &RightLoop, t: &[usize]) -> Option<LoopRelation> {
    let k = lp.order();
    let t_sorted: BTreeSet<usize> = t.iter().copied().collect();
    if !t_sorted.contains(&0) || t_sorted.iter().any(|&x| x >= k) {
        return None;
    }
    let mut class_of = vec![usize::MAX; k];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..k {
        let block: BTreeSet<usize> = t_sorted.iter().map(|&u| lp.op(u, x)).collect();
        if !block.contains(&x) {
            return None;
        }
        let idx = class_of[x];
        if idx == usize::MAX {
            let members: Vec<usize> = block.iter().copied().collect();
            if members.iter().any(|&y| class_of[y] != usize::MAX) {
                return None; // blocks overlap without coinciding
            }
            for &y in &members {
                class_of[y] = classes.len();
            }
            classes.push(members);
        } else if classes[idx] != block.iter().copied().collect::<Vec<usize>>() {
            return None;
        }
    }
    let rel = LoopRelation::from_classes(k, classes).ok()?;
    if rel.class_containing(0) != t_sorted.iter().copied().collect::<Vec<usize>>() {
        return None;
    }
    if is_congruence(lp, &rel) {
        Some(rel)
    } else {
        None
    }
}

/// The quotient loop on the classes of a congruence.  Class indices follow
/// the canonical class order, so the identity class becomes element 0.
/// Well-definedness is re-verified across all representative pairs rather
/// than assumed, and the resulting table is re-validated as a right loop.
pub fn quotient(lp: &RightLoop, rel: &LoopRelation) -> Result<RightLoop, LoopError> {
    if rel.order() != lp.order() {
        return Err(LoopError::MalformedRelation(
            "relation order differs from loop order".to_string(),
        ));
    }
    if !is_congruence(lp, rel) {
        return Err(LoopError::NotACongruence);
    }
    let m = rel.num_classes();
    let mut table = vec![vec![usize::MAX; m]; m];
    for x in 0..lp.order() {
        for y in 0..lp.order() {
            let (cx, cy) = (rel.class_of(x), rel.class_of(y));
            let product = rel.class_of(lp.op(x, y));
            if table[cx][cy] == usize::MAX {
                table[cx][cy] = product;
            } else if table[cx][cy] != product {
                return Err(LoopError::IllDefined { x, y });
            }
        }
    }
    RightLoop::from_table(&format!("{}/{}", lp.label(), m), table)
}

/// Identity-preserving isomorphism search by backtracking over images, with
/// first-mismatch pruning.  Returns a witnessing bijection when one exists.
pub fn loop_isomorphic(
    a: &RightLoop,
    b: &RightLoop,
    cap: usize,
) -> Result<Option<Vec<usize>>, LoopError> {
    let k = a.order();
    if k > cap {
        return Err(LoopError::LoopTooLarge { order: k, cap });
    }
    if b.order() != k {
        return Ok(None);
    }
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; k];
    image[0] = 0;
    used[0] = true;
    fn extend(
        a: &RightLoop,
        b: &RightLoop,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        let k = a.order();
        if next == k {
            return true;
        }
        'candidates: for w in 1..k {
            if used[w] {
                continue;
            }
            image[next] = w;
            used[w] = true;
            // check all products among assigned elements
            for x in 0..=next {
                for y in 0..=next {
                    let z = a.op(x, y);
                    let bz = b.op(image[x], image[y]);
                    if z <= next {
                        if image[z] != bz {
                            image[next] = usize::MAX;
                            used[w] = false;
                            continue 'candidates;
                        }
                    } else if used[bz] {
                        // bz is already the image of some assigned element,
                        // but z is unassigned: injectivity will fail
                        image[next] = usize::MAX;
                        used[w] = false;
                        continue 'candidates;
                    }
                }
            }
            if extend(a, b, image, used, next + 1) {
                return true;
            }
            image[next] = usize::MAX;
            used[w] = false;
        }
        false
    }
    if extend(a, b, &mut image, &mut used, 1) {
        Ok(Some(image))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::catalog::{catalog, Family};

    /// Order-3 right loop with a * a = b * b = e, a * b = a, b * a = b
    /// (a = 1, b = 2).  Not a quasigroup: row 1 repeats.
    pub(crate) fn order3_loop() -> RightLoop {
        RightLoop::from_table("ord3", vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 2, 0]]).unwrap()
    }

    #[test]
    fn validation_accepts_loops_and_groups() {
        let lp = order3_loop();
        assert_eq!(lp.order(), 3);
        assert!(!lp.is_associative());
        let z4 = RightLoop::from_group(&catalog(&Family::Cyclic(4)).unwrap());
        assert!(z4.is_associative());
        assert!(RightLoop::from_table("pt", vec![vec![0]]).is_ok());
    }

    #[test]
    fn validation_reports_first_failure() {
        assert_eq!(
            RightLoop::from_table("bad", vec![vec![0, 1], vec![0, 1]]),
            Err(LoopError::NoIdentity)
        );
        // identity fine, column 2 repeats an entry
        assert_eq!(
            RightLoop::from_table("bad", vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]]),
            Err(LoopError::ColumnNotBijective(2))
        );
        assert_eq!(
            RightLoop::from_table("bad", vec![vec![0, 1], vec![1]]),
            Err(LoopError::MalformedTable)
        );
    }

    #[test]
    fn translations_and_division() {
        let lp = order3_loop();
        assert_eq!(lp.right_translation(1).images(), &[1, 0, 2]);
        assert_eq!(lp.right_translation(2).images(), &[2, 1, 0]);
        for b in 0..3 {
            for y in 0..3 {
                assert_eq!(lp.op(lp.right_divide(b, y), y), b);
            }
        }
    }

    #[test]
    fn congruences_of_cyclic_groups_match_subgroups() {
        let z4 = RightLoop::from_group(&catalog(&Family::Cyclic(4)).unwrap());
        let found = congruences(&z4, DEFAULT_CONGRUENCE_CAP).unwrap();
        assert_eq!(found.len(), 3);
        let id_classes: Vec<Vec<usize>> = found
            .iter()
            .map(|rel| rel.class_containing(0).to_vec())
            .collect();
        assert!(id_classes.contains(&vec![0]));
        assert!(id_classes.contains(&vec![0, 2]));
        assert!(id_classes.contains(&vec![0, 1, 2, 3]));
        let z5 = RightLoop::from_group(&catalog(&Family::Cyclic(5)).unwrap());
        assert_eq!(congruences(&z5, DEFAULT_CONGRUENCE_CAP).unwrap().len(), 2);
    }

    #[test]
    fn order3_loop_has_only_trivial_congruences() {
        let lp = order3_loop();
        let found = congruences(&lp, DEFAULT_CONGRUENCE_CAP).unwrap();
        assert_eq!(found.len(), 2);
        assert_eq!(found[0], LoopRelation::discrete(3));
        assert_eq!(found[1], LoopRelation::full(3));
    }

    #[test]
    fn congruence_rejects_crossing_blocks() {
        let z4 = RightLoop::from_group(&catalog(&Family::Cyclic(4)).unwrap());
        let rel = LoopRelation::from_classes(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        // (0,1) and (0,1) multiply to (0, 2): crossing blocks
        assert!(!is_congruence(&z4, &rel));
        // while the subgroup partition is a congruence
        let good = LoopRelation::from_classes(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert!(is_congruence(&z4, &good));
    }

    #[test]
    fn congruence_cap_is_enforced() {
        let big = RightLoop::from_group(&catalog(&Family::Cyclic(13)).unwrap());
        assert!(matches!(
            congruences(&big, 12),
            Err(LoopError::LoopTooLarge { order: 13, cap: 12 })
        ));
    }

    #[test]
    fn relation_validation() {
        assert!(LoopRelation::from_classes(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(matches!(
            LoopRelation::from_classes(3, vec![vec![0, 1], vec![1, 2]]),
            Err(LoopError::MalformedRelation(_))
        ));
        assert!(matches!(
            LoopRelation::from_classes(3, vec![vec![0, 1]]),
            Err(LoopError::MalformedRelation(_))
        ));
        assert!(matches!(
            LoopRelation::from_classes(3, vec![vec![0, 1, 5], vec![2]]),
            Err(LoopError::MalformedRelation(_))
        ));
    }

    #[test]
    fn quotient_of_z4_by_its_halving_congruence_is_z2() {
        let z4 = RightLoop::from_group(&catalog(&Family::Cyclic(4)).unwrap());
        let rel = LoopRelation::from_classes(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let q = quotient(&z4, &rel).unwrap();
        assert_eq!(q.table(), catalog(&Family::Cyclic(2)).unwrap().table());
        let bad = LoopRelation::from_classes(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(quotient(&z4, &bad), Err(LoopError::NotACongruence));
    }

    #[test]
    fn identity_class_route_matches_enumeration() {
        for lp in [
            RightLoop::from_group(&catalog(&Family::Cyclic(6)).unwrap()),
            RightLoop::from_group(&catalog(&Family::Dihedral(3)).unwrap()),
            RightLoop::from_group(&catalog(&Family::Quaternion8).unwrap()),
            order3_loop(),
        ] {
            let subloops = invariant_subloops(&lp, DEFAULT_CONGRUENCE_CAP).unwrap();
            for t in subloops.iter() {
                let direct = congruence_with_identity_class(&lp, &t.elements);
                assert!(direct.is_some(), "{} missing {:?}", lp.label(), t.elements);
                assert!(t.witnesses.contains(&direct.unwrap()));
            }
            // and non-subloops are rejected
            for x in 1..lp.order() {
                let t = vec![0, x];
                let direct = congruence_with_identity_class(&lp, &t);
                let listed = subloops.iter().any(|s| s.elements == t);
                assert_eq!(direct.is_some(), listed);
            }
        }
    }

    #[test]
    fn isomorphism_distinguishes_z4_from_klein() {
        let z4 = RightLoop::from_group(&catalog(&Family::Cyclic(4)).unwrap());
        let klein = RightLoop::from_group(&catalog(&Family::Klein4).unwrap());
        assert!(loop_isomorphic(&z4, &klein, DEFAULT_ISO_CAP)
            .unwrap()
            .is_none());
        assert_eq!(
            loop_isomorphic(&z4, &z4, DEFAULT_ISO_CAP).unwrap(),
            Some(vec![0, 1, 2, 3])
        );
        // relabeled Z4: conjugating the table by the swap 1 <-> 3 gives an
        // isomorphic loop, and the witness must actually be an isomorphism
        let relabel = [0usize, 3, 2, 1];
        let table: Vec<Vec<usize>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| relabel[z4.op(relabel[i], relabel[j])])
                    .collect()
            })
            .collect();
        let z4r = RightLoop::from_table("z4-relabeled", table).unwrap();
        let w = loop_isomorphic(&z4, &z4r, DEFAULT_ISO_CAP)
            .unwrap()
            .unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(w[z4.op(x, y)], z4r.op(w[x], w[y]));
            }
        }
    }

    #[test]
    fn isomorphism_cap_is_enforced() {
        let big = RightLoop::from_group(&catalog(&Family::Cyclic(11)).unwrap());
        assert!(matches!(
            loop_isomorphic(&big, &big, 10),
            Err(LoopError::LoopTooLarge { order: 11, cap: 10 })
        ));
    }
}
