//! Permutations of `{0, .., degree-1}` and the subgroups of the symmetric
//! group they generate.
//!
//! Composition convention, used by every module in this crate: products act
//! left-to-right, so `compose(r, s)` is the map `x -> s(r(x))` ("apply `r`,
//! then `s`").  Changing this silently mirrors most of the coset algebra,
//! which is why `torsion::inner_map` cross-checks itself through two routes
//! that only agree under this convention.

use std::collections::BTreeSet;
use std::fmt;

use crate::group::GroupError;

/// Default ceiling on closure enumeration (`PermGroup::generate` and the
/// Cayley-table builders that ride on it).
pub const DEFAULT_CLOSURE_CAP: usize = 20_160;

/// A bijection of `{0, .., degree-1}`, stored as its image table.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            image: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image table, rejecting non-bijections.
    pub fn from_images(image: Vec<usize>) -> Result<Self, GroupError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &y in &image {
            if y >= n || seen[y] {
                return Err(GroupError::NotABijection { image });
            }
            seen[y] = true;
        }
        Ok(Permutation { image })
    }

    /// Parses cycle notation over 1-based points, e.g. `"(1 2)(3 4)"`.
    ///
    /// Cycles need not be disjoint; they are composed left-to-right under
    /// the crate convention.  The empty string and `"()"` both denote the
    /// identity.
    pub fn from_cycles(text: &str, degree: usize) -> Result<Self, GroupError> {
        let malformed = |why: &str| GroupError::MalformedCycle {
            text: text.to_string(),
            why: why.to_string(),
        };
        let mut result = Permutation::identity(degree);
        let mut chars = text.chars().peekable();
        let mut saw_cycle = false;
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            if c != '(' {
                return Err(malformed("expected '('"));
            }
            chars.next();
            let mut cycle: Vec<usize> = Vec::new();
            let mut closed = false;
            let mut num = String::new();
            for c in chars.by_ref() {
                if c.is_ascii_digit() {
                    num.push(c);
                    continue;
                }
                if !num.is_empty() {
                    let point: usize = num.parse().map_err(|_| malformed("unreadable point"))?;
                    if point == 0 || point > degree {
                        return Err(GroupError::PointOutOfRange { point, degree });
                    }
                    if cycle.contains(&(point - 1)) {
                        return Err(malformed("point repeated within a cycle"));
                    }
                    cycle.push(point - 1);
                    num.clear();
                }
                if c == ')' {
                    closed = true;
                    break;
                }
                if !c.is_whitespace() && c != ',' {
                    return Err(malformed("unexpected character inside cycle"));
                }
            }
            if !closed {
                return Err(malformed("unbalanced parenthesis"));
            }
            saw_cycle = true;
            let mut step = Permutation::identity(degree);
            for w in 0..cycle.len() {
                step.image[cycle[w]] = cycle[(w + 1) % cycle.len()];
            }
            result = result.compose(&step);
        }
        if !saw_cycle && !text.trim().is_empty() {
            return Err(malformed("no cycles found"));
        }
        Ok(result)
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// `self` then `other`: the map `x -> other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            image: self.image.iter().map(|&y| other.image[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            image[y] = x;
        }
        Permutation { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        let mut parity = false;
        for start in 0..self.image.len() {
            if seen[start] {
                continue;
            }
            let mut x = start;
            let mut len = 0;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x];
                len += 1;
            }
            parity ^= len % 2 == 0;
        }
        !parity
    }

    /// Cycle notation over 1-based points; the identity prints as `"()"`.
    pub fn to_cycles(&self) -> String {
        let mut seen = vec![false; self.image.len()];
        let mut out = String::new();
        for start in 0..self.image.len() {
            if seen[start] || self.image[start] == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                if x != start {
                    out.push(' ');
                }
                out.push_str(&(x + 1).to_string());
                x = self.image[x];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycles())
    }
}

/// A permutation group given by generators together with its fully
/// enumerated element set (sorted lexicographically by image table, so the
/// identity sits at index 0).
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermGroup {
    /// Closes `generators` under composition.  Finiteness makes closure
    /// under products alone enough to pick up inverses.
    pub fn generate(
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut elements: BTreeSet<Permutation> = BTreeSet::new();
        let mut queue = vec![Permutation::identity(degree)];
        elements.insert(queue[0].clone());
        while let Some(p) = queue.pop() {
            for g in &generators {
                let q = p.compose(g);
                if elements.insert(q.clone()) {
                    if elements.len() > cap {
                        return Err(GroupError::ClosureTooLarge { cap });
                    }
                    queue.push(q);
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            elements: elements.into_iter().collect(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            elements: vec![Permutation::identity(degree)],
        }
    }

    /// Wraps an already-closed, sorted element list (internal use: filtered
    /// subgroups).  The filter source guarantees closure.
    fn from_closed(degree: usize, elements: Vec<Permutation>) -> Self {
        PermGroup {
            degree,
            generators: elements.clone(),
            elements,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.elements == other.elements
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut orbit: BTreeSet<usize> = BTreeSet::new();
        for p in &self.elements {
            orbit.insert(p.apply(x));
        }
        orbit.into_iter().collect()
    }

    /// The subgroup fixing `x`, enumerated by filtering the element list.
    pub fn stabilizer(&self, x: usize) -> PermGroup {
        let fixed: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|p| p.apply(x) == x)
            .cloned()
            .collect();
        PermGroup::from_closed(self.degree, fixed)
    }

    /// `{p in self | p^-1 sub p = sub}`, by scanning the element list.
    /// `sub` must be a subgroup of `self`.
    pub fn normalizer_of(&self, sub: &PermGroup) -> Result<PermGroup, GroupError> {
        if !sub.is_subgroup_of(self) {
            return Err(GroupError::NotASubgroup);
        }
        let normalizing: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|p| {
                let p_inv = p.inverse();
                sub.elements
                    .iter()
                    .all(|q| sub.contains(&p_inv.compose(q).compose(p)))
            })
            .cloned()
            .collect();
        Ok(PermGroup::from_closed(self.degree, normalizing))
    }

    /// Every element squares to the identity, and the group is abelian.
    /// (The first property forces the second; both are checked anyway.)
    pub fn is_elementary_abelian_2(&self) -> bool {
        let squares = self.elements.iter().all(|p| p.compose(p).is_identity());
        let abelian = self.elements.iter().enumerate().all(|(i, p)| {
            self.elements[i + 1..]
                .iter()
                .all(|q| p.compose(q) == q.compose(p))
        });
        squares && abelian
    }
}
