//! Built-in group families.  Each family fixes a deterministic element
//! numbering (documented on its constructor) so that subgroup and
//! transversal indices in reports are stable across runs and platforms.

use crate::group::{FiniteGroup, GroupError};
use crate::perm::Permutation;

/// A catalog family reference, e.g. `cyclic:6` or
/// `direct_product(cyclic:2,klein4)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion8,
    Klein4,
    DirectProduct(Box<Family>, Box<Family>),
}

impl Family {
    /// Parses the textual form used on the command line:
    /// `cyclic:4`, `dihedral:3`, `symmetric:4`, `alternating:5`,
    /// `quaternion8`, `klein4`, `direct_product(A,B)` (nesting allowed).
    pub fn parse(text: &str) -> Result<Family, GroupError> {
        let text = text.trim();
        if let Some(inner) = text
            .strip_prefix("direct_product(")
            .and_then(|rest| rest.strip_suffix(')'))
        {
            // split at the top-level comma
            let mut depth = 0usize;
            let mut split = None;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth = depth.saturating_sub(1),
                    ',' if depth == 0 => {
                        split = Some(i);
                        break;
                    }
                    _ => {}
                }
            }
            let i = split.ok_or_else(|| GroupError::UnknownFamily(text.to_string()))?;
            let left = Family::parse(&inner[..i])?;
            let right = Family::parse(&inner[i + 1..])?;
            return Ok(Family::DirectProduct(Box::new(left), Box::new(right)));
        }
        match text {
            "quaternion8" => return Ok(Family::Quaternion8),
            "klein4" => return Ok(Family::Klein4),
            _ => {}
        }
        let (name, param) = text
            .split_once(':')
            .ok_or_else(|| GroupError::UnknownFamily(text.to_string()))?;
        let parameter: usize = param
            .trim()
            .parse()
            .map_err(|_| GroupError::UnknownFamily(text.to_string()))?;
        match name.trim() {
            "cyclic" => Ok(Family::Cyclic(parameter)),
            "dihedral" => Ok(Family::Dihedral(parameter)),
            "symmetric" => Ok(Family::Symmetric(parameter)),
            "alternating" => Ok(Family::Alternating(parameter)),
            other => Err(GroupError::UnknownFamily(other.to_string())),
        }
    }

    /// The canonical textual form (inverse of [`Family::parse`]); also used
    /// as the constructed group's name.
    pub fn spec_string(&self) -> String {
        match self {
            Family::Cyclic(n) => format!("cyclic:{n}"),
            Family::Dihedral(n) => format!("dihedral:{n}"),
            Family::Symmetric(n) => format!("symmetric:{n}"),
            Family::Alternating(n) => format!("alternating:{n}"),
            Family::Quaternion8 => "quaternion8".to_string(),
            Family::Klein4 => "klein4".to_string(),
            Family::DirectProduct(a, b) => {
                format!("direct_product({},{})", a.spec_string(), b.spec_string())
            }
        }
    }
}

/// Builds the named catalog group.  All tables go through the full
/// [`FiniteGroup`] validation.
pub fn catalog(family: &Family) -> Result<FiniteGroup, GroupError> {
    let name = family.spec_string();
    match family {
        Family::Cyclic(n) => cyclic(&name, *n),
        Family::Dihedral(n) => dihedral(&name, *n),
        Family::Symmetric(n) => symmetric(&name, *n),
        Family::Alternating(n) => alternating(&name, *n),
        Family::Quaternion8 => quaternion8(&name),
        Family::Klein4 => klein4(&name),
        Family::DirectProduct(a, b) => {
            let left = catalog(a)?;
            let right = catalog(b)?;
            direct_product(&name, &left, &right)
        }
    }
}

fn out_of_range(family: &str, parameter: usize, why: &str) -> GroupError {
    GroupError::ParameterOutOfRange {
        family: family.to_string(),
        parameter,
        why: why.to_string(),
    }
}

/// Z_n; element `i` is the residue `i`, product is addition mod `n`.
fn cyclic(name: &str, n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(out_of_range("cyclic", n, "order must be at least 1"));
    }
    let table = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    FiniteGroup::from_table(name, table)
}

/// Z_2 x Z_2 on `{0,1,2,3}` with product `xor`.
fn klein4(name: &str) -> Result<FiniteGroup, GroupError> {
    let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
    FiniteGroup::from_table(name, table)
}

/// Dihedral group of order `2n` on the presentation
/// `r^n = s^2 = e, s r s = r^-1`.  Element `a` (for `a < n`) is the
/// rotation `r^a`; element `n + a` is `r^a s`.
fn dihedral(name: &str, n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(out_of_range("dihedral", n, "parameter must be at least 1"));
    }
    let encode = |a: usize, flip: usize| flip * n + a;
    let mut table = vec![vec![0; 2 * n]; 2 * n];
    for a in 0..n {
        for e in 0..2 {
            for b in 0..n {
                for d in 0..2 {
                    // (r^a s^e)(r^b s^d) = r^(a +- b) s^(e xor d)
                    let rot = if e == 0 { (a + b) % n } else { (a + n - b) % n };
                    table[encode(a, e)][encode(b, d)] = encode(rot, e ^ d);
                }
            }
        }
    }
    FiniteGroup::from_table(name, table)
}

/// Sym(n) on the points `0..n`; elements are all permutations ordered
/// lexicographically by image table (identity first), product is
/// apply-left-first composition.  Capped at n = 6 (order 720) because the
/// Cayley table is quadratic in the order.
fn symmetric(name: &str, n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > 6 {
        return Err(out_of_range("symmetric", n, "supported range is 1..=6"));
    }
    FiniteGroup::from_perm_elements(name, all_perms(n, false))
}

/// Alt(n): the even permutations in the same ordering as `symmetric`.
/// Capped at n = 7 (order 2520).
fn alternating(name: &str, n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > 7 {
        return Err(out_of_range("alternating", n, "supported range is 1..=7"));
    }
    FiniteGroup::from_perm_elements(name, all_perms(n, true))
}

fn all_perms(n: usize, even_only: bool) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut image: Vec<usize> = (0..n).collect();
    loop {
        let p = Permutation::from_images(image.clone()).expect("bijection");
        if !even_only || p.is_even() {
            out.push(p);
        }
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| image[i] < image[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| image[j] > image[i]).unwrap();
        image.swap(i, j);
        image[i + 1..].reverse();
    }
    out
}

/// The quaternion group `{+-1, +-i, +-j, +-k}` numbered
/// `0:+1, 1:+i, 2:+j, 3:+k, 4:-1, 5:-i, 6:-j, 7:-k`.
fn quaternion8(name: &str) -> Result<FiniteGroup, GroupError> {
    // unit products: units[a][b] = (sign, axis) for axes 1,i,j,k = 0,1,2,3
    let units = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut table = vec![vec![0; 8]; 8];
    for (a, row) in table.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            let (sa, ua) = (a / 4, a % 4);
            let (sb, ub) = (b / 4, b % 4);
            let (sp, up) = units[ua][ub];
            *cell = ((sa + sb + sp) % 2) * 4 + up;
        }
    }
    FiniteGroup::from_table(name, table)
}

/// `A x B` with element `a*|B| + b` and componentwise product.
pub fn direct_product(
    name: &str,
    a: &FiniteGroup,
    b: &FiniteGroup,
) -> Result<FiniteGroup, GroupError> {
    let (na, nb) = (a.order(), b.order());
    let table = (0..na * nb)
        .map(|x| {
            (0..na * nb)
                .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                .collect()
        })
        .collect();
    FiniteGroup::from_table(name, table)
}

/// One listing entry of the built-in catalog.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub group: FiniteGroup,
    /// Isomorphism note for entries that duplicate an earlier one.
    pub note: Option<String>,
}

/// The deterministic survey corpus: every built-in family instance of order
/// at most `max_order`, in a fixed listed order.  Known duplicate entries
/// (`dihedral:2`, `dihedral:3`) stay in the list with a note rather than
/// being removed, so family-specific numbering is still exercised.
pub fn builtin_catalog(max_order: usize) -> Vec<CatalogEntry> {
    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut push = |family: Family, note: Option<&str>| {
        if let Ok(group) = catalog(&family) {
            if group.order() <= max_order {
                entries.push(CatalogEntry {
                    group,
                    note: note.map(str::to_string),
                });
            }
        }
    };
    for n in 1..=max_order {
        push(Family::Cyclic(n), None);
    }
    push(Family::Klein4, None);
    for n in 3..=6 {
        push(Family::Symmetric(n), None);
    }
    for n in 4..=7 {
        push(Family::Alternating(n), None);
    }
    push(Family::Quaternion8, None);
    for n in 2..=max_order / 2 {
        let note = match n {
            2 => Some("isomorphic to klein4"),
            3 => Some("isomorphic to symmetric:3"),
            _ => None,
        };
        push(Family::Dihedral(n), note);
    }
    let products = [
        Family::DirectProduct(Box::new(Family::Cyclic(2)), Box::new(Family::Cyclic(4))),
        Family::DirectProduct(Box::new(Family::Cyclic(2)), Box::new(Family::Klein4)),
        Family::DirectProduct(Box::new(Family::Cyclic(3)), Box::new(Family::Cyclic(3))),
        Family::DirectProduct(Box::new(Family::Cyclic(2)), Box::new(Family::Dihedral(4))),
    ];
    for family in products {
        push(family, None);
    }
    entries
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_parse_round_trips() {
        for text in [
            "cyclic:12",
            "dihedral:4",
            "symmetric:3",
            "alternating:5",
            "quaternion8",
            "klein4",
            "direct_product(cyclic:2,klein4)",
            "direct_product(cyclic:2,direct_product(cyclic:2,cyclic:2))",
        ] {
            let family = Family::parse(text).unwrap();
            assert_eq!(family.spec_string(), text);
        }
        assert!(matches!(
            Family::parse("frobnicated:3"),
            Err(GroupError::UnknownFamily(_))
        ));
        assert!(matches!(
            Family::parse("cyclic:x"),
            Err(GroupError::UnknownFamily(_))
        ));
        assert!(matches!(Family::parse("cyclic:0"), Ok(Family::Cyclic(0))));
        assert!(catalog(&Family::Cyclic(0)).is_err());
    }

    #[test]
    fn family_orders() {
        for (text, order) in [
            ("cyclic:1", 1),
            ("cyclic:7", 7),
            ("dihedral:4", 8),
            ("symmetric:4", 24),
            ("alternating:4", 12),
            ("quaternion8", 8),
            ("klein4", 4),
            ("direct_product(cyclic:2,cyclic:4)", 8),
        ] {
            let g = catalog(&Family::parse(text).unwrap()).unwrap();
            assert_eq!(g.order(), order, "{text}");
            assert_eq!(g.name(), text);
        }
    }

    #[test]
    fn dihedral_relations_hold() {
        let g = catalog(&Family::Dihedral(4)).unwrap();
        let (r, s) = (1, 4);
        assert_eq!(g.mul(g.mul(r, r), g.mul(r, r)), 0); // r^4 = e
        assert_eq!(g.mul(s, s), 0); // s^2 = e
                                    // s r s = r^-1
        assert_eq!(g.mul(g.mul(s, r), s), g.inv(r));
        assert!(!g.is_abelian());
    }

    #[test]
    fn symmetric_numbering_is_lexicographic() {
        let g = catalog(&Family::Symmetric(3)).unwrap();
        let images: Vec<&[usize]> = (0..6)
            .map(|i| g.element_perm(i).unwrap().images())
            .collect();
        assert_eq!(
            images,
            vec![
                &[0, 1, 2][..],
                &[0, 2, 1][..],
                &[1, 0, 2][..],
                &[1, 2, 0][..],
                &[2, 0, 1][..],
                &[2, 1, 0][..],
            ]
        );
    }

    #[test]
    fn alternating4_is_even_permutations() {
        let g = catalog(&Family::Alternating(4)).unwrap();
        assert_eq!(g.order(), 12);
        for i in 0..12 {
            assert!(g.element_perm(i).unwrap().is_even());
        }
    }

    #[test]
    fn quaternion_relations_hold() {
        let g = catalog(&Family::Quaternion8).unwrap();
        let (i, j, k, minus) = (1, 2, 3, 4);
        assert_eq!(g.mul(i, i), minus);
        assert_eq!(g.mul(j, j), minus);
        assert_eq!(g.mul(k, k), minus);
        assert_eq!(g.mul(i, j), k);
        assert_eq!(g.mul(j, i), g.mul(minus, k));
        assert_eq!(g.mul(minus, minus), 0);
        assert!(!g.is_abelian());
    }

    #[test]
    fn oversized_parameters_are_refused() {
        assert!(matches!(
            catalog(&Family::Symmetric(7)),
            Err(GroupError::ParameterOutOfRange { .. })
        ));
        assert!(matches!(
            catalog(&Family::Alternating(8)),
            Err(GroupError::ParameterOutOfRange { .. })
        ));
    }

    #[test]
    fn builtin_catalog_is_bounded_and_deterministic() {
        let entries = builtin_catalog(16);
        assert!(entries.iter().all(|e| e.group.order() <= 16));
        let names: Vec<&str> = entries.iter().map(|e| e.group.name()).collect();
        assert!(names.contains(&"cyclic:16"));
        assert!(names.contains(&"dihedral:8"));
        assert!(names.contains(&"symmetric:3"));
        assert!(names.contains(&"alternating:4"));
        assert!(names.contains(&"quaternion8"));
        assert!(!names.contains(&"symmetric:4")); // order 24
        let again: Vec<String> = builtin_catalog(16)
            .iter()
            .map(|e| e.group.name().to_string())
            .collect();
        assert_eq!(names, again);
        // duplicates are annotated, not dropped
        let d3 = entries
            .iter()
            .find(|e| e.group.name() == "dihedral:3")
            .unwrap();
        assert_eq!(d3.note.as_deref(), Some("isomorphic to symmetric:3"));
    }

    #[test]
    fn small_catalog_matches_listing_example() {
        let names: Vec<String> = builtin_catalog(6)
            .iter()
            .map(|e| e.group.name().to_string())
            .collect();
        for expected in [
            "cyclic:2",
            "cyclic:6",
            "symmetric:3",
            "klein4",
            "dihedral:3",
        ] {
            assert!(names.contains(&expected.to_string()), "{expected}");
        }
    }
}
