//! Permutation groups attached to a right loop.
//!
//! Every right loop acts on itself by right translations `R_u : x -> x*u`.
//! Two groups of permutations of the underlying set arise:
//!
//! * the *right multiplication group* (`mult`): the closure of all right
//!   translations;
//! * the *right inner mapping group* (`inner`): the closure of the maps
//!   `f:(y,z) : x -> ((x*y)*z) / (y*z)`, equivalently `R_y R_z R_{y*z}^-1`
//!   in left-to-right composition.
//!
//! Construction verifies the structural facts the rest of the crate leans
//! on: inner maps fix the identity, `inner` sits inside `mult`, `mult`
//! factors as `inner * translations` (so `|mult| = |inner| * k`), and the
//! stabilizer of the identity inside `mult` is exactly `inner`.

use std::collections::BTreeSet;

use crate::perm::{PermGroup, Permutation, DEFAULT_CLOSURE_CAP};
use crate::rightloop::{LoopError, LoopRelation, RightLoop};

/// The inner map `f:(y,z)` computed two independent ways: by the defining
/// formula `x -> ((x*y)*z) / (y*z)` and as the composite
/// `R_y R_z R_{y*z}^-1`.  The two must agree; a disagreement means the
/// composition convention has been broken somewhere and is reported as
/// [`LoopError::ConventionMismatch`].
pub fn inner_map(lp: &RightLoop, y: usize, z: usize) -> Result<Permutation, LoopError> {
    let k = lp.order();
    let yz = lp.op(y, z);
    let defining = Permutation::from_images(
        (0..k)
            .map(|x| lp.right_divide(lp.op(lp.op(x, y), z), yz))
            .collect(),
    )
    .expect("composite of right translations is a bijection");
    let composite = lp
        .right_translation(y)
        .compose(&lp.right_translation(z))
        .compose(&lp.right_translation(yz).inverse());
    if defining != composite {
        return Err(LoopError::ConventionMismatch { y, z });
    }
    Ok(defining)
}

/// The right multiplication group, the right inner mapping group, and the
/// bookkeeping connecting them to the loop they came from.
#[derive(Clone, Debug)]
pub struct Torsion {
    lp: RightLoop,
    translations: Vec<Permutation>,
    inner_maps: Vec<Vec<Permutation>>,
    inner: PermGroup,
    mult: PermGroup,
}

/// Build the attached groups using the default closure cap.
pub fn torsion(lp: &RightLoop) -> Result<Torsion, LoopError> {
    torsion_with_cap(lp, DEFAULT_CLOSURE_CAP)
}

/// Build the attached groups, refusing closures larger than `cap`.
pub fn torsion_with_cap(lp: &RightLoop, cap: usize) -> Result<Torsion, LoopError> {
    let k = lp.order();
    let translations: Vec<Permutation> = (0..k).map(|u| lp.right_translation(u)).collect();

    let mut inner_maps = Vec::with_capacity(k);
    for y in 0..k {
        let mut row = Vec::with_capacity(k);
        for z in 0..k {
            row.push(inner_map(lp, y, z)?);
        }
        inner_maps.push(row);
    }

    let distinct_inner: Vec<Permutation> = inner_maps
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let cap_err = |_| LoopError::ClosureTooLarge { cap };
    let inner = PermGroup::generate(k, distinct_inner, cap).map_err(cap_err)?;
    let mult = PermGroup::generate(k, translations.clone(), cap).map_err(cap_err)?;

    for f in inner.elements() {
        assert_eq!(f.apply(0), 0, "inner mapping group must fix the identity");
    }
    assert!(
        inner.is_subgroup_of(&mult),
        "inner mapping group must sit inside the multiplication group"
    );
    assert_eq!(
        mult.order(),
        inner.order() * k,
        "multiplication group must factor as inner maps times translations"
    );
    assert!(
        mult.stabilizer(0).same_elements(&inner),
        "stabilizer of the identity inside mult must equal inner"
    );
    for p in mult.elements() {
        let x = p.apply(0);
        let h = p.compose(&translations[x].inverse());
        assert!(
            inner.contains(&h),
            "every element of mult must factor as an inner map times a translation"
        );
    }

    Ok(Torsion {
        lp: lp.clone(),
        translations,
        inner_maps,
        inner,
        mult,
    })
}

impl Torsion {
    /// The loop these groups belong to.
    pub fn rloop(&self) -> &RightLoop {
        &self.lp
    }

    pub fn order(&self) -> usize {
        self.lp.order()
    }

    /// Right translation by `u`, as a permutation.
    pub fn translation(&self, u: usize) -> &Permutation {
        &self.translations[u]
    }

    pub fn translations(&self) -> &[Permutation] {
        &self.translations
    }

    /// The inner map `f:(y,z)`.
    pub fn inner_map_at(&self, y: usize, z: usize) -> &Permutation {
        &self.inner_maps[y][z]
    }

    /// The distinct inner maps, sorted.
    pub fn distinct_inner_maps(&self) -> Vec<Permutation> {
        self.inner_maps
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// The right inner mapping group.
    pub fn inner(&self) -> &PermGroup {
        &self.inner
    }

    /// The right multiplication group.
    pub fn mult(&self) -> &PermGroup {
        &self.mult
    }

    /// The natural action of a permutation on a loop element: `x . p = p(x)`.
    pub fn theta(&self, x: usize, p: &Permutation) -> usize {
        p.apply(x)
    }

    /// Write `p` in the group as `h * R_x` with `h` fixing the identity and
    /// `x = p(0)`; returns `(h, x)`.  `h` lands in the inner mapping group
    /// (checked at construction for every element of `mult`).
    pub fn factorize(&self, p: &Permutation) -> Result<(Permutation, usize), LoopError> {
        if !self.mult.contains(p) {
            return Err(LoopError::NotInMultGroup);
        }
        let x = p.apply(0);
        let h = p.compose(&self.translations[x].inverse());
        Ok((h, x))
    }

    /// The inner-map component of `R_x * f`: the unique `h` fixing the
    /// identity with `R_x f = h R_{theta(x, f)}`.
    pub fn eta(&self, x: usize, f: &Permutation) -> Result<Permutation, LoopError> {
        let product = self.translations[x].compose(f);
        Ok(self.factorize(&product)?.0)
    }

    /// Partition of the loop by the stabilizer inside the multiplication
    /// group: `x` and `y` fall together exactly when the same set of
    /// elements of `mult` fixes both.
    pub fn sigma(&self) -> LoopRelation {
        let k = self.lp.order();
        let signatures: Vec<Vec<usize>> = (0..k)
            .map(|x| {
                self.mult
                    .elements()
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| p.apply(x) == x)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
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

    /// The class of the identity in [`Torsion::sigma`].
    pub fn sigma_identity_class(&self) -> Vec<usize> {
        self.sigma().class_containing(0).to_vec()
    }
}
