//! Finite-group / right-loop computation library.
//!
//! Constructs right transversals of subgroups of finite groups, induces
//! right-loop structures on them, computes the permutation groups attached
//! to a right loop (right multiplication group and right inner mapping
//! group), stability relations, congruences and quotients, and mechanically
//! verifies a family of structural theorems by exhaustive search over a
//! catalog of small groups.
//!
//! Composition convention, used everywhere: products act left to right, so
//! `(rs)(x) = s(r(x))` — apply `r` first, then `s`.

pub mod catalog;
pub mod group;
pub mod io;
pub mod perm;
pub mod report;
pub mod rightloop;
mod rng;
pub mod theorems;
pub mod torsion;
pub mod transversal;

pub use catalog::{builtin_catalog, catalog, CatalogEntry, Family};
pub use group::{
    all_subgroups, all_subgroups_with_cap, core, coset_block_of, is_core_free, normalizer,
    right_cosets, FiniteGroup, GroupError, Subgroup, DEFAULT_SUBGROUP_CAP,
};
pub use io::{GroupFile, LoopFile, RelationFile, TransversalFile};
pub use perm::{PermGroup, Permutation, DEFAULT_CLOSURE_CAP};
pub use report::{
    catalog_hash, Claim, ClaimCounts, Outcome, RunConfig, SkippedGroup, Summary, SurveyReport,
    Verdict, VerdictRecord,
};
pub use rightloop::{
    congruence_with_identity_class, congruences, invariant_subloops, is_congruence,
    loop_isomorphic, quotient, InvariantSubloop, LoopError, LoopRelation, RightLoop,
    DEFAULT_CONGRUENCE_CAP, DEFAULT_ISO_CAP,
};
pub use theorems::{
    survey, verify_cameron, verify_cor_elem_ab, verify_cor_normalizer, verify_embed_gss,
    verify_iso3_soft, verify_prop1, verify_thm2, verify_thm_normalizer, VerifyError,
};
pub use torsion::{inner_map, torsion, torsion_with_cap, Torsion};
pub use transversal::{
    all_transversals, coset_stab, coset_stab_partition, count_within, find_generating_transversal,
    induced_loop, is_generating, sample_transversals, stab_h, stab_partition, theta_action,
    transversals_capped, Transversal, TransversalIter,
};
