//! JSON file schemas for groups, transversals, loops, and relations.
//!
//! All schemas are stable and bit-exact: field order follows declaration
//! order, and every structure round-trips through serde_json without loss.

use serde::{Deserialize, Serialize};

use crate::group::{FiniteGroup, GroupError};
use crate::perm::Permutation;
use crate::rightloop::{LoopError, LoopRelation, RightLoop};

/// Group input file: either a full multiplication table or a permutation
/// group given by generators in 1-based cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupFile {
    Table {
        n: usize,
        table: Vec<Vec<usize>>,
    },
    Perm {
        degree: usize,
        generators: Vec<String>,
    },
}

impl GroupFile {
    /// Build the group the file describes, labelled `name`.
    pub fn realize(&self, name: &str, closure_cap: usize) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupFile::Table { n, table } => {
                if table.len() != *n {
                    return Err(GroupError::MalformedTable);
                }
                FiniteGroup::from_table(name, table.clone())
            }
            GroupFile::Perm { degree, generators } => {
                let parsed: Result<Vec<Permutation>, GroupError> = generators
                    .iter()
                    .map(|word| Permutation::from_cycles(word, *degree))
                    .collect();
                FiniteGroup::from_permutations(name, *degree, parsed?, closure_cap)
            }
        }
    }
}

/// Transversal literal: raw group element indices, one per coset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransversalFile {
    pub reps: Vec<usize>,
}

/// Right-loop literal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl LoopFile {
    pub fn from_loop(lp: &RightLoop) -> LoopFile {
        LoopFile {
            order: lp.order(),
            table: lp.table().to_vec(),
        }
    }

    pub fn realize(&self, label: &str) -> Result<RightLoop, LoopError> {
        if self.table.len() != self.order {
            return Err(LoopError::MalformedTable);
        }
        RightLoop::from_table(label, self.table.clone())
    }
}

/// Partition literal for relations/congruences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationFile {
    pub classes: Vec<Vec<usize>>,
}

impl RelationFile {
    pub fn from_relation(rel: &LoopRelation) -> RelationFile {
        RelationFile {
            classes: rel.classes().to_vec(),
        }
    }

    pub fn realize(&self, order: usize) -> Result<LoopRelation, LoopError> {
        LoopRelation::from_classes(order, self.classes.clone())
    }
}
