//! Verdict records, run configuration, and report serialization.
//!
//! The survey emits one record per (claim, context) pair as JSONL, plus a
//! summary JSON embedding the full configuration and a content hash of the
//! group catalog, plus a CSV export of the per-claim counters.  Reports are
//! byte-identical across runs with the same configuration and seed, which
//! is why wall-clock durations are kept out of the serialized form.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::catalog::CatalogEntry;
use crate::group::DEFAULT_SUBGROUP_CAP;
use crate::perm::DEFAULT_CLOSURE_CAP;
use crate::rightloop::DEFAULT_CONGRUENCE_CAP;

/// Identifier of a verified claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Prop1,
    ThmNorm,
    CorNorm,
    Thm2,
    CorElemAb,
    Cameron,
    EmbedGss,
    Iso3Soft,
}

impl Claim {
    pub const ALL: [Claim; 8] = [
        Claim::Prop1,
        Claim::ThmNorm,
        Claim::CorNorm,
        Claim::Thm2,
        Claim::CorElemAb,
        Claim::Cameron,
        Claim::EmbedGss,
        Claim::Iso3Soft,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Claim::Prop1 => "prop1",
            Claim::ThmNorm => "thm_norm",
            Claim::CorNorm => "cor_norm",
            Claim::Thm2 => "thm2",
            Claim::CorElemAb => "cor_elem_ab",
            Claim::Cameron => "cameron",
            Claim::EmbedGss => "embed_gss",
            Claim::Iso3Soft => "iso3_soft",
        }
    }

    pub fn parse(s: &str) -> Option<Claim> {
        Claim::ALL.iter().copied().find(|c| c.id() == s)
    }
}

/// How a single verification ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    /// The claim held, with both sides computed.
    Pass,
    /// The claim was contradicted; details carry a finite witness.
    Fail,
    /// The claim's hypothesis never triggered (nothing to check).
    Vacuous,
    /// Soft check mismatch: reported, never fatal.
    Warn,
    /// The case could not be evaluated; details carry the reason.
    Skipped,
}

impl Outcome {
    /// Whether the claim held (vacuous satisfaction counts as holding).
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Pass | Outcome::Vacuous)
    }
}

/// The result of one verifier run, before survey context is attached.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Outcome,
    pub details: serde_json::Value,
}

impl Verdict {
    pub fn pass(details: serde_json::Value) -> Verdict {
        Verdict {
            outcome: Outcome::Pass,
            details,
        }
    }

    pub fn fail(details: serde_json::Value) -> Verdict {
        Verdict {
            outcome: Outcome::Fail,
            details,
        }
    }

    pub fn vacuous(details: serde_json::Value) -> Verdict {
        Verdict {
            outcome: Outcome::Vacuous,
            details,
        }
    }

    pub fn warn(details: serde_json::Value) -> Verdict {
        Verdict {
            outcome: Outcome::Warn,
            details,
        }
    }

    pub fn skipped(reason: String) -> Verdict {
        Verdict {
            outcome: Outcome::Skipped,
            details: serde_json::json!({ "reason": reason }),
        }
    }
}

/// One line of the survey report: a claim, its context, and the verdict.
/// `elapsed` is measured but never serialized (reports must be
/// byte-identical across runs).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub claim: Claim,
    pub group: String,
    pub subgroup: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub transversal: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normal_subgroup: Option<Vec<usize>>,
    pub holds: bool,
    pub outcome: Outcome,
    pub details: serde_json::Value,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Knobs shared by the CLI and the survey; echoed into every report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub max_group_order: usize,
    pub max_transversals_per_pair: usize,
    pub sample_seed: u64,
    pub congruence_cap: usize,
    pub closure_cap: usize,
    pub subgroup_cap: usize,
    /// Worker threads for the survey; 0 means "use all available cores".
    pub jobs: usize,
    pub output_format: String,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            max_group_order: 16,
            max_transversals_per_pair: 256,
            sample_seed: 0,
            congruence_cap: DEFAULT_CONGRUENCE_CAP,
            closure_cap: DEFAULT_CLOSURE_CAP,
            subgroup_cap: DEFAULT_SUBGROUP_CAP,
            jobs: 0,
            output_format: "text".to_string(),
        }
    }
}

/// Per-claim tally.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCounts {
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    pub warn: usize,
    pub skipped: usize,
}

impl ClaimCounts {
    pub fn add(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Pass => self.pass += 1,
            Outcome::Fail => self.fail += 1,
            Outcome::Vacuous => self.vacuous += 1,
            Outcome::Warn => self.warn += 1,
            Outcome::Skipped => self.skipped += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.vacuous + self.warn + self.skipped
    }
}

/// Survey roll-up: configuration, catalog hash, and per-claim counters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub config: RunConfig,
    pub catalog_hash: String,
    pub groups: usize,
    pub subgroups: usize,
    pub loops: usize,
    pub records: usize,
    pub claims: BTreeMap<String, ClaimCounts>,
    pub failures: usize,
    pub warnings: usize,
    /// Groups excluded from the sweep, with the reason (e.g. over the
    /// subgroup-enumeration cap).
    pub skipped_groups: Vec<SkippedGroup>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SkippedGroup {
    pub group: String,
    pub reason: String,
}

/// A complete survey result: all records plus the roll-up.
#[derive(Clone, Debug)]
pub struct SurveyReport {
    pub records: Vec<VerdictRecord>,
    pub summary: Summary,
}

impl SurveyReport {
    /// One compact JSON object per line, trailing newline, deterministic.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for rec in &self.records {
            out.push_str(&serde_json::to_string(rec).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    /// Pretty summary JSON (stable field and key order).
    pub fn summary_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.summary).expect("summary serializes");
        s.push('\n');
        s
    }

    /// CSV export of the per-claim counters.  Two leading comment lines
    /// carry the configuration and the catalog hash so the file is
    /// self-describing.
    pub fn summary_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# config: {}\n",
            serde_json::to_string(&self.summary.config).expect("config serializes")
        ));
        out.push_str(&format!("# catalog_hash: {}\n", self.summary.catalog_hash));
        out.push_str("claim,pass,fail,vacuous,warn,skipped,total\n");
        for (claim, c) in &self.summary.claims {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                claim,
                c.pass,
                c.fail,
                c.vacuous,
                c.warn,
                c.skipped,
                c.total()
            ));
        }
        out
    }
}

/// Content hash of a catalog listing: SHA-256 over each group's name and
/// multiplication table, in listing order.
pub fn catalog_hash(entries: &[CatalogEntry]) -> String {
    let mut hasher = Sha256::new();
    for entry in entries {
        hasher.update(entry.group.name().as_bytes());
        hasher.update([0u8]);
        for row in entry.group.table() {
            for &cell in row {
                hasher.update((cell as u32).to_le_bytes());
            }
        }
        hasher.update([1u8]);
    }
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{:02x}", byte));
    }
    hex
}
