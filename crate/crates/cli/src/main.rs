//! Command-line front end: construct groups, list subgroups and
//! transversals, inspect induced right loops and their attached permutation
//! groups, run single claim verifiers, and drive the full survey sweep.
//!
//! Exit codes: 0 = success (including vacuous and warn-level verdicts),
//! 1 = a claim verifier failed, 2 = a verifier's hypotheses were violated,
//! 3 = bad references or malformed input (including usage errors).

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{anyhow, ensure, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use transversal_lab::{
    all_subgroups, all_transversals, builtin_catalog, catalog, catalog_hash, count_within,
    find_generating_transversal, induced_loop, is_core_free, is_generating, survey,
    torsion_with_cap, transversals_capped, verify_cameron, verify_cor_elem_ab,
    verify_cor_normalizer, verify_embed_gss, verify_iso3_soft, verify_prop1, verify_thm2,
    verify_thm_normalizer, Claim, Family, FiniteGroup, GroupFile, LoopFile, Outcome, Permutation,
    RightLoop, RunConfig, Subgroup, Torsion, Transversal, Verdict, VerdictRecord, VerifyError,
    DEFAULT_CLOSURE_CAP,
};

const CAP_ENV: &str = "TRANSVERSAL_LAB_CAP";

#[derive(Parser)]
#[command(
    name = "transversal-lab",
    version,
    about = "Finite groups, right transversals, induced right loops, and claim verifiers"
)]
struct Cli {
    /// Output format (text is human-oriented; json is stable)
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the built-in group catalog
    Catalog {
        /// Largest group order to include
        #[arg(long, default_value_t = 16)]
        max_order: usize,
    },
    /// List all subgroups of a group
    Subgroups {
        /// Family spec (`cyclic:6`, `symmetric:3`, `klein4`, ...) or a group
        /// file (JSON, `{"type":"table",...}` or `{"type":"perm",...}`)
        #[arg(long)]
        group: String,
    },
    /// List right transversals of a subgroup
    Transversals {
        #[arg(long)]
        group: String,
        /// Subgroup generators: indices (`0,3`) or cycle words (`(1 2)`)
        #[arg(long)]
        subgroup: String,
        /// List all transversals when there are at most this many, otherwise
        /// half as many seeded samples
        #[arg(long, default_value_t = 256)]
        max_transversals: u64,
        /// Seed for the sampling fallback
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Show the induced right loop of a transversal and its attached groups
    Loop {
        #[command(flatten)]
        source: LoopSource,
    },
    /// Show the torsion data of a right loop
    Torsion {
        #[command(flatten)]
        source: LoopSource,
    },
    /// Run one claim verifier and print its verdict
    Verify {
        /// One of: prop1, thm_norm, cor_norm, thm2, cor_elem_ab, cameron,
        /// embed_gss, iso3_soft
        claim: String,
        #[command(flatten)]
        source: LoopSource,
        /// Normal subgroup N for cor_elem_ab (same syntax as --subgroup)
        #[arg(long, requires = "subgroup")]
        normal: Option<String>,
        /// Transversal-count threshold before iso3_soft samples
        #[arg(long, default_value_t = 256)]
        max_transversals: u64,
        /// Seed for iso3_soft's sampling fallback
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sweep the catalog through every verifier and write report files
    Survey {
        /// Largest group order to sweep
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        /// Per-pair transversal cap (all when within, else half as samples)
        #[arg(long, default_value_t = 256)]
        max_transversals: u64,
        /// Seed for transversal sampling
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (0 = one per core)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Directory for report.jsonl, summary.json, summary.csv
        #[arg(long, default_value = "survey-report")]
        out: PathBuf,
    },
}

/// Where a right loop comes from: a loop table file, or a (group, subgroup,
/// transversal) triple that induces one.
#[derive(Args)]
struct LoopSource {
    /// Right-loop table file (JSON `{"order":k,"table":[[...]]}`)
    #[arg(long = "loop", value_name = "FILE", conflicts_with = "group")]
    loop_file: Option<PathBuf>,
    /// Family spec (`cyclic:6`, `symmetric:3`, ...) or a group file
    #[arg(long)]
    group: Option<String>,
    /// Subgroup generators: indices (`0,3`) or cycle words (`(1 2)`)
    #[arg(long, requires = "group")]
    subgroup: Option<String>,
    /// Transversal representatives as element indices; defaults to the
    /// first generating transversal (first overall if none generates)
    #[arg(long, requires = "subgroup")]
    transversal: Option<String>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            3
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    let cap = closure_cap()?;
    match cli.cmd {
        Cmd::Catalog { max_order } => cmd_catalog(max_order, cli.format),
        Cmd::Subgroups { group } => cmd_subgroups(&group, cap, cli.format),
        Cmd::Transversals {
            group,
            subgroup,
            max_transversals,
            seed,
        } => cmd_transversals(&group, &subgroup, max_transversals, seed, cap, cli.format),
        Cmd::Loop { source } => cmd_loop(&source, cap, cli.format),
        Cmd::Torsion { source } => cmd_torsion(&source, cap, cli.format),
        Cmd::Verify {
            claim,
            source,
            normal,
            max_transversals,
            seed,
        } => cmd_verify(
            &claim,
            &source,
            normal.as_deref(),
            max_transversals,
            seed,
            cap,
            cli.format,
        ),
        Cmd::Survey {
            max_order,
            max_transversals,
            seed,
            jobs,
            out,
        } => cmd_survey(
            max_order,
            max_transversals,
            seed,
            jobs,
            &out,
            cap,
            cli.format,
        ),
    }
}

/// The closure cap, overridable through the environment.
fn closure_cap() -> Result<usize> {
    match std::env::var(CAP_ENV) {
        Ok(text) => {
            let cap: usize = text
                .trim()
                .parse()
                .map_err(|_| anyhow!("{CAP_ENV} must be a positive integer, got {text:?}"))?;
            ensure!(cap > 0, "{CAP_ENV} must be positive");
            Ok(cap)
        }
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_CLOSURE_CAP),
        Err(e) => Err(anyhow!("{CAP_ENV}: {e}")),
    }
}

// ---------------------------------------------------------------------------
// reference resolution

/// A group plus the reference string it was loaded from (for reports).
struct GroupRef {
    group: FiniteGroup,
    label: String,
}

fn load_group(reference: &str, cap: usize) -> Result<GroupRef> {
    let path = Path::new(reference);
    let group = if path.exists() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {reference}"))?;
        let file: GroupFile =
            serde_json::from_str(&text).with_context(|| format!("parsing {reference}"))?;
        file.realize(reference, cap)
            .with_context(|| format!("realizing the group in {reference}"))?
    } else {
        let family = Family::parse(reference).map_err(|e| {
            anyhow!("{reference:?} is neither a readable file nor a family spec: {e}")
        })?;
        catalog(&family)?
    };
    Ok(GroupRef {
        group,
        label: reference.to_string(),
    })
}

/// Parses a comma/whitespace-separated list of element indices.
fn parse_index_list(spec: &str) -> Result<Vec<usize>> {
    let indices = try_parse_indices(spec)
        .ok_or_else(|| anyhow!("expected comma-separated element indices, got {spec:?}"))?;
    ensure!(!indices.is_empty(), "empty index list");
    Ok(indices)
}

fn try_parse_indices(spec: &str) -> Option<Vec<usize>> {
    let tokens: Vec<&str> = spec
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.is_empty() {
        return None;
    }
    tokens.iter().map(|t| t.parse().ok()).collect()
}

/// Subgroup generators: either element indices or cycle words (the latter
/// require a permutation-realized group).  Comma-separated cycle words are
/// separate generators; juxtaposed cycles within one word multiply out.
fn parse_subgroup(g: &GroupRef, spec: &str) -> Result<Subgroup> {
    if let Some(indices) = try_parse_indices(spec) {
        return Subgroup::generated(&g.group, &indices)
            .with_context(|| format!("subgroup generated by {indices:?} in {}", g.label));
    }
    ensure!(
        g.group.has_perm_realization(),
        "cycle-word subgroup specs need a permutation-realized group \
         (a family or a perm-type file); give element indices instead"
    );
    let degree = g
        .group
        .element_perm(0)
        .expect("realization checked above")
        .degree();
    let mut generators = Vec::new();
    for word in split_generators(spec) {
        let p = Permutation::from_cycles(&word, degree)
            .with_context(|| format!("parsing cycle word {word:?}"))?;
        let index = g.group.perm_index(&p).ok_or_else(|| {
            anyhow!(
                "permutation {} is not an element of {}",
                p.to_cycles(),
                g.label
            )
        })?;
        generators.push(index);
    }
    ensure!(!generators.is_empty(), "empty subgroup spec");
    Subgroup::generated(&g.group, &generators)
        .with_context(|| format!("subgroup generated by {spec:?} in {}", g.label))
}

/// Splits a cycle-word spec into generators on commas outside parentheses.
fn split_generators(spec: &str) -> Vec<String> {
    let mut words = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in spec.chars() {
        match c {
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(c);
            }
            ',' if depth == 0 => {
                if !current.trim().is_empty() {
                    words.push(current.trim().to_string());
                }
                current.clear();
            }
            _ => current.push(c),
        }
    }
    if !current.trim().is_empty() {
        words.push(current.trim().to_string());
    }
    words
}

fn parse_transversal(g: &GroupRef, h: &Subgroup, spec: &str) -> Result<Transversal> {
    let reps = parse_index_list(spec)?;
    Transversal::new(&g.group, h, &reps)
        .with_context(|| format!("transversal {reps:?} of {:?} in {}", h.elements(), g.label))
}

/// The transversal used when none is given: lexicographically first
/// generating one, or the lexicographically first overall if none generates.
fn default_transversal(g: &FiniteGroup, h: &Subgroup) -> Transversal {
    find_generating_transversal(g, h).unwrap_or_else(|| {
        all_transversals(g, h)
            .next()
            .expect("every subgroup has at least one transversal")
    })
}

/// Context attached to verdict records and loop displays.
struct LoopContext {
    label: String,
    group_label: String,
    subgroup: Vec<usize>,
    transversal: Option<Vec<usize>>,
}

/// Resolves a [`LoopSource`] into a loop plus reporting context.
fn resolve_loop(source: &LoopSource, cap: usize) -> Result<(RightLoop, LoopContext)> {
    if let Some(path) = &source.loop_file {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file: LoopFile =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        let label = path.display().to_string();
        let lp = file
            .realize(&label)
            .with_context(|| format!("realizing the loop in {}", path.display()))?;
        return Ok((
            lp,
            LoopContext {
                label: label.clone(),
                group_label: label,
                subgroup: Vec::new(),
                transversal: None,
            },
        ));
    }
    let (g, h, t) = resolve_triple(source, cap)?;
    let lp = induced_loop(&g.group, &h, &t);
    let label = lp.label().to_string();
    Ok((
        lp,
        LoopContext {
            label,
            group_label: g.label,
            subgroup: h.elements().to_vec(),
            transversal: Some(t.reps().to_vec()),
        },
    ))
}

/// Resolves the (group, subgroup, transversal) part of a [`LoopSource`].
fn resolve_triple(source: &LoopSource, cap: usize) -> Result<(GroupRef, Subgroup, Transversal)> {
    let reference = source
        .group
        .as_ref()
        .ok_or_else(|| anyhow!("give either --loop FILE or --group with --subgroup"))?;
    let g = load_group(reference, cap)?;
    let spec = source
        .subgroup
        .as_ref()
        .ok_or_else(|| anyhow!("--group needs --subgroup"))?;
    let h = parse_subgroup(&g, spec)?;
    let t = match &source.transversal {
        Some(spec) => parse_transversal(&g, &h, spec)?,
        None => default_transversal(&g.group, &h),
    };
    Ok((g, h, t))
}

// ---------------------------------------------------------------------------
// subcommands

fn cmd_catalog(max_order: usize, format: Format) -> Result<i32> {
    let entries = builtin_catalog(max_order);
    let hash = catalog_hash(&entries);
    match format {
        Format::Json => {
            let groups: Vec<_> = entries
                .iter()
                .map(|e| {
                    let mut obj = json!({
                        "name": e.group.name(),
                        "order": e.group.order(),
                    });
                    if let Some(note) = &e.note {
                        obj["note"] = json!(note);
                    }
                    obj
                })
                .collect();
            print_json(&json!({
                "max_order": max_order,
                "catalog_hash": hash,
                "groups": groups,
            }));
        }
        Format::Text => {
            println!(
                "built-in groups of order <= {max_order}: {} entries, hash {hash}",
                entries.len()
            );
            for e in &entries {
                let note = e
                    .note
                    .as_ref()
                    .map(|n| format!("  ({n})"))
                    .unwrap_or_default();
                println!(
                    "  {:<24} order {:>3}{note}",
                    e.group.name(),
                    e.group.order()
                );
            }
        }
    }
    Ok(0)
}

fn cmd_subgroups(reference: &str, cap: usize, format: Format) -> Result<i32> {
    let g = load_group(reference, cap)?;
    let subs = all_subgroups(&g.group)?;
    match format {
        Format::Json => {
            let list: Vec<_> = subs
                .iter()
                .map(|h| {
                    json!({
                        "elements": h.elements(),
                        "order": h.order(),
                        "index": h.index_in(&g.group),
                        "core_free": is_core_free(&g.group, h),
                        "normal": h.is_normal(&g.group),
                    })
                })
                .collect();
            print_json(&json!({
                "group": g.label,
                "order": g.group.order(),
                "subgroups": list,
            }));
        }
        Format::Text => {
            println!(
                "subgroups of {} (order {}): {}",
                g.label,
                g.group.order(),
                subs.len()
            );
            for h in &subs {
                let mut flags = Vec::new();
                if is_core_free(&g.group, h) {
                    flags.push("core-free");
                }
                if h.is_normal(&g.group) {
                    flags.push("normal");
                }
                println!(
                    "  {:<28} order {:>3}  index {:>3}  {}",
                    format!("{:?}", h.elements()),
                    h.order(),
                    h.index_in(&g.group),
                    flags.join(" ")
                );
            }
        }
    }
    Ok(0)
}

fn cmd_transversals(
    reference: &str,
    subgroup: &str,
    max_transversals: u64,
    seed: u64,
    cap: usize,
    format: Format,
) -> Result<i32> {
    let g = load_group(reference, cap)?;
    let h = parse_subgroup(&g, subgroup)?;
    let total = count_within(&g.group, &h, max_transversals);
    let sample = (max_transversals / 2).max(1) as usize;
    let (list, sampled) = transversals_capped(&g.group, &h, max_transversals, sample, seed);
    match format {
        Format::Json => {
            let rows: Vec<_> = list
                .iter()
                .map(|t| {
                    json!({
                        "reps": t.reps(),
                        "generating": is_generating(&g.group, t),
                    })
                })
                .collect();
            print_json(&json!({
                "group": g.label,
                "subgroup": h.elements(),
                "total": total,
                "sampled": sampled,
                "seed": seed,
                "transversals": rows,
            }));
        }
        Format::Text => {
            let total_text = match total {
                Some(n) => n.to_string(),
                None => format!("more than {max_transversals}"),
            };
            let how = if sampled {
                format!("{} seeded samples (seed {seed})", list.len())
            } else {
                format!("all {}", list.len())
            };
            println!(
                "transversals of {:?} in {}: {total_text} total, listing {how}",
                h.elements(),
                g.label
            );
            for t in &list {
                let tag = if is_generating(&g.group, t) {
                    "generating"
                } else {
                    ""
                };
                println!("  {:<28} {tag}", format!("{:?}", t.reps()));
            }
        }
    }
    Ok(0)
}

fn build_torsion(lp: &RightLoop, cap: usize) -> Result<Torsion> {
    torsion_with_cap(lp, cap)
        .with_context(|| format!("building the attached permutation groups of {}", lp.label()))
}

fn cmd_loop(source: &LoopSource, cap: usize, format: Format) -> Result<i32> {
    let (lp, ctx) = resolve_loop(source, cap)?;
    let tor = build_torsion(&lp, cap)?;
    match format {
        Format::Json => {
            print_json(&json!({
                "label": ctx.label,
                "loop": LoopFile::from_loop(&lp),
                "inner_order": tor.inner().order(),
                "mult_order": tor.mult().order(),
                "sigma_classes": tor.sigma().classes(),
                "sigma_identity_class": tor.sigma_identity_class(),
                "associative": lp.is_associative(),
            }));
        }
        Format::Text => {
            println!("label:       {}", ctx.label);
            println!("order:       {}", lp.order());
            println!("table:");
            for (i, row) in lp.table().iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                println!("  {i}: {}", cells.join(" "));
            }
            println!("associative: {}", lp.is_associative());
            println!("inner order: {}", tor.inner().order());
            println!("mult order:  {}", tor.mult().order());
            println!("sigma:       {:?}", tor.sigma().classes());
            println!("sigma_1:     {:?}", tor.sigma_identity_class());
        }
    }
    Ok(0)
}

fn cmd_torsion(source: &LoopSource, cap: usize, format: Format) -> Result<i32> {
    let (lp, ctx) = resolve_loop(source, cap)?;
    let tor = build_torsion(&lp, cap)?;
    let inner_maps: Vec<String> = tor
        .distinct_inner_maps()
        .iter()
        .map(|p| p.to_cycles())
        .collect();
    match format {
        Format::Json => {
            print_json(&json!({
                "label": ctx.label,
                "order": lp.order(),
                "associative": lp.is_associative(),
                "inner_order": tor.inner().order(),
                "mult_order": tor.mult().order(),
                "distinct_inner_maps": inner_maps,
                "sigma_classes": tor.sigma().classes(),
                "sigma_identity_class": tor.sigma_identity_class(),
            }));
        }
        Format::Text => {
            println!("label:       {}", ctx.label);
            println!("order:       {}", lp.order());
            println!("associative: {}", lp.is_associative());
            println!("inner order: {}", tor.inner().order());
            println!("mult order:  {}", tor.mult().order());
            println!("inner maps:  {}", inner_maps.join(", "));
            println!("sigma:       {:?}", tor.sigma().classes());
            println!("sigma_1:     {:?}", tor.sigma_identity_class());
        }
    }
    Ok(0)
}

fn cmd_verify(
    claim_text: &str,
    source: &LoopSource,
    normal: Option<&str>,
    max_transversals: u64,
    seed: u64,
    cap: usize,
    format: Format,
) -> Result<i32> {
    let claim = Claim::parse(claim_text).ok_or_else(|| {
        anyhow!(
            "unknown claim {claim_text:?}; expected one of {}",
            Claim::ALL
                .iter()
                .map(|c| c.id())
                .collect::<Vec<_>>()
                .join(", ")
        )
    })?;
    let refuse = |flag_given: bool, flag: &str| -> Result<()> {
        ensure!(!flag_given, "claim {} does not take {flag}", claim.id());
        Ok(())
    };
    if claim != Claim::CorElemAb {
        refuse(normal.is_some(), "--normal")?;
    }

    let started = Instant::now();
    let (verdict, ctx): (Result<Verdict, VerifyError>, LoopContext) = match claim {
        Claim::Prop1 | Claim::ThmNorm | Claim::Thm2 => {
            let (lp, ctx) = resolve_loop(source, cap)?;
            let verdict = match torsion_with_cap(&lp, cap) {
                Ok(tor) => Ok(match claim {
                    Claim::Prop1 => verify_prop1(&tor),
                    Claim::ThmNorm => verify_thm_normalizer(&tor),
                    _ => verify_thm2(&tor),
                }),
                Err(e) => {
                    return Err(anyhow!(e).context(format!(
                        "building the attached permutation groups of {}",
                        ctx.label
                    )))
                }
            };
            (verdict, ctx)
        }
        Claim::CorNorm | Claim::EmbedGss => {
            refuse(source.loop_file.is_some(), "--loop")?;
            let (g, h, t) = resolve_triple(source, cap)?;
            let verdict = match claim {
                Claim::CorNorm => verify_cor_normalizer(&g.group, &h, &t),
                _ => verify_embed_gss(&g.group, &h, &t, cap),
            };
            let ctx = LoopContext {
                label: g.label.clone(),
                group_label: g.label,
                subgroup: h.elements().to_vec(),
                transversal: Some(t.reps().to_vec()),
            };
            (verdict, ctx)
        }
        Claim::Cameron | Claim::Iso3Soft => {
            refuse(source.loop_file.is_some(), "--loop")?;
            refuse(source.transversal.is_some(), "--transversal")?;
            let reference = source
                .group
                .as_ref()
                .ok_or_else(|| anyhow!("claim {} needs --group and --subgroup", claim.id()))?;
            let g = load_group(reference, cap)?;
            let spec = source
                .subgroup
                .as_ref()
                .ok_or_else(|| anyhow!("claim {} needs --subgroup", claim.id()))?;
            let h = parse_subgroup(&g, spec)?;
            let verdict = match claim {
                Claim::Cameron => verify_cameron(&g.group, &h),
                _ => {
                    let sample = (max_transversals / 2).max(1) as usize;
                    verify_iso3_soft(&g.group, &h, max_transversals, sample, seed)
                }
            };
            let ctx = LoopContext {
                label: g.label.clone(),
                group_label: g.label,
                subgroup: h.elements().to_vec(),
                transversal: None,
            };
            (verdict, ctx)
        }
        Claim::CorElemAb => {
            refuse(source.loop_file.is_some(), "--loop")?;
            refuse(source.transversal.is_some(), "--transversal")?;
            let reference = source.group.as_ref().ok_or_else(|| {
                anyhow!("claim cor_elem_ab needs --group, --subgroup, and --normal")
            })?;
            let g = load_group(reference, cap)?;
            let spec = source
                .subgroup
                .as_ref()
                .ok_or_else(|| anyhow!("claim cor_elem_ab needs --subgroup"))?;
            let h = parse_subgroup(&g, spec)?;
            let normal_spec = normal.ok_or_else(|| anyhow!("claim cor_elem_ab needs --normal"))?;
            let n = parse_subgroup(&g, normal_spec)?;
            let verdict = verify_cor_elem_ab(&g.group, &h, &n, cap);
            let ctx = LoopContext {
                label: g.label.clone(),
                group_label: g.label,
                subgroup: h.elements().to_vec(),
                transversal: None,
            };
            let record_normal = n.elements().to_vec();
            let verdict = match verdict {
                Err(VerifyError::HypothesisViolated(msg)) => {
                    return Ok(emit_hypothesis_violation(format, claim, &msg))
                }
                other => other,
            };
            let v = verdict.map_err(|e| anyhow!(e))?;
            let record = make_cli_record(claim, &ctx, Some(record_normal), v, started.elapsed());
            return Ok(emit_record(format, &record));
        }
    };

    let verdict = match verdict {
        Ok(v) => v,
        Err(VerifyError::HypothesisViolated(msg)) => {
            return Ok(emit_hypothesis_violation(format, claim, &msg))
        }
        Err(e) => return Err(anyhow!(e)),
    };
    let record = make_cli_record(claim, &ctx, None, verdict, started.elapsed());
    Ok(emit_record(format, &record))
}

fn make_cli_record(
    claim: Claim,
    ctx: &LoopContext,
    normal_subgroup: Option<Vec<usize>>,
    verdict: Verdict,
    elapsed: Duration,
) -> VerdictRecord {
    VerdictRecord {
        claim,
        group: ctx.group_label.clone(),
        subgroup: ctx.subgroup.clone(),
        transversal: ctx.transversal.clone(),
        normal_subgroup,
        holds: verdict.outcome.holds(),
        outcome: verdict.outcome,
        details: verdict.details,
        elapsed,
    }
}

fn emit_hypothesis_violation(format: Format, claim: Claim, msg: &str) -> i32 {
    match format {
        Format::Json => print_json(&json!({
            "claim": claim.id(),
            "error": "hypothesis_violated",
            "message": msg,
        })),
        Format::Text => {
            println!("claim:   {}", claim.id());
            println!("outcome: hypothesis violated: {msg}");
        }
    }
    2
}

fn emit_record(format: Format, record: &VerdictRecord) -> i32 {
    match format {
        Format::Json => print_json(&serde_json::to_value(record).expect("records serialize")),
        Format::Text => {
            println!("claim:       {}", record.claim.id());
            println!("group:       {}", record.group);
            if !record.subgroup.is_empty() {
                println!("subgroup:    {:?}", record.subgroup);
            }
            if let Some(t) = &record.transversal {
                println!("transversal: {t:?}");
            }
            if let Some(n) = &record.normal_subgroup {
                println!("normal:      {n:?}");
            }
            println!("outcome:     {}", outcome_name(record.outcome));
            println!("holds:       {}", record.holds);
            println!(
                "details:     {}",
                serde_json::to_string_pretty(&record.details).expect("details serialize")
            );
        }
    }
    match record.outcome {
        Outcome::Fail => 1,
        _ => 0,
    }
}

fn outcome_name(outcome: Outcome) -> &'static str {
    match outcome {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::Vacuous => "vacuous",
        Outcome::Warn => "warn",
        Outcome::Skipped => "skipped",
    }
}

fn cmd_survey(
    max_order: usize,
    max_transversals: u64,
    seed: u64,
    jobs: usize,
    out: &Path,
    cap: usize,
    format: Format,
) -> Result<i32> {
    let cfg = RunConfig {
        max_group_order: max_order,
        max_transversals_per_pair: max_transversals as usize,
        sample_seed: seed,
        closure_cap: cap,
        jobs,
        output_format: match format {
            Format::Text => "text".to_string(),
            Format::Json => "json".to_string(),
        },
        ..RunConfig::default()
    };
    let started = Instant::now();
    let report = survey(&cfg);
    let elapsed = started.elapsed();

    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let jsonl_path = out.join("report.jsonl");
    let summary_path = out.join("summary.json");
    let csv_path = out.join("summary.csv");
    fs::write(&jsonl_path, report.to_jsonl())
        .with_context(|| format!("writing {}", jsonl_path.display()))?;
    fs::write(&summary_path, report.summary_json())
        .with_context(|| format!("writing {}", summary_path.display()))?;
    fs::write(&csv_path, report.summary_csv())
        .with_context(|| format!("writing {}", csv_path.display()))?;

    let s = &report.summary;
    match format {
        Format::Json => print!("{}", report.summary_json()),
        Format::Text => {
            println!(
                "surveyed {} groups (order <= {}), {} subgroups, {} loops: {} records in {:.2?}",
                s.groups, max_order, s.subgroups, s.loops, s.records, elapsed
            );
            println!(
                "  {:<12} {:>6} {:>6} {:>8} {:>6} {:>8}",
                "claim", "pass", "fail", "vacuous", "warn", "skipped"
            );
            for (claim, counts) in &s.claims {
                println!(
                    "  {:<12} {:>6} {:>6} {:>8} {:>6} {:>8}",
                    claim, counts.pass, counts.fail, counts.vacuous, counts.warn, counts.skipped
                );
            }
            for skipped in &s.skipped_groups {
                println!("  skipped {}: {}", skipped.group, skipped.reason);
            }
            println!("failures: {}, warnings: {}", s.failures, s.warnings);
            for path in [&jsonl_path, &summary_path, &csv_path] {
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(if s.failures == 0 { 0 } else { 1 })
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON output serializes")
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every claim is a proved statement, so a `fail` outcome cannot be
    /// produced by well-formed inputs; the exit mapping is pinned here so a
    /// future falsifying bug cannot exit 0.
    #[test]
    fn exit_codes_map_outcomes() {
        let ctx = LoopContext {
            label: "x".into(),
            group_label: "x".into(),
            subgroup: vec![0],
            transversal: None,
        };
        for (outcome, expected) in [
            (Outcome::Pass, 0),
            (Outcome::Vacuous, 0),
            (Outcome::Warn, 0),
            (Outcome::Fail, 1),
        ] {
            let record = make_cli_record(
                Claim::Prop1,
                &ctx,
                None,
                Verdict {
                    outcome,
                    details: json!({}),
                },
                Duration::ZERO,
            );
            assert_eq!(emit_record(Format::Json, &record), expected);
        }
        assert_eq!(
            emit_hypothesis_violation(Format::Json, Claim::CorNorm, "gate"),
            2
        );
    }

    #[test]
    fn index_lists_parse_with_commas_or_spaces() {
        assert_eq!(try_parse_indices("0, 3"), Some(vec![0, 3]));
        assert_eq!(try_parse_indices("4"), Some(vec![4]));
        assert_eq!(try_parse_indices("(1 2)"), None);
        assert_eq!(try_parse_indices("  "), None);
    }

    #[test]
    fn generator_words_split_on_top_level_commas_only() {
        assert_eq!(
            split_generators("(1 2), (3 4)"),
            vec!["(1 2)".to_string(), "(3 4)".to_string()]
        );
        assert_eq!(
            split_generators("(1 2)(3 4)"),
            vec!["(1 2)(3 4)".to_string()]
        );
        assert_eq!(
            split_generators("(1, 2), (2, 3)"),
            vec!["(1, 2)".to_string(), "(2, 3)".to_string()]
        );
    }
}
