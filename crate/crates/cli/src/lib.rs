//! The `ncg` command line: catalog building and ingestion, graph export,
//! single checks, classification, pair scans and p-group profiles.
//!
//! Exit codes: 0 when every executed check passed, 1 when at least one
//! failed, 2 on usage or I/O errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ncg_core::catalog::{dedupe, read_catalog, write_catalog, write_catalog_with_invariants};
use ncg_core::graph::{max_clique_capped, multipartite_parts, noncommuting_graph};
use ncg_core::harness::{
    self, render_report, scan_pairs, sort_rows, sweep, CheckResult, Limits, ScanOptions, Status, CLASSIFY,
    CONJECTURE_1_1, FROBENIUS, LEMMA_2_1, LEMMA_2_4, LEMMA_2_5, LEMMA_2_6, LEMMA_2_8, PROP_2_7, THEOREM_1_2,
};
use ncg_core::{builtin_catalog, parse_group_address, Family, FiniteGroup};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Ids accepted by `ncg check`.
pub const CHECK_IDS: [&str; 9] =
    [LEMMA_2_1, LEMMA_2_4, LEMMA_2_5, LEMMA_2_6, PROP_2_7, LEMMA_2_8, FROBENIUS, THEOREM_1_2, CLASSIFY];

#[derive(Debug, Parser)]
#[command(name = "ncg", version, about = "Non-commuting graphs of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the built-in catalog as JSONL.
    BuildCatalog {
        #[command(flatten)]
        select: Selection,
        /// Output path.
        #[arg(long)]
        out: PathBuf,
        /// Also store order, center, class sizes, element orders and fingerprint.
        #[arg(long)]
        invariants: bool,
    },
    /// Validate catalog files and flag invariant-level duplicates.
    Ingest {
        #[command(flatten)]
        select: Selection,
        /// Write the validated union of all inputs here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a non-commuting graph and export it.
    Graph {
        #[command(flatten)]
        select: Selection,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run one check over the selected groups.
    Check {
        /// One of lemma2.1, lemma2.4, lemma2.5, lemma2.6, prop2.7, lemma2.8, frobenius, theorem1.2, classify.
        id: String,
        #[command(flatten)]
        select: Selection,
    },
    /// Classify AC-groups into the five solvable types.
    Classify {
        #[command(flatten)]
        select: Selection,
    },
    /// Find all pairs with isomorphic non-commuting graphs.
    ScanPairs {
        #[command(flatten)]
        select: Selection,
        /// Only pairs with a non-abelian p-group member.
        #[arg(long)]
        p_groups: bool,
    },
    /// p-group profile and compatible center orders.
    Profile {
        #[command(flatten)]
        select: Selection,
    },
}

#[derive(Debug, Args)]
struct Selection {
    /// `family:param`, a product `a:m*b:n`, or a name from a --catalog file.
    #[arg(long = "group")]
    groups: Vec<String>,
    #[arg(long, default_value_t = 64)]
    max_order: usize,
    /// `all`, `builtin`, or a comma-separated family list.
    #[arg(long)]
    families: Option<String>,
    #[arg(long = "catalog")]
    catalogs: Vec<PathBuf>,
    /// Report path; standard output when absent.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = harness_defaults().clique_cap, value_parser = positive)]
    clique_cap: usize,
    #[arg(long, default_value_t = harness_defaults().iso_cap, value_parser = positive)]
    iso_cap: usize,
    #[arg(long, env = "NCG_JOBS", value_parser = positive)]
    jobs: Option<usize>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn harness_defaults() -> Limits {
    Limits::default()
}

impl Selection {
    fn limits(&self) -> Limits {
        Limits { clique_cap: self.clique_cap, iso_cap: self.iso_cap, ..Limits::default() }
    }

    fn families(&self) -> anyhow::Result<Vec<Family>> {
        match self.families.as_deref() {
            None | Some("all") | Some("builtin") => Ok(Family::ALL.to_vec()),
            Some(list) => list
                .split(',')
                .map(|f| f.trim().parse::<Family>().map_err(|_| anyhow!("unknown family {f:?}")))
                .collect(),
        }
    }

    fn catalog_groups(&self) -> anyhow::Result<Vec<FiniteGroup>> {
        let mut out = Vec::new();
        for path in &self.catalogs {
            out.extend(read_catalog(path).with_context(|| format!("reading {}", path.display()))?);
        }
        Ok(out)
    }

    /// Explicit `--group` addresses; otherwise catalog files, plus the
    /// built-in catalog unless files were given without `--families`.
    fn resolve(&self) -> anyhow::Result<Vec<FiniteGroup>> {
        let from_files = self.catalog_groups()?;
        if !self.groups.is_empty() {
            return self
                .groups
                .iter()
                .map(|addr| match from_files.iter().find(|g| g.name() == addr) {
                    Some(g) => Ok(g.clone()),
                    None => parse_group_address(addr).map_err(|e| anyhow!("--group {addr}: {e}")),
                })
                .collect();
        }
        let mut groups = from_files;
        if self.catalogs.is_empty() || self.families.is_some() {
            groups.extend(builtin_catalog(&self.families()?, self.max_order)?);
        }
        groups.sort_by(|a, b| a.name().cmp(b.name()));
        Ok(groups)
    }

    fn single(&self) -> anyhow::Result<FiniteGroup> {
        let mut groups = self.resolve()?;
        if self.groups.len() != 1 {
            bail!("exactly one --group is required");
        }
        Ok(groups.remove(0))
    }

    /// Flags that rebuild the same group selection for a subset.
    fn recheck(&self, id: &str, subjects: &[String]) -> String {
        let mut cmd = format!("ncg check {id}");
        for s in subjects {
            cmd.push_str(&format!(" --group {s}"));
        }
        for c in &self.catalogs {
            cmd.push_str(&format!(" --catalog {}", c.display()));
        }
        cmd.push_str(&format!(" --clique-cap {} --iso-cap {}", self.clique_cap, self.iso_cap));
        cmd
    }

    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match &self.report {
            Some(path) => write_file(path, text),
            None => {
                std::io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let jobs = cli.command.selection().jobs;
    let result = match jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli.command)),
            Err(e) => Err(anyhow!("thread pool: {e}")),
        },
        None => execute(&cli.command),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}

impl Command {
    fn selection(&self) -> &Selection {
        match self {
            Command::BuildCatalog { select, .. }
            | Command::Ingest { select, .. }
            | Command::Graph { select, .. }
            | Command::Check { select, .. }
            | Command::Classify { select }
            | Command::ScanPairs { select, .. }
            | Command::Profile { select } => select,
        }
    }
}

fn execute(command: &Command) -> anyhow::Result<i32> {
    match command {
        Command::BuildCatalog { select, out, invariants } => {
            let groups = builtin_catalog(&select.families()?, select.max_order)?;
            let n = if *invariants { write_catalog_with_invariants(&groups, out) } else { write_catalog(&groups, out) }?;
            eprintln!("wrote {n} records to {}", out.display());
            Ok(EXIT_OK)
        }
        Command::Ingest { select, out } => {
            if select.catalogs.is_empty() {
                bail!("ingest needs at least one --catalog");
            }
            let groups = select.catalog_groups()?;
            let mut seen = BTreeMap::new();
            for g in &groups {
                if seen.insert(g.name(), ()).is_some() {
                    bail!("duplicate record name {:?}", g.name());
                }
            }
            let report = dedupe(&groups);
            select.emit(&format!("{}\n", json!({ "records": groups.len(), "dedupe": report })))?;
            if let Some(out) = out {
                write_catalog(&groups, out)?;
            }
            Ok(EXIT_OK)
        }
        Command::Graph { select, dot, json } => {
            let g = select.single()?;
            let graph = noncommuting_graph(&g)?;
            if let Some(path) = dot {
                write_file(path, &graph.to_dot())?;
            }
            if let Some(path) = json {
                write_file(path, &format!("{}\n", graph.to_json()))?;
            }
            if dot.is_none() && json.is_none() || select.report.is_some() {
                let clique = max_clique_capped(&graph, select.clique_cap)?;
                let summary = json!({
                    "group": g.name(),
                    "vertices": graph.vertex_count(),
                    "edges": graph.edge_count(),
                    "multipartite_parts": multipartite_parts(&graph),
                    "max_clique": clique.len(),
                });
                select.emit(&format!("{summary}\n"))?;
            }
            Ok(EXIT_OK)
        }
        Command::Check { id, select } => run_check(id, select),
        Command::Classify { select } => run_check(CLASSIFY, select),
        Command::ScanPairs { select, p_groups } => scan(select, *p_groups, None),
        Command::Profile { select } => {
            let g = select.single()?;
            let report = harness::profile_report(&g)?;
            select.emit(&format!("{report}\n"))?;
            Ok(EXIT_OK)
        }
    }
}

fn run_check(id: &str, select: &Selection) -> anyhow::Result<i32> {
    match id {
        THEOREM_1_2 => scan(select, true, None),
        LEMMA_2_1 | LEMMA_2_4 => scan(select, false, Some(id)),
        CONJECTURE_1_1 => scan(select, false, Some(id)),
        LEMMA_2_5 | LEMMA_2_6 | PROP_2_7 | LEMMA_2_8 | FROBENIUS | CLASSIFY => {
            let groups = select.resolve()?;
            let rows = sweep(id, &groups, &select.limits());
            finish(select, rows, None)
        }
        other => bail!("unknown check id {other:?}; expected one of {}", CHECK_IDS.join(", ")),
    }
}

fn scan(select: &Selection, p_group_only: bool, only: Option<&str>) -> anyhow::Result<i32> {
    let groups = select.resolve()?;
    let report = scan_pairs(&groups, &ScanOptions { limits: select.limits(), p_group_only })?;
    let mut rows: Vec<CheckResult> = match only {
        Some(id) => report.rows.iter().filter(|r| r.check == id).cloned().collect(),
        None => report.rows.clone(),
    };
    sort_rows(&mut rows);
    let header = json!({
        "scan": {
            "groups": groups.len(),
            "p_group_only": p_group_only,
            "classes": report.classes,
            "pairs": report.pairs,
            "skipped": report.skipped,
            "violations": report.violations(),
        }
    });
    finish(select, rows, Some(header))
}

fn finish(select: &Selection, mut rows: Vec<CheckResult>, header: Option<Value>) -> anyhow::Result<i32> {
    let mut failed = false;
    for row in rows.iter_mut().filter(|r| r.status == Status::Fail) {
        failed = true;
        let cmd = select.recheck(&row.check, &row.subjects);
        if let Value::Object(map) = &mut row.witness {
            map.insert("recheck".into(), Value::String(cmd));
        } else {
            row.witness = json!({ "detail": row.witness.take(), "recheck": cmd });
        }
    }
    let mut text = String::new();
    if let Some(h) = header {
        text.push_str(&format!("{h}\n"));
    }
    text.push_str(&render_report(&rows));
    select.emit(&text)?;
    let summary = harness::summarize(&rows);
    eprintln!("pass {} fail {} not_applicable {}", summary.pass, summary.fail, summary.not_applicable);
    Ok(if failed { EXIT_CHECK_FAILED } else { EXIT_OK })
}
