//! The `mixhyp` command-line tool.
//!
//! Exit codes: 0 success or verified, 1 verification negative, 2 invalid
//! input or exceeded search budget.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde_json::json;

use crate::coloring::{Enumerator, FeasibleSet};
use crate::constructions::{construct, delta, smallest_variant, SpecSet, Variant};
use crate::document::{self, HypergraphDocument};
use crate::hypergraph::{MixedHypergraph, ISO_MAX_VERTICES};
use crate::report::{RunReport, SearchSummary};
use crate::search::{bounded_minimality_search, SearchBudget, SearchOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mixhyp",
    version,
    about = "Mixed hypergraph spectra and minimum one-realizations"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    /// The smallest construction for the set
    Auto,
    One,
    Two,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the one-realization of a set and write it as a document
    Construct {
        /// Comma separated values, each at least 2
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Auto)]
        variant: VariantArg,
        /// Output path; the document goes to standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Chromatic spectrum, feasible set and gaps of a document
    Spectrum {
        input: PathBuf,
        #[arg(long)]
        list_colorings: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check that a document is a one-realization of a set
    Verify {
        input: PathBuf,
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exhaustively search small uniform hypergraphs for a one-realization
    SearchMin {
        #[arg(long)]
        set: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = SearchBudget::default().max_vertices)]
        max_vertices: usize,
        #[arg(long, default_value_t = SearchBudget::default().c_edge_size)]
        c_size: usize,
        #[arg(long, default_value_t = SearchBudget::default().d_edge_size)]
        d_size: usize,
        #[arg(long, default_value_t = SearchBudget::default().max_candidates)]
        max_candidates: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Test two documents for isomorphism
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Minimum one-realization size of a set
    Delta {
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Feasible set and gap positions of a document
    Gaps {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// A failure that ends the command with the given exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn invalid(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.to_string(),
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Construct {
            set,
            variant,
            out: path,
            format,
        } => cmd_construct(&set, variant, path.as_deref(), format, out, err),
        Command::Spectrum {
            input,
            list_colorings,
            jobs,
            format,
        } => cmd_spectrum(&input, list_colorings, jobs, format, out, err),
        Command::Verify { input, set, format } => cmd_verify(&input, &set, format, out),
        Command::SearchMin {
            set,
            n,
            max_vertices,
            c_size,
            d_size,
            max_candidates,
            jobs,
            format,
        } => {
            let budget = SearchBudget {
                max_vertices,
                c_edge_size: c_size,
                d_edge_size: d_size,
                max_candidates,
            };
            cmd_search_min(&set, n, &budget, jobs, format, out)
        }
        Command::Iso { a, b, format } => cmd_iso(&a, &b, format, out),
        Command::Delta { set, format } => cmd_delta(&set, format, out),
        Command::Gaps { input, format } => cmd_gaps(&input, format, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| invalid(format!("cannot write output: {e}")))
}

fn parse_set(text: &str) -> Result<SpecSet, Failure> {
    text.parse::<SpecSet>().map_err(invalid)
}

/// Target sets for verification may contain 1.
fn parse_target(text: &str) -> Result<FeasibleSet, Failure> {
    let values = text
        .split(',')
        .map(|p| match p.trim().parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(invalid(format!("not a positive integer: {p:?}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(values.into_iter().collect())
}

fn read_document(path: &Path) -> Result<(MixedHypergraph, Vec<u8>), Failure> {
    let bytes = fs::read(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| invalid(format!("{}: not UTF-8", path.display())))?;
    let h = document::parse(text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    Ok((h, bytes))
}

fn cmd_construct(
    set: &str,
    variant: VariantArg,
    path: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let set = parse_set(set)?;
    let variant = match variant {
        VariantArg::Auto => smallest_variant(&set),
        VariantArg::One => Variant::One,
        VariantArg::Two => Variant::Two,
    };
    let h = construct(&set, variant).map_err(invalid)?;
    let text = document::serialize(&h);
    let summary = match format {
        Format::Text => format!(
            "set: {{{}}}\nconstruction: {}\nvertices: {}\ndelta: {}\n",
            set.values().iter().join(", "),
            variant_name(variant),
            h.vertex_count(),
            delta(&set)
        ),
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "set": set.values(),
                "construction": variant_name(variant),
                "vertex_count": h.vertex_count(),
                "delta": delta(&set),
            }))
            .unwrap()
                + "\n"
        }
    };
    match path {
        Some(p) => {
            fs::write(p, &text).map_err(|e| invalid(format!("{}: {e}", p.display())))?;
            write_out(out, &summary)?;
        }
        None => {
            write_out(out, &text)?;
            let _ = err.write_all(summary.as_bytes());
        }
    }
    Ok(EXIT_OK)
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::One => "one",
        Variant::Two => "two",
    }
}

fn cmd_spectrum(
    input: &Path,
    list_colorings: bool,
    jobs: usize,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    if jobs == 0 {
        return Err(invalid("--jobs must be at least 1"));
    }
    let (h, bytes) = read_document(input)?;
    let started = Instant::now();
    let engine = Enumerator::new(&h).jobs(jobs);
    let spectrum = engine.spectrum();
    let colorings = list_colorings.then(|| {
        let mut all = engine.all();
        // by class count, lexicographic within
        all.sort_by_key(|p| p.block_count());
        all
    });
    let report = RunReport::new(
        "spectrum",
        document::digest(&bytes),
        &h,
        &spectrum,
        colorings.as_deref(),
    );
    let elapsed = started.elapsed();
    write_out(
        out,
        &match format {
            Format::Text => report.to_text(),
            Format::Json => report.to_json(),
        },
    )?;
    let _ = writeln!(err, "elapsed: {:.3} ms", elapsed.as_secs_f64() * 1e3);
    Ok(EXIT_OK)
}

/// Reasons a spectrum fails to one-realize `target`, empty when it does.
pub fn diagnose(spectrum: &crate::coloring::Spectrum, target: &FeasibleSet) -> Vec<String> {
    let feasible = spectrum.feasible_set();
    let mut problems = Vec::new();
    for &k in target.values() {
        if !feasible.contains(k) {
            problems.push(format!("{k} not feasible"));
        }
    }
    for &k in feasible.values() {
        if !target.contains(k) {
            problems.push(format!("{k} feasible but not in the target set"));
        }
        let r = spectrum.get(k);
        if r > 1 {
            problems.push(format!("r_{k} = {r}"));
        }
    }
    problems
}

fn cmd_verify(input: &Path, set: &str, format: Format, out: &mut dyn Write) -> CmdResult {
    let target = parse_target(set)?;
    let (h, _) = read_document(input)?;
    let spectrum = Enumerator::new(&h).spectrum();
    let problems = diagnose(&spectrum, &target);
    let ok = problems.is_empty();
    let text = match format {
        Format::Text => {
            let mut t = format!(
                "spectrum: ({})\n",
                spectrum.counts().iter().join(", ")
            );
            if ok {
                t += &format!(
                    "one-realization of {{{}}}: yes\n",
                    target.values().iter().join(", ")
                );
            } else {
                t += &format!(
                    "one-realization of {{{}}}: no\n",
                    target.values().iter().join(", ")
                );
                for p in &problems {
                    t += &format!("  {p}\n");
                }
            }
            t
        }
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "command": "verify",
                "target": target.to_vec(),
                "spectrum": spectrum.counts(),
                "one_realization": ok,
                "diagnosis": problems,
            }))
            .unwrap()
                + "\n"
        }
    };
    write_out(out, &text)?;
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_search_min(
    set: &str,
    n: usize,
    budget: &SearchBudget,
    jobs: usize,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let set = parse_set(set)?;
    let report = bounded_minimality_search(&set, n, budget, jobs).map_err(invalid)?;
    let summary = SearchSummary::new(&set, budget, &report);
    write_out(
        out,
        &match format {
            Format::Text => summary.to_text(),
            Format::Json => summary.to_json(),
        },
    )?;
    Ok(match report.outcome {
        SearchOutcome::BudgetExceeded => EXIT_INVALID,
        _ => EXIT_OK,
    })
}

fn cmd_iso(a: &Path, b: &Path, format: Format, out: &mut dyn Write) -> CmdResult {
    let (ha, _) = read_document(a)?;
    let (hb, _) = read_document(b)?;
    for h in [&ha, &hb] {
        if h.vertex_count() > ISO_MAX_VERTICES {
            return Err(invalid(format!(
                "isomorphism testing is limited to {ISO_MAX_VERTICES} vertices"
            )));
        }
    }
    let mapping = ha.isomorphism(&hb).map_err(invalid)?;
    let text = match format {
        Format::Text => match &mapping {
            Some(m) => format!(
                "isomorphic\nmapping: {}\n",
                m.image()
                    .iter()
                    .enumerate()
                    .map(|(v, w)| format!("{v}->{w}"))
                    .join(" ")
            ),
            None => "not isomorphic\n".to_string(),
        },
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "command": "iso",
                "isomorphic": mapping.is_some(),
                "mapping": mapping.as_ref().map(|m| m.image().to_vec()),
            }))
            .unwrap()
                + "\n"
        }
    };
    write_out(out, &text)?;
    Ok(if mapping.is_some() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_delta(set: &str, format: Format, out: &mut dyn Write) -> CmdResult {
    let set = parse_set(set)?;
    let d = delta(&set);
    let variant = variant_name(smallest_variant(&set));
    let text = match format {
        Format::Text => format!("delta: {d}\nconstruction: {variant}\n"),
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "set": set.values(),
                "delta": d,
                "construction": variant,
            }))
            .unwrap()
                + "\n"
        }
    };
    write_out(out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_gaps(input: &Path, format: Format, out: &mut dyn Write) -> CmdResult {
    let (h, _) = read_document(input)?;
    let feasible = Enumerator::new(&h).spectrum().feasible_set();
    let gaps = feasible.gaps();
    let text = match format {
        Format::Text => format!(
            "feasible set: {{{}}}\ngaps: {}\ngap-free: {}\n",
            feasible.values().iter().join(", "),
            if gaps.is_empty() {
                "none".to_string()
            } else {
                gaps.iter().join(", ")
            },
            feasible.is_gap_free()
        ),
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "command": "gaps",
                "feasible_set": feasible.to_vec(),
                "gaps": gaps,
                "gap_free": feasible.is_gap_free(),
            }))
            .unwrap()
                + "\n"
        }
    };
    write_out(out, &text)?;
    Ok(EXIT_OK)
}

/// Writes the canonical document for `h` to `path`.
pub fn write_document(path: &Path, h: &MixedHypergraph) -> std::io::Result<()> {
    fs::write(path, HypergraphDocument::from_hypergraph(h).to_canonical_string())
}
