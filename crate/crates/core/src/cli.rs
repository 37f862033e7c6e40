//! Command-line front end: parse category descriptions, run constructions
//! and checks, and emit deterministic reports.
//!
//! Exit codes follow one contract everywhere: `0` when the requested check
//! holds (or the construction succeeded), `1` when everything parsed and ran
//! but the answer is "no", and `2` for errors — unreadable input, unlawful
//! preconditions, usage mistakes, or an exceeded `--budget`. A budget
//! overrun never yields a partial answer.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::adjunction::{adjunction_report, AdjError, AdjunctionInstance};
use crate::enrich::enrich;
use crate::enriched::{enriched_violations, EnrichedCat};
use crate::format::{parse, serialize, Document, InternalDoc, Payload};
use crate::generators::run_extensivity_selftest;
use crate::internal::{
    canonical_violations, internal_violations, split_violations, CanonMode, SplitData,
};
use crate::internalize::InterBuild;
use crate::plaincat::{category_violations, karoubi};

const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "fincat",
    version,
    about = "Finite categories: constructions, lawfulness checks, and reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    /// Conjugation pairs are those with f ∘ g ∘ f = g.
    CanonA,
    /// Conjugation pairs are those with f ∘ g ∘ f = f.
    CanonB,
}

impl From<Mode> for CanonMode {
    fn from(m: Mode) -> CanonMode {
        match m {
            Mode::CanonA => CanonMode::SandwichGivesG,
            Mode::CanonB => CanonMode::SandwichGivesF,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and run the lawfulness check for its kind.
    Check {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split the idempotents of a plain category (.fcat in, .fcat out).
    Karoubi {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the internal category of an enriched one (.ecat in, .icat out,
    /// canonical split rows included).
    Inter {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read an internal category back as an enriched one (.icat in, .ecat out).
    En {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the split laws of the split recorded in an internal category file.
    SplitCheck {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that the recorded split is the canonical one.
    CanonicalCheck {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::CanonA)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate both hom-sets of the correspondence for an enriched category
    /// and verify they are mapped onto each other bijectively.
    AdjointCheck {
        file: PathBuf,
        /// `self`, or a path to an internal category file with split rows.
        #[arg(long, default_value = "self")]
        target: String,
        #[arg(long)]
        allow_noncanonical: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse a file, serialize it again, and compare bytes.
    Roundtrip {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the coproduct law suite on pseudo-random families of maps.
    ExtensivitySelftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A finished run: the text to emit and the exit code (0 or 1).
struct Outcome {
    report: String,
    code: i32,
    out: Option<PathBuf>,
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(outcome) => {
            if let Some(path) = &outcome.out {
                if let Err(e) = std::fs::write(path, &outcome.report) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            } else {
                print!("{}", outcome.report);
            }
            outcome.code
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn run(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Check { file, out } => check(&file, out),
        Command::Karoubi { file, out } => karoubi_cmd(&file, out),
        Command::Inter { file, budget, out } => inter_cmd(&file, budget, out),
        Command::En { file, out } => en_cmd(&file, out),
        Command::SplitCheck { file, out } => split_check(&file, out),
        Command::CanonicalCheck { file, mode, out } => canonical_check(&file, mode, out),
        Command::AdjointCheck {
            file,
            target,
            allow_noncanonical,
            budget,
            out,
        } => adjoint_check(&file, &target, allow_noncanonical, budget, out),
        Command::Roundtrip { file, out } => roundtrip(&file, out),
        Command::ExtensivitySelftest { seed, cases, out } => extensivity_selftest(seed, cases, out),
    }
}

fn load(path: &Path) -> Result<Document, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn verdict_report(title: &str, violations: &[String]) -> Outcome {
    let mut report = String::new();
    if violations.is_empty() {
        let _ = writeln!(report, "{title}: ok");
        Outcome {
            report,
            code: 0,
            out: None,
        }
    } else {
        let _ = writeln!(report, "{title}: {} violations", violations.len());
        for v in violations {
            let _ = writeln!(report, "violation: {v}");
        }
        Outcome {
            report,
            code: 1,
            out: None,
        }
    }
}

fn check(file: &Path, out: Option<PathBuf>) -> Result<Outcome, String> {
    let doc = load(file)?;
    let violations = match &doc.payload {
        // Well-formedness of a map family is fully enforced by the parser.
        Payload::MapFamily(_) => Vec::new(),
        Payload::Plain(c) => category_violations(c),
        Payload::Enriched(m) => enriched_violations(m),
        Payload::Internal(d) => internal_violations(&d.cat),
    };
    let title = format!("check {} {}", doc.payload.kind(), doc.name);
    Ok(with_out(verdict_report(&title, &violations), out))
}

fn with_out(mut o: Outcome, out: Option<PathBuf>) -> Outcome {
    o.out = out;
    o
}

fn require_lawful(what: &str, violations: Vec<String>) -> Result<(), String> {
    match violations.first() {
        None => Ok(()),
        Some(v) => Err(format!("{what} is unlawful: {v}")),
    }
}

fn expect_plain(doc: &Document) -> Result<&crate::plaincat::FinCat, String> {
    match &doc.payload {
        Payload::Plain(c) => Ok(c),
        other => Err(format!(
            "expected a plain-category document, found {}",
            other.kind()
        )),
    }
}

fn expect_enriched(doc: &Document) -> Result<&EnrichedCat, String> {
    match &doc.payload {
        Payload::Enriched(m) => Ok(m),
        other => Err(format!(
            "expected an enriched-category document, found {}",
            other.kind()
        )),
    }
}

fn expect_internal(doc: &Document) -> Result<&InternalDoc, String> {
    match &doc.payload {
        Payload::Internal(d) => Ok(d),
        other => Err(format!(
            "expected an internal-category document, found {}",
            other.kind()
        )),
    }
}

fn document_outcome(name: String, payload: Payload, out: Option<PathBuf>) -> Outcome {
    let doc = Document {
        name,
        comments: Vec::new(),
        payload,
    };
    Outcome {
        report: serialize(&doc),
        code: 0,
        out,
    }
}

fn karoubi_cmd(file: &Path, out: Option<PathBuf>) -> Result<Outcome, String> {
    let doc = load(file)?;
    let c = expect_plain(&doc)?;
    require_lawful("the category", category_violations(c))?;
    let k = karoubi(c);
    Ok(document_outcome(
        format!("{}-karoubi", doc.name),
        Payload::Plain(k.cat),
        out,
    ))
}

/// Candidate triples the construction has to sieve; used as its budget
/// measure so an oversized input fails fast instead of half-building.
fn inter_work(m: &EnrichedCat) -> u64 {
    let n = m.n_objects();
    let mut total: u64 = 0;
    for a in 0..n {
        for b in 0..n {
            total = total.saturating_add(
                m.hom(b, b).len() as u64 * m.hom(a, b).len() as u64 * m.hom(a, a).len() as u64,
            );
        }
    }
    total
}

fn budget_guard(work: u64, budget: u64) -> Result<(), String> {
    if work > budget {
        return Err(format!(
            "size budget exceeded: the construction needs {work} candidate triples, \
             the budget allows {budget}"
        ));
    }
    Ok(())
}

fn inter_cmd(file: &Path, budget: u64, out: Option<PathBuf>) -> Result<Outcome, String> {
    let doc = load(file)?;
    let m = expect_enriched(&doc)?;
    require_lawful("the enriched category", enriched_violations(m))?;
    budget_guard(inter_work(m), budget)?;
    let mb = InterBuild::build(m).map_err(|e| e.to_string())?;
    Ok(document_outcome(
        format!("{}-inter", doc.name),
        Payload::Internal(InternalDoc {
            cat: mb.cat().clone(),
            split: Some(mb.split().clone()),
        }),
        out,
    ))
}

fn en_cmd(file: &Path, out: Option<PathBuf>) -> Result<Outcome, String> {
    let doc = load(file)?;
    let d = expect_internal(&doc)?;
    require_lawful("the internal category", internal_violations(&d.cat))?;
    let enr = enrich(&d.cat).map_err(|e| e.to_string())?;
    Ok(document_outcome(
        format!("{}-en", doc.name),
        Payload::Enriched(enr.cat().clone()),
        out,
    ))
}

fn internal_with_split<'d>(
    doc: &'d Document,
    file: &Path,
) -> Result<(&'d InternalDoc, &'d SplitData), String> {
    let d = expect_internal(doc)?;
    match &d.split {
        Some(sp) => Ok((d, sp)),
        None => Err(format!("{} has no split rows", file.display())),
    }
}

fn split_check(file: &Path, out: Option<PathBuf>) -> Result<Outcome, String> {
    let doc = load(file)?;
    let (d, sp) = internal_with_split(&doc, file)?;
    require_lawful("the internal category", internal_violations(&d.cat))?;
    let title = format!("split-check internal-category {}", doc.name);
    Ok(with_out(
        verdict_report(&title, &split_violations(&d.cat, sp)),
        out,
    ))
}

fn canonical_check(file: &Path, mode: Mode, out: Option<PathBuf>) -> Result<Outcome, String> {
    let doc = load(file)?;
    let (d, sp) = internal_with_split(&doc, file)?;
    require_lawful("the internal category", internal_violations(&d.cat))?;
    require_lawful("the recorded split", split_violations(&d.cat, sp))?;
    let title = format!("canonical-check internal-category {}", doc.name);
    Ok(with_out(
        verdict_report(&title, &canonical_violations(&d.cat, sp, mode.into())),
        out,
    ))
}

fn adjoint_check(
    file: &Path,
    target: &str,
    allow_noncanonical: bool,
    budget: u64,
    out: Option<PathBuf>,
) -> Result<Outcome, String> {
    let doc = load(file)?;
    let m = expect_enriched(&doc)?;
    require_lawful("the enriched category", enriched_violations(m))?;
    budget_guard(inter_work(m), budget)?;
    let inst = if target == "self" {
        AdjunctionInstance::self_instance(m)
    } else {
        let target_doc = load(Path::new(target))?;
        let (d, sp) = internal_with_split(&target_doc, Path::new(target))?;
        AdjunctionInstance::new(m, &d.cat, sp)
    }
    .map_err(adj_err)?;
    let report = adjunction_report(&inst, budget, allow_noncanonical).map_err(adj_err)?;
    let ok = report.mutually_inverse() && report.phi_images_split_preserving;
    let mut text = format!(
        "adjoint-check enriched-category {} against {target}\n",
        doc.name
    );
    text.push_str(&report.render());
    Ok(Outcome {
        report: text,
        code: if ok { 0 } else { 1 },
        out,
    })
}

fn adj_err(e: AdjError) -> String {
    e.to_string()
}

fn roundtrip(file: &Path, out: Option<PathBuf>) -> Result<Outcome, String> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    let doc = parse(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    let again = serialize(&doc);
    let title = format!("roundtrip {} {}", doc.payload.kind(), doc.name);
    let mut report = String::new();
    let code = if again == text {
        let _ = writeln!(report, "{title}: byte-identical");
        0
    } else {
        let line = first_difference(&text, &again);
        let _ = writeln!(
            report,
            "{title}: differs from canonical form at line {line}"
        );
        1
    };
    Ok(Outcome { report, code, out })
}

/// 1-based number of the first line where the two texts disagree.
fn first_difference(a: &str, b: &str) -> usize {
    let mut la = a.lines();
    let mut lb = b.lines();
    let mut n = 0;
    loop {
        n += 1;
        match (la.next(), lb.next()) {
            (Some(x), Some(y)) if x == y => continue,
            (None, None) => return n,
            _ => return n,
        }
    }
}

fn extensivity_selftest(seed: u64, cases: usize, out: Option<PathBuf>) -> Result<Outcome, String> {
    let violations = run_extensivity_selftest(seed, cases);
    let title = format!("extensivity-selftest seed {seed} cases {cases}");
    Ok(with_out(verdict_report(&title, &violations), out))
}
