//! Command-line entry point.
//!
//! Exit codes: 0 when every requested check passes, 1 when one fails, 2 on a
//! usage or I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::casebook::{
    audit_nonexistence, pipeline_report, run_all, verify_case, AuditConfig, AuditReport, CASE_IDS, NONEXISTENCE_GROUPS,
    PIPELINES,
};
use crate::coverbook::{genus_from_degree, NBound};
use crate::delpezzo::{intersection_graph, PicardLattice};
use crate::invariants::{invariant_dimension, invariant_dimension_by_monomials};
use crate::matgroup::catalogue::{catalogue, CATALOGUE_NAMES};
use crate::selftest::{acceptance_report, DEFAULT_INSTANCES, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(name = "k3audit", version, about = "Exact audits of K3 surfaces with symplectic symmetry and an antisymplectic involution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Primes for the finite-field smoothness scans.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = [7u64, 11, 13])]
    primes: Vec<u64>,
    /// Bound on the number of rational branch curves.
    #[arg(long = "n-bound", global = true, default_value = "10", value_parser = PossibleValuesParser::new(["10", "19"]))]
    n_bound: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Audit one surface of the classification table (or `all`).
    Verify {
        #[arg(long, value_parser = PossibleValuesParser::new(with_all(CASE_IDS)))]
        case: String,
    },
    /// Run a non-existence audit (or `all`).
    Audit {
        #[arg(long, value_parser = PossibleValuesParser::new(with_all(NONEXISTENCE_GROUPS)))]
        group: String,
    },
    /// Dimensions of degree-d semi-invariants of a catalogue group.
    Molien {
        #[arg(long, value_parser = PossibleValuesParser::new(CATALOGUE_NAMES))]
        group: String,
        #[arg(long)]
        degree: usize,
        /// Index into the list of linear characters; all characters if absent.
        #[arg(long)]
        character: Option<usize>,
    },
    /// Exceptional classes and their intersection graph.
    Delpezzo {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=9))]
        degree: u32,
        /// Append the intersection graph in DOT format.
        #[arg(long)]
        emit_graph: bool,
    },
    /// Run a derivation pipeline.
    Derive {
        #[arg(long, value_parser = PossibleValuesParser::new(PIPELINES))]
        pipeline: String,
    },
    /// Evaluate the acceptance checklist, including the property suites.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_INSTANCES)]
        instances: usize,
    },
}

fn with_all(ids: &[&'static str]) -> Vec<&'static str> {
    ids.iter().copied().chain(["all"]).collect()
}

fn select<'a>(value: &'a str, all: &[&'a str]) -> Vec<&'a str> {
    if value == "all" {
        all.to_vec()
    } else {
        vec![value]
    }
}

#[derive(Serialize)]
struct Document {
    passed: bool,
    reports: Vec<AuditReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph: Option<String>,
}

struct UsageError(String);

const EXPECTED_MINUS_ONE: [usize; 9] = [240, 56, 27, 16, 10, 6, 3, 1, 0];

fn molien_report(group: &str, degree: usize, character: Option<usize>) -> Result<AuditReport, UsageError> {
    let mut r = AuditReport::new(&format!("molien-{group}-{degree}"));
    let Some(g) = r.attempt("group", "molien/group", catalogue(group)) else { return Ok(r) };
    let chars = g.linear.linear_characters();
    let picked: Vec<_> = match character {
        Some(k) if k >= chars.len() => {
            return Err(UsageError(format!("--character {k} out of range: {group} has characters 0..{}", chars.len() - 1)));
        }
        Some(k) => vec![chars[k].clone()],
        None => chars,
    };
    r.check("group", "molien/group", true, format!("linear order {} projective order {}", g.linear.order(), g.projective.order()));
    for chi in picked {
        let trace = invariant_dimension(&g.linear, degree, &chi);
        let monomial = invariant_dimension_by_monomials(&g.linear, degree as u32, &chi);
        match (trace, monomial) {
            (Ok(a), Ok(b)) => {
                r.check(&format!("dimension:{}", chi.spec()), "molien/dimension", a == b, format!("dimension {a} (monomial trace {b})"))
            }
            (Err(e), _) | (_, Err(e)) => r.check(&format!("dimension:{}", chi.spec()), "molien/dimension", false, format!("error: {e}")),
        };
    }
    Ok(r)
}

fn show<T: ToString>(v: Option<T>) -> String {
    v.map_or("-".into(), |x| x.to_string())
}

fn delpezzo_report(degree: u32) -> (AuditReport, String) {
    let mut r = AuditReport::new(&format!("delpezzo-{degree}"));
    let Some(l) = r.attempt("lattice", "delpezzo/lattice", PicardLattice::del_pezzo(degree)) else { return (r, String::new()) };
    let classes = l.minus_one_classes();
    let want = EXPECTED_MINUS_ONE[degree as usize - 1];
    r.check("minus-one-classes", "delpezzo/count", classes.len() == want, format!("{} classes", classes.len()));
    let branch = l.canonical().scale(-2);
    if let Some(g) = r.attempt("branch-genus", "delpezzo/genus", l.genus_of_class(&branch)) {
        let want = genus_from_degree(degree as i64);
        r.check("branch-genus", "delpezzo/genus", g == want, format!("genus of -2K = {g}"));
    }
    let graph = intersection_graph(&classes, &l);
    let s = graph.stats();
    let text = format!(
        "{} vertices {} edges regular {} girth {} max weight {} automorphisms {}",
        s.vertices,
        s.edges,
        show(s.regular),
        show(s.girth),
        show(s.max_weight),
        s.automorphisms.map_or("not computed".to_string(), |a| a.to_string())
    );
    let ok = if degree == 5 {
        s.vertices == 10 && s.edges == 15 && s.regular == Some(3) && s.girth == Some(5) && s.automorphisms == Some(120)
    } else {
        true
    };
    r.check("graph", "delpezzo/graph", ok, text);
    let labels: Vec<String> = classes.iter().map(|c| l.format_class(c)).collect();
    (r, graph.to_dot(&labels))
}

fn execute(cli: Cli) -> Result<Document, UsageError> {
    let n_bound = if cli.common.n_bound == "19" { NBound::Nineteen } else { NBound::Ten };
    let cfg = AuditConfig { primes: cli.common.primes.clone(), n_bound };
    let mut graph = None;
    let reports = match cli.command {
        Command::Verify { case } => {
            let ids = select(&case, CASE_IDS);
            run_all(&ids, |id| verify_case(id, &cfg).expect("validated case id"))
        }
        Command::Audit { group } => {
            let ids = select(&group, NONEXISTENCE_GROUPS);
            run_all(&ids, |id| audit_nonexistence(id).expect("validated group name"))
        }
        Command::Molien { group, degree, character } => vec![molien_report(&group, degree, character)?],
        Command::Delpezzo { degree, emit_graph } => {
            let (r, dot) = delpezzo_report(degree);
            if emit_graph {
                graph = Some(dot);
            }
            vec![r]
        }
        Command::Derive { pipeline } => vec![pipeline_report(&pipeline).expect("validated pipeline")],
        Command::Selftest { seed, instances } => vec![acceptance_report(&cfg, seed, instances)],
    };
    Ok(Document { passed: reports.iter().all(AuditReport::passed), reports, graph })
}

fn render(doc: &Document, format: Format) -> String {
    match format {
        Format::Text => {
            let mut s: String = doc.reports.iter().map(|r| r.to_text()).collect();
            if let Some(g) = &doc.graph {
                s.push_str(g);
                if !g.ends_with('\n') {
                    s.push('\n');
                }
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(doc).expect("serializable report") + "\n",
    }
}

/// Parses `argv` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let format = cli.common.format;
    let output = cli.common.output.clone();
    let doc = match execute(cli) {
        Ok(d) => d,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let text = render(&doc, format);
    let written = match &output {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    for r in &doc.reports {
        for c in r.failures() {
            eprintln!("FAILED {} {} ({})", c.anchor, c.name, r.id());
        }
    }
    if doc.passed {
        0
    } else {
        1
    }
}
