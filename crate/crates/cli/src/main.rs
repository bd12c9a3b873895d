use std::collections::HashSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicU64, Ordering};

use clap::{Args, Parser, Subcommand, ValueEnum};
use quotientope::analysis::{
    analyze, count_congruences, count_noniso, count_regular, count_vertex_transitive, count_vt_noniso,
    count_vt_noniso_by_partitions, is_regular, is_vertex_transitive, is_vertex_transitive_by_automorphisms, table1,
    vertex_transitive_recurrence, CellSource, Table1Budget,
};
use quotientope::canon::{canonical_form, CanonicalForm};
use quotientope::classes::compute_classes;
use quotientope::fence::{enumerate_all_congruences, essential_congruences, parse_fence_list, DiagramJson};
use quotientope::genj::hamilton_path;
use quotientope::patterns::{avoid_set, congruence_from_patterns, parse_pattern_list, WellBehavedSet};
use quotientope::quotient::build_quotient_graph;
use quotientope::{Congruence, Error};

const ABOUT: &str = "Lattice congruences of the weak order: classes, quotient graphs, Hamilton paths and counts";

const LONG_ABOUT: &str = "\
Works with lattice congruences of the weak order on permutations of [n].
A congruence is given as a set of fences, either inline with --fences,
from a JSON file with --diagram, or as a well-behaved vincular pattern set
with --patterns. Exactly one source may be given.

Inline fences use the terse form 'a-b:{x,y}', separated by ';'. The set
{x,y} lists the values between a and b that sit left of the pair. The
listed fences are generators: everything they force is added.

A diagram file looks like
  {\"n\": 4, \"fences\": [{\"a\": 1, \"b\": 4, \"left\": [2]}], \"generators\": true}
With \"generators\": false the list must already be closed downward.

Patterns use brackets for the glued pair, e.g. '2[31]' or '2[41]3,3[41]2'.

All output is deterministic.";

const EXIT_STATUS: &str = "\
EXIT STATUS:
  0  success
  2  invalid input (bad fence, diagram, pattern set or option combination)
  3  an internal verification failed
  4  n is too large for the requested computation

EXAMPLES:
  quotientope hampath --n 3 --fences '1-3:{2}'
  quotientope hampath --n 4 --patterns '2[31]'
  quotientope count --n 4 --what congruences --verify --jobs 4
  quotientope analyze --n 4 --fences '1-4:{2}'
  quotientope export --n 4 --fences '' --format dot
  quotientope table1 --max-n 7
  quotientope patterns --n 5 --patterns '2[41]3,3[41]2'";

#[derive(Parser)]
#[command(name = "quotientope", version, about = ABOUT, long_about = LONG_ABOUT, after_long_help = EXIT_STATUS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one representative per class along a Hamilton path of the quotient graph
    #[command(after_long_help = EXIT_STATUS)]
    Hampath {
        #[command(flatten)]
        input: Input,
        /// Append '# class=<id>' to each line
        #[arg(long)]
        annotate: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print one entry of the counting table
    #[command(after_long_help = EXIT_STATUS)]
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        what: What,
        /// Re-derive the value by an independent enumeration (n <= 5)
        #[arg(long)]
        verify: bool,
        /// Worker threads for --verify
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Report classes, degrees, regularity, transitivity and Hamiltonicity as JSON
    #[command(after_long_help = EXIT_STATUS)]
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Node budget for the Hamilton cycle search
        #[arg(long, default_value_t = 2_000_000)]
        cycle_budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Write the quotient graph as DOT or JSON, nodes numbered by class id
    #[command(after_long_help = EXIT_STATUS)]
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Print the counting table for n = 2..=max-n as TSV
    ///
    /// Each line is 'row, n, value, source' separated by tabs. The source is
    /// enumeration, formula or unknown; unknown cells print '?'.
    #[command(after_long_help = EXIT_STATUS)]
    Table1 {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        /// Largest n for which congruences are counted by enumeration (at most 6)
        #[arg(long, default_value_t = 5)]
        enum_congruences: usize,
        /// Largest n for isomorphism counts (at most 5)
        #[arg(long, default_value_t = 5)]
        enum_noniso: usize,
        /// Largest n for degree rows by enumeration (at most 5); formulas beyond
        #[arg(long, default_value_t = 4)]
        enum_degrees: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// List the permutations avoiding a pattern set and the congruence it induces
    #[command(after_long_help = EXIT_STATUS)]
    Patterns {
        #[arg(long)]
        n: usize,
        /// Comma-separated vincular patterns, e.g. '2[31]'
        #[arg(long)]
        patterns: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct Input {
    #[arg(long)]
    n: Option<usize>,
    /// Generating fences in terse form, e.g. '1-3:{2};2-4:{}'
    #[arg(long)]
    fences: Option<String>,
    /// JSON diagram file
    #[arg(long)]
    diagram: Option<PathBuf>,
    /// Well-behaved vincular pattern set, e.g. '2[31]'
    #[arg(long)]
    patterns: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Congruences,
    Regular,
    VertexTransitive,
    VtNoniso,
    Noniso,
}

enum Failure {
    Input(String),
    Verification(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::TooLarge { .. } => Failure::Budget(e.to_string()),
            Error::Verification(_) => Failure::Verification(e.to_string()),
            Error::NotWellBehaved { ref completion, .. } if !completion.is_empty() => {
                Failure::Input(format!("{e}; the closed set is {}", completion.join(",")))
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Hampath { input, annotate, format } => hampath(&input, annotate, format),
        Command::Count { n, what, verify, jobs, format } => count(n, what, verify, jobs.max(1), format),
        Command::Analyze { input, cycle_budget, format } => {
            let c = load(&input)?;
            let report = analyze(&c, cycle_budget)?;
            match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                    s.push('\n');
                    Ok(s)
                }
                Format::Text => {
                    let value = serde_json::to_value(&report).expect("report serializes");
                    let mut out = String::new();
                    for (k, v) in value.as_object().expect("report is an object") {
                        out.push_str(&format!("{k}: {v}\n"));
                    }
                    Ok(out)
                }
                _ => Err(Failure::Input("analyze supports --format json or text".into())),
            }
        }
        Command::Export { input, format } => {
            let c = load(&input)?;
            let g = build_quotient_graph(&compute_classes(&c)?)?;
            match format {
                Format::Dot => Ok(g.to_dot()),
                Format::Json => Ok(json_line(&g.to_json())),
                _ => Err(Failure::Input("export supports --format dot or json".into())),
            }
        }
        Command::Table1 { max_n, enum_congruences, enum_noniso, enum_degrees, format } => {
            if !(2..=12).contains(&max_n) {
                return Err(Failure::Input(format!("--max-n must lie in 2..=12, got {max_n}")));
            }
            let budget = Table1Budget { congruences: enum_congruences, noniso: enum_noniso, degrees: enum_degrees };
            let cells = table1(max_n, budget)?;
            match format {
                Format::Tsv | Format::Text => {
                    let mut out = String::from("row\tn\tvalue\tsource\n");
                    for c in &cells {
                        let value = c.value.map_or("?".to_string(), |v| v.to_string());
                        let source = match c.source {
                            CellSource::Enumeration => "enumeration",
                            CellSource::Formula => "formula",
                            CellSource::Unknown => "unknown",
                        };
                        out.push_str(&format!("{}\t{}\t{}\t{}\n", c.row, c.n, value, source));
                    }
                    Ok(out)
                }
                Format::Json => Ok(json_line(&serde_json::to_value(&cells).expect("cells serialize"))),
                Format::Dot => Err(Failure::Input("table1 supports --format tsv or json".into())),
            }
        }
        Command::Patterns { n, patterns, format } => patterns_cmd(n, &patterns, format),
    }
}

fn json_line(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn check_n(n: usize) -> std::result::Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Input("--n must be at least 1".into()));
    }
    if n > 12 {
        return Err(Failure::Budget(format!("n = {n} exceeds the limit of 12")));
    }
    Ok(())
}

fn well_behaved(patterns: &str) -> std::result::Result<WellBehavedSet, Failure> {
    Ok(WellBehavedSet::new(&parse_pattern_list(patterns)?)?)
}

/// The congruence named by exactly one of the input flags.
fn load(input: &Input) -> std::result::Result<Congruence, Failure> {
    let given = [input.fences.is_some(), input.diagram.is_some(), input.patterns.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(Failure::Input("give exactly one of --fences, --diagram, --patterns".into()));
    }
    if let Some(path) = &input.diagram {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        let diagram = DiagramJson::parse(&text)?;
        if input.n.is_some_and(|n| n != diagram.n) {
            return Err(Failure::Input(format!("--n disagrees with n = {} in {}", diagram.n, path.display())));
        }
        check_n(diagram.n)?;
        return Ok(diagram.to_congruence()?);
    }
    let n = input.n.ok_or_else(|| Failure::Input("--n is required with --fences or --patterns".into()))?;
    check_n(n)?;
    if let Some(fences) = &input.fences {
        let fences = parse_fence_list(fences)?;
        return Ok(Congruence::downset_closure(n, &fences)?);
    }
    let set = well_behaved(input.patterns.as_deref().unwrap_or_default())?;
    Ok(congruence_from_patterns(&set, n)?)
}

fn hampath(input: &Input, annotate: bool, format: Format) -> Outcome {
    let c = load(input)?;
    let path = hamilton_path(&c)?;
    match format {
        Format::Text => {
            let mut out = String::new();
            for (p, id) in path.representatives.iter().zip(&path.classes) {
                if annotate {
                    out.push_str(&format!("{p} # class={id}\n"));
                } else {
                    out.push_str(&format!("{p}\n"));
                }
            }
            Ok(out)
        }
        Format::Json => {
            let steps: Vec<serde_json::Value> = path
                .representatives
                .iter()
                .zip(&path.classes)
                .map(|(p, id)| serde_json::json!({"permutation": p.entries(), "class": id}))
                .collect();
            Ok(json_line(&serde_json::json!({"n": c.n(), "diagram": c.to_terse(), "path": steps})))
        }
        _ => Err(Failure::Input("hampath supports --format text or json".into())),
    }
}

fn count(n: usize, what: What, verify: bool, jobs: usize, format: Format) -> Outcome {
    if n < 2 {
        return Err(Failure::Input("--n must be at least 2 for counts".into()));
    }
    check_n(n)?;
    let value: u128 = match what {
        What::Congruences => count_congruences(n)? as u128,
        What::Regular => count_regular(n),
        What::VertexTransitive => count_vertex_transitive(n),
        What::VtNoniso => count_vt_noniso(n),
        What::Noniso => count_noniso(n)?.0 as u128,
    };
    if verify {
        let again = verify_count(n, what, jobs)?;
        if again != value {
            return Err(Failure::Verification(format!("enumeration gives {again}, expected {value}")));
        }
    }
    match format {
        Format::Text => Ok(format!("{value}\n")),
        Format::Json => Ok(json_line(&serde_json::json!({"n": n, "value": value, "verified": verify}))),
        _ => Err(Failure::Input("count supports --format text or json".into())),
    }
}

/// Recounts by enumerating congruences and testing their quotient graphs
/// directly, spread over `jobs` threads.
fn verify_count(n: usize, what: What, jobs: usize) -> std::result::Result<u128, Failure> {
    if n > 5 {
        return Err(Failure::Budget(format!("n = {n} exceeds the limit of 5 for --verify")));
    }
    if what == What::Congruences {
        let mut essential = 0u128;
        enumerate_all_congruences(n, |c| essential += u128::from(c.is_essential()))?;
        return Ok(essential);
    }
    if what == What::VtNoniso && count_vt_noniso_by_partitions(n) != count_vt_noniso(n) {
        return Err(Failure::Verification("partition count disagrees with the formula".into()));
    }
    if what == What::VertexTransitive && vertex_transitive_recurrence(n - 1) != count_vertex_transitive(n) {
        return Err(Failure::Verification("recurrence disagrees with the formula".into()));
    }
    let all = essential_congruences(n)?;
    let counter = AtomicU64::new(0);
    let chunk = all.len().div_ceil(jobs).max(1);
    let results: Vec<std::result::Result<HashSet<CanonicalForm>, Error>> = std::thread::scope(|scope| {
        let handles: Vec<_> = all
            .chunks(chunk)
            .map(|part| {
                let counter = &counter;
                scope.spawn(move || {
                    let mut forms = HashSet::new();
                    for c in part {
                        let g = build_quotient_graph(&compute_classes(c)?)?;
                        let hit = match what {
                            What::Regular => g.is_regular() && is_regular(c)?,
                            What::VertexTransitive | What::VtNoniso => {
                                let by_graph = is_vertex_transitive_by_automorphisms(c)?;
                                if by_graph != is_vertex_transitive(c)? {
                                    return Err(Error::Verification(format!("transitivity routes disagree on {c:?}")));
                                }
                                by_graph
                            }
                            _ => true,
                        };
                        if hit {
                            counter.fetch_add(1, Ordering::Relaxed);
                            if matches!(what, What::VtNoniso | What::Noniso) {
                                forms.insert(canonical_form(g.adjacency()));
                            }
                        }
                    }
                    Ok(forms)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut forms = HashSet::new();
    for r in results {
        forms.extend(r?);
    }
    Ok(match what {
        What::VtNoniso | What::Noniso => forms.len() as u128,
        _ => counter.load(Ordering::Relaxed) as u128,
    })
}

fn patterns_cmd(n: usize, patterns: &str, format: Format) -> Outcome {
    check_n(n)?;
    let set = well_behaved(patterns)?;
    let c = congruence_from_patterns(&set, n)?;
    let avoiders = avoid_set(n, set.patterns())?;
    let classes = if n <= 9 { Some(compute_classes(&c)?.num_classes()) } else { None };
    if classes.is_some_and(|k| k != avoiders.len()) {
        return Err(Failure::Verification("class count differs from the number of avoiders".into()));
    }
    match format {
        Format::Text => {
            let mut out = format!("# fences: {}\n# avoiders: {}\n", c.to_terse(), avoiders.len());
            for p in &avoiders {
                out.push_str(&format!("{p}\n"));
            }
            Ok(out)
        }
        Format::Json => {
            let shown: Vec<String> = set.patterns().iter().map(|t| t.to_string()).collect();
            let list: Vec<&[u8]> = avoiders.iter().map(|p| p.entries()).collect();
            Ok(json_line(&serde_json::json!({
                "n": n,
                "patterns": shown,
                "diagram": c.to_json(),
                "classes": classes,
                "avoiders": list,
            })))
        }
        _ => Err(Failure::Input("patterns supports --format text or json".into())),
    }
}
