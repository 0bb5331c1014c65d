use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cei::constructions::{b_tree, f_tree, greedy_caterpillar, greedy_tree, level_greedy_tree};
use cei::degree_seq::{DegreeSequence, LevelDegreeSequence};
use cei::enumeration::{parse_prufer_file, to_prufer_file, HARD_MAX_N};
use cei::rational::{decimal_12, fraction_string};
use cei::tree::Tree;
use cei::verification::{
    csv_row, to_json, verify_all_degree_sequences, verify_branching_bounds,
    verify_degree_sequence_extremes, verify_global_ordering, verify_majorization_monotonicity,
    verify_transformations, ExtremalReport, VerifyOptions, WitnessRepr, CSV_HEADER,
};

#[derive(Parser)]
#[command(name = "cei", about = "Connective eccentricity index of trees: exact computation, extremal constructions, exhaustive verification", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the exact CEI of a tree read from a file
    Compute {
        /// Input file (edge-list or Prüfer format)
        input: PathBuf,
        #[arg(long, value_enum, default_value = "edge-list")]
        format: InputFormat,
        /// Also print the per-vertex degree/eccentricity table
        #[arg(long)]
        verbose: bool,
    },
    /// Construct a named extremal tree and emit it
    Construct {
        #[arg(long, value_enum)]
        variant: Variant,
        /// Degree sequence, e.g. "3,3,2,1,1,1,1" or "3^2,2,1^4"
        #[arg(long)]
        degrees: Option<String>,
        /// Level-degree sequence, levels separated by '/', e.g. "3/3,2,2/2,1,1,1/1"
        #[arg(long)]
        levels: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        /// Emit the Prüfer sequence instead of the edge list
        #[arg(long)]
        prufer: bool,
        /// Write the tree here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify an extremality statement by exhaustive enumeration
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    EdgeList,
    Prufer,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "lower")]
enum Variant {
    Caterpillar,
    Greedy,
    Level,
    F,
    B,
}

#[derive(Args, Clone)]
struct VerifyCommon {
    /// Enumeration worker count; results are identical for any value
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Directory for JSON reports and the CSV summary
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Min/max CEI over all trees of each degree sequence vs the greedy
    /// caterpillar and greedy tree
    Degrees {
        #[arg(long)]
        n: Option<usize>,
        /// Check a single sequence instead of all of length n
        #[arg(long)]
        degrees: Option<String>,
        #[command(flatten)]
        common: VerifyCommon,
    },
    /// Greedy-tree CEI monotonicity under majorization
    Majorization {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: VerifyCommon,
    },
    /// F(n,r) / B(n,r) bounds over trees with r branching vertices
    Branching {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        common: VerifyCommon,
    },
    /// Star/path global extremes and second-extremal candidates
    Ordering {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: VerifyCommon,
    },
    /// Random seeded checks of the two CEI-monotone transformations
    Transforms {
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: VerifyCommon,
    },
}

/// Enumeration bound: default 9, CEI_MAX_N override, hard cap 10.
fn enumeration_bound() -> usize {
    std::env::var("CEI_MAX_N")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(9)
        .min(HARD_MAX_N)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute { input, format, verbose } => cmd_compute(&input, format, verbose),
        Command::Construct { variant, degrees, levels, n, r, prufer, out } => {
            cmd_construct(variant, degrees, levels, n, r, prufer, out)
        }
        Command::Verify { what } => cmd_verify(what),
    }
}

fn read_tree(path: &Path, format: InputFormat) -> Result<Tree, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    match format {
        InputFormat::EdgeList => Tree::parse_edge_list(&text).map_err(|e| e.to_string()),
        InputFormat::Prufer => parse_prufer_file(&text).map_err(|e| e.to_string()),
    }
}

fn cmd_compute(input: &Path, format: InputFormat, verbose: bool) -> Result<ExitCode, String> {
    let t = read_tree(input, format)?;
    let cei = t.cei();
    println!("{} ≈ {}", fraction_string(&cei), decimal_12(&cei));
    if verbose {
        let ecc = t.eccentricities();
        println!("vertex degree eccentricity");
        for u in t.vertices() {
            println!("{u} {} {}", t.degree(u), ecc.get(u));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_construct(
    variant: Variant,
    degrees: Option<String>,
    levels: Option<String>,
    n: Option<usize>,
    r: Option<usize>,
    prufer: bool,
    out: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let need_degrees = || -> Result<DegreeSequence, String> {
        let s = degrees.as_ref().ok_or("--degrees is required for this variant")?;
        DegreeSequence::parse(s).map_err(|e| e.to_string())
    };
    let need_nr = || -> Result<(usize, usize), String> {
        Ok((
            n.ok_or("--n is required for this variant")?,
            r.ok_or("--r is required for this variant")?,
        ))
    };
    let tree = match variant {
        Variant::Caterpillar => greedy_caterpillar(&need_degrees()?),
        Variant::Greedy => greedy_tree(&need_degrees()?),
        Variant::Level => {
            let s = levels.as_ref().ok_or("--levels is required for variant level")?;
            let l = LevelDegreeSequence::parse(s).map_err(|e| e.to_string())?;
            level_greedy_tree(&l).0
        }
        Variant::F => {
            let (n, r) = need_nr()?;
            f_tree(n, r).map_err(|e| e.to_string())?
        }
        Variant::B => {
            let (n, r) = need_nr()?;
            b_tree(n, r).map_err(|e| e.to_string())?
        }
    };
    let text = if prufer { to_prufer_file(&tree) } else { tree.to_edge_list() };
    let cei = tree.cei();
    let cei_line = format!("# cei {} ≈ {}", fraction_string(&cei), decimal_12(&cei));
    match out {
        Some(path) => {
            fs::write(&path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
            println!("{cei_line}");
        }
        None => {
            print!("{text}");
            println!("{cei_line}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

struct ReportSink {
    dir: Option<PathBuf>,
    csv: String,
}

impl ReportSink {
    fn new(dir: Option<PathBuf>) -> Result<ReportSink, String> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).map_err(|e| format!("{}: {e}", d.display()))?;
        }
        Ok(ReportSink { dir, csv: CSV_HEADER.to_string() })
    }

    fn write_json(&self, name: &str, json: &str) -> Result<(), String> {
        if let Some(d) = &self.dir {
            let path = d.join(format!("{name}.json"));
            fs::write(&path, json).map_err(|e| format!("{}: {e}", path.display()))?;
        }
        Ok(())
    }

    fn add_extremal(&mut self, name: &str, report: &ExtremalReport) -> Result<(), String> {
        self.write_json(name, &to_json(report))?;
        self.csv.push_str(&csv_row(report));
        Ok(())
    }

    fn finish(&self) -> Result<(), String> {
        if let Some(d) = &self.dir {
            let path = d.join("summary.csv");
            fs::write(&path, &self.csv).map_err(|e| format!("{}: {e}", path.display()))?;
        }
        Ok(())
    }
}

fn sanitize(subject: &str) -> String {
    subject
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

fn print_witness(label: &str, w: &WitnessRepr) {
    println!("counterexample {label}: cei {}/{}", w.cei.num, w.cei.den);
    println!("n {}", w.edges.len() + 1);
    for (u, v) in &w.edges {
        println!("{u} {v}");
    }
}

fn verdict_line(subject: &str, ok: bool, verdicts: &BTreeMap<String, bool>) {
    let status = if ok { "ok" } else { "FAIL" };
    let failed: Vec<&str> = verdicts
        .iter()
        .filter(|(_, &v)| !v)
        .map(|(k, _)| k.as_str())
        .collect();
    if failed.is_empty() {
        println!("{subject}: {status}");
    } else {
        println!("{subject}: {status} ({})", failed.join(", "));
    }
}

fn cmd_verify(what: VerifyCmd) -> Result<ExitCode, String> {
    let bound = enumeration_bound();
    let mut all_ok = true;
    match what {
        VerifyCmd::Degrees { n, degrees, common } => {
            let opts = VerifyOptions { jobs: common.jobs, max_n: bound };
            let mut sink = ReportSink::new(common.out)?;
            let reports = match (&degrees, n) {
                (Some(s), _) => {
                    let d = DegreeSequence::parse(s).map_err(|e| e.to_string())?;
                    vec![verify_degree_sequence_extremes(&d, opts).map_err(|e| e.to_string())?]
                }
                (None, Some(n)) => {
                    verify_all_degree_sequences(n, opts).map_err(|e| e.to_string())?
                }
                (None, None) => return Err("one of --n or --degrees is required".to_string()),
            };
            for r in &reports {
                verdict_line(&r.subject, r.all_true(), &r.verdicts);
                if !r.all_true() {
                    all_ok = false;
                    print_witness("min", &r.min_cei);
                    print_witness("max", &r.max_cei);
                }
                sink.add_extremal(&sanitize(&r.subject), r)?;
            }
            sink.finish()?;
        }
        VerifyCmd::Majorization { n, common } => {
            let opts = VerifyOptions { jobs: common.jobs, max_n: bound };
            let sink = ReportSink::new(common.out)?;
            let r = verify_majorization_monotonicity(n, opts).map_err(|e| e.to_string())?;
            verdict_line(&r.subject, r.all_true(), &r.verdicts);
            if !r.all_true() {
                all_ok = false;
                for p in r.pairs.iter().filter(|p| !p.verdict) {
                    println!("counterexample pair: {} vs {}", p.source, p.target);
                }
            }
            sink.write_json(&sanitize(&r.subject), &to_json(&r))?;
        }
        VerifyCmd::Branching { n, r, common } => {
            let opts = VerifyOptions { jobs: common.jobs, max_n: bound };
            let mut sink = ReportSink::new(common.out)?;
            let rep = verify_branching_bounds(n, r, opts).map_err(|e| e.to_string())?;
            verdict_line(&rep.subject, rep.all_true(), &rep.verdicts);
            if !rep.all_true() {
                all_ok = false;
                print_witness("min", &rep.min_cei);
                print_witness("max", &rep.max_cei);
            }
            sink.add_extremal(&sanitize(&rep.subject), &rep)?;
            sink.finish()?;
        }
        VerifyCmd::Ordering { n, common } => {
            let opts = VerifyOptions { jobs: common.jobs, max_n: bound };
            let sink = ReportSink::new(common.out)?;
            let r = verify_global_ordering(n, opts).map_err(|e| e.to_string())?;
            verdict_line(&r.subject, r.all_true(), &r.verdicts);
            for f in &r.findings {
                println!("finding: {f}");
            }
            if !r.all_true() {
                all_ok = false;
                print_witness("max", &r.max);
                print_witness("min", &r.min);
            }
            sink.write_json(&sanitize(&r.subject), &to_json(&r))?;
        }
        VerifyCmd::Transforms { trials, seed, common } => {
            if trials < 1 {
                return Err("--trials must be at least 1".to_string());
            }
            let sink = ReportSink::new(common.out)?;
            let r = verify_transformations(trials, seed);
            verdict_line(&r.subject, r.all_true(), &r.verdicts);
            if !r.all_true() {
                all_ok = false;
                for v in &r.violations {
                    println!("counterexample: {v}");
                }
            }
            sink.write_json(&sanitize(&r.subject), &to_json(&r))?;
        }
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
