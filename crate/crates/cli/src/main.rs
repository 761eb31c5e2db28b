//! `equilocal`: command-line front end for the fixed-point toolkit.
//!
//! Structured output is JSON on stdout; summaries go to stderr.
//! Exit codes: 0 ok, 1 a filter failed, 2 usage or input error, 3 a search
//! assertion broke.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use equilocal::consistency::{names, run_all_filters, FilterReport, FilterStatus};
use equilocal::examples::{self, Params, Variant};
use equilocal::exactalg::Rational;
use equilocal::fpdata::{parse_fixed_point_data, FixedPointData, Weight};
use equilocal::genus::{genus_specializations, genus_via_counts, genus_via_index_formula};
use equilocal::json::{rational_string, to_stable_string};
use equilocal::localization::{chern_numbers_dim8, localization_sum, ty_genus_from_chern, ChernPartition};
use equilocal::multigraph::{emit_dot, figure1_shape, find_describing_multigraph, verify_lemma28};
use equilocal::search::{case_elimination_report, audit_soundness, Progress, Stage};
use serde_json::{json, Value};

const EXIT_FILTER: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BREACH: u8 = 3;

#[derive(Parser)]
#[command(name = "equilocal", version, about = "Exact checks on circle-action fixed-point data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every filter; exit 1 if any fails
    Verify { file: PathBuf },
    /// Chi_y-genus by counting and by the index formula
    Genus { file: PathBuf },
    /// Localization sums of every Chern monomial up to degree n
    Chern { file: PathBuf },
    /// Find a describing multigraph and check its edges
    Graph {
        file: PathBuf,
        /// Write the graph in DOT format to this path
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Exhaustive search over 8-dimensional data with 4 fixed points
    Search {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        max_weight: Weight,
        /// Worker threads; 0 uses every core
        #[arg(long, env = "EQUILOCAL_JOBS", default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report progress on stderr
        #[arg(long)]
        progress: bool,
    },
    /// Emit the data of a known action
    Example {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(examples::NAMES))]
        name: String,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<Weight>,
        #[arg(long, allow_negative_numbers = true)]
        b: Option<Weight>,
        #[arg(long, allow_negative_numbers = true)]
        c: Option<Weight>,
        #[arg(long, allow_negative_numbers = true)]
        d: Option<Weight>,
        #[arg(long)]
        variant: Option<Variant>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure that ends the command with a specific exit code.
struct Exit {
    code: u8,
    message: String,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

fn read_input(path: &Path) -> Result<String, Exit> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Exit::usage(format!("reading stdin: {e}")))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| Exit::usage(format!("reading {}: {e}", path.display())))?;
    }
    Ok(text)
}

fn load(path: &Path) -> Result<FixedPointData, Exit> {
    let text = read_input(path)?;
    parse_fixed_point_data(&text).map_err(|e| Exit::usage(format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Exit> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::write(p, text).map_err(|e| Exit::usage(format!("writing {}: {e}", p.display())))
        }
        _ => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|e| Exit::usage(format!("writing stdout: {e}")))
        }
    }
}

fn emit(value: &Value) -> Result<(), Exit> {
    write_output(None, &format!("{}\n", to_stable_string(value)))
}

fn rationals(values: &[Rational]) -> Value {
    Value::from(values.iter().map(rational_string).collect::<Vec<_>>())
}

fn verify(file: &Path) -> Result<u8, Exit> {
    let d = load(file)?;
    let reports = run_all_filters(&d);
    let failed: Vec<&FilterReport> = reports.iter().filter(|r| r.failed()).collect();
    emit(&json!({ "passed": failed.is_empty(), "reports": reports }))?;
    for r in &reports {
        let tag = match r.status {
            FilterStatus::Pass => "pass",
            FilterStatus::Fail => "FAIL",
            FilterStatus::NotApplicable => "n/a ",
        };
        eprintln!("{tag} {}{}", r.name, if r.witness.is_empty() { String::new() } else { format!(": {}", r.witness) });
    }
    Ok(if failed.is_empty() { 0 } else { EXIT_FILTER })
}

fn genus(file: &Path) -> Result<u8, Exit> {
    let d = load(file)?;
    let counts = genus_via_counts(&d);
    let sp = genus_specializations(&counts);
    let index = genus_via_index_formula(&d);
    let agree = index.as_ref().is_ok_and(|g| *g == counts);
    let mut out = json!({
        "counts": counts,
        "agree": agree,
        "polynomial": counts.to_string(),
        "specializations": sp,
    });
    match &index {
        Ok(g) => out["index_formula"] = json!(g),
        Err(e) => {
            out["index_formula"] = Value::Null;
            out["index_formula_error"] = json!(e.to_string());
        }
    }
    emit(&out)?;
    eprintln!("chi_y = {counts}");
    eprintln!("todd {}, signature {}, euler {}", sp.todd, sp.signature, sp.euler);
    match index {
        Ok(_) if agree => eprintln!("index formula agrees"),
        Ok(g) => eprintln!("index formula gives {g}"),
        Err(e) => eprintln!("index formula: {e}"),
    }
    Ok(if agree { 0 } else { EXIT_FILTER })
}

fn chern(file: &Path) -> Result<u8, Exit> {
    let d = load(file)?;
    let mut sums = Vec::new();
    for lambda in ChernPartition::all_up_to(d.n()) {
        let value = localization_sum(&d, &lambda).map_err(|e| Exit::usage(e.to_string()))?;
        eprintln!("{lambda}: {value}");
        sums.push(json!({
            "partition": lambda.parts(),
            "monomial": lambda.to_string(),
            "degree": lambda.degree(),
            "value": rational_string(&value),
        }));
    }
    let mut out = json!({ "n": d.n(), "localization": sums });
    if d.n() == 4 {
        let c = chern_numbers_dim8(&d).map_err(|e| Exit::usage(e.to_string()))?;
        out["ty_genus_from_chern"] = rationals(&ty_genus_from_chern(&c));
        eprintln!("dimension 8: {c}");
        out["dim8"] = json!(c);
    }
    emit(&out)?;
    Ok(0)
}

fn graph(file: &Path, dot: Option<&Path>) -> Result<u8, Exit> {
    let d = load(file)?;
    let found = match find_describing_multigraph(&d) {
        Ok(found) => found,
        Err(e) => {
            emit(&json!({ "graph": Value::Null, "error": e.to_string() }))?;
            eprintln!("{}: {e}", names::HATTORI);
            return Ok(EXIT_FILTER);
        }
    };
    let Some(g) = found else {
        emit(&json!({ "graph": Value::Null, "error": "no describing multigraph" }))?;
        eprintln!("no loop-free describing multigraph meets the edge conditions");
        return Ok(EXIT_FILTER);
    };
    let check = verify_lemma28(&g, &d);
    emit(&json!({
        "graph": g,
        "edge_conditions": check,
        "figure1_shape": figure1_shape(&g, &d),
    }))?;
    if let Some(path) = dot {
        write_output(Some(path), &emit_dot(&g))?;
    }
    eprintln!("{} vertices, {} edges", g.vertices().len(), g.edges().len());
    Ok(if check.failed() { EXIT_FILTER } else { 0 })
}

fn search(max_weight: Weight, jobs: usize, out: Option<&Path>, progress: bool) -> Result<u8, Exit> {
    let show = |p: Progress| match p.stage {
        Stage::Enumerating => eprintln!("enumerating candidates with weights up to {max_weight}"),
        Stage::Filtering => eprintln!("filtered {}/{}", p.done, p.total),
    };
    let callback: Option<&(dyn Fn(Progress) + Sync)> = if progress { Some(&show) } else { None };
    let (report, code) = match case_elimination_report(max_weight, jobs, callback) {
        Ok(report) => (report, 0),
        Err(breach) => {
            eprintln!("ASSERTION BREACH: {}", breach.reason);
            eprintln!("counterexample: {}", breach.counterexample);
            (*breach.report, EXIT_BREACH)
        }
    };
    write_output(out, &format!("{}\n", report.to_json()))?;
    eprintln!(
        "W={}: {} candidates, {} survivors",
        report.weight_bound,
        report.candidates_enumerated,
        report.survivors.len()
    );
    for (name, count) in report.eliminated_by.iter().filter(|(_, c)| **c > 0) {
        eprintln!("  {name}: {count}");
    }
    eprintln!(
        "weights agree up to sign at {}/{} survivors",
        report.up_to_sign.agreeing, report.up_to_sign.survivors_checked
    );
    let missing = audit_soundness(&report);
    if !missing.is_empty() {
        eprintln!("realizable data missing from survivors: {}", missing.join(", "));
    }
    Ok(code)
}

fn example(name: &str, params: Params, out: Option<&Path>) -> Result<u8, Exit> {
    let d = examples::by_name(name, &params).map_err(|e| Exit::usage(e.to_string()))?;
    write_output(out, &format!("{}\n", d.to_json()))?;
    eprintln!("{name}: {d}");
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Exit> {
    match cli.command {
        Command::Verify { file } => verify(&file),
        Command::Genus { file } => genus(&file),
        Command::Chern { file } => chern(&file),
        Command::Graph { file, dot } => graph(&file, dot.as_deref()),
        Command::Search {
            max_weight,
            jobs,
            out,
            progress,
        } => search(max_weight, jobs, out.as_deref(), progress),
        Command::Example {
            name,
            a,
            b,
            c,
            d,
            variant,
            out,
        } => example(&name, Params { a, b, c, d, variant }, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(exit) => {
            eprintln!("error: {}", exit.message);
            ExitCode::from(exit.code)
        }
    }
}
