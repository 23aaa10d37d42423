mod input;
mod render;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use curvegr::criteria::{question_explorer, SweepSpec};
use curvegr::ring::{ring_build, BuildOptions};
use curvegr::semigroup::{sg_power_table, sg_reduction_number};
use curvegr::{analyze, sg_from_generators, sg_three_gen_ci, AnalysisOptions, Error};
use rayon::prelude::*;
use serde_json::{json, Value};

use input::{parse_document, parse_field, validate_labels, RingInput};

#[derive(Parser)]
#[command(
    name = "curvegr",
    version,
    about = "Tangent-cone invariants of curve singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse rings given inline or in a JSON input file.
    Analyze {
        /// Generators, e.g. `t^6 t^7 t^15`.
        generators: Vec<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "rational")]
        field: String,
        #[arg(long)]
        reduction: Option<String>,
        /// Comma-separated Apéry basis.
        #[arg(long, value_delimiter = ',')]
        basis: Option<Vec<String>>,
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long, default_value_t = curvegr::criteria::DEFAULT_BUDGET)]
        budget: usize,
        /// Include wall-clock timings (breaks byte-identical output).
        #[arg(long)]
        timing: bool,
    },
    /// Numerical-semigroup data for a list of generators.
    Semigroup {
        generators: Vec<u32>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Run an open-question sweep from a family spec.
    Sweep {
        spec: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// JSON value and table text for one ring.
type Rendered = Result<(Value, String), Failure>;

const INPUT_ERROR: u8 = 2;
const DEFECT: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: INPUT_ERROR,
            message: message.into(),
        }
    }

    fn from_error(label: &str, e: Error) -> Self {
        Failure {
            code: if e.is_defect() { DEFECT } else { INPUT_ERROR },
            message: format!("{label}: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze {
            generators,
            input,
            field,
            reduction,
            basis,
            precision,
            format,
            budget,
            timing,
        } => cmd_analyze(
            generators, input, &field, reduction, basis, precision, format, budget, timing,
        ),
        Command::Semigroup { generators, format } => cmd_semigroup(&generators, format),
        Command::Sweep {
            spec,
            budget,
            format,
            output,
        } => cmd_sweep(&spec, budget, format, output),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

#[allow(clippy::too_many_arguments)]
fn cmd_analyze(
    generators: Vec<String>,
    input: Option<PathBuf>,
    field: &str,
    reduction: Option<String>,
    basis: Option<Vec<String>>,
    precision: Option<u32>,
    format: Format,
    budget: usize,
    timing: bool,
) -> Result<u8, Failure> {
    let (inputs, batch) = match input {
        Some(path) => {
            if !generators.is_empty() {
                return Err(Failure::input("give generators or --input, not both"));
            }
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            let (mut inputs, batch) = parse_document(&text).map_err(Failure::input)?;
            for r in &mut inputs {
                r.reduction = r.reduction.take().or_else(|| reduction.clone());
                r.apery_basis = r.apery_basis.take().or_else(|| basis.clone());
                r.precision = r.precision.or(precision);
            }
            (inputs, batch)
        }
        None => {
            if generators.is_empty() {
                return Err(Failure::input("no generators given"));
            }
            let single = RingInput {
                field: parse_field(field).map_err(Failure::input)?,
                generators,
                reduction,
                apery_basis: basis,
                precision,
                label: None,
            };
            validate_labels(std::slice::from_ref(&single)).map_err(Failure::input)?;
            (vec![single], false)
        }
    };

    let results: Vec<(String, Rendered)> = inputs
        .par_iter()
        .map(|r| {
            let label = r.label();
            (label.clone(), run_one(r, &label, budget, timing))
        })
        .collect();

    let mut code = 0u8;
    let mut json_items = Vec::new();
    let mut text = String::new();
    for (label, result) in results {
        match result {
            Ok((value, table)) => {
                json_items.push(value);
                text.push_str(&table);
            }
            Err(f) => {
                eprintln!("error: {}", f.message);
                code = code.max(f.code);
                json_items.push(json!({ "label": label, "error": f.message }));
            }
        }
    }
    match format {
        Format::Json => {
            let doc = if batch {
                Value::Array(json_items)
            } else {
                json_items.pop().expect("one input")
            };
            print!("{}", to_json(&doc));
        }
        Format::Table => print!("{text}"),
    }
    Ok(code)
}

fn run_one(
    r: &RingInput,
    label: &str,
    budget: usize,
    timing: bool,
) -> Result<(Value, String), Failure> {
    let start = Instant::now();
    let gens: Vec<&str> = r.generators.iter().map(String::as_str).collect();
    let ring = ring_build(
        r.field,
        &gens,
        BuildOptions {
            precision: r.precision,
            ..BuildOptions::default()
        },
    )
    .map_err(|e| Failure::from_error(label, e))?;
    let options = AnalysisOptions {
        reduction: r.reduction.clone(),
        basis: r.apery_basis.clone(),
        budget,
    };
    let report = analyze(&ring, &options).map_err(|e| Failure::from_error(label, e))?;
    let mut value = json!({
        "label": label,
        "report": serde_json::to_value(&report).expect("reports serialize"),
    });
    let mut table = render::analysis_table(label, &report);
    if timing {
        let ms = start.elapsed().as_secs_f64() * 1000.0;
        value["timing_ms"] = json!(ms);
        let _ = writeln!(table, "time: {ms:.1} ms");
    }
    table.push('\n');
    Ok((value, table))
}

fn cmd_semigroup(generators: &[u32], format: Format) -> Result<u8, Failure> {
    let s = sg_from_generators(generators).map_err(|e| Failure::input(e.to_string()))?;
    let r = sg_reduction_number(&s).map_err(|e| Failure::from_error("semigroup", e))?;
    let powers = sg_power_table(&s, r + 1);
    let ci = if s.embedding_dimension() <= 3 {
        Some(sg_three_gen_ci(&s).map_err(|e| Failure::from_error("semigroup", e))?)
    } else {
        None
    };
    match format {
        Format::Json => {
            let value = json!({
                "generators": s.minimal_generators(),
                "multiplicity": s.multiplicity(),
                "embedding_dimension": s.embedding_dimension(),
                "apery": s.apery(),
                "frobenius": s.frobenius(),
                "conductor": s.conductor(),
                "genus": s.gaps().len(),
                "symmetric": s.is_symmetric(),
                "reduction_number": r,
                "power_apery": powers.iter().map(|p| p.apery.clone()).collect::<Vec<_>>(),
                "ci": ci,
            });
            print!("{}", to_json(&value));
        }
        Format::Table => {
            let list = |xs: &[u32]| {
                xs.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            println!("S = <{}>", list(s.minimal_generators()));
            println!(
                "  e={}  embedding dimension={}  F={}  conductor={}  genus={}  symmetric={}  r={}",
                s.multiplicity(),
                s.embedding_dimension(),
                s.frobenius(),
                s.conductor(),
                s.gaps().len(),
                s.is_symmetric(),
                r
            );
            println!("  Apery: {}", list(s.apery()));
            for p in &powers {
                println!("  Ap(v(m^{})): {}", p.i, list(&p.apery));
            }
            match &ci {
                Some(c) => {
                    let case = c
                        .primary
                        .map(|p| {
                            format!(
                                " case {} (n,a,b,n1,n2)=({},{},{},{},{})",
                                p.case.tag(),
                                p.n,
                                p.a,
                                p.b,
                                p.n1,
                                p.n2
                            )
                        })
                        .unwrap_or_default();
                    println!(
                        "  CI: {}  gr-CI: {}  plane: {}{case}",
                        c.is_ci, c.gr_ci, c.plane
                    );
                }
                None => println!("  CI: not classified (more than three generators)"),
            }
        }
    }
    Ok(0)
}

fn cmd_sweep(
    path: &PathBuf,
    budget: Option<usize>,
    format: Format,
    output: Option<PathBuf>,
) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let mut spec: SweepSpec = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("malformed sweep spec: {e}")))?;
    if let Some(b) = budget {
        spec.budget = b;
    }
    let report = question_explorer(&spec).map_err(|e| Failure::from_error("sweep", e))?;
    let rendered = match format {
        Format::Json => to_json(&serde_json::to_value(&report).expect("reports serialize")),
        Format::Table => render::sweep_table(&report),
    };
    match output {
        Some(out) => std::fs::write(&out, rendered)
            .map_err(|e| Failure::input(format!("{}: {e}", out.display())))?,
        None => print!("{rendered}"),
    }
    Ok(0)
}
