use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use dpglue_core::catalog::{self, ScenarioReport};
use dpglue_core::scenario::{self, LoadedScenario};

#[derive(Parser)]
#[command(name = "dpglue", version, about = "Check glued surfaces described in scenario files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate scenario files and compare against their `expect` blocks.
    Run {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Worker threads; defaults to the number of cores.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print the building-block table and the degree 1 and 2 equations.
    Catalog {
        #[arg(long)]
        blocks: bool,
        #[arg(long)]
        degree12: bool,
        #[arg(long, default_value_t = 10)]
        a_max: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check that parametrizations satisfy their hypersurface equations.
    VerifyParam { file: PathBuf },
}

const MISMATCH: u8 = 1;
const INPUT_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run { files, format, jobs } => run(&files, format, jobs),
        Command::Catalog {
            blocks,
            degree12,
            a_max,
            format,
        } => catalog_listing(blocks, degree12, a_max, format),
        Command::VerifyParam { file } => verify_param(&file),
    };
    ExitCode::from(code)
}

/// Writes to stdout; a closed pipe (as with `| head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

struct Outcome {
    file: String,
    report: ScenarioReport,
    mismatches: Option<Vec<String>>,
}

fn run(files: &[PathBuf], format: Format, jobs: Option<usize>) -> u8 {
    let mut loaded: Vec<(String, LoadedScenario)> = Vec::new();
    let mut input_errors = Vec::new();
    for path in files {
        let name = path.display().to_string();
        match read(path).and_then(|t| scenario::parse_file(&t).map_err(|e| format!("{name}: {e}"))) {
            Ok(list) => loaded.extend(list.into_iter().map(|s| (name.clone(), s))),
            Err(e) => input_errors.push(e),
        }
    }
    if !input_errors.is_empty() {
        for e in &input_errors {
            eprintln!("error: {e}");
        }
        return INPUT_ERROR;
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return INPUT_ERROR;
        }
    };
    // `collect` on an indexed parallel iterator keeps input order.
    let outcomes: Vec<Outcome> = pool.install(|| {
        loaded
            .par_iter()
            .map(|(file, l)| {
                let report = catalog::scenario_report(&l.scenario);
                let mismatches = l.expect.as_ref().map(|e| scenario::mismatches(&report, e));
                Outcome {
                    file: file.clone(),
                    report,
                    mismatches,
                }
            })
            .collect()
    });
    let failed = outcomes
        .iter()
        .filter(|o| o.mismatches.as_ref().is_some_and(|m| !m.is_empty()))
        .count();
    let checked = outcomes.iter().filter(|o| o.mismatches.is_some()).count();
    match format {
        Format::Text => emit(&run_text(&outcomes, checked, failed)),
        Format::Json => {
            let scenarios: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "file": o.file,
                        "report": o.report,
                        "expectation": o.mismatches.as_ref().map(|m| json!({
                            "matched": m.is_empty(),
                            "mismatches": m,
                        })),
                    })
                })
                .collect();
            let out = json!({
                "scenarios": scenarios,
                "summary": {
                    "scenarios": outcomes.len(),
                    "checked": checked,
                    "matched": checked - failed,
                    "mismatched": failed,
                },
            });
            emit(&(serde_json::to_string_pretty(&out).expect("reports serialize") + "\n"));
        }
    }
    if failed > 0 {
        MISMATCH
    } else {
        0
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn or_dash<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn run_text(outcomes: &[Outcome], checked: usize, failed: usize) -> String {
    let mut s = String::new();
    for o in outcomes {
        let r = &o.report;
        let _ = writeln!(s, "{} :: {} (char {})", o.file, r.name, r.characteristic);
        let mut case = or_dash(&r.case);
        if r.degenerate {
            case.push_str(" (degenerate)");
        }
        let _ = writeln!(s, "  case {case}, degree {}", r.degree);
        let blocks: Vec<String> = r
            .blocks
            .iter()
            .map(|b| format!("{}(a={}) H^2={} {}", b.case, b.a, b.degree, if b.ok() { "ok" } else { "FAIL" }))
            .collect();
        let _ = writeln!(s, "  blocks: {}", blocks.join(", "));
        let _ = writeln!(
            s,
            "  gorenstein {}, singularity {}, tame {}",
            yes_no(r.gorenstein),
            or_dash(&r.singularity),
            r.tame.map_or("-", yes_no)
        );
        if !r.failing_places.is_empty() {
            let _ = writeln!(s, "  failing places: {}", r.failing_places.join(", "));
        }
        for c in &r.node_clashes {
            let _ = writeln!(s, "  node clash on line {}: {}", c.index, c.diagnosis);
        }
        for w in &r.wild_points {
            let _ = writeln!(s, "  wild point {}: n={} delta={}", w.place, w.n, w.delta);
        }
        let oracle = r.oracle.map_or("-".to_string(), |c| format!("({}, {})", c.h0, c.h1));
        let _ = writeln!(s, "  chi {}, h1 {}, sections (h0, h1) {oracle}", or_dash(&r.chi), or_dash(&r.h1));
        for e in &r.errors {
            let _ = writeln!(s, "  error: {e}");
        }
        match &o.mismatches {
            None => {}
            Some(m) if m.is_empty() => {
                let _ = writeln!(s, "  expect: matched");
            }
            Some(m) => {
                for line in m {
                    let _ = writeln!(s, "  MISMATCH {line}");
                }
            }
        }
    }
    let _ = writeln!(
        s,
        "{} scenarios, {checked} with expectations: {} matched, {failed} mismatched",
        outcomes.len(),
        checked - failed
    );
    s
}

fn catalog_listing(blocks: bool, degree12: bool, a_max: u32, format: Format) -> u8 {
    let (blocks, degree12) = if blocks || degree12 { (blocks, degree12) } else { (true, true) };
    let mut out = serde_json::Map::new();
    let mut text = String::new();
    if blocks {
        let mut rows = Vec::new();
        let _ = writeln!(text, "{:<5} {:>3} {:>8} {:>8} {:>6} {:>8}  check", "case", "a", "H", "C", "H^2", "table");
        for block in catalog::block_table(a_max) {
            let check = match catalog::block_check(&block) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {} a={}: {e}", block.case, block.a);
                    return INPUT_ERROR;
                }
            };
            let _ = writeln!(
                text,
                "{:<5} {:>3} {:>8} {:>8} {:>6} {:>8}  {}",
                check.case.to_string(),
                check.a,
                check.h,
                check.c,
                check.degree,
                check.expected_degree,
                if check.ok() { "ok" } else { "FAIL" }
            );
            let mut row = serde_json::to_value(&check).expect("block checks serialize");
            row["ok"] = json!(check.ok());
            rows.push(row);
        }
        out.insert("blocks".into(), Value::Array(rows));
    }
    if degree12 {
        let entries = match catalog::degree12_catalog() {
            Ok(e) => e,
            Err(e) => {
                eprintln!("error: {e}");
                return INPUT_ERROR;
            }
        };
        if blocks {
            text.push('\n');
        }
        let mut rows = Vec::new();
        for entry in &entries {
            let report = catalog::scenario_report(&entry.scenario);
            let mut case = or_dash(&report.case);
            if report.degenerate {
                case.push_str(" (degenerate)");
            }
            let cases: Vec<String> = entry.scenario.blocks.iter().map(|b| format!("{}(a={})", b.case, b.a)).collect();
            let verified = entry.verify();
            let _ = writeln!(text, "degree {}  {}", report.degree, entry.equation);
            let _ = writeln!(
                text,
                "    {}: case {case}, blocks {}, normalization {}",
                entry.scenario.name,
                cases.join(" "),
                if verified { "verified" } else { "FAILS" }
            );
            rows.push(json!({
                "name": entry.scenario.name,
                "equation": entry.equation,
                "degree": report.degree,
                "case": report.case,
                "degenerate": report.degenerate,
                "blocks": entry.scenario.blocks.iter().map(|b| json!({"case": b.case, "a": b.a})).collect::<Vec<_>>(),
                "verified": verified,
            }));
        }
        out.insert("degree12".into(), Value::Array(rows));
    }
    match format {
        Format::Text => emit(&text),
        Format::Json => emit(&(serde_json::to_string_pretty(&Value::Object(out)).expect("serializes") + "\n")),
    }
    0
}

fn verify_param(path: &PathBuf) -> u8 {
    let checks = match read(path).and_then(|t| {
        scenario::parse_param_file(&t).map_err(|e| format!("{}: {e}", path.display()))
    }) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return INPUT_ERROR;
        }
    };
    let mut failed = 0;
    let mut text = String::new();
    for c in &checks {
        let holds = c.holds();
        failed += usize::from(!holds);
        let _ = writeln!(text, "{}: {}", c.name, if holds { "holds" } else { "FAILS" });
    }
    let _ = writeln!(text, "{} checks, {failed} failed", checks.len());
    emit(&text);
    if failed > 0 {
        MISMATCH
    } else {
        0
    }
}
