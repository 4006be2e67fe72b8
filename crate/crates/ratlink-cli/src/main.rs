use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use ratlink::blocks::canonical_block_form;
use ratlink::braid::braid_index;
use ratlink::contfrac::{expand_even, expand_nonalternating};
use ratlink::homfly::{homfly, LaurentPoly2};
use ratlink::link::build_diagram;
use ratlink::verify::{run_sweep, Check, LinkRecord};
use ratlink::ExactRational;

const EXIT_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "ratlink", version, about = "Invariants of rational links b(q, p)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Continued-fraction forms of a fraction p/q.
    Expand {
        fraction: String,
        #[arg(long, value_enum, default_value = "nonalt")]
        form: Form,
        #[arg(long)]
        json: bool,
    },
    /// Braid index of b(q, p).
    Braid {
        q: u64,
        p: u64,
        /// Show every formula's value.
        #[arg(long)]
        explain: bool,
        #[arg(long)]
        json: bool,
    },
    /// HOMFLY polynomial of b(q, p).
    Homfly {
        q: u64,
        p: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cross-check every pipeline over all links with q <= max-q.
    Verify {
        #[arg(long, default_value_t = 120, value_parser = clap::value_parser!(u64).range(2..))]
        max_q: u64,
        /// Comma-separated check names; all checks by default.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        #[arg(long, default_value = "ratlink-report.json")]
        out: PathBuf,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Print only the summary.
        #[arg(long)]
        quiet: bool,
    },
    /// Compare computed invariants against a CSV table (name,q,p,braid,homfly).
    Fixtures {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Nonalt,
    Even,
    Blocks,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

enum Failure {
    Check(String),
    Usage(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => EXIT_CHECK,
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(_) => EXIT_IO,
        }
    }
}

type Outcome = Result<(), Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Expand { fraction, form, json } => cmd_expand(&fraction, form, json),
        Command::Braid { q, p, explain, json } => cmd_braid(q, p, explain, json),
        Command::Homfly { q, p, format } => cmd_homfly(q, p, format),
        Command::Verify { max_q, checks, out, jobs, quiet } => cmd_verify(max_q, &checks, &out, jobs, quiet),
        Command::Fixtures { input } => cmd_fixtures(&input),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Check(m) | Failure::Usage(m) | Failure::Io(m) if !m.is_empty() => eprintln!("error: {m}"),
                _ => {}
            }
            ExitCode::from(f.code())
        }
    }
}

fn link(q: u64, p: u64) -> Result<(), Failure> {
    build_diagram(q, p).map(|_| ()).map_err(usage)
}

fn parse_fraction(s: &str) -> Result<ExactRational, Failure> {
    let (p, q) = s.split_once('/').ok_or_else(|| usage(format!("expected p/q, got {s:?}")))?;
    let p: u64 = p.trim().parse().map_err(|_| usage(format!("bad numerator in {s:?}")))?;
    let q: u64 = q.trim().parse().map_err(|_| usage(format!("bad denominator in {s:?}")))?;
    link(q, p)?;
    ExactRational::new(p, q).map_err(usage)
}

fn cmd_expand(fraction: &str, form: Form, as_json: bool) -> Outcome {
    let r = parse_fraction(fraction)?;
    let forms: Vec<String> = match form {
        Form::Nonalt => {
            let (a, b) = expand_nonalternating(&r).map_err(usage)?;
            let mut v = vec![a.to_string()];
            if b != a {
                v.push(b.to_string());
            }
            v
        }
        Form::Even => vec![expand_even(&r).map_err(usage)?.to_string()],
        Form::Blocks => vec![canonical_block_form(&r).map_err(usage)?.to_string()],
    };
    if as_json {
        let name = match form {
            Form::Nonalt => "nonalt",
            Form::Even => "even",
            Form::Blocks => "blocks",
        };
        println!("{}", json!({ "fraction": r.to_string(), "form": name, "result": forms }));
    } else {
        for f in forms {
            println!("{f}");
        }
    }
    Ok(())
}

fn cmd_braid(q: u64, p: u64, explain: bool, as_json: bool) -> Outcome {
    link(q, p)?;
    let report = braid_index(q, p).map_err(|e| Failure::Check(e.to_string()))?;
    if as_json {
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
        return Ok(());
    }
    println!("{}", report.value);
    if explain {
        for (name, v) in &report.formulas {
            println!("  {name}: {v}");
        }
        println!("  used_mirror: {}", report.used_mirror);
    }
    Ok(())
}

fn cmd_homfly(q: u64, p: u64, format: Format) -> Outcome {
    link(q, p)?;
    let (h, _) = homfly(q, p).map_err(|e| Failure::Check(e.to_string()))?;
    match format {
        Format::Text => println!("{h}"),
        Format::Json => println!("{}", h.to_json()),
        Format::Latex => println!("{}", h.to_latex()),
    }
    Ok(())
}

fn row(rec: &LinkRecord, check: &str, ok: bool) -> String {
    let verdict = if ok { "pass" } else { "FAIL" };
    let detail = match check {
        "mfw" => format!(
            "  bound={} braid={}",
            rec.mfw_bound.map_or("-".into(), |b| b.to_string()),
            rec.braid.values().next().map_or("-".into(), |b| b.to_string())
        ),
        _ => String::new(),
    };
    format!("b({},{})\t{check}\t{verdict}{detail}", rec.q, rec.p)
}

fn cmd_verify(max_q: u64, names: &[String], out: &Path, jobs: usize, quiet: bool) -> Outcome {
    let checks: Vec<Check> = if names.is_empty() {
        Check::ALL.to_vec()
    } else {
        names.iter().map(|n| n.parse().map_err(usage)).collect::<Result<_, _>>()?
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(usage)?;
    let report = pool.install(|| run_sweep(max_q, &checks));
    if !quiet {
        for rec in &report.records {
            for (check, ok) in &rec.flags {
                println!("{}", row(rec, check, *ok));
            }
            for note in &rec.notes {
                println!("b({},{})\tnote\t{note}", rec.q, rec.p);
            }
        }
    }
    for (check, t) in &report.summary.per_check {
        println!("{check}: {} passed, {} failed", t.passed, t.failed);
    }
    println!("links: {}, failing links: {}", report.summary.links, report.summary.failures);
    fs::write(out, report.to_json()).map_err(|e| Failure::Io(format!("cannot write {}: {e}", out.display())))?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(String::new()))
    }
}

#[derive(Deserialize)]
struct FixtureRow {
    name: String,
    q: u64,
    p: u64,
    braid: Option<u64>,
    homfly: Option<String>,
}

/// Differences between a fixture row and the computed invariants.
fn compare(row: &FixtureRow) -> Result<Vec<String>, String> {
    build_diagram(row.q, row.p).map_err(|e| e.to_string())?;
    let mut diffs = Vec::new();
    if let Some(want) = row.braid {
        let got = braid_index(row.q, row.p).map_err(|e| e.to_string())?.value;
        if got != want {
            diffs.push(format!("braid: expected {want}, computed {got}"));
        }
    }
    if let Some(text) = row.homfly.as_deref().filter(|s| !s.trim().is_empty()) {
        let want: LaurentPoly2 = text.parse().map_err(|e: ratlink::Error| e.to_string())?;
        let (got, _) = homfly(row.q, row.p).map_err(|e| e.to_string())?;
        if got != want {
            diffs.push(format!("homfly: expected {want}, computed {got}"));
            let delta = got.clone() - want.clone();
            diffs.push(format!("homfly: computed - expected = {delta}"));
        }
    }
    Ok(diffs)
}

fn cmd_fixtures(input: &Path) -> Outcome {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(input)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", input.display())))?;
    let mut failed = 0;
    let mut total = 0;
    for (line, rec) in reader.deserialize::<FixtureRow>().enumerate() {
        let row = rec.map_err(|e| usage(format!("row {}: {e}", line + 2)))?;
        total += 1;
        match compare(&row) {
            Ok(d) if d.is_empty() => println!("pass  {:<10} b({},{})", row.name, row.q, row.p),
            Ok(d) => {
                failed += 1;
                println!("FAIL  {:<10} b({},{})", row.name, row.q, row.p);
                for line in d {
                    println!("        {line}");
                }
            }
            Err(e) => {
                failed += 1;
                println!("FAIL  {:<10} b({},{})", row.name, row.q, row.p);
                println!("        error: {e}");
            }
        }
    }
    println!("{} of {total} fixtures pass", total - failed);
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Check(String::new()))
    }
}
