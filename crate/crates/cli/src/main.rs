//! `qfano`: command-line driver for the basket searches, tables and the
//! reproduction checks.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 verification mismatch.

mod report;
mod flags;
mod verify;

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qfano::fano::{
    enumerate_small_c2c1, enumerate_windowed, CandidateRecord, ExclusionList, IndexMode, SearchConfig, SmallC2c1Config,
    MAX_BASKET_POINTS,
};
use qfano::hn::{table1_json, table1_text, table2_json, table2_text};
use qfano::riemann_roch::{h0_neg_K, hilbert_coeffs};
use qfano::{Basket, FanoCandidate, Rational};

use report::{RemovedEntry, RunReport, Status};
use flags::{parse_indices, Window};

#[derive(Parser, Debug)]
#[command(
    name = "qfano",
    version,
    about = "Exact Riemann-Roch searches over baskets of terminal quotient singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Plurigenera chi(-nK) for n = 0..=N and integrality of h0(-K).
    Rr {
        /// Comma-separated points b/r; empty for a smooth variety.
        #[arg(long, allow_hyphen_values = true)]
        basket: String,
        #[arg(long)]
        c13: String,
        #[arg(long)]
        n: u32,
    },
    /// Windowed search over (q, basket) pairs; writes JSON lines.
    Enumerate {
        /// Indices: `4`, `5..8` or `5,7`. Defaults to 4 for the remark window, else 5..8.
        #[arg(long)]
        q: Option<String>,
        /// `paper`, `remark` or `LO..HI` for the ratio window (LO, HI].
        #[arg(long, default_value = "paper")]
        window: String,
        #[arg(long, default_value = "qW")]
        mode: String,
        #[arg(long, default_value_t = MAX_BASKET_POINTS)]
        max_points: usize,
        /// Exclusion file applied after the search.
        #[arg(long)]
        exclude: Option<PathBuf>,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        parallel: bool,
    },
    /// Baskets with 0 < c2c1 < threshold and integral h0(-K); writes JSON lines.
    SmallC2c1 {
        #[arg(long)]
        threshold: String,
        /// Upper bound on c1^3 / c2c1.
        #[arg(long)]
        bound: String,
        #[arg(long, default_value_t = 1)]
        depth: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        parallel: bool,
    },
    /// Destabilising (q1, r1) pairs per index.
    Hn {
        #[arg(long)]
        q: String,
        #[arg(long)]
        json: bool,
    },
    /// Effective bounds per index and rank, for 4 <= q <= 8.
    Langer {
        #[arg(long)]
        q: String,
        #[arg(long)]
        json: bool,
    },
    /// CSV of (R, q, c2c1, c13, ratio) for a set of candidates.
    Geography {
        #[arg(long, value_enum, conflicts_with = "from")]
        scope: Option<Scope>,
        /// JSON-lines candidate file written by `enumerate`.
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every reproduction check; exit 2 on any mismatch.
    Verify {
        #[arg(long, default_value = "data")]
        data_dir: PathBuf,
        #[arg(long, default_value = "testdata/golden/v1")]
        golden_dir: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Scope {
    /// The windowed q=5..8 search without exclusions.
    Survivors,
    /// The q=4 window.
    Remark,
    Empty,
}

enum Outcome {
    Done,
    Mismatch,
}

fn rational(flag: &str, s: &str) -> Result<Rational> {
    s.parse().with_context(|| format!("--{flag}: cannot parse {s:?} as a rational"))
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("cannot write {}", p.display()))?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn output_name(out: Option<&Path>) -> String {
    out.map_or("-".to_string(), |p| p.display().to_string())
}

fn write_json_lines<T: Serialize>(out: Option<&Path>, items: impl IntoIterator<Item = T>) -> Result<()> {
    let mut w = sink(out)?;
    for item in items {
        serde_json::to_writer(&mut w, &item)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct RrOutput {
    coeffs: Vec<Rational>,
    h0: Rational,
    h0_integral: bool,
}

fn cmd_rr(basket: &str, c13: &str, n: u32) -> Result<()> {
    let basket: Basket = basket.parse().with_context(|| format!("--basket: cannot parse {basket:?}"))?;
    let c13 = rational("c13", c13)?;
    if c13.is_negative() {
        bail!("--c13 must be nonnegative, got {c13}");
    }
    let h0 = h0_neg_K(&basket, &c13);
    let out = RrOutput { coeffs: hilbert_coeffs(&basket, &c13, n), h0_integral: h0.is_nonnegative_integer(), h0 };
    println!("{}", serde_json::to_string(&out)?);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate(
    report: &mut RunReport,
    q: Option<&str>,
    window: &str,
    mode: &str,
    max_points: usize,
    exclude: Option<&Path>,
    out: Option<&Path>,
    parallel: bool,
) -> Result<()> {
    let window = Window::parse(window)?;
    let q_range = match q {
        Some(s) => parse_indices(s)?,
        None => window.default_indices(),
    };
    let mode: IndexMode = mode.parse()?;
    let mut config = window.config(q_range.clone());
    config.mode = mode;
    config.max_points = max_points;
    config.parallel = parallel;
    config.validate()?;
    let exclusions =
        exclude.map(|p| ExclusionList::load(p).with_context(|| format!("--exclude {}", p.display()))).transpose()?;

    report.set("q", &q_range);
    report.set("window", window.describe());
    report.set("mode", mode);
    report.set("max_points", max_points);
    report.set("exclude", exclude.map(|p| p.display().to_string()));
    report.set("parallel", parallel);

    let mut found = enumerate_windowed(&config)?;
    if let Some(list) = exclusions {
        let outcome = list.apply(found);
        report.removed = outcome
            .removed
            .iter()
            .map(|r| RemovedEntry {
                q: r.candidate.q,
                basket: r.candidate.basket.to_string(),
                reason: r.reason.clone(),
            })
            .collect();
        found = outcome.kept;
    }
    write_json_lines(out, found.iter().map(FanoCandidate::record))?;
    report.count = Some(found.len());
    report.outputs.push(output_name(out));
    Ok(())
}

fn cmd_small_c2c1(
    report: &mut RunReport,
    threshold: &str,
    bound: &str,
    depth: u32,
    out: Option<&Path>,
    parallel: bool,
) -> Result<()> {
    let threshold = rational("threshold", threshold)?;
    let bound = rational("bound", bound)?;
    if !threshold.is_positive() || !bound.is_positive() {
        bail!("--threshold and --bound must be positive");
    }
    if depth == 0 {
        bail!("--depth must be at least 1");
    }
    report.set("threshold", &threshold);
    report.set("bound", &bound);
    report.set("depth", depth);
    report.set("parallel", parallel);
    let mut config = SmallC2c1Config::new(threshold, bound);
    config.h_depth = depth;
    config.parallel = parallel;
    let found = enumerate_small_c2c1(&config);
    write_json_lines(out, &found)?;
    report.count = Some(found.len());
    report.outputs.push(output_name(out));
    Ok(())
}

fn cmd_tables(q: &str, json: bool, langer: bool) -> Result<()> {
    let qs: Vec<u32> = parse_indices(q)?.into_iter().collect();
    let text = match (langer, json) {
        (false, false) => table1_text(&qs),
        (false, true) => table1_json(&qs),
        (true, false) => table2_text(&qs)?,
        (true, true) => table2_json(&qs)?,
    };
    print!("{text}");
    Ok(())
}

fn read_candidates(path: &Path) -> Result<Vec<FanoCandidate>> {
    let file = File::open(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: CandidateRecord = serde_json::from_str(&line)
            .with_context(|| format!("{}:{}: not a candidate record", path.display(), idx + 1))?;
        out.push(record.into_candidate(IndexMode::Weil));
    }
    Ok(out)
}

fn cmd_geography(report: &mut RunReport, scope: Option<Scope>, from: Option<&Path>, out: Option<&Path>) -> Result<()> {
    let candidates = match (scope, from) {
        (_, Some(path)) => {
            report.set("from", path.display().to_string());
            read_candidates(path)?
        }
        (Some(scope), None) => {
            report.set("scope", scope);
            match scope {
                Scope::Survivors => enumerate_windowed(&SearchConfig::paper_window(5..=8))?,
                Scope::Remark => enumerate_windowed(&SearchConfig::remark_window())?,
                Scope::Empty => Vec::new(),
            }
        }
        (None, None) => bail!("give --scope or --from"),
    };
    let mut w = csv::Writer::from_writer(sink(out)?);
    w.write_record(["R", "q", "c2c1", "c13", "ratio", "c2c1_approx", "c13_approx", "ratio_approx"])?;
    for c in &candidates {
        let ratio = c.ratio();
        w.write_record([
            c.basket.r_set().to_string(),
            c.q.to_string(),
            c.c2c1.to_string(),
            c.c13.to_string(),
            ratio.to_string(),
            format!("{:.6}", c.c2c1.approx()),
            format!("{:.6}", c.c13.approx()),
            format!("{:.6}", ratio.approx()),
        ])?;
    }
    w.flush()?;
    report.count = Some(candidates.len());
    report.outputs.push(output_name(out));
    Ok(())
}

fn cmd_verify(report: &mut RunReport, data_dir: &Path, golden_dir: &Path) -> Outcome {
    report.set("data_dir", data_dir.display().to_string());
    report.set("golden_dir", golden_dir.display().to_string());
    report.verdicts = verify::run(data_dir, golden_dir);
    report.count = Some(report.verdicts.len());
    for v in &report.verdicts {
        let tag = match v.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        match v.status {
            Status::Fail => {
                println!("{tag}  {}\n      expected: {}\n      actual:   {}", v.check, v.expected, v.actual)
            }
            Status::Skipped => println!("{tag}  {} ({})", v.check, v.actual),
            Status::Pass => println!("{tag}  {}", v.check),
        }
    }
    if report.failed() {
        Outcome::Mismatch
    } else {
        Outcome::Done
    }
}

fn run(cli: Cli, report: &mut RunReport) -> Result<Outcome> {
    match cli.command {
        Command::Rr { basket, c13, n } => cmd_rr(&basket, &c13, n)?,
        Command::Enumerate { q, window, mode, max_points, exclude, out, parallel } => cmd_enumerate(
            report,
            q.as_deref(),
            &window,
            &mode,
            max_points,
            exclude.as_deref(),
            out.as_deref(),
            parallel,
        )?,
        Command::SmallC2c1 { threshold, bound, depth, out, parallel } => {
            cmd_small_c2c1(report, &threshold, &bound, depth, out.as_deref(), parallel)?
        }
        Command::Hn { q, json } => cmd_tables(&q, json, false)?,
        Command::Langer { q, json } => cmd_tables(&q, json, true)?,
        Command::Geography { scope, from, out } => cmd_geography(report, scope, from.as_deref(), out.as_deref())?,
        Command::Verify { data_dir, golden_dir } => return Ok(cmd_verify(report, &data_dir, &golden_dir)),
    }
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let reports = matches!(
        cli.command,
        Command::Enumerate { .. } | Command::SmallC2c1 { .. } | Command::Geography { .. } | Command::Verify { .. }
    );
    let mut report = RunReport::new(args);
    let start = Instant::now();
    let outcome = run(cli, &mut report);
    report.finish(start.elapsed());
    match outcome {
        Ok(outcome) => {
            if reports {
                eprintln!("{}", report.to_json());
            }
            match outcome {
                Outcome::Done => ExitCode::SUCCESS,
                Outcome::Mismatch => ExitCode::from(2),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
