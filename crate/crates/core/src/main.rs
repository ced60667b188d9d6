use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use newspace::characters::DirichletCharacter;
use newspace::classify::{
    classify, equidistribution_check, martin_sieve, BoundSpec, ClassifyOptions, SieveOptions,
    SpaceKind, CHECKPOINT_ENV,
};
use newspace::cli_io::{
    char_info, emit, full_terms_string, new_terms_string, verify_tables, write_bytes, Format,
    OutputRecord, TableId,
};
use newspace::dimfull::dim_full;
use newspace::dimnew::{dim_new_convolution, dim_new_explicit};
use newspace::Error;

#[derive(Parser)]
#[command(
    name = "newspace",
    version,
    about = "Dimensions of cusp form spaces with character"
)]
struct Cli {
    /// Emit JSON instead of CSV or text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for searches and sieves.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    Full,
    New,
}

#[derive(Subcommand)]
enum Command {
    /// dim S_k(Gamma_0(N), chi).
    Dim {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        weight: u64,
        #[arg(long, default_value_t = 1)]
        conrey: i64,
    },
    /// dim S_k^new(Gamma_0(N), chi).
    DimNew {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        weight: u64,
        #[arg(long, default_value_t = 1)]
        conrey: i64,
        /// Include the five terms of the explicit formula.
        #[arg(long)]
        explain: bool,
        /// Also evaluate the beta-convolution of full-space dimensions.
        #[arg(long)]
        oracle: bool,
    },
    /// Conductor, parity, order and local components of chi_N(m, .).
    CharInfo {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        conrey: i64,
    },
    /// Every (N, k, chi) whose space has dimension at most B.
    Classify {
        #[arg(long, value_enum)]
        space: Space,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        nmax: Option<u64>,
        /// Allow levels beyond the default ceiling.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 1024)]
        chunk: u64,
    },
    /// Recompute the embedded tables and search for omissions.
    VerifyTables {
        /// 2.1, 2.2, 2.3, 6.1, 6.2 or all.
        #[arg(long, default_value = "all")]
        table: String,
        #[arg(long, default_value_t = newspace::classify::DEFAULT_CEILING)]
        ceiling: u64,
    },
    /// Which dimensions of S_2^new(Gamma_0(N)) occur for N <= nmax.
    MartinSieve {
        #[arg(long)]
        target: u64,
        #[arg(long)]
        nmax: u64,
        #[arg(long, env = CHECKPOINT_ENV)]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = 1 << 18)]
        chunk: u64,
        /// Suppress progress lines on stderr.
        #[arg(long)]
        quiet: bool,
    },
    /// Newspace dimensions grouped by conductor.
    Equidist {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        weight: u64,
    },
}

enum Outcome {
    Ok,
    Diff,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Diff) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ResourceGuard { .. }
                | Error::SieveCapacity { .. }
                | Error::MemoryBudget { .. } => 3,
                Error::Io { .. } | Error::Csv(_) | Error::Json(_) | Error::Fixture { .. } => 1,
                _ => 2,
            })
        }
    }
}

fn format(cli: &Cli) -> Format {
    if cli.json {
        Format::Json
    } else {
        Format::Csv
    }
}

fn print_json<T: Serialize>(cli: &Cli, value: &T) -> newspace::Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    write_bytes(&bytes, cli.out.as_deref())
}

fn print_text(cli: &Cli, text: &str) -> newspace::Result<()> {
    write_bytes(text.as_bytes(), cli.out.as_deref())
}

fn run(cli: &Cli) -> newspace::Result<Outcome> {
    match &cli.command {
        &Command::Dim {
            level,
            weight,
            conrey,
        } => {
            let chi = DirichletCharacter::from_conrey(level, conrey)?;
            let terms = dim_full(level, weight, &chi)?;
            let record = OutputRecord {
                level,
                weight,
                conrey: chi.label(),
                dim: terms.total,
                terms: Some(full_terms_string(&terms)),
            };
            emit(&[record], format(cli), cli.out.as_deref())?;
        }
        &Command::DimNew {
            level,
            weight,
            conrey,
            explain,
            oracle,
        } => {
            let chi = DirichletCharacter::from_conrey(level, conrey)?;
            let terms = dim_new_explicit(level, weight, &chi)?;
            let record = OutputRecord {
                level,
                weight,
                conrey: chi.label(),
                dim: terms.total,
                terms: explain.then(|| new_terms_string(&terms)),
            };
            emit(&[record], format(cli), cli.out.as_deref())?;
            if oracle {
                let conv = dim_new_convolution(level, weight, &chi)?;
                let agree = conv == terms.total;
                eprintln!(
                    "explicit {} convolution {} {}",
                    terms.total,
                    conv,
                    if agree { "agree" } else { "DISAGREE" }
                );
                if !agree {
                    return Ok(Outcome::Diff);
                }
            }
        }
        &Command::CharInfo { level, conrey } => {
            let info = char_info(level, conrey)?;
            if cli.json {
                print_json(cli, &info)?;
            } else {
                print_text(cli, &info.to_string())?;
            }
        }
        &Command::Classify {
            space,
            bound,
            nmax,
            full,
            chunk,
        } => {
            let spec = BoundSpec {
                kind: match space {
                    Space::Full => SpaceKind::Full,
                    Space::New => SpaceKind::New,
                },
                bound,
            };
            let report = classify(
                spec,
                &ClassifyOptions {
                    n_max: nmax,
                    full,
                    chunk,
                },
            )?;
            let records: Vec<OutputRecord> =
                report.entries.iter().map(OutputRecord::from).collect();
            emit(&records, format(cli), cli.out.as_deref())?;
            eprintln!(
                "{} entries; searched N <= {}; threshold {}; {}",
                records.len(),
                report.search_ceiling,
                report.threshold,
                if report.complete {
                    "complete"
                } else {
                    "partial (below threshold)"
                }
            );
        }
        Command::VerifyTables { table, ceiling } => {
            let ids: Vec<TableId> = if table == "all" {
                TableId::ALL.to_vec()
            } else {
                match TableId::parse(table) {
                    Some(id) => vec![id],
                    None => {
                        eprintln!("error: unknown table {table}");
                        std::process::exit(2);
                    }
                }
            };
            let reports = verify_tables(&ids, *ceiling)?;
            let passed = reports.iter().all(|r| r.passed());
            if cli.json {
                print_json(cli, &reports)?;
            } else {
                let mut text = String::new();
                for r in &reports {
                    let status = if r.passed() { "pass" } else { "FAIL" };
                    text += &format!(
                        "table {}: {status}, {} rows checked, searched N <= {}\n",
                        r.table, r.rows_checked, r.search_ceiling
                    );
                    for d in &r.diffs {
                        text += &format!(
                            "  {:?} ({}, {}, {}): {}\n",
                            d.kind, d.level, d.weight, d.conrey, d.reason
                        );
                    }
                }
                print_text(cli, &text)?;
            }
            if !passed {
                return Ok(Outcome::Diff);
            }
        }
        Command::MartinSieve {
            target,
            nmax,
            checkpoint,
            chunk,
            quiet,
        } => {
            let progress = |done: u64, total: u64| {
                if done == total || done % 16 == 0 {
                    eprintln!("sieve: {done}/{total} segments");
                }
            };
            let opts = SieveOptions {
                chunk: *chunk,
                checkpoint_dir: checkpoint.clone(),
                progress: if *quiet { None } else { Some(&progress) },
            };
            let r = martin_sieve(*target, *nmax, &opts)?;
            if cli.json {
                print_json(cli, &r)?;
            } else {
                let missing = r
                    .first_missing
                    .map_or("none".to_string(), |m| m.to_string());
                print_text(
                    cli,
                    &format!(
                        "target {} attained: {}\nvalues below target attained: {} of {}\nfirst missing: {}\n",
                        r.target, r.attained, r.attained_count_below, r.target, missing
                    ),
                )?;
            }
        }
        &Command::Equidist { level, weight } => {
            let r = equidistribution_check(level, weight)?;
            if cli.json {
                print_json(cli, &r)?;
            } else {
                let mut text = format!("N = {level}, k = {weight}\n");
                for c in &r.classes {
                    text += &format!(
                        "  conductor {:<6} characters {:<6} dim {}..{}\n",
                        c.conductor, c.characters, c.min_dim, c.max_dim
                    );
                }
                text += &match r.holds {
                    Some(true) => "exact case: every class constant\n".to_string(),
                    Some(false) => "exact case: VIOLATED\n".to_string(),
                    None => "spread reported only (k != 1 mod 12)\n".to_string(),
                };
                print_text(cli, &text)?;
            }
            if r.holds == Some(false) {
                return Ok(Outcome::Diff);
            }
        }
    }
    Ok(Outcome::Ok)
}
