//! The `rcsa` command line: census tables, single counts, triple streams,
//! pair decomposition, the G2 table and invariant verification.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use weyl_coideal::census::{self, Backend, CensusOptions, CensusRow, REFERENCE_COUNTS};
use weyl_coideal::coideal::{self, CheckResult, Pair};
use weyl_coideal::verify;
use weyl_coideal::weylgroup::DEFAULT_ORDER_CAP;
use weyl_coideal::word::parse_word;
use weyl_coideal::{Error, GroupTable, RootSystem};

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "RCSA_THREADS";

#[derive(Debug, Parser)]
#[command(name = "rcsa", version, about = "Weyl group census of homogeneous right coideal subalgebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count |B(W)| for several types and emit CSV rows.
    Census {
        /// Comma-separated type labels or matrix files; defaults to every reference type.
        #[arg(long, value_delimiter = ',')]
        types: Vec<String>,
        #[arg(long, env = THREADS_ENV)]
        threads: Option<usize>,
        /// Also write the CSV to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value = "scan", value_parser = parse_backend)]
        backend: Backend,
        /// Seconds between progress lines on stderr.
        #[arg(long)]
        progress: Option<f64>,
        /// Leave elapsed_ms empty so output is identical across runs.
        #[arg(long)]
        no_timing: bool,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        max_order: usize,
    },
    /// Print |B(W)| for one type.
    Count {
        #[arg(long = "type")]
        type_arg: String,
        #[arg(long, env = THREADS_ENV)]
        threads: Option<usize>,
        #[arg(long, default_value = "scan", value_parser = parse_backend)]
        backend: Backend,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        max_order: usize,
    },
    /// Stream every triple of B(W) with its pair as newline-delimited JSON.
    Enumerate {
        #[arg(long = "type")]
        type_arg: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        max_order: usize,
    },
    /// Decompose a pair (v, w) into its triple (x, u, J).
    Decompose {
        #[arg(long = "type")]
        type_arg: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
    },
    /// Print the G2 table of d(x) and |Pi cap xPi|.
    Table1,
    /// Run invariant suites and print pass/fail per property.
    Verify {
        #[arg(long = "type")]
        type_arg: String,
        #[arg(long, value_enum, default_value_t = Level::Exhaustive)]
        level: Level,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        max_order: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Exhaustive,
    Sampled,
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse()
}

fn default_threads(threads: Option<usize>) -> usize {
    threads.unwrap_or_else(|| CensusOptions::default().threads).max(1)
}

fn load_group(arg: &str, cap: usize) -> Result<GroupTable, Error> {
    let rs = RootSystem::new(census::load_cartan(arg)?)?;
    GroupTable::enumerate_with_cap(rs, cap)
}

/// Parses `argv` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, CliError> {
    match cmd {
        Command::Census { types, threads, csv, backend, progress, no_timing, max_order } => {
            let labels: Vec<String> = if types.is_empty() {
                REFERENCE_COUNTS.iter().map(|(l, _, _)| l.to_string()).collect()
            } else {
                types
            };
            let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
            let opts = CensusOptions {
                threads: default_threads(threads),
                backend,
                progress: progress.map(Duration::from_secs_f64),
                order_cap: max_order,
            };
            let mut ok = true;
            let mut rows: Vec<CensusRow> = Vec::new();
            for outcome in census::census_run(&label_refs, &opts) {
                match outcome {
                    Ok(row) => {
                        ok &= check_reference(&row.label, row.b_count, err)?;
                        rows.push(row);
                    }
                    Err(f) => {
                        writeln!(err, "error: {}: {}", f.label, f.error)?;
                        ok = false;
                    }
                }
            }
            let text = census::census_csv(&rows, !no_timing);
            out.write_all(text.as_bytes())?;
            if let Some(path) = csv {
                std::fs::write(path, text)?;
            }
            Ok(ok)
        }
        Command::Count { type_arg, threads, backend, max_order } => {
            let t = load_group(&type_arg, max_order)?;
            let d = census::with_threads(default_threads(threads), || {
                census::downset_sizes_with(&t, backend, None)
            });
            let count = census::count_bw_from(&t, &d)?;
            writeln!(out, "{count}")?;
            Ok(check_reference(t.label(), count, err)?)
        }
        Command::Enumerate { type_arg, out: path, max_order } => {
            let t = load_group(&type_arg, max_order)?;
            let mut sink: Box<dyn Write + '_> = match path {
                Some(p) => Box::new(BufWriter::new(File::create(p)?)),
                None => Box::new(BufWriter::new(&mut *out)),
            };
            for tr in coideal::enumerate_triples(&t) {
                let rec = coideal::triple_record(&t, tr)?;
                serde_json::to_writer(&mut sink, &rec).map_err(io::Error::from)?;
                sink.write_all(b"\n")?;
            }
            sink.flush()?;
            Ok(true)
        }
        Command::Decompose { type_arg, v, w } => {
            let t = load_group(&type_arg, DEFAULT_ORDER_CAP)?;
            let v = t.from_word(&parse_word(&v, t.rank())?)?;
            let w = t.from_word(&parse_word(&w, t.rank())?)?;
            match coideal::pair_to_triple(&t, Pair { v, w }) {
                Some(tr) => writeln!(out, "{}", coideal::describe_triple(&t, tr))?,
                None => writeln!(out, "not in A(W)")?,
            }
            Ok(true)
        }
        Command::Table1 => {
            write!(out, "{}", table1()?)?;
            Ok(true)
        }
        Command::Verify { type_arg, level, samples, seed, max_order } => {
            let t = load_group(&type_arg, max_order)?;
            let checks = run_verify(&t, level, samples, seed);
            let mut ok = true;
            for c in &checks {
                writeln!(out, "{c}")?;
                ok &= c.passed();
            }
            Ok(ok)
        }
    }
}

fn check_reference(label: &str, count: u64, err: &mut dyn Write) -> io::Result<bool> {
    match census::reference_count(label) {
        Some(expected) if expected != count => {
            writeln!(err, "MISMATCH: {label}: computed {count}, reference table lists {expected}")?;
            Ok(false)
        }
        _ => Ok(true),
    }
}

/// The G2 table: one row per element in table order with `d(x)` and `|Π∩xΠ|`.
pub fn table1() -> Result<String, Error> {
    let t = GroupTable::builtin("G2")?;
    let d = census::downset_sizes(&t);
    let mut s = String::new();
    s.push_str("x\t|{u in W | u <=_R x}|\t|Pi cap xPi|\n");
    for (x, dx, m) in census::itemize(&t, &d) {
        let name = if t.length(x) == 0 {
            "e".to_string()
        } else {
            t.word(x).iter().map(|&i| format!("s{}", i + 1)).collect::<Vec<_>>().join(" ")
        };
        s.push_str(&format!("{name}\t{dx}\t{}\n", m.len()));
    }
    s.push_str(&format!("|B(W)| = {}\n", census::count_bw_from(&t, &d)?));
    Ok(s)
}

/// Exhaustive runs everything; sampled skips the quadratic suites and uses
/// random round trips instead.
pub fn run_verify(t: &GroupTable, level: Level, samples: usize, seed: u64) -> Vec<CheckResult> {
    let mut checks = vec![verify::element_identities(t)];
    match level {
        Level::Exhaustive => {
            checks.push(verify::weak_order_backends(t));
            checks.push(verify::downset_backends(t, true));
            let lemmas = coideal::check_lemma_suite(t);
            checks.extend(lemmas.checks().into_iter().cloned());
            let rt = verify::round_trips_exhaustive(t);
            checks.extend(rt.checks().into_iter().cloned());
            let mut card = CheckResult::new("cardinality: accepted pairs = |B(W)| = triples enumerated");
            let count = census::count_bw(t).ok();
            card.record(rt.accepted_pairs == Some(rt.triples) && count == Some(rt.triples), || {
                format!("accepted={:?}, triples={}, count={:?}", rt.accepted_pairs, rt.triples, count)
            });
            checks.push(card);
        }
        Level::Sampled => {
            checks.push(verify::downset_backends(t, false));
            let rt = verify::round_trips_sampled(t, samples, seed);
            checks.extend(rt.checks().into_iter().cloned());
        }
    }
    checks
}
