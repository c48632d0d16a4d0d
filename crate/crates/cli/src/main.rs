//! `sno` — build, query and verify succinct navigational oracles for
//! intersection graphs on a circle.
//!
//! Exit codes: 0 success (check: all queries match brute force), 1 usage,
//! 2 validation, 3 mismatch from `check`, 4 i/o.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sno_core::{
    check_diagram, deserialize_oracle, generate, parse_diagram, render_diagram, serialize_oracle,
    verify, AnyOracle, ClassTag, Diagram, Error as CoreError, ImplChoice,
};

#[derive(Parser)]
#[command(name = "sno", version, about = "Succinct navigational oracles for intersection graphs on a circle")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ImplArg {
    Unified,
    Wavelet,
    All,
}

fn class_parser(s: &str) -> Result<ClassTag, String> {
    ClassTag::parse(s).ok_or_else(|| {
        format!(
            "unknown class `{s}` (expected one of circle, permutation, interval, \
             circular-arc, k-polygon, circle-trapezoid, trapezoid, polygon)"
        )
    })
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random diagram file.
    Gen {
        #[arg(long, value_parser = class_parser)]
        class: ClassTag,
        #[arg(long)]
        n: usize,
        /// Corners per polygon (k-polygon) or maximum corners (polygon).
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build an oracle from a diagram file and serialize it.
    Build {
        #[arg(long, value_parser = class_parser)]
        class: ClassTag,
        #[arg(long = "impl", value_enum, default_value = "unified")]
        implementation: ImplArg,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        explicit_degrees: bool,
    },
    /// Run one query against a serialized oracle.
    Query {
        #[arg(long)]
        oracle: PathBuf,
        #[arg(long)]
        op: String,
        /// Vertex argument(s): one for degree/neighborhood, two for adjacent.
        #[arg(long, num_args = 1..=2)]
        args: Vec<usize>,
    },
    /// Verify oracle answers against the brute-force geometric oracle.
    Check {
        #[arg(long, value_parser = class_parser)]
        class: ClassTag,
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "impl", value_enum, default_value = "all")]
        implementation: ImplArg,
        /// Flip one ground-truth adjacency bit "u,v" before comparing
        /// (mutation hook for testing the mismatch path).
        #[arg(long, hide = true)]
        inject_flip: Option<String>,
    },
    /// Generate, build and time queries; prints a CSV row per implementation.
    Bench {
        #[arg(long, value_parser = class_parser)]
        class: ClassTag,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        queries: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Per-component bit breakdown of a serialized oracle.
    Space {
        #[arg(long)]
        oracle: PathBuf,
    },
}

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(CoreError),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Io(io) => CliError::Io(io),
            other => CliError::Core(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(_) => EXIT_VALIDATION,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not usage errors
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn read_diagram(path: &PathBuf, class: ClassTag) -> Result<Diagram, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_diagram(&text, class)?.diagram)
}

fn load_oracle(path: &PathBuf) -> Result<(AnyOracle, ClassTag), CliError> {
    let bytes = std::fs::read(path)?;
    Ok(deserialize_oracle(&bytes)?)
}

fn run(cmd: Command) -> Result<u8, CliError> {
    match cmd {
        Command::Gen { class, n, k, seed, out } => {
            let d = generate(class, n, k, seed)?;
            std::fs::write(&out, render_diagram(&d))?;
            Ok(0)
        }
        Command::Build { class, implementation, input, out, explicit_degrees } => {
            if implementation == ImplArg::Wavelet
                && !matches!(class, ClassTag::Circle | ClassTag::Trapezoid)
            {
                return Err(CliError::Usage(format!(
                    "--impl wavelet only covers circle and trapezoid, not {class}"
                )));
            }
            if implementation == ImplArg::All {
                return Err(CliError::Usage(
                    "build needs --impl unified or --impl wavelet".into(),
                ));
            }
            let diagram = read_diagram(&input, class)?;
            let oracle = match implementation {
                ImplArg::Unified => {
                    AnyOracle::Unified(verify::build_unified(&diagram, class, explicit_degrees)?)
                }
                ImplArg::Wavelet => verify::build_wavelet(&diagram, class)?,
                ImplArg::All => unreachable!("rejected above"),
            };
            std::fs::write(&out, serialize_oracle(&oracle, class)?)?;
            Ok(0)
        }
        Command::Query { oracle, op, args } => {
            let (oracle, _) = load_oracle(&oracle)?;
            match op.as_str() {
                "degree" => {
                    let [v] = args[..] else {
                        return Err(CliError::Usage("degree takes one vertex".into()));
                    };
                    println!("{}", oracle.degree(v)?);
                }
                "adjacent" => {
                    let [u, v] = args[..] else {
                        return Err(CliError::Usage("adjacent takes two vertices".into()));
                    };
                    println!("{}", oracle.adjacent(u, v)?);
                }
                "neighborhood" => {
                    let [v] = args[..] else {
                        return Err(CliError::Usage("neighborhood takes one vertex".into()));
                    };
                    let ids: Vec<String> =
                        oracle.neighborhood(v)?.iter().map(|v| v.to_string()).collect();
                    println!("{}", ids.join(" "));
                }
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown op `{other}` (degree, adjacent, neighborhood)"
                    )))
                }
            }
            Ok(0)
        }
        Command::Check { class, input, implementation, inject_flip } => {
            let choice = match implementation {
                ImplArg::Unified => ImplChoice::Unified,
                ImplArg::Wavelet => {
                    if !matches!(class, ClassTag::Circle | ClassTag::Trapezoid) {
                        return Err(CliError::Usage(format!(
                            "--impl wavelet only covers circle and trapezoid, not {class}"
                        )));
                    }
                    ImplChoice::Wavelet
                }
                ImplArg::All => ImplChoice::All,
            };
            let diagram = read_diagram(&input, class)?;
            let flip = match inject_flip {
                None => None,
                Some(s) => {
                    let parts: Vec<&str> = s.split(',').collect();
                    let parse = |t: &str| t.trim().parse::<usize>().ok();
                    match parts.as_slice() {
                        [a, b] => match (parse(a), parse(b)) {
                            (Some(u), Some(v)) => Some((u, v)),
                            _ => return Err(CliError::Usage("--inject-flip wants `u,v`".into())),
                        },
                        _ => return Err(CliError::Usage("--inject-flip wants `u,v`".into())),
                    }
                }
            };
            let outcome = check_diagram(class, &diagram, choice, flip)?;
            println!(
                "check class={class} n={} impls={}",
                outcome.n,
                outcome.impls_checked.join(",")
            );
            for m in &outcome.mismatches {
                println!("mismatch: {m}");
            }
            if outcome.passed() {
                println!("result: PASS");
                Ok(0)
            } else {
                println!("result: FAIL ({} mismatches shown)", outcome.mismatches.len());
                Ok(EXIT_MISMATCH)
            }
        }
        Command::Bench { class, n, k, queries, seed } => {
            let diagram = generate(class, n, k, seed)?;
            println!("class,impl,n,N,build_ms,bits_total,bits_per_vertex,adjacent_ns,degree_ns,neigh_ns_per_out");
            let t0 = Instant::now();
            let unified = AnyOracle::Unified(verify::build_unified(&diagram, class, false)?);
            let build_ms = t0.elapsed().as_secs_f64() * 1e3;
            let total = match &unified {
                AnyOracle::Unified(o) => o.total_corners(),
                _ => unreachable!(),
            };
            bench_row(class, &unified, n, total, build_ms, queries, seed)?;
            if matches!(class, ClassTag::Circle | ClassTag::Trapezoid) {
                let t0 = Instant::now();
                let wavelet = verify::build_wavelet(&diagram, class)?;
                let build_ms = t0.elapsed().as_secs_f64() * 1e3;
                let total = match class {
                    ClassTag::Circle => 2 * n,
                    _ => 4 * n,
                };
                bench_row(class, &wavelet, n, total, build_ms, queries, seed)?;
            }
            Ok(0)
        }
        Command::Space { oracle } => {
            let (oracle, _) = load_oracle(&oracle)?;
            println!("{}", oracle.space_report());
            Ok(0)
        }
    }
}

fn bench_row(
    class: ClassTag,
    oracle: &AnyOracle,
    n: usize,
    total: usize,
    build_ms: f64,
    queries: usize,
    seed: u64,
) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_beef);
    let rep = oracle.space_report();

    let t = Instant::now();
    for _ in 0..queries {
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        std::hint::black_box(oracle.adjacent(u, v)?);
    }
    let adjacent_ns = t.elapsed().as_nanos() as f64 / queries.max(1) as f64;

    let t = Instant::now();
    for _ in 0..queries {
        let u = rng.gen_range(1..=n);
        std::hint::black_box(oracle.degree(u)?);
    }
    let degree_ns = t.elapsed().as_nanos() as f64 / queries.max(1) as f64;

    let t = Instant::now();
    let mut outputs = 0u64;
    for _ in 0..queries {
        let u = rng.gen_range(1..=n);
        outputs += oracle.neighborhood(u)?.len() as u64;
    }
    let neigh_ns_per_out = t.elapsed().as_nanos() as f64 / outputs.max(1) as f64;

    println!(
        "{class},{},{n},{total},{build_ms:.3},{},{:.3},{adjacent_ns:.0},{degree_ns:.0},{neigh_ns_per_out:.0}",
        oracle.impl_name(),
        rep.total,
        rep.total as f64 / n as f64,
    );
    Ok(())
}
