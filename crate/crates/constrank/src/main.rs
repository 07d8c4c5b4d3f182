//! Thin command-line surface over the library: constructions, rank
//! certificates, splitting types, Chern calculus, obstruction reports, the
//! l(r;a) table and finite-field search.
//!
//! Exit codes: 0 success, 1 verification-negative (a report is still
//! emitted), 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use constrank::bounds;
use constrank::chern;
use constrank::constructions::{self, SkewSearchOutcome};
use constrank::pencil::{
    self, certificate::report_json, line_splitting_type, rational_point, verify_constant_rank,
    MatrixSpace, Strategy,
};
use constrank::report::RunConfig;
use constrank::rng::SplitMix64;
use constrank::search;

#[derive(Parser)]
#[command(name = "constrank", version, about = "exact constant-rank pencil toolkit")]
struct Cli {
    /// Primes for exhaustive verification, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Trial budget for randomized strategies.
    #[arg(long, global = true)]
    trials: Option<u32>,
    /// Seed for every randomized choice in this run.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Refuse exhaustive enumerations above this many candidates.
    #[arg(long, global = true)]
    ceiling: Option<u64>,
    /// Worker threads (default: one per core); results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// JSON config file with the same fields as the flags (flags win).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named construction and emit its pencil JSON.
    Construct {
        #[command(subcommand)]
        which: Construction,
    },
    /// Verify constant rank of a pencil JSON file.
    Verify {
        file: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        strategy: StrategyKind,
    },
    /// Splitting type of the image along lines.
    Splitting {
        file: PathBuf,
        #[arg(long)]
        rank: usize,
        /// Number of seeded random lines to check.
        #[arg(long, default_value_t = 200)]
        lines: usize,
        /// A single explicit line "p;q", e.g. "1,0,0;0,1,0".
        #[arg(long)]
        line: Option<String>,
    },
    /// Truncated Chern-class calculator.
    Chern {
        #[command(subcommand)]
        op: ChernOp,
    },
    /// Obstruction computations.
    Obstruct {
        #[command(subcommand)]
        op: ObstructOp,
    },
    /// The l(r;a) table.
    Table {
        #[arg(long)]
        max_a: u32,
        #[arg(long, value_enum, default_value = "md")]
        format: TableFormat,
    },
    /// Provenance report for one (r, a) cell.
    Explain {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        a: u32,
    },
    /// Search for constant-rank subspaces over a prime field.
    Search {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        p: u64,
        /// Complete enumeration of canonical bases (the default).
        #[arg(long, conflicts_with = "random")]
        exhaustive: bool,
        /// Randomized mode with this many trials.
        #[arg(long)]
        random: Option<u32>,
        #[arg(long, value_enum, default_value = "general")]
        ansatz: AnsatzKind,
    },
}

#[derive(Subcommand)]
enum Construction {
    Banded {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Embedded {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        a: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Skew3 {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Westwick5 {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    SkewSearch {
        #[arg(long)]
        a: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyKind {
    Exhaustive,
    Random,
    Symbolic,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Md,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnsatzKind {
    General,
    Skew,
    Banded,
}

#[derive(Subcommand)]
enum ChernOp {
    /// Product of two truncated classes.
    Mul {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lhs: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        rhs: Vec<i64>,
    },
    /// Multiplicative inverse.
    Inv {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<i64>,
    },
    /// (1 + e h)^a.
    Power {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        #[arg(long)]
        a: i64,
    },
    /// Twisted tangent class; --dual gives the cotangent class.
    Tangent {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        twist: i64,
        #[arg(long)]
        dual: bool,
    },
    /// Kernel class C(E) (1-h)^a.
    Kernel {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        ce: Vec<i64>,
        #[arg(long)]
        a: i64,
    },
}

#[derive(Subcommand)]
enum ObstructOp {
    /// Rank-two cokernel constraints on P^n.
    Rank2 {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        n: usize,
    },
    /// Feasible kernel-twist triples of the cubic obstruction.
    Psi {
        #[arg(long)]
        a: i64,
        #[arg(long, default_value_t = 3)]
        s_min: u32,
        #[arg(long, default_value_t = 5)]
        s_max: u32,
    },
    /// Candidate sizes for five-dimensional corank-two spaces.
    Dim5 {
        #[arg(long)]
        max_a: i64,
    },
    /// Top two coefficients of (1+h)(1-h)^a on P^n.
    OmegaKernel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: i64,
    },
    /// The mod-12 integrality condition on c2.
    Schwarz {
        #[arg(long, allow_hyphen_values = true)]
        c2: i64,
    },
}

#[derive(Serialize)]
struct ChernReport {
    n: usize,
    coefficients: Vec<String>,
    pretty: String,
}

fn chern_report(c: &chern::ChernPoly) -> ChernReport {
    ChernReport {
        n: c.order(),
        coefficients: c.coeffs().iter().map(BigInt::to_string).collect(),
        pretty: chern::pretty(c),
    }
}

#[derive(Serialize)]
struct SplittingReport {
    name: Option<String>,
    rank: usize,
    seed: u64,
    lines_checked: usize,
    uniform: bool,
    splitting: Vec<i32>,
}

fn print_json<T: Serialize>(value: &T) {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    print!("{s}");
}

fn emit(space: &MatrixSpace, output: Option<&PathBuf>) -> Result<(), String> {
    let text = space.to_json();
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_space(path: &PathBuf) -> Result<MatrixSpace, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    MatrixSpace::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_line(text: &str, n: usize) -> Result<(Vec<i64>, Vec<i64>), String> {
    let (p, q) = text
        .split_once(';')
        .ok_or_else(|| "line must look like \"1,0,0;0,1,0\"".to_string())?;
    let parse = |part: &str| -> Result<Vec<i64>, String> {
        part.split(',')
            .map(|c| c.trim().parse::<i64>().map_err(|e| e.to_string()))
            .collect()
    };
    let (p, q) = (parse(p)?, parse(q)?);
    if p.len() != n + 1 || q.len() != n + 1 {
        return Err(format!("line points need {} coordinates", n + 1));
    }
    Ok((p, q))
}

fn run(cli: Cli, config: RunConfig) -> Result<ExitCode, String> {
    match cli.command {
        Command::Construct { which } => {
            match which {
                Construction::Banded { a, b, n, output } => {
                    let s = constructions::banded(a, b, n).map_err(|e| e.to_string())?;
                    emit(&s, output.as_ref())?;
                }
                Construction::Embedded { r, a, output } => {
                    let s = constructions::embedded(r, a).map_err(|e| e.to_string())?;
                    emit(&s, output.as_ref())?;
                }
                Construction::Skew3 { output } => emit(&constructions::skew3(), output.as_ref())?,
                Construction::Westwick5 { output } => {
                    emit(&constructions::westwick5(), output.as_ref())?
                }
                Construction::SkewSearch { a, output } => {
                    match constructions::skew_search_candidate(a).map_err(|e| e.to_string())? {
                        SkewSearchOutcome::Found {
                            space,
                            certificate,
                            primes,
                        } => {
                            eprintln!(
                                "certified constant rank {} over primes {:?}",
                                certificate.rank, primes
                            );
                            emit(&space, output.as_ref())?;
                        }
                        SkewSearchOutcome::Exhausted { attempts, detail } => {
                            eprintln!("search exhausted after {attempts} attempts: {detail}");
                            return Ok(ExitCode::from(1));
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            file,
            rank,
            strategy,
        } => {
            let space = load_space(&file)?;
            let strategy = match strategy {
                StrategyKind::Exhaustive => Strategy::ExhaustivePrimes {
                    primes: config.primes.clone(),
                },
                StrategyKind::Random => Strategy::RandomRational {
                    trials: config.random_trials,
                    seed: config.seed,
                },
                StrategyKind::Symbolic => Strategy::SymbolicCharts,
            };
            let cert = verify_constant_rank(&space, rank, &strategy).map_err(|e| e.to_string())?;
            print!("{}", report_json(&space, &cert));
            Ok(if cert.verified() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Splitting {
            file,
            rank,
            lines,
            line,
        } => {
            let space = load_space(&file)?;
            let n = space.ambient_dim();
            let line_list: Vec<(Vec<i64>, Vec<i64>)> = match line {
                Some(text) => vec![parse_line(&text, n)?],
                None => {
                    let mut rng = SplitMix64::new(config.seed);
                    let mut out = Vec::new();
                    while out.len() < lines {
                        let p = rng.nonzero_vector(n + 1, 9);
                        let q = rng.nonzero_vector(n + 1, 9);
                        let independent =
                            (0..n).any(|i| ((i + 1)..=n).any(|j| p[i] * q[j] != p[j] * q[i]));
                        if independent {
                            out.push((p, q));
                        }
                    }
                    out
                }
            };
            let mut reference: Option<pencil::SplittingType> = None;
            let mut uniform = true;
            for (p, q) in &line_list {
                let st = line_splitting_type(&space, rank, &rational_point(p), &rational_point(q))
                    .map_err(|e| e.to_string())?;
                match &reference {
                    None => reference = Some(st),
                    Some(r) if *r != st => uniform = false,
                    _ => {}
                }
            }
            let reference = reference.ok_or("no lines checked")?;
            let report = SplittingReport {
                name: space.name().map(str::to_owned),
                rank,
                seed: config.seed,
                lines_checked: line_list.len(),
                uniform,
                splitting: reference.entries().to_vec(),
            };
            print_json(&report);
            Ok(if uniform {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Chern { op } => {
            let check_len = |n: usize, v: &[i64]| -> Result<(), String> {
                if v.len() > n + 1 {
                    return Err(format!("{} coefficients exceed truncation order {n}", v.len()));
                }
                Ok(())
            };
            let c = match op {
                ChernOp::Mul { n, lhs, rhs } => {
                    check_len(n, &lhs)?;
                    check_len(n, &rhs)?;
                    chern::ChernPoly::from_ints(n, &lhs).mul(&chern::ChernPoly::from_ints(n, &rhs))
                }
                ChernOp::Inv { n, x } => {
                    check_len(n, &x)?;
                    if x.first() != Some(&1) {
                        return Err("inverse requires leading coefficient 1".to_string());
                    }
                    chern::ChernPoly::from_ints(n, &x).inverse()
                }
                ChernOp::Power { n, e, a } => {
                    if a < 0 {
                        return Err("power exponent must be non-negative".to_string());
                    }
                    chern::line_power(e, a, n)
                }
                ChernOp::Tangent { n, twist, dual } => {
                    if n < 1 {
                        return Err("tangent classes need n >= 1".to_string());
                    }
                    if dual {
                        chern::twisted_cotangent(n, twist)
                    } else {
                        chern::twisted_tangent(n, twist)
                    }
                }
                ChernOp::Kernel { n, ce, a } => {
                    check_len(n, &ce)?;
                    if a < 0 {
                        return Err("kernel size a must be non-negative".to_string());
                    }
                    chern::kernel_chern(&chern::ChernPoly::from_ints(n, &ce), a)
                }
            };
            print_json(&chern_report(&c));
            Ok(ExitCode::SUCCESS)
        }
        Command::Obstruct { op } => {
            match op {
                ObstructOp::Rank2 { a, n } => {
                    if a < 3 || n < 3 {
                        return Err("rank2 constraints need a >= 3 and n >= 3".to_string());
                    }
                    #[derive(Serialize)]
                    struct Rank2Report {
                        a: i64,
                        n: usize,
                        solutions: chern::Rank2Solutions,
                    }
                    print_json(&Rank2Report {
                        a,
                        n,
                        solutions: chern::rank2_cokernel_constraints(a, n),
                    });
                }
                ObstructOp::Psi { a, s_min, s_max } => {
                    let triples = chern::psi_feasible_triples(a, s_min, s_max);
                    let conditions: Vec<chern::PsiCondition> = (s_min..=s_max)
                        .map(|s| chern::psi_reduced_condition(a, s as i64))
                        .collect();
                    #[derive(Serialize)]
                    struct PsiReport {
                        a: i64,
                        s_min: u32,
                        s_max: u32,
                        feasible_triples: Vec<[i64; 3]>,
                        count: usize,
                        /// per-s linear condition d_coeff*d + t_coeff*t = rhs
                        reduced_conditions: Vec<chern::PsiCondition>,
                        note: String,
                    }
                    let note = if triples.is_empty() {
                        format!("no feasible triples: the cubic obstruction has no root with {s_min} <= f1+f2+f3 <= {s_max}")
                    } else {
                        "feasible triples exist".to_string()
                    };
                    print_json(&PsiReport {
                        a,
                        s_min,
                        s_max,
                        count: triples.len(),
                        feasible_triples: triples,
                        reduced_conditions: conditions,
                        note,
                    });
                }
                ObstructOp::Dim5 { max_a } => {
                    if max_a < 3 {
                        return Err("dim5 sieve needs max-a >= 3".to_string());
                    }
                    let candidates = chern::dim5_candidates(max_a);
                    #[derive(Serialize)]
                    struct Dim5Report {
                        max_a: i64,
                        candidates: Vec<i64>,
                        profiles: Vec<chern::Dim5Profile>,
                    }
                    let profiles = candidates
                        .iter()
                        .filter_map(|&a| chern::dim5_profile(a))
                        .collect();
                    print_json(&Dim5Report {
                        max_a,
                        candidates,
                        profiles,
                    });
                }
                ObstructOp::OmegaKernel { n, a } => {
                    if n < 2 || a < n as i64 {
                        return Err("omega-kernel needs n >= 2 and a >= n".to_string());
                    }
                    let (c_low, c_top) = chern::omega_kernel_obstruction(n, a);
                    #[derive(Serialize)]
                    struct OmegaReport {
                        n: usize,
                        a: i64,
                        next_to_top: String,
                        top: String,
                        top_vanishes: bool,
                    }
                    print_json(&OmegaReport {
                        n,
                        a,
                        next_to_top: c_low.to_string(),
                        top_vanishes: c_top == BigInt::from(0),
                        top: c_top.to_string(),
                    });
                }
                ObstructOp::Schwarz { c2 } => {
                    #[derive(Serialize)]
                    struct SchwarzReport {
                        c2: i64,
                        passes: bool,
                    }
                    print_json(&SchwarzReport {
                        c2,
                        passes: chern::schwarzenberger(&BigInt::from(c2)),
                    });
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { max_a, format } => {
            let records = bounds::table(max_a).map_err(|e| e.to_string())?;
            match format {
                TableFormat::Md => print!("{}", bounds::table_markdown(&records)),
                TableFormat::Csv => print!("{}", bounds::table_csv(&records)),
                TableFormat::Json => print!("{}", bounds::table_json(&records)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Explain { r, a } => {
            print!("{}", bounds::explain(r, a).map_err(|e| e.to_string())?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            a,
            b,
            r,
            dim,
            p,
            exhaustive: _,
            random,
            ansatz,
        } => {
            let spec = search::SearchSpec {
                a,
                b,
                r,
                dim,
                p,
                mode: match random {
                    Some(trials) => search::Mode::Random {
                        trials,
                        seed: config.seed,
                    },
                    None => search::Mode::Exhaustive,
                },
                ansatz: match ansatz {
                    AnsatzKind::General => search::Ansatz::General,
                    AnsatzKind::Skew => search::Ansatz::SkewSymmetric,
                    AnsatzKind::Banded => search::Ansatz::BandedPattern,
                },
                ceiling: config.enumeration_ceiling,
            };
            let report = search::search(&spec).map_err(|e| e.to_string())?;
            print!("{}", search::report_json(&report));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut config = match &cli.config {
        Some(path) => match RunConfig::from_file(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => RunConfig::default(),
    };
    if let Some(primes) = &cli.primes {
        config.primes = primes.clone();
    }
    if let Some(trials) = cli.trials {
        config.random_trials = trials;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(ceiling) = cli.ceiling {
        config.enumeration_ceiling = ceiling;
    }
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if let Some(workers) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli, config) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
