//! `structctl`: structural controllability analysis and minimum input
//! selection from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use structctl::structmat::parse_pattern_pair;
use structctl::{
    brute_force_mincis, condense, ctrl, dedicated_input_selection, has_perfect_matching,
    is_structurally_controllable, mincis_reduce, setcover_to_mincis, solve_mincis, state_digraph, Error,
    ProblemInstance, SetCoverInstance, SolveMode, StructMatrix, DEFAULT_BRUTE_CAP,
};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;

const INDEX_NOTE: &str = "Index convention: files use 0-based row/column indices; \
reports use 1-based labels (x1 is state 0, input 1 is column 0).\n\n\
Exit codes: 0 success/feasible/controllable, 1 infeasible/not controllable, \
2 input error, 3 perfect-matching precondition failed.";

#[derive(Parser)]
#[command(name = "structctl", version, about = "Structural controllability and minimum input selection", after_help = INDEX_NOTE)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the SCC decomposition and the controllability verdict for all inputs.
    Check {
        file: PathBuf,
        #[command(flatten)]
        dual: Dual,
    },
    /// Select a minimum set of inputs.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[command(flatten)]
        dual: Dual,
        /// Maximum input count accepted by --mode brute.
        #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
        brute_cap: usize,
    },
    /// Emit the equivalent minimum set-cover instance (0-based).
    Reduce {
        file: PathBuf,
        #[command(flatten)]
        dual: Dual,
    },
    /// Generate an instance file on standard output.
    #[command(group(ArgGroup::new("source").required(true).args(["from_setcover", "random"])))]
    Gen(GenArgs),
    /// Compare the structural verdict with random numeric realizations.
    Probe {
        file: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        dual: Dual,
    },
    /// Time the dedicated-input solver on random patterns of growing size.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [100usize, 200, 400])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct Dual {
    /// Solve the output-selection dual: transpose the state matrix and read
    /// the second block as an output matrix (one row per output).
    #[arg(long)]
    dual: bool,
}

#[derive(Args)]
#[group(skip)]
struct GenArgs {
    /// Build the diagonal-state instance of a set-cover file.
    #[arg(long, value_name = "FILE")]
    from_setcover: Option<PathBuf>,
    /// Random instance: state count, input count, star density in (0, 1], seed.
    #[arg(long, num_args = 4, value_names = ["N", "P", "DENSITY", "SEED"])]
    random: Option<Vec<String>>,
    /// Force a full diagonal in the state matrix (with --random).
    #[arg(long, requires = "random")]
    assumption1: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Greedy,
    Brute,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::AssumptionViolated => EXIT_PRECONDITION,
            Error::Infeasible { .. } => EXIT_NEGATIVE,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path, dual: bool) -> Result<ProblemInstance, Failure> {
    let text = read(path)?;
    let wrap = |e: Error| Failure::input(format!("{}: {e}", path.display()));
    if dual {
        let (a, c) = parse_pattern_pair(&text).map_err(wrap)?;
        ProblemInstance::dual_of(&a, &c).map_err(wrap)
    } else {
        ProblemInstance::parse(&text).map_err(wrap)
    }
}

fn all_inputs(inst: &ProblemInstance) -> Vec<usize> {
    (0..inst.p()).collect()
}

fn cmd_check(path: &Path, dual: bool) -> Outcome {
    let inst = load_instance(path, dual)?;
    let cond = condense(&state_digraph(inst.a_bar())?);
    let pm = has_perfect_matching(inst.a_bar())?;
    let controllable = is_structurally_controllable(&inst, &all_inputs(&inst))?;
    print!("{}", cond.report());
    println!(
        "{}, non-top-linked SCCs: {}, Assumption 1: {}",
        if controllable { "CONTROLLABLE" } else { "NOT CONTROLLABLE" },
        cond.non_top_linked().len(),
        if pm { "YES" } else { "NO" }
    );
    Ok(if controllable { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_solve(path: &Path, mode: Mode, dual: bool, brute_cap: usize) -> Outcome {
    let inst = load_instance(path, dual)?;
    let result = match mode {
        Mode::Exact | Mode::Greedy => {
            let solve_mode = if matches!(mode, Mode::Exact) {
                SolveMode::Exact
            } else {
                SolveMode::Greedy
            };
            match solve_mincis(&inst, solve_mode) {
                Err(Error::AssumptionViolated) => {
                    return Err(Failure {
                        code: EXIT_PRECONDITION,
                        message: "state bipartite graph has no perfect matching; \
                                  the set-cover reduction does not apply, retry with --mode brute"
                            .into(),
                    })
                }
                other => other?,
            }
        }
        Mode::Brute => brute_force_mincis(&inst, brute_cap)?,
    };
    println!("{result}");
    Ok(if result.feasible { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_reduce(path: &Path, dual: bool) -> Outcome {
    let inst = load_instance(path, dual)?;
    let cover = mincis_reduce(&inst)?;
    print!("{cover}");
    Ok(EXIT_OK)
}

fn random_instance(args: &[String], assumption1: bool) -> Result<ProblemInstance, Failure> {
    let [n, p, density, seed] = args else {
        return Err(Failure::input("--random expects N P DENSITY SEED"));
    };
    let n: usize = n.parse().map_err(|e| Failure::input(format!("N: {e}")))?;
    let p: usize = p.parse().map_err(|e| Failure::input(format!("P: {e}")))?;
    let density: f64 = density.parse().map_err(|e| Failure::input(format!("DENSITY: {e}")))?;
    let seed: u64 = seed.parse().map_err(|e| Failure::input(format!("SEED: {e}")))?;
    if !(density > 0.0 && density <= 1.0) {
        return Err(Failure::input(format!("density {density} outside (0, 1]")));
    }
    if n == 0 {
        return Err(Failure::input("N must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pattern = |rows: usize, cols: usize, diagonal: bool| {
        let mut stars = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if rng.random_bool(density) || (diagonal && r == c) {
                    stars.push((r, c));
                }
            }
        }
        StructMatrix::new(rows, cols, stars).expect("stars in range")
    };
    let a = pattern(n, n, assumption1);
    let b = pattern(n, p, false);
    let mut label = format!("random n={n} p={p} density={density} seed={seed}");
    if assumption1 {
        label.push_str(" full-diagonal");
    }
    Ok(ProblemInstance::new(a, b)?.with_label(label))
}

fn cmd_gen(args: &GenArgs) -> Outcome {
    let inst = match (&args.from_setcover, &args.random) {
        (Some(path), _) => {
            let sc = SetCoverInstance::parse(&read(path)?)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            setcover_to_mincis(&sc)
        }
        (None, Some(random)) => random_instance(random, args.assumption1)?,
        (None, None) => unreachable!("clap requires one generator"),
    };
    print!("{inst}");
    Ok(EXIT_OK)
}

fn cmd_probe(path: &Path, trials: u64, seed: u64, tol: f64, dual: bool) -> Outcome {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Failure::input(format!("tolerance {tol} must be positive")));
    }
    let inst = load_instance(path, dual)?;
    let all = all_inputs(&inst);
    let structural = is_structurally_controllable(&inst, &all)?;
    let numeric = ctrl::numeric_probe(&inst, &all, trials as usize, seed, tol)?;
    println!("structural: {structural}");
    println!("numeric: {numeric} ({trials} trials, seed {seed}, tol {tol:e})");
    if structural == numeric {
        println!("AGREE (both {structural})");
        Ok(EXIT_OK)
    } else {
        println!("DISAGREE (structural {structural}, numeric {numeric})");
        Ok(EXIT_NEGATIVE)
    }
}

fn cmd_bench(sizes: &[usize], reps: usize, seed: u64) -> Outcome {
    if sizes.is_empty() || sizes.contains(&0) || reps == 0 {
        return Err(Failure::input("sizes and reps must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::new();
    println!("{:>6} {:>8} {:>12} {:>8}", "n", "stars", "seconds", "inputs");
    for &n in sizes {
        let density = (4.0 / n as f64).min(1.0);
        let stars: Vec<(usize, usize)> = (0..n * n)
            .filter(|_| rng.random_bool(density))
            .map(|k| (k / n, k % n))
            .collect();
        let a = StructMatrix::new(n, n, stars).expect("stars in range");
        let mut best = f64::INFINITY;
        let mut inputs = 0;
        for _ in 0..reps {
            let start = Instant::now();
            let res = dedicated_input_selection(&a)?;
            best = best.min(start.elapsed().as_secs_f64());
            inputs = res.chosen.len();
        }
        println!("{n:>6} {:>8} {best:>12.6} {inputs:>8}", a.star_count());
        points.push(((n as f64).ln(), best.ln()));
    }
    if points.len() >= 2 {
        let k = points.len() as f64;
        let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
        let my = points.iter().map(|p| p.1).sum::<f64>() / k;
        let cov: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let var: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
        println!("log-log slope: {:.2}", cov / var);
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check { file, dual } => cmd_check(file, dual.dual),
        Command::Solve {
            file,
            mode,
            dual,
            brute_cap,
        } => cmd_solve(file, *mode, dual.dual, *brute_cap),
        Command::Reduce { file, dual } => cmd_reduce(file, dual.dual),
        Command::Gen(args) => cmd_gen(args),
        Command::Probe {
            file,
            trials,
            seed,
            tol,
            dual,
        } => cmd_probe(file, *trials, *seed, *tol, dual.dual),
        Command::Bench { sizes, reps, seed } => cmd_bench(sizes, *reps, *seed),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, message }) => {
            eprintln!("structctl: {message}");
            ExitCode::from(code)
        }
    }
}
