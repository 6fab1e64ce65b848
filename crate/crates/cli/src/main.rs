//! `symrep`: character tables, tensor-power decompositions, verification
//! suites and class-measure walk simulations on the command line.
//!
//! Exit status: 0 success, 1 verification failure, 2 usage error,
//! 3 resource guard, 4 semantic input error.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};
use symrep::characters::{CharacterTable, DEFAULT_MAX_N};
use symrep::markov::{expected_fixed_points_by_step, simulate};
use symrep::scalar::ratio_to_string;
use symrep::tensor::{decompose_with_cap, Method, RepKind};
use symrep::verify::{
    verify_characters, verify_cor2, verify_dimensions, verify_fourier, verify_prop1, verify_prop3, Prop3Config,
    RPolicy, VerificationReport,
};
use symrep::{BigChainSpec, Error};

/// Environment variable overriding the cap on `n`.
const MAX_N_ENV: &str = "SYMREP_MAX_N";

#[derive(Parser, Debug)]
#[command(
    name = "symrep",
    version,
    about = "Exact representation theory of S_n: tensor powers and fixed-point walks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the character table of S_n.
    Chartable {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Decompose a tensor power of the defining or standard representation.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Rep::Defining)]
        rep: Rep,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run verification suites; exits 1 if any case fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest n for the prop1, cor2, dimensions and characters suites.
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        /// Largest r for the dimensions suite.
        #[arg(long, default_value_t = 6)]
        rmax: usize,
        /// Group size for the prop3 suite.
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Chain length for the prop3 suite.
        #[arg(long, default_value_t = 5)]
        kmax: usize,
        /// Random chains for the prop3 suite.
        #[arg(long, default_value_t = 20)]
        chains: usize,
        /// Monte Carlo trials per chain (0 disables simulation).
        #[arg(long, default_value_t = 20_000)]
        trials: u64,
        /// Random measure pairs per n for the fourier suite.
        #[arg(long, default_value_t = 50)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Simulate a chain read from a JSON file and compare with the exact value.
    Simulate {
        #[arg(long)]
        chain: std::path::PathBuf,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rep {
    Defining,
    Standard,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Closed,
    Oracle,
    Auto,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Suite {
    Prop1,
    Cor2,
    Prop3,
    Dimensions,
    Characters,
    Fourier,
    All,
}

/// Failure carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceGuard { .. } => 3,
            Error::InvalidMeasure(_) => 4,
            Error::InvariantViolation(_) => 1,
            Error::WeightMismatch { .. } | Error::OutOfRange { .. } | Error::Precondition(_) | Error::Parse(_) => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

enum Output {
    Json(Value),
    Text(String),
}

struct Outcome {
    output: Output,
    code: u8,
}

fn max_n() -> Result<usize, Failure> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{MAX_N_ENV}={v} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn envelope(command: &str, parameters: Value, result: Value, seed: Option<u64>) -> Value {
    let mut env = json!({
        "command": command,
        "parameters": parameters,
        "result": result,
        "version": env!("CARGO_PKG_VERSION"),
    });
    if let Some(seed) = seed {
        env["seed"] = json!(seed);
    }
    env
}

fn chartable(n: usize, format: Format) -> Result<Outcome, Failure> {
    let table = CharacterTable::<BigInt>::build(n, max_n()?)?;
    let output = match format {
        Format::Csv => Output::Text(table.to_csv()),
        Format::Json => Output::Json(envelope("chartable", json!({ "n": n }), table.to_json(), None)),
    };
    Ok(Outcome { output, code: 0 })
}

fn decompose_cmd(n: usize, r: usize, rep: Rep, method: MethodArg, format: Format) -> Result<Outcome, Failure> {
    let cap = max_n()?;
    if n > cap {
        return Err(Error::ResourceGuard {
            what: "decomposition",
            n,
            cap,
        }
        .into());
    }
    let kind = match rep {
        Rep::Defining => RepKind::Defining,
        Rep::Standard => RepKind::Standard,
    };
    let method = match method {
        MethodArg::Closed => Method::ClosedForm,
        MethodArg::Oracle => Method::Oracle,
        MethodArg::Auto => Method::Auto,
    };
    let table = decompose_with_cap::<BigInt>(n, r, kind, method, cap)?;
    let output = match format {
        Format::Csv => Output::Text(table.to_csv()),
        Format::Json => {
            let params = json!({ "n": n, "r": r, "rep": kind, "method": method });
            let mut env = envelope("decompose", params, table.to_json(), None);
            if !table.out_of_range.is_empty() {
                env["warning"] = json!(format!(
                    "{} shape(s) omitted: r exceeds n - lambda_2 for the closed form",
                    table.out_of_range.len()
                ));
            }
            Output::Json(env)
        }
    };
    Ok(Outcome { output, code: 0 })
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    suite: Suite,
    nmax: usize,
    rmax: usize,
    n: usize,
    kmax: usize,
    chains: usize,
    trials: u64,
    pairs: usize,
    seed: u64,
) -> Result<Outcome, Failure> {
    let cap = max_n()?;
    if nmax > cap {
        return Err(Error::ResourceGuard {
            what: "verification sweep",
            n: nmax,
            cap,
        }
        .into());
    }
    let wants = |s: Suite| suite == s || suite == Suite::All;
    let mut reports: Vec<VerificationReport> = Vec::new();
    if wants(Suite::Prop1) {
        reports.push(verify_prop1(nmax, RPolicy::ValidityRange)?);
    }
    if wants(Suite::Cor2) {
        reports.push(verify_cor2(nmax)?);
    }
    if wants(Suite::Dimensions) {
        reports.push(verify_dimensions(nmax, rmax)?);
    }
    if wants(Suite::Characters) {
        reports.push(verify_characters(nmax)?);
    }
    if wants(Suite::Fourier) {
        reports.push(verify_fourier(nmax.min(6), pairs, seed)?);
    }
    if wants(Suite::Prop3) {
        reports.push(verify_prop3(Prop3Config {
            n,
            k_max: kmax,
            chains,
            seed,
            trials,
        })?);
    }
    let passed = reports.iter().all(|r| r.passed);
    let params = json!({
        "suite": format!("{suite:?}").to_lowercase(),
        "nmax": nmax, "rmax": rmax, "n": n, "kmax": kmax,
        "chains": chains, "trials": trials, "pairs": pairs,
    });
    let result = json!({ "passed": passed, "reports": reports });
    Ok(Outcome {
        output: Output::Json(envelope("verify", params, result, Some(seed))),
        code: if passed { 0 } else { 1 },
    })
}

fn simulate_cmd(path: &std::path::Path, trials: u64, seed: u64, format: Format) -> Result<Outcome, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let chain = BigChainSpec::from_json_str(&text)?;
    if trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let exact = expected_fixed_points_by_step(&chain)?;
    let summary = simulate(&chain, trials, seed)?;
    let output = match format {
        Format::Csv => {
            let mut out = String::from("step,exact,empirical_mean\n");
            for (j, (e, m)) in exact.iter().zip(&summary.per_step_means).enumerate() {
                out.push_str(&format!("{},{},{}\n", j + 1, ratio_to_string(e), m));
            }
            Output::Text(out)
        }
        Format::Json => {
            let mut result = serde_json::to_value(&summary).expect("summary serializes");
            result["exact_expected"] = json!(ratio_to_string(exact.last().expect("nonempty chain")));
            result["exact_per_step"] = json!(exact.iter().map(ratio_to_string).collect::<Vec<_>>());
            let params =
                json!({ "chain": path.display().to_string(), "trials": trials, "n": chain.n(), "steps": chain.len() });
            Output::Json(envelope("simulate", params, result, Some(seed)))
        }
    };
    Ok(Outcome { output, code: 0 })
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Chartable { n, format } => chartable(n, format),
        Command::Decompose {
            n,
            r,
            rep,
            method,
            format,
        } => decompose_cmd(n, r, rep, method, format),
        Command::Verify {
            suite,
            nmax,
            rmax,
            n,
            kmax,
            chains,
            trials,
            pairs,
            seed,
        } => verify_cmd(suite, nmax, rmax, n, kmax, chains, trials, pairs, seed),
        Command::Simulate {
            chain,
            trials,
            seed,
            format,
        } => simulate_cmd(&chain, trials, seed, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome { output, code }) => {
            match output {
                Output::Json(v) => println!("{v}"),
                Output::Text(s) => print!("{s}"),
            }
            ExitCode::from(code)
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
