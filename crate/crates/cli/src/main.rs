use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyrep::bench::{run_bench, summarize, write_csv, BenchConfig, InputKind};
use polyrep::{
    assemble_polynomial, count_polynomial_functions, falling_factorial_reduce, generator_set, kempner,
    CanonicalDecider, DecideOptions, Decision, Error, ModPolynomial, ModVector, Modulus, MultiDecideOptions,
    MultiModVector, MultivariateDecider, TruncationRows, UnivariateDecider, VerifyMode,
};

const EXIT_POLYNOMIAL: u8 = 0;
const EXIT_NOT_POLYNOMIAL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

/// Decide whether functions over Z_n are polynomial.
#[derive(Parser)]
#[command(name = "polyrep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a function Z_n -> Z_n.
    Decide(DecideArgs),
    /// Decide a function Z_n^m -> Z_n given as its table.
    DecideMulti(DecideMultiArgs),
    /// Print the generator vectors for n, one per line.
    Generators {
        n: u64,
        /// Print the inducing polynomial of each generator instead of its values.
        #[arg(long)]
        polynomials: bool,
    },
    /// Print the Kempner function of n.
    Kempner { n: u64 },
    /// Count the polynomial functions over Z_n by enumeration.
    Count { n: u64 },
    /// Decide by enumerating every polynomial of degree below mu(n).
    Oracle(InputArgs),
    /// Compare operation counts of the generator and monomial deciders.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// The modulus.
    #[arg(long)]
    n: u64,
    /// Values f(0), f(1), ... separated by commas.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    values: Option<String>,
    /// File with one residue per line; `#` starts a comment.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl InputArgs {
    fn text(&self) -> Result<String, Error> {
        match (&self.values, &self.file) {
            (Some(v), _) => Ok(v.clone()),
            (None, Some(path)) => {
                fs::read_to_string(path).map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))
            }
            (None, None) => Err(Error::Domain("no input given".into())),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Generator,
    Canonical,
}

#[derive(Clone, Copy, ValueEnum)]
enum Verify {
    All,
    Tail,
}

impl From<Verify> for VerifyMode {
    fn from(v: Verify) -> Self {
        match v {
            Verify::All => VerifyMode::All,
            Verify::Tail => VerifyMode::Tail,
        }
    }
}

#[derive(Args)]
struct DecideArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "generator")]
    algorithm: Algorithm,
    /// Skip printing the witness polynomial.
    #[arg(long)]
    no_witness: bool,
    #[arg(long)]
    no_precheck: bool,
    #[arg(long, value_enum, default_value = "all")]
    verify: Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum Truncation {
    Grid,
    Leading,
    All,
}

#[derive(Args)]
struct DecideMultiArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Number of variables; the table has n^arity entries, first variable
    /// most significant.
    #[arg(long)]
    arity: u32,
    #[arg(long)]
    no_precheck: bool,
    #[arg(long, value_enum, default_value = "grid")]
    truncation: Truncation,
    #[arg(long, value_enum, default_value = "all")]
    verify: Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum Inputs {
    Polynomial,
    Random,
    Mixed,
}

#[derive(Args)]
struct BenchArgs {
    /// Moduli to benchmark, comma separated.
    #[arg(long = "n", value_delimiter = ',', required = true)]
    moduli: Vec<u64>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "polynomial")]
    inputs: Inputs,
    #[arg(long, value_enum, default_value = "tail")]
    verify: Verify,
    #[arg(long)]
    no_precheck: bool,
    /// Emit a JSON array of reports instead of CSV.
    #[arg(long)]
    json: bool,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource(_) => EXIT_RESOURCE,
        Error::VerdictMismatch { .. } => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

fn report(decision: &Decision) -> u8 {
    match decision {
        Decision::Polynomial(_) => {
            println!("verdict: polynomial");
            EXIT_POLYNOMIAL
        }
        Decision::NotPolynomial(r) => {
            println!("verdict: not polynomial");
            println!("stage: {}", r.stage());
            println!("reason: {r}");
            EXIT_NOT_POLYNOMIAL
        }
    }
}

fn join(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn decide(args: &DecideArgs) -> Result<u8, Error> {
    let m = Modulus::new(args.input.n)?;
    let f = ModVector::parse(m, &args.input.text()?)?;
    let opts = DecideOptions {
        precheck: !args.no_precheck,
        verify: args.verify.into(),
        ..Default::default()
    };
    match args.algorithm {
        Algorithm::Generator => {
            let dec = UnivariateDecider::with_options(m.get(), opts)?;
            let decision = dec.decide(&f)?;
            let code = report(&decision);
            if let Some(d) = decision.coefficients() {
                println!("coefficients: {}", join(d));
                if !args.no_witness {
                    match assemble_polynomial(d, dec.generators()) {
                        Ok(p) => println!("witness: {}", falling_factorial_reduce(&p)),
                        Err(Error::Resource(why)) => println!("witness: skipped ({why})"),
                        Err(e) => return Err(e),
                    }
                }
            }
            Ok(code)
        }
        Algorithm::Canonical => {
            let decision = CanonicalDecider::with_options(m.get(), opts)?.decide(&f)?;
            let code = report(&decision);
            if let Some(c) = decision.coefficients() {
                println!("coefficients: {}", join(c));
                if !args.no_witness {
                    println!("witness: {}", ModPolynomial::new(m, c.to_vec()));
                }
            }
            Ok(code)
        }
    }
}

fn decide_multi(args: &DecideMultiArgs) -> Result<u8, Error> {
    let m = Modulus::new(args.input.n)?;
    let f = MultiModVector::parse(m, args.arity, &args.input.text()?)?;
    let opts = MultiDecideOptions {
        precheck: !args.no_precheck,
        truncation: match args.truncation {
            Truncation::Grid => TruncationRows::KempnerGrid,
            Truncation::Leading => TruncationRows::Leading,
            Truncation::All => TruncationRows::All,
        },
        verify: args.verify.into(),
        ..Default::default()
    };
    let decision = MultivariateDecider::with_options(m.get(), args.arity, opts)?.decide(&f)?;
    let code = report(&decision);
    if let Some(d) = decision.coefficients() {
        println!("coefficients: {}", join(d));
    }
    Ok(code)
}

fn generators(n: u64, polynomials: bool) -> Result<u8, Error> {
    let gens = generator_set(n)?;
    if polynomials {
        let mut unit = vec![0; gens.len()];
        for i in 0..gens.len() {
            unit[i] = 1;
            println!("{}: {}", gens.get(i).id(), assemble_polynomial(&unit, &gens)?);
            unit[i] = 0;
        }
    } else {
        print!("{}", gens.dump());
    }
    Ok(0)
}

fn oracle(args: &InputArgs) -> Result<u8, Error> {
    let m = Modulus::new(args.n)?;
    let f = ModVector::parse(m, &args.text()?)?;
    if polyrep::brute_force_oracle(&f)? {
        println!("polynomial");
        Ok(EXIT_POLYNOMIAL)
    } else {
        println!("not polynomial");
        Ok(EXIT_NOT_POLYNOMIAL)
    }
}

fn bench(args: &BenchArgs) -> Result<u8, Error> {
    let config = BenchConfig {
        moduli: args.moduli.clone(),
        trials: args.trials,
        seed: args.seed,
        inputs: match args.inputs {
            Inputs::Polynomial => InputKind::Polynomial,
            Inputs::Random => InputKind::Random,
            Inputs::Mixed => InputKind::Mixed,
        },
        verify: args.verify.into(),
        precheck: !args.no_precheck,
    };
    let reports = run_bench(&config)?;
    let summaries = summarize(&reports);
    let mut out: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(
            fs::File::create(path).map_err(|e| Error::Domain(format!("cannot create {}: {e}", path.display())))?,
        ),
        None => Box::new(io::stdout().lock()),
    };
    let written = if args.json {
        serde_json::to_writer_pretty(&mut out, &reports)
            .map_err(io::Error::from)
            .and_then(|_| writeln!(out))
    } else {
        write_csv(&mut out, &reports, &summaries)
    };
    written.map_err(|e| Error::Domain(format!("write failed: {e}")))?;
    for s in &summaries {
        let ratio = s.verify_ratio.map_or("n/a".to_string(), |r| format!("{r:.2}"));
        eprintln!(
            "n={} trials={} verify mults: canonical {:.1} / generator {:.1} = {ratio}; solve mults: canonical {:.1}, generator {:.1}",
            s.n,
            s.trials,
            s.canonical_verify_mults,
            s.generator_verify_mults,
            s.canonical_solve_mults,
            s.generator_solve_mults
        );
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Decide(args) => decide(args),
        Command::DecideMulti(args) => decide_multi(args),
        Command::Generators { n, polynomials } => generators(*n, *polynomials),
        Command::Kempner { n } => {
            println!("{}", kempner(*n)?);
            Ok(0)
        }
        Command::Count { n } => {
            println!("{}", count_polynomial_functions(*n)?);
            Ok(0)
        }
        Command::Oracle(args) => oracle(args),
        Command::Bench(args) => bench(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
