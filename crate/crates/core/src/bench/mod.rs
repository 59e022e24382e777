//! Operation-count benchmark: the generator decider against the monomial
//! baseline on seeded inputs.

use std::io::{self, Write};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::decider::{CanonicalDecider, DecideOptions, UnivariateDecider, VerifyMode};
use crate::error::{Error, Result};
use crate::ring::{factorize, kempner_of, ModVector, Modulus, OpCounters, Stage};

/// What the sampled functions look like.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum InputKind {
    /// Evaluations of random polynomials of degree below `mu`.
    #[default]
    Polynomial,
    /// Uniformly random tables.
    Random,
    /// Even trials polynomial, odd trials random.
    Mixed,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub moduli: Vec<u64>,
    pub trials: usize,
    pub seed: u64,
    pub inputs: InputKind,
    pub verify: VerifyMode,
    pub precheck: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            moduli: Vec::new(),
            trials: 100,
            seed: 0,
            inputs: InputKind::Polynomial,
            verify: VerifyMode::Tail,
            precheck: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Algo {
    Generator,
    Canonical,
}

impl Algo {
    pub const ALL: [Algo; 2] = [Algo::Generator, Algo::Canonical];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Generator => "generator",
            Algo::Canonical => "canonical",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgoRun {
    pub counters: OpCounters,
    pub time_ns: u128,
    pub polynomial: bool,
}

/// One sampled function run through both deciders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchReport {
    pub n: u64,
    pub factorization: String,
    pub mu: u64,
    #[serde(rename = "N")]
    pub generator_count: u64,
    pub sum_e: u64,
    pub trial: usize,
    pub generator: AlgoRun,
    pub canonical: AlgoRun,
    pub agree: bool,
}

impl BenchReport {
    pub fn run(&self, algo: Algo) -> &AlgoRun {
        match algo {
            Algo::Generator => &self.generator,
            Algo::Canonical => &self.canonical,
        }
    }
}

/// Mean counts over all trials of one modulus.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchSummary {
    pub n: u64,
    pub trials: usize,
    pub generator_solve_mults: f64,
    pub generator_verify_mults: f64,
    pub canonical_solve_mults: f64,
    pub canonical_verify_mults: f64,
    /// Canonical over generator verification multiplications; `None` when
    /// the generator side did none.
    pub verify_ratio: Option<f64>,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The generator used for one trial, independent of scheduling.
pub fn trial_rng(seed: u64, n: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix(splitmix(seed ^ splitmix(n)) ^ trial as u64))
}

/// The input function of one trial.
pub fn sample_function(modulus: Modulus, mu: u64, kind: InputKind, rng: &mut ChaCha8Rng, trial: usize) -> ModVector {
    let n = modulus.get();
    let polynomial = match kind {
        InputKind::Polynomial => true,
        InputKind::Random => false,
        InputKind::Mixed => trial.is_multiple_of(2),
    };
    if polynomial {
        let coeffs: Vec<u64> = (0..mu).map(|_| rng.gen_range(0..n)).collect();
        ModVector::from_fn(modulus, |a| {
            coeffs
                .iter()
                .rev()
                .fold(0, |acc, &c| modulus.add(modulus.mul(acc, a), c))
        })
    } else {
        ModVector::from_fn(modulus, |_| rng.gen_range(0..n))
    }
}

/// Runs every trial for every modulus, in parallel across trials.
///
/// Reports come back in `(modulus, trial)` order. A trial where the two
/// deciders disagree aborts the run with [`Error::VerdictMismatch`].
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchReport>> {
    let mut reports = Vec::with_capacity(config.moduli.len() * config.trials);
    for &n in &config.moduli {
        let f = factorize(n)?;
        let modulus = Modulus::new(n)?;
        let mu = kempner_of(&f);
        let opts = DecideOptions {
            precheck: config.precheck,
            verify: config.verify,
            ..Default::default()
        };
        let generator = UnivariateDecider::from_factorization(&f, opts.clone())?;
        let canonical = CanonicalDecider::with_options(n, opts)?;
        let factorization = f.to_string();
        let generator_count = generator.generators().len() as u64;
        let sum_e = f.sum_exponents();

        let rows: Vec<Result<BenchReport>> = (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng = trial_rng(config.seed, n, trial);
                let input = sample_function(modulus, mu, config.inputs, &mut rng, trial);

                let mut gc = OpCounters::default();
                let start = Instant::now();
                let gv = generator.decide_counted(&input, &mut gc)?.is_polynomial();
                let gt = start.elapsed().as_nanos();

                let mut cc = OpCounters::default();
                let start = Instant::now();
                let cv = canonical.decide_counted(&input, &mut cc)?.is_polynomial();
                let ct = start.elapsed().as_nanos();

                if gv != cv {
                    return Err(Error::VerdictMismatch {
                        n,
                        trial,
                        generator: gv,
                        canonical: cv,
                    });
                }
                Ok(BenchReport {
                    n,
                    factorization: factorization.clone(),
                    mu,
                    generator_count,
                    sum_e,
                    trial,
                    generator: AlgoRun {
                        counters: gc,
                        time_ns: gt,
                        polynomial: gv,
                    },
                    canonical: AlgoRun {
                        counters: cc,
                        time_ns: ct,
                        polynomial: cv,
                    },
                    agree: true,
                })
            })
            .collect();
        for row in rows {
            reports.push(row?);
        }
    }
    Ok(reports)
}

pub fn summarize(reports: &[BenchReport]) -> Vec<BenchSummary> {
    let mut out: Vec<BenchSummary> = Vec::new();
    let mut start = 0;
    while start < reports.len() {
        let n = reports[start].n;
        let end = start + reports[start..].iter().take_while(|r| r.n == n).count();
        let group = &reports[start..end];
        let mean = |algo: Algo, stage: Stage| {
            group
                .iter()
                .map(|r| r.run(algo).counters.stage(stage).mults as f64)
                .sum::<f64>()
                / group.len() as f64
        };
        let gv = mean(Algo::Generator, Stage::Verify);
        let cv = mean(Algo::Canonical, Stage::Verify);
        out.push(BenchSummary {
            n,
            trials: group.len(),
            generator_solve_mults: mean(Algo::Generator, Stage::Solve),
            generator_verify_mults: gv,
            canonical_solve_mults: mean(Algo::Canonical, Stage::Solve),
            canonical_verify_mults: cv,
            verify_ratio: (gv > 0.0).then(|| cv / gv),
        });
        start = end;
    }
    out
}

pub const CSV_HEADER: &str = "n,factorization,mu,N,sum_e,algo,stage,mults,adds,time_ns,verdict";

/// One line per trial, algorithm and stage, plus a `total` line carrying the
/// wall time. Summary lines use the stages `mean-solve` and `mean-verify`.
pub fn write_csv<W: Write>(mut w: W, reports: &[BenchReport], summaries: &[BenchSummary]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in reports {
        for algo in Algo::ALL {
            let run = r.run(algo);
            let verdict = if run.polynomial { "polynomial" } else { "not-polynomial" };
            let prefix = format!(
                "{},{},{},{},{},{}",
                r.n,
                r.factorization,
                r.mu,
                r.generator_count,
                r.sum_e,
                algo.name()
            );
            for stage in Stage::ALL {
                let c = run.counters.stage(stage);
                writeln!(w, "{prefix},{},{},{},,{verdict}", stage.name(), c.mults, c.adds)?;
            }
            let t = run.counters.total();
            writeln!(w, "{prefix},total,{},{},{},{verdict}", t.mults, t.adds, run.time_ns)?;
        }
    }
    for s in summaries {
        let head = reports.iter().find(|r| r.n == s.n);
        let (fac, mu, big_n, sum_e) = head.map_or((String::new(), 0, 0, 0), |r| {
            (r.factorization.clone(), r.mu, r.generator_count, r.sum_e)
        });
        for (algo, solve, verify) in [
            (Algo::Generator, s.generator_solve_mults, s.generator_verify_mults),
            (Algo::Canonical, s.canonical_solve_mults, s.canonical_verify_mults),
        ] {
            let prefix = format!("{},{fac},{mu},{big_n},{sum_e},{}", s.n, algo.name());
            writeln!(w, "{prefix},mean-solve,{solve:.2},,,agree")?;
            writeln!(w, "{prefix},mean-verify,{verify:.2},,,agree")?;
        }
    }
    Ok(())
}
