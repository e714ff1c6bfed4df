use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use braidcg::burau::{burau_int_capped, burau_mod, DEFAULT_WORD_CAP};
use braidcg::closure::DEFAULT_CLOSURE_CAP;
use braidcg::config::Config;
use braidcg::error::Result;
use braidcg::verify::{
    verify_abquot, verify_arnold, verify_crt, verify_fivelem, verify_nonsplit, verify_symplectic,
    verify_symquot, VerificationReport, VerifyOptions,
};
use braidcg::word::BraidWord;

const DEFAULT_CACHE_DIR: &str = ".braidcg-cache";

#[derive(Parser)]
#[command(
    name = "braidcg",
    version,
    about = "Verifies quotient isomorphisms of congruence subgroups of braid groups by exact matrix enumeration and seeded sampling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Strand count
    #[arg(long)]
    n: usize,
    /// Sample count for randomized checks
    #[arg(long, default_value_t = 500)]
    samples: usize,
    /// Length of sampled words, in alphabet letters
    #[arg(long, default_value_t = 40)]
    word_length: usize,
    /// RNG seed; reports are reproducible from it
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here as well as to stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for the enumerated-group cache
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Skip the on-disk group cache entirely
    #[arg(long)]
    no_cache: bool,
    /// Optional key=value config file (cache_dir, closure_cap, word_cap)
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Quotient by the level-2 subgroup: symmetric group of the strands
    Arnold {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Level l over level 2l (odd l): symmetric group
    Symquot {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        ell: u64,
    },
    /// Level 2l over level 4l (odd l): elementary abelian 2-group
    Abquot {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        ell: u64,
    },
    /// Level l over level 4l (odd l >= 3): matches the full mod-4 quotient
    Fivelem {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        ell: u64,
    },
    /// Exhaustive no-complement probe in the mod-4 image at n = 3
    Nonsplit {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Membership at two levels combines to membership at their lcm
    Crt {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// Invariant nondegenerate alternating form for odd strand counts
    Symplectic {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Ad-hoc evaluation: print the matrix of a word, integrally or mod m
    Burau {
        /// Strand count
        #[arg(long)]
        n: usize,
        /// Whitespace-separated signed letters, e.g. "1 -2 1"
        #[arg(long)]
        word: String,
        /// Modulus; omit for the exact integer matrix
        #[arg(long = "mod")]
        modulus: Option<u64>,
        /// Optional key=value config file
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn load_config(path: &Option<PathBuf>) -> Result<Config> {
    match path {
        Some(p) => Config::load(p),
        None => {
            let default = PathBuf::from("braidcg.toml");
            if default.exists() {
                Config::load(&default)
            } else {
                Ok(Config::default())
            }
        }
    }
}

fn options(common: &CommonArgs) -> Result<VerifyOptions> {
    let config = load_config(&common.config)?;
    let cache_dir = if common.no_cache {
        None
    } else {
        Some(
            common
                .cache_dir
                .clone()
                .or(config.cache_dir)
                .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR)),
        )
    };
    Ok(VerifyOptions {
        samples: common.samples,
        word_length: common.word_length,
        seed: common.seed,
        closure_cap: config.closure_cap.unwrap_or(DEFAULT_CLOSURE_CAP),
        cache_dir,
    })
}

fn emit(report: &VerificationReport, out: &Option<PathBuf>) -> Result<ExitCode> {
    let text = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
    println!("{text}");
    if let Some(path) = out {
        std::fs::write(path, format!("{text}\n"))?;
    }
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Arnold { common } => {
            let report = verify_arnold(common.n, &options(&common)?)?;
            emit(&report, &common.out)
        }
        Command::Symquot { common, ell } => {
            let report = verify_symquot(common.n, ell, &options(&common)?)?;
            emit(&report, &common.out)
        }
        Command::Abquot { common, ell } => {
            let report = verify_abquot(common.n, ell, &options(&common)?)?;
            emit(&report, &common.out)
        }
        Command::Fivelem { common, ell } => {
            let report = verify_fivelem(common.n, ell, &options(&common)?)?;
            emit(&report, &common.out)
        }
        Command::Nonsplit { common } => {
            let report = verify_nonsplit(common.n, &options(&common)?)?;
            emit(&report, &common.out)
        }
        Command::Crt { common, a, b } => {
            let report = verify_crt(common.n, a, b, &options(&common)?)?;
            emit(&report, &common.out)
        }
        Command::Symplectic { common } => {
            let report = verify_symplectic(common.n, &options(&common)?)?;
            emit(&report, &common.out)
        }
        Command::Burau { n, word, modulus, config } => {
            let config = load_config(&config)?;
            let cap = config.word_cap.unwrap_or(DEFAULT_WORD_CAP);
            let word = BraidWord::parse(n, &word)?;
            let value = match modulus {
                Some(m) => burau_mod(&word, m)?.to_json(),
                None => burau_int_capped(&word, cap)?.to_json(),
            };
            println!("{}", serde_json::to_string_pretty(&value).expect("matrix serializes"));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
