use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "regmat", version, about = "Exact TU matrices, regular matroids and their sums")]
pub struct Cli {
    /// Output as plain text or as a JSON transcript.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Largest number of minors a TU check may evaluate.
    #[arg(long, global = true, default_value_t = regmat::tu::DEFAULT_MINOR_LIMIT)]
    pub limit: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PivotMode {
    Long,
    Short,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide total unimodularity, or k-partial unimodularity with --k.
    CheckTu {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Find a TU signing of a matrix's support.
    Sign { file: PathBuf },
    Pivot {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: PivotMode,
        #[arg(long)]
        row: String,
        #[arg(long)]
        col: String,
    },
    /// 1-sum of two standard representations.
    Sum1 { left: PathBuf, right: PathBuf },
    /// 2-sum along row `x` of the left and column `y` of the right summand.
    Sum2 {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// GF(2) 3-sum; rational inputs are replaced by their support.
    Sum3 {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        frame: PathBuf,
    },
    /// Canonical signing of a 3-sum. GF(2) summands are signed first.
    SignSum3 {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        frame: PathBuf,
    },
    /// Dual standard representation, `-Bᵀ`.
    Dual { file: PathBuf },
    /// Matroid queries on a standard representation `[1 | B]`, or with
    /// --vector on the column matroid of the matrix.
    Matroid {
        #[command(subcommand)]
        query: MatroidQuery,
    },
    /// Evaluate a decomposition tree into a representation and TU signing.
    Good { tree: PathBuf },
    /// Run the randomized lemma suite.
    VerifyBlueprint {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Use a short pivot with one sign flipped.
        #[arg(long)]
        mutant: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum MatroidQuery {
    Indep {
        file: PathBuf,
        /// Comma-separated labels.
        #[arg(long, value_delimiter = ',')]
        set: Vec<String>,
        #[arg(long)]
        vector: bool,
    },
    Base {
        file: PathBuf,
        #[arg(long)]
        vector: bool,
    },
    /// Compare the base-complement dual with the matroid of `-Bᵀ`.
    Dual { file: PathBuf },
    Equal {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        vector: bool,
    },
    Axioms {
        file: PathBuf,
        #[arg(long)]
        vector: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(t) => {
            match cli.format {
                Format::Text => print!("{}", t.to_text()),
                Format::Structured => println!("{}", serde_json::to_string_pretty(&t).expect("serializable")),
            }
            ExitCode::from(t.exit_code as u8)
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Structured => {
                    let v = serde_json::json!({ "error": e.to_string(), "exit_code": 2 });
                    println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
                }
            }
            ExitCode::from(2)
        }
    }
}
