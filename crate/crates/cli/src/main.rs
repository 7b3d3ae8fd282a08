mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, Verdict};

#[derive(Parser)]
#[command(name = "oa-scheme", version, about = "Exact computations with designs in Hamming schemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct DesignArgs {
    #[arg(long = "N")]
    pub size: String,
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub q: i64,
    /// Degree set, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub alphas: Vec<i64>,
    /// Strength; defaults to 2s - 1.
    #[arg(long)]
    pub t: Option<i64>,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
pub struct CodeSource {
    /// Built-in code, e.g. golay-ternary-dual or repetition-dual(6).
    #[arg(long)]
    pub name: Option<String>,
    /// Code file: "n q N" header, then N rows of symbols 1..q.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Krawtchouk polynomial K_{n,q,j}(x).
    Kraw { n: i64, q: i64, j: i64, x: i64 },
    /// Parameters of a scheme given by its second eigenmatrix.
    Scheme {
        /// CSV of rationals, one row per line.
        #[arg(long)]
        q_matrix: PathBuf,
        #[arg(long)]
        size: String,
    },
    /// The Delsarte scheme of a design.
    Delsarte(DesignArgs),
    /// The fission scheme of a (2s-1)-design with degree s.
    Fission(DesignArgs),
    /// Triple intersection numbers of a scheme.
    Triples {
        /// tight3:Q, delsarte:N,n,q,a1,..,as, fission:N,n,q,a1,..,as or a
        /// Q-matrix CSV path (with --size).
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        size: Option<String>,
        #[arg(long, num_args = 3, value_names = ["A", "B", "C"])]
        base: Option<Vec<usize>>,
    },
    /// Integrality test for a tight 3-design in H(q+2, q).
    Tight3 {
        #[arg(long)]
        q: i64,
    },
    /// Distance profile, strength and checks of a code.
    VerifyCode(CodeSource),
    /// Code of a Hadamard matrix given as rows of +1/-1.
    HadamardCode {
        #[arg(long)]
        file: PathBuf,
    },
    /// Words with a given symbol in a given column, with that column removed.
    Contraction {
        #[command(flatten)]
        source: CodeSource,
        /// Column, 1-based.
        #[arg(long)]
        column: usize,
        /// Symbol in 1..q.
        #[arg(long)]
        symbol: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounds on the complement distances of a (2s-1)-design with degree s.
    Inequality {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        s: i64,
        /// Degree set alpha_1..alpha_s, comma separated.
        #[arg(long, value_delimiter = ',')]
        distances: Option<Vec<i64>>,
        /// Design size, for the design identity residuals.
        #[arg(long = "N")]
        size: Option<String>,
    },
    /// Feasible parameters of (2s-1)-designs with degree s.
    Search {
        #[arg(long)]
        s: i64,
        #[arg(long, default_value_t = 2)]
        q_min: i64,
        #[arg(long)]
        q_max: i64,
        #[arg(long)]
        n_min: Option<i64>,
        #[arg(long)]
        n_max: i64,
        /// Write the main table as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "OA_SCHEME_JOBS")]
        jobs: Option<usize>,
        /// Run the elimination on every candidate size.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Designs whose degree set is symmetric about n/2.
    SymmetricSearch {
        #[arg(long)]
        s: i64,
        #[arg(long)]
        n_max: i64,
    },
}

fn run(cli: Cli) -> Result<(String, Verdict), CliError> {
    match cli.command {
        Command::Kraw { n, q, j, x } => commands::kraw(n, q, j, x),
        Command::Scheme { q_matrix, size } => commands::scheme(&q_matrix, &size),
        Command::Delsarte(d) => commands::delsarte(&d, false),
        Command::Fission(d) => commands::delsarte(&d, true),
        Command::Triples { scheme, size, base } => commands::triples(&scheme, size.as_deref(), base),
        Command::Tight3 { q } => commands::tight3(q),
        Command::VerifyCode(src) => commands::verify_code(&src),
        Command::HadamardCode { file } => commands::hadamard(&file),
        Command::Contraction {
            source,
            column,
            symbol,
            out,
        } => commands::contraction(&source, column, symbol, out.as_deref()),
        Command::Inequality {
            n,
            q,
            s,
            distances,
            size,
        } => commands::inequality(n, q, s, distances, size.as_deref()),
        Command::Search {
            s,
            q_min,
            q_max,
            n_min,
            n_max,
            out,
            jobs,
            exhaustive,
            format,
        } => commands::search(
            commands::SearchArgs {
                s,
                q_min,
                q_max,
                n_min: n_min.unwrap_or(s + 1),
                n_max,
                exhaustive,
            },
            out.as_deref(),
            jobs,
            format,
        ),
        Command::SymmetricSearch { s, n_max } => commands::symmetric(s, n_max),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, verdict)) => {
            print!("{text}");
            match verdict {
                Verdict::Ok => ExitCode::SUCCESS,
                Verdict::Infeasible => ExitCode::from(1),
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
