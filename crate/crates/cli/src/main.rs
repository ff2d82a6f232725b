use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wolin_cli::{render, run, AnalysisRequest, Command, OutputFormat};
use wolin_core::graphs::Pattern;
use wolin_core::oracle::Characteristic;

/// Componentwise linearity of edge ideals of weighted oriented graphs.
///
/// Exit status: 0 yes (or valid certificate), 1 no (or invalid
/// certificate), 2 unknown, 3 usage or input error.
#[derive(Parser)]
#[command(name = "wolin", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Field characteristic for Betti computations: 0 or a prime.
    #[arg(long, global = true, default_value_t = 2, value_parser = parse_characteristic)]
    characteristic: u32,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest generator count for the linear-quotient search.
    #[arg(long, global = true, default_value_t = 24)]
    lq_cap: usize,
    /// Largest generator count for the vertex-splitting search.
    #[arg(long, global = true, default_value_t = 20)]
    split_cap: usize,
    /// Largest generator count for linear-quotient searches on powers.
    #[arg(long, global = true, default_value_t = 64)]
    power_cap: usize,
    /// Never fall back to Betti numbers; undecided cases stay unknown.
    #[arg(long, global = true)]
    no_oracle: bool,
    /// Also check two degrees above the top generator degree.
    #[arg(long, global = true)]
    paranoid: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PatternArg {
    D1,
    D2,
    D3,
    D4,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether I(D) is componentwise linear.
    Analyze { input: PathBuf },
    /// Decide whether I(D)^k is componentwise linear.
    Power {
        input: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
    },
    /// Betti numbers of an ideal file, of I(D)^k for a graph file, or of a
    /// pattern power against its closed form (with --pattern).
    Oracle {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_enum, conflicts_with = "input")]
        pattern: Option<PatternArg>,
        #[arg(long, default_value_t = 2, requires = "pattern")]
        w2: u32,
        #[arg(long, default_value_t = 2, requires = "pattern")]
        w3: u32,
    },
    /// Re-check the certificate in a report against its input file.
    Certify {
        input: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
    /// Tabulate verdicts over all graphs up to isomorphism.
    Census {
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 2)]
        max_weight: u32,
        /// Include disconnected graphs.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        /// List every graph with its verdict.
        #[arg(long)]
        rows: bool,
    },
}

fn parse_characteristic(s: &str) -> Result<u32, String> {
    let p: u32 = s.parse().map_err(|e| format!("{e}"))?;
    Characteristic::new(p).map(u32::from).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let (input, command) = match cli.command {
        Cmd::Analyze { input } => (Some(input), Command::Analyze),
        Cmd::Power { input, k } => (Some(input), Command::Power { k }),
        Cmd::Oracle { pattern: Some(p), k, w2, w3, .. } => {
            let pattern = match p {
                PatternArg::D1 => Pattern::D1,
                PatternArg::D2 => Pattern::D2,
                PatternArg::D3 => Pattern::D3,
                PatternArg::D4 => Pattern::D4,
            };
            (None, Command::Formula { pattern, k, w2, w3 })
        }
        Cmd::Oracle { input, k, .. } => (input, Command::Oracle { k }),
        Cmd::Certify { input, report } => (Some(input), Command::Certify { report }),
        Cmd::Census { max_vertices, max_weight, all, k, rows } => {
            (None, Command::Census { max_vertices, max_weight, all, k, rows })
        }
    };
    let mut req = AnalysisRequest::new(input, command);
    req.characteristic = Characteristic::new(cli.characteristic).expect("validated by the parser");
    req.format = match cli.format {
        Format::Text => OutputFormat::Text,
        Format::Json => OutputFormat::Structured,
    };
    req.lq_cap = cli.lq_cap;
    req.split_cap = cli.split_cap;
    req.power_cap = cli.power_cap;
    req.use_oracle = !cli.no_oracle;
    req.paranoid = cli.paranoid;
    match run(&req) {
        Ok(report) => {
            print!("{}", render(&report));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
