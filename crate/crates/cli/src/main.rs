mod commands;
mod corpus;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use blocktool_core::context::Session;
use blocktool_core::{Error, Limits};

#[derive(Parser, Debug)]
#[command(name = "blocktool", version, about = "p-blocks, Brauer trees and counting checks for permutation groups")]
pub struct Cli {
    /// Largest group order any enumeration may touch.
    #[arg(long, global = true, default_value_t = 200_000)]
    max_order: u128,
    /// Directory for cached character tables.
    #[arg(long, global = true, env = "BLOCKTOOL_CACHE")]
    cache: Option<PathBuf>,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Blocks, defect groups, Brauer trees and decomposition matrices.
    Analyze {
        group: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brauer tree and decomposition matrix of one block.
    Tree {
        group: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        block: usize,
    },
    /// Counting checks (am, in, baw) for every block.
    Verify {
        group: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_delimiter = ',', default_value = "am,in,baw")]
        checks: Vec<String>,
        /// JSON list of permutations (1-based images) normalizing the group.
        #[arg(long)]
        automorphisms: Option<PathBuf>,
    },
    /// Cyclic-Sylow criterion for a group of Lie type.
    Lietype {
        #[arg(long)]
        series: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
    },
    /// Character table, computed or loaded from the cache.
    Table { group: PathBuf },
    /// Runs every entry of a corpus manifest.
    Corpus {
        manifest: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// What a command produced: the text to print and whether its checks passed.
pub struct Output {
    pub body: String,
    pub pass: bool,
}

fn fail(code: &str, message: &str, exit: u8) -> ExitCode {
    let err = serde_json::json!({ "error": { "code": code, "message": message } });
    eprintln!("{err}");
    ExitCode::from(exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => return fail("Usage", e.to_string().trim(), 2),
    };
    let session = Session::new(
        Limits {
            max_order: cli.max_order,
        },
        cli.cache.clone(),
    );
    let text = cli.text;
    let result: Result<(Output, Option<PathBuf>), Error> = match cli.command {
        Command::Analyze { group, prime, out } => commands::analyze(&session, &group, prime, text).map(|o| (o, out)),
        Command::Tree { group, prime, block } => commands::tree(&session, &group, prime, block, text).map(|o| (o, None)),
        Command::Verify {
            group,
            prime,
            checks,
            automorphisms,
        } => commands::verify(&session, &group, prime, &checks, automorphisms.as_deref(), text).map(|o| (o, None)),
        Command::Lietype { series, n, q, p } => commands::lietype(&series, n, q, p, text).map(|o| (o, None)),
        Command::Table { group } => commands::table(&session, &group, text).map(|o| (o, None)),
        Command::Corpus { manifest, jobs, out } => corpus::run(&session, &manifest, jobs, text).map(|o| (o, out)),
    };
    match result {
        Ok((output, path)) => {
            match path {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &output.body) {
                        return fail("Io", &format!("{}: {e}", path.display()), 2);
                    }
                }
                None => print!("{}", output.body),
            }
            if output.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(e.code(), &e.to_string(), 2),
    }
}
