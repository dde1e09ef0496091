//! `smp`: command-line front end for the smp-core library.
//!
//! Exit codes: 0 success or affirmative answer, 1 negative answer, 2 parse
//! error, 3 invariant violation, 4 budget or cap exceeded.

mod input;
mod verbs;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "smp", version, about = "Strategic play in stable marriage")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Compute a matching.
    Solve {
        #[arg(long, value_enum, default_value_t = Algo::Gs)]
        algo: Algo,
        /// Append the play trace.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
        /// Write `->` instead of `→`.
        #[arg(long)]
        ascii: bool,
        /// Instance file; stdin when absent or `-`.
        file: Option<PathBuf>,
    },
    /// Reports over the Gale-Shapley play or a given matching.
    Analyze {
        #[arg(value_enum)]
        report: Report,
        file: Option<PathBuf>,
        /// Pairs file to analyze instead of the Gale-Shapley matching.
        #[arg(long)]
        matching: Option<PathBuf>,
        /// Pairs file with the coalition's promises (for `vetoes`).
        #[arg(long)]
        coalition: Option<PathBuf>,
        /// Exit 1 when blocking pairs exist.
        #[arg(long)]
        expect_stable: bool,
        #[arg(long)]
        json: bool,
    },
    /// Control, threat prefixes, satisfiability and expanding wrath.
    Threats {
        #[command(subcommand)]
        query: ThreatQuery,
    },
    /// Run the simultaneous-proposal game.
    Simulate {
        /// A play to replay, in the Round/Step/definition notation.
        #[arg(long, conflicts_with = "strategy")]
        script: Option<PathBuf>,
        /// Rule file, one `boy N: ...` line per rule.
        #[arg(long)]
        strategy: Option<PathBuf>,
        #[arg(long)]
        ascii: bool,
        file: Option<PathBuf>,
    },
    /// Exhaustive checks on small instances.
    Oracle {
        #[arg(value_enum)]
        task: OracleTask,
        /// Largest n to accept.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Space::Conservative)]
        space: Space,
        /// Restrict `worst` to one boy.
        #[arg(long)]
        boy: Option<String>,
        file: Option<PathBuf>,
    },
    /// Print a generated instance.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum ThreatQuery {
    /// Can `members` hold `girls` against `externals` (default: everyone else)?
    Control {
        #[arg(long)]
        members: String,
        #[arg(long)]
        girls: String,
        #[arg(long)]
        externals: Option<String>,
        file: Option<PathBuf>,
    },
    /// Longest prefix of the target's list the members control against him.
    Prefix {
        #[arg(long)]
        target: String,
        /// Default: every other boy.
        #[arg(long)]
        members: Option<String>,
        file: Option<PathBuf>,
    },
    /// Complete matching meeting every `ult` line of the file.
    Satisfiable { file: Option<PathBuf> },
    /// Expanding-wrath search for a coalition securing `girl` for `boy`.
    Feasible {
        #[arg(long)]
        boy: String,
        #[arg(long)]
        girl: String,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        file: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algo {
    Gs,
    Coalition,
    Ttc,
    Bidding,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Report {
    Hopeless,
    Blocking,
    Vetoes,
    Cycles,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleTask {
    Atlas,
    Dag,
    Worst,
    Control,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Space {
    All,
    Conservative,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Random,
    Inferno,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match verbs::run(cli.verb) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("smp: {e}");
            ExitCode::from(e.code())
        }
    }
}
