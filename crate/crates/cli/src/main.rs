use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use polybasis::commands;

/// Coherence witnesses for terminating rewriting systems.
#[derive(Parser)]
#[command(name = "polybasis", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check termination and local confluence; print the peak table.
    Check { file: String },
    /// Build a witness between two parallel zig-zags.
    Basis {
        file: String,
        u: String,
        v: String,
        #[arg(short, long)]
        out: String,
    },
    /// Build a derivation certificate for a closed zig-zag.
    Certify {
        file: String,
        u: String,
        #[arg(short, long)]
        out: String,
    },
    /// Check a witness or certificate file.
    Verify { file: String, artifact: String },
    /// Reduce a word (or node) to normal form.
    Normalize { file: String, word: String },
    /// Print the reduction graph.
    Graph {
        file: String,
        #[arg(long)]
        dot: bool,
        /// Longest word to include (string systems).
        #[arg(long)]
        max_word_len: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check { file } => commands::check(file),
        Command::Basis { file, u, v, out } => commands::basis(file, u, v, out),
        Command::Certify { file, u, out } => commands::certify(file, u, out),
        Command::Verify { file, artifact } => commands::verify(file, artifact),
        Command::Normalize { file, word } => commands::normalize(file, word),
        Command::Graph {
            file,
            dot,
            max_word_len,
        } => commands::graph(file, *dot, *max_word_len),
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code)
}
