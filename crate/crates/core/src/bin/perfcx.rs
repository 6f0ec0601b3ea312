use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use perfcx::io::{run, Command, Flags};

/// Exact computations with strictly perfect complexes, driven by JSON bundles.
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// One of: cohomology, is-qiso, ext, tor-amplitude, cone, truncate,
    /// dk-verify, obstruct, lift, descend.
    command: Command,
    /// Bundle file, `-` for standard input.
    #[arg(long, short)]
    input: PathBuf,
    /// With `ext`: decide whether the classes `class_a` and `class_b` agree.
    #[arg(long)]
    compare: bool,
    #[arg(long, default_value_t = Flags::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = Flags::default().sample_bound)]
    sample_bound: u64,
    #[arg(long, default_value_t = Flags::default().max_trials)]
    max_trials: usize,
    /// With `descend`: first decide exactness of the generic cone.
    #[arg(long)]
    certify_generic: bool,
    /// With `truncate`: keep degrees at most this.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "ge")]
    le: Option<i64>,
    /// With `truncate`: keep degrees at least this.
    #[arg(long, allow_negative_numbers = true)]
    ge: Option<i64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut text = String::new();
    let read = if cli.input.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(&cli.input).map(|s| text = s)
    };
    if let Err(e) = read {
        eprintln!("cannot read {}: {e}", cli.input.display());
        return ExitCode::from(3);
    }
    let flags = Flags {
        compare: cli.compare,
        seed: cli.seed,
        sample_bound: cli.sample_bound,
        max_trials: cli.max_trials,
        certify_generic: cli.certify_generic,
        le: cli.le,
        ge: cli.ge,
    };
    let outcome = run(cli.command, &text, &flags);
    print!("{}", outcome.render());
    if let Some(msg) = outcome.report["error"]["message"].as_str() {
        eprintln!("{msg}");
    }
    ExitCode::from(outcome.exit_code as u8)
}
