use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use nilcat::{run, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    let outcome = run(&cfg);
    let mut stdout = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    ExitCode::from(outcome.code as u8)
}
