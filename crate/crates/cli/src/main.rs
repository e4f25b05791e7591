use std::process::ExitCode;

use clap::Parser;
use svsplit_cli::{Cli, EXIT_CONFIG};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = cli.run();
    if let Some(dir) = &cli.out {
        if let Err(e) = outcome.write_to(dir) {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    print!("{}", outcome.report_json());
    if let Some(e) = &outcome.report.error {
        eprintln!("error: {}", e.message);
    }
    ExitCode::from(outcome.report.exit_code())
}
