use std::process::ExitCode;

use clap::Parser;
use ward_cli::{run, Cli, CliResult, RunConfig};

/// Exit status when inconclusive results are present.
const EXIT_INCONCLUSIVE: u8 = 3;

fn main() -> ExitCode {
    let result: CliResult<_> = RunConfig::from_cli(Cli::parse()).and_then(|cfg| run(&cfg));
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.inconclusive {
                eprintln!("error: inconclusive results present");
                ExitCode::from(EXIT_INCONCLUSIVE)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
