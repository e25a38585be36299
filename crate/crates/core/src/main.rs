use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gufo_check::cli::{run, Args, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::from(Args::parse());
    match run(&config) {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(output.render(config.format).as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(output.exit_code as u8)
        }
        Err(e) => {
            eprintln!("gufo-check: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
