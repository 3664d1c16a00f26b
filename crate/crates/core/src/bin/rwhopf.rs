use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use rwhopf::cli::{run, RunConfig, EXIT_INPUT_ERROR};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let model = match config.command.model_path().map(std::fs::read_to_string).transpose() {
        Ok(m) => m,
        Err(e) => {
            eprintln!("input error: cannot read model: {e}");
            return ExitCode::from(EXIT_INPUT_ERROR as u8);
        }
    };
    let outcome = run(&config, model.as_deref());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.exit_code as u8)
}
