use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("CATZERO_LOG", "warn")).init();
    ExitCode::from(catzero::cli::run(catzero::cli::Cli::parse()))
}
