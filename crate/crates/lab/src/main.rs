use std::process::ExitCode;

use clap::Parser;
use graded_image_lab::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(&cli))
}
