use std::process::ExitCode;

use clap::Parser;

use srujac::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    let text = result.render(cli.json);
    if result.exit_code == 0 || cli.json {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
    ExitCode::from(result.exit_code as u8)
}
