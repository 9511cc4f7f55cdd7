use std::process::ExitCode;

use clap::Parser;
use subhankel_cli::{run, Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let text = match cli.output.format {
                Format::Json => outcome.report.to_json() + "\n",
                Format::Text => outcome.report.to_text(),
            };
            print!("{text}");
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
