use std::fs;
use std::process::ExitCode;

use clap::Parser;

use symcalc_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match &cli.global.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, format!("{}\n", out.text)) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None if out.text.is_empty() => {}
                None => println!("{}", out.text),
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
