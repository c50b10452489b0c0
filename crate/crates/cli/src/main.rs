use std::io::Write;
use std::process::ExitCode;

use braces_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let outcome = run(&cli);
    eprint!("{}", outcome.stderr);
    if !outcome.stdout.is_empty() {
        match &cli.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, &outcome.stdout) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            None => {
                let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
            }
        }
    }
    ExitCode::from(outcome.code)
}
