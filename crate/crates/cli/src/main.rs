use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use conic_cli::{run, Cli, Failure};

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure { code: 2, message: format!("cannot write {}: {e}", path.display()), document: None }),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|text| emit(&cli, &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(doc) = &f.document {
                let _ = emit(&cli, doc);
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
