use std::process;

use clap::Parser;
use liecurv_cli::{run, CliConfig};

fn main() {
    let cfg = match CliConfig::try_parse() {
        Ok(cfg) => cfg,
        Err(e) => e.exit(),
    };
    match run(&cfg) {
        Ok(outcome) => {
            match &cfg.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &outcome.body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        process::exit(liecurv_cli::commands::EXIT_USAGE);
                    }
                }
                None => print!("{}", outcome.body),
            }
            process::exit(outcome.code);
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            process::exit(e.code);
        }
    }
}
