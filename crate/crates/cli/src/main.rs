use std::process::ExitCode;

use clap::Parser;
use pi2_cli::config::{resolve, Args};
use pi2_cli::run::run;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("PI2_LOG", "warn")).init();
    let cfg = match resolve(Args::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let out = match run(&cfg) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}", e.record());
            return ExitCode::from(1);
        }
    };
    let written = match &cfg.output_path {
        Some(p) => std::fs::write(p, out).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(out.as_bytes()).map_err(|e| e.to_string())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
