use std::process::ExitCode;

use clap::Parser;
use dilatation_kit::cli::{execute, tolerances_from_env, Cli, EXIT_REJECTED};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = match tolerances_from_env() {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("{msg}");
            println!(
                "{}",
                serde_json::json!({ "error": "invalid_input", "message": msg })
            );
            return ExitCode::from(EXIT_REJECTED as u8);
        }
    };
    let outcome = execute(&cli.command, &tol);
    if outcome.code != 0 {
        if let Some(msg) = outcome.document.get("message").and_then(|m| m.as_str()) {
            eprintln!("dilatation-kit: {msg}");
        }
    }
    println!("{}", outcome.render(cli.json));
    ExitCode::from(outcome.code as u8)
}
