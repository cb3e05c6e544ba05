use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use outerspace::cli::Cli;
use outerspace::{run, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let text = if cli.pretty { serde_json::to_string_pretty(&out.report) } else { serde_json::to_string(&out.report) };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{}", text.expect("reports serialize"));
            match out.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::CheckFailed => ExitCode::from(3),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
