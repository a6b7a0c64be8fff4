use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use irfield_cli::{exit, run, Cli, CliError, RunConfig};

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let config = RunConfig::from_cli(cli)?;
    let report = run(&config)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let text = report.render(config.format);
    match &config.output_path {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io("<stdout>", e))?;
        }
    }
    for c in report.checks.iter().filter(|c| !c.passed) {
        let kind = if c.informational {
            "informational"
        } else {
            "FAILED"
        };
        eprintln!(
            "{kind}: {} deviation {:e} > {:e}",
            c.name, c.max_deviation, c.tolerance
        );
    }
    Ok(if report.passed() {
        exit::SUCCESS
    } else {
        exit::VERIFICATION_FAILED
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let code = match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
