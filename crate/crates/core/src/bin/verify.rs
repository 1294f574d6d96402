use std::process::ExitCode;

use clap::Parser;
use qds_core::cli::{exit_code, listing_text, run, Args, EXIT_CONFIG};

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG as u8 } else { 0 });
        }
    };
    if args.list {
        print!("{}", listing_text());
        return ExitCode::SUCCESS;
    }
    let config = args.config();
    match run(&config) {
        Ok(report) => {
            println!("{}", report.render(config.report_format));
            ExitCode::from(exit_code(&report) as u8)
        }
        Err(e) => {
            eprintln!("verify: {e}");
            ExitCode::from(EXIT_CONFIG as u8)
        }
    }
}
