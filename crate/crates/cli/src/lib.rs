//! Command-line front end over the verification library: parses flags,
//! runs single-point / grid / demo verifications, and emits deterministic
//! JSON or CSV reports with a pass/fail exit code.

pub mod config;
pub mod report;
pub mod run;

pub use config::{parse_args, GridSource, Mode, Parsed, ReportFormat, RunConfig, USAGE};
pub use report::{emit_report, fmt_sig, render};
pub use run::{run_verification, DemoRecord, PointRecord, Summary, VerdictReport};

use selfrep_core::ErrorCategory;

fn exit_code_for(category: ErrorCategory) -> i32 {
    match category {
        ErrorCategory::Usage | ErrorCategory::Validation => 2,
        ErrorCategory::Resource => 3,
    }
}

/// Full CLI entry point; returns the process exit code.
pub fn run_cli(args: &[String]) -> i32 {
    let config = match parse_args(args) {
        Ok(Parsed::Help) => {
            println!("{USAGE}");
            return 0;
        }
        Ok(Parsed::Config(config)) => config,
        Err(e) => {
            eprintln!("{e}");
            eprintln!("run with --help for usage");
            return 2;
        }
    };
    let report = match run_verification(&config) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("{e}");
            return exit_code_for(e.category());
        }
    };
    if let Err(e) = emit_report(&report, config.format, config.out.as_deref()) {
        eprintln!("{e}");
        return 3;
    }
    if report.summary.pass {
        0
    } else {
        1
    }
}
