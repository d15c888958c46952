use std::io::Write;
use std::process::ExitCode;

use gsite::cli::{run, EXIT_ERROR};

fn main() -> ExitCode {
    let out = run(std::env::args_os());
    let written = if out.status == EXIT_ERROR {
        std::io::stderr().write_all(out.report.as_bytes())
    } else {
        std::io::stdout().write_all(out.report.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(EXIT_ERROR);
    }
    ExitCode::from(out.status)
}
