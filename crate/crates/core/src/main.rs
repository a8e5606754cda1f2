use std::io;
use std::process::ExitCode;

use zetaquad::cli::{main_with_args, MAX_EVALS_ENV};

fn main() -> ExitCode {
    let env = std::env::var(MAX_EVALS_ENV).ok();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = main_with_args(std::env::args_os(), env.as_deref(), &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code as u8)
}
