use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = hvo::cli::run_args(std::env::args_os(), &mut io::stdout().lock());
    ExitCode::from(code as u8)
}
