use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = pauli_fwht::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code as u8)
}
