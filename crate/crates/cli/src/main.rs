use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    ExitCode::from(hcs_cli::run(&argv, &mut io::stdout().lock(), &mut io::stderr().lock()))
}
