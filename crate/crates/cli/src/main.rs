use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let code = thomsq_cli::run(&args, &mut io::stdout().lock(), &mut io::stderr().lock());
    let _ = io::stdout().flush();
    ExitCode::from(code as u8)
}
