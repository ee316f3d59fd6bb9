use std::io::{self, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use fibcomp_cli::{parse_args, run, EXIT_USAGE};

fn main() -> ExitCode {
    let cfg = match parse_args(std::env::args_os()) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            return ExitCode::from(code as u8);
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = run(&cfg, &mut stdout.lock(), &mut stderr.lock());
    let _ = io::stdout().flush();
    ExitCode::from(code as u8)
}
