use std::process::ExitCode;

fn main() -> ExitCode {
    purecubic::cli::main_entry()
}
