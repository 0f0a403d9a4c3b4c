use std::process::ExitCode;

fn main() -> ExitCode {
    causaltrust::cli::main_entry()
}
