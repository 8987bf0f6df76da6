use std::process::ExitCode;

fn main() -> ExitCode {
    hypcomp::cli::run()
}
