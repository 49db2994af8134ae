use std::process::ExitCode;

fn main() -> ExitCode {
    eigensense::cli::main()
}
