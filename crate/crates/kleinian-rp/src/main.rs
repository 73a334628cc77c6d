use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(kleinian_rp::cli::run(std::env::args()) as u8)
}
