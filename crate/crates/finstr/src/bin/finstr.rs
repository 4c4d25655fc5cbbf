use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let out = finstr::cli::run(&args);
    print!("{}", out.report);
    ExitCode::from(out.exit_code.clamp(0, 255) as u8)
}
