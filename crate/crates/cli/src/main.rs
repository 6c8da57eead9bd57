use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let seed = std::env::var("SOE_SEED").ok();
    let out = soe_cli::run(std::env::args_os(), seed.as_deref());
    // Ignore write errors so a closed pipe still yields the exit code.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
