use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = modq::cli::run(std::env::args());
    if code == 0 {
        print!("{text}");
        let _ = std::io::stdout().flush();
    } else {
        eprint!("{text}");
        let _ = std::io::stderr().flush();
    }
    ExitCode::from(code as u8)
}
