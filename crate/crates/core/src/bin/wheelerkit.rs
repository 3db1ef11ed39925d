use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = wheelerkit::cli::dispatch(std::env::args_os().skip(1));
    let text = result.render();
    let written = if result.code == wheelerkit::cli::EXIT_INPUT {
        std::io::stderr().write_all(text.as_bytes())
    } else {
        std::io::stdout().write_all(text.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(wheelerkit::cli::EXIT_INPUT as u8);
    }
    ExitCode::from(result.code as u8)
}
