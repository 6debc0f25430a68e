use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (output, text, code) = modrecip::cli::run_args(std::env::args_os());
    let written = match (&output, code) {
        (Some(path), 0) => std::fs::write(path, &text),
        (_, 0) => std::io::stdout().write_all(text.as_bytes()),
        _ => std::io::stderr().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!(
            "{{\"error\":{{\"kind\":\"IoError\",\"message\":{:?},\"exit_code\":1}}}}",
            e.to_string()
        );
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
