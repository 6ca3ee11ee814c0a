use std::io::Write;

fn main() {
    let (code, out, err) = sarf_kit::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(&out);
    let _ = std::io::stderr().write_all(&err);
    std::process::exit(code);
}
