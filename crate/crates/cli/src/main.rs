use std::io::Write;

fn main() {
    let (code, text) = hiders_cli::run_command(std::env::args_os());
    if code == 0 || code == 1 {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    std::io::stdout().flush().ok();
    std::process::exit(code);
}
