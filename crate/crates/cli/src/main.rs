use std::io::Write;

fn main() {
    let result = plumbing_cli::run(std::env::args_os());
    print!("{}", result.output);
    let _ = std::io::stdout().flush();
    if let Some(msg) = &result.message {
        eprintln!("plumbing: {}", msg.trim_end());
    }
    std::process::exit(result.exit_code);
}
