use dicke_berry_cli::config::{CliError, USAGE};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--help" || a == "-h") || args.is_empty() {
        print!("{USAGE}");
        std::process::exit(if args.is_empty() { 2 } else { 0 });
    }
    if let Err(err) = dicke_berry_cli::run(&args) {
        eprintln!("{err}");
        if matches!(err, CliError::Usage(_)) {
            eprint!("{USAGE}");
        }
        std::process::exit(err.exit_code());
    }
}
