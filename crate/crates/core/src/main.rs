use clap::Parser;

use spanbicat::cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let code = execute(&cli.command, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
