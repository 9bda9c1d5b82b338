use clap::Parser;

use fht_cli::{commands, Cli};

fn main() {
    let cli = Cli::parse();
    let code = match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("fht: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
