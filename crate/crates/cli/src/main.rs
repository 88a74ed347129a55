use std::process;

fn main() {
    process::exit(simcheck_cli::run(std::env::args_os()));
}
