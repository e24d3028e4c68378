use std::process::exit;

fn main() {
    exit(ncg_cli::run(std::env::args_os()));
}
