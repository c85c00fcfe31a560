use std::process::exit;

fn main() {
    exit(typed_asep::cli::run(std::env::args()));
}
