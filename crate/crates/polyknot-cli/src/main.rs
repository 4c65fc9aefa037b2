use std::io::{stderr, stdout};

fn main() {
    let seed = std::env::var("POLYKNOT_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(0xC0FFEE);
    let code = polyknot_cli::run(std::env::args(), seed, &mut stdout(), &mut stderr());
    std::process::exit(code);
}
