use clap::Parser;
use zeta_toolkit::cli::{run, RunConfig};

fn main() {
    let cfg = RunConfig::parse();
    let stdout = std::io::stdout();
    let code = run(&cfg, &mut stdout.lock());
    std::process::exit(code);
}
