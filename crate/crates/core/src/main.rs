use clap::Parser;
use orbifock::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let out = run(&cli);
    if !out.stdout.is_empty() {
        print!("{}", out.stdout);
    }
    if !out.stderr.is_empty() {
        eprint!("{}", out.stderr);
    }
    std::process::exit(out.code.into());
}
