use clap::Parser;
use fockphase_cli::app::{execute, Cli};

fn main() {
    std::process::exit(execute(Cli::parse()));
}
