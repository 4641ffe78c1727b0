use clap::Parser;
use etoscope_harness::commands::{dispatch, Cli};

fn main() {
    std::process::exit(dispatch(Cli::parse()));
}
