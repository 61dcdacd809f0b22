use clap::Parser;

fn main() {
    std::process::exit(hyperquake::cli::run(hyperquake::cli::Cli::parse()));
}
