use clap::Parser;

fn main() {
    std::process::exit(padewkb::run(padewkb::Cli::parse()));
}
