use clap::Parser;

fn main() {
    let cli = arslie::cli::Cli::parse();
    std::process::exit(arslie::cli::run(cli));
}
