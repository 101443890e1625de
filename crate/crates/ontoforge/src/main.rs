use clap::Parser;

fn main() {
    let cli = ontoforge::cli::Cli::parse();
    std::process::exit(ontoforge::cli::run(cli));
}
