use clap::Parser;

fn main() {
    let cli = sentivote::cli::Cli::parse();
    if let Err(err) = sentivote::cli::run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
