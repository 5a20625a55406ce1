use clap::Parser;

fn main() {
    let cli = pairbox::cli::Cli::parse();
    if let Err(err) = pairbox::cli::run(cli) {
        let payload = serde_json::json!({ "error": err.to_string() });
        eprintln!("{payload}");
        std::process::exit(1);
    }
}
