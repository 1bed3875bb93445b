use clap::Parser;

/// Run one triplet-walk job described by a JSON configuration.
#[derive(Debug, Parser)]
#[command(name = "triplet-walk", version)]
struct Args {
    /// Config file path, or an inline JSON object.
    config: String,

    /// Field overrides as dotted paths, e.g. `--params.c3=2 --output.format=json`.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    overrides: Vec<String>,
}

fn main() {
    let args = Args::parse();
    std::process::exit(triplet_walk::cli::main_with(&args.config, &args.overrides));
}
