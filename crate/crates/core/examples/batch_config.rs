// Drive a run from a JSON configuration, the same way the binary does.

use triplet_walk::cli::{load_config, run};
use triplet_walk::Result;

pub fn run_example() -> Result<()> {
    let dir = std::env::temp_dir().join("triplet-walk-batch");
    let config = r#"{
        "command": "simulate",
        "params": { "c1": 1.0, "c2": 1.0, "c3": 2.0, "delta_beta": -2.0 },
        "output": { "format": "json" }
    }"#;
    let overrides = [
        format!("--output.dir={}", dir.display()),
        "--params.delta_beta=0".to_string(),
    ];
    let cfg = load_config(config, &overrides)?;
    let summary = run(&cfg)?;
    println!("{}", summary.line());
    for f in &summary.files {
        println!("  {}", f.display());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
