// Write the density matrix of the GHZ-like output as CSV and JSON.

use std::f64::consts::TAU;

use triplet_walk::analysis::{density_matrix, normalize};
use triplet_walk::cli::{export_density_matrix, Format};
use triplet_walk::dynamics::analytic_state_lab;
use triplet_walk::{CouplerParams, Result};

pub fn run_example() -> Result<()> {
    let p = CouplerParams::new(1.0, 1.0, 1.0, -1.0);
    let (unit, _) = normalize(&analytic_state_lab(&p, TAU)?)?;
    let rho = density_matrix(&unit)?;
    println!("tr ρ = {:.3}, tr ρ² = {:.12}", rho.trace().re, rho.purity());
    for row in rho.real_part() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>7.4}")).collect();
        println!("  {}", cells.join(" "));
    }

    let dir = std::env::temp_dir().join("triplet-walk-example");
    std::fs::create_dir_all(&dir).map_err(|e| triplet_walk::Error::Io {
        path: dir.clone(),
        source: e,
    })?;
    for format in [Format::Csv, Format::Json] {
        let path = dir.join(format!("density_matrix.{}", format.extension()));
        export_density_matrix(&unit, &path, format)?;
        println!("wrote {}", path.display());
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
