// Device output against phase mismatch: one resonance per surviving mode.

use triplet_walk::explore::{dbeta_peaks, output_norms, sweep_dbeta_z, SweepAxis, PEAK_REL_FLOOR};
use triplet_walk::model::spectrum;
use triplet_walk::{CouplerParams, Result};

pub fn run_example() -> Result<()> {
    let axis = SweepAxis::new("delta_beta", -6.0, 6.0, 241);
    for c3 in [1.0, 2.0] {
        let base = CouplerParams::new(1.0, 1.0, c3, 0.0);
        let result = sweep_dbeta_z(&base, &axis, 64, 1e-3)?;
        let norms = output_norms(&result);
        let top = norms.iter().map(|n| n.1).fold(0.0, f64::max);

        println!("C = (1, 1, {c3})");
        for (db, n) in norms.iter().step_by(8) {
            let bar = "#".repeat((40.0 * n / top).round() as usize);
            println!("  {db:>6.2} {bar}");
        }
        let peaks = dbeta_peaks(&result, PEAK_REL_FLOOR);
        println!("  peaks at Δβ = {peaks:?}");

        // each peak puts one eigenvalue at zero
        for db in peaks {
            let s = spectrum(&CouplerParams {
                delta_beta: db,
                ..base
            });
            println!(
                "    Δβ={db:>5.2}: λ_a={:>5.2} λ_b={:>5.2} λ_c={:>5.2} λ_d={:>5.2}",
                s.lambda_a, s.lambda_b, s.lambda_c, s.lambda_d
            );
        }
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
