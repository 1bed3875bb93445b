// The eight eigenmodes of the coupling matrix and the sign transform that
// diagonalizes it.

use triplet_walk::model::{coupling_matrix, modal_transform, spectrum, DIM, SIGN_PATTERNS};
use triplet_walk::{CouplerParams, Result};

pub fn run_example() -> Result<()> {
    let p = CouplerParams::new(0.5, 1.0, 1.5, 0.25);
    let a = coupling_matrix(&p);
    let u = modal_transform();
    let s = spectrum(&p);

    println!("λ̄ = {} (−2Δβ = {})", s.lambda_bar, -2.0 * p.delta_beta);
    let mut off = 0.0f64;
    for j in 0..DIM {
        for k in 0..DIM {
            let v: f64 = (0..DIM)
                .flat_map(|x| (0..DIM).map(move |y| (x, y)))
                .map(|(x, y)| u[j][x] * a[x][y].re * u[k][y])
                .sum();
            if j == k {
                println!(
                    "  {:?}  {v:>7.3}  (closed form {:>7.3})",
                    SIGN_PATTERNS[j], s.diag[j]
                );
            } else {
                off = off.max(v.abs());
            }
        }
    }
    println!("largest off-diagonal entry of UÂUᵀ: {off:.1e}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
