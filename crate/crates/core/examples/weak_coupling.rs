// Single-hop populations at weak coupling against the leading-order
// estimate Cᵢ²z²/(4 + Δβ²z²).

use std::f64::consts::TAU;

use triplet_walk::analysis::weak_coupling_ratios;
use triplet_walk::dynamics::analytic_state;
use triplet_walk::{BasisIndex, CouplerParams, Result};

pub fn run_example() -> Result<()> {
    let hops = [
        BasisIndex::new(1, 0, 0),
        BasisIndex::new(0, 1, 0),
        BasisIndex::new(0, 0, 1),
    ];
    println!(
        "{:>6} {:>5} {:>13} {:>13} {:>9}",
        "Δβ", "hop", "full", "estimate", "rel.err"
    );
    for db in [0.0, 0.01, 0.1, 0.5] {
        let p = CouplerParams::new(1e-3, 2e-3, 3e-3, db);
        let probs = analytic_state(&p, TAU)?.probabilities();
        let est = weak_coupling_ratios(&p, TAU);
        for (b, e) in hops.iter().zip(est) {
            let full = probs[b.position()] / probs[0];
            println!(
                "{db:>6} {b:>5} {full:>13.6e} {e:>13.6e} {:>9.2e}",
                (full / e - 1.0).abs()
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
