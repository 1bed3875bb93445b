// Closed-form output against fourth-order Runge-Kutta, in both frames.
//
// ```text
// cargo run --example closed_form_vs_rk4
// ```

use std::f64::consts::TAU;

use triplet_walk::dynamics::{analytic_state_lab, integrate_rk4, integrate_rk4_lab};
use triplet_walk::{BasisIndex, CouplerParams, Result};

pub fn run_example() -> Result<()> {
    let p = CouplerParams::new(0.8, 1.3, 2.1, -0.7);
    let exact = analytic_state_lab(&p, TAU)?;

    println!("{:>6} {:>12} {:>12}", "steps", "rotating", "lab");
    let mut prev = None;
    for steps in [128, 256, 512, 1024, 2048] {
        let rot = integrate_rk4(&p, TAU, steps)?
            .last()
            .unwrap()
            .1
            .sup_distance(&exact);
        let lab = integrate_rk4_lab(&p, TAU, steps)?
            .last()
            .unwrap()
            .1
            .sup_distance(&exact);
        print!("{steps:>6} {rot:>12.3e} {lab:>12.3e}");
        if let Some(e) = prev {
            // halving h should cut the error ~16x
            print!("   ratio {:.2}", e / rot);
        }
        println!();
        prev = Some(rot);
    }

    println!("\n|Ψ(2π)|² (closed form):");
    for (b, prob) in BasisIndex::ORDER.iter().zip(exact.probabilities()) {
        println!("  {b}  {prob:.6e}");
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
