// Enumerate integer families that give heralded Bell or uniform outputs,
// and verify a few members.

use std::f64::consts::TAU;

use triplet_walk::analysis::{classify, normalize};
use triplet_walk::dynamics::analytic_state;
use triplet_walk::explore::{enumerate_condition_families, Bounds, ParamBox};
use triplet_walk::{Family, Result};

pub fn run_example() -> Result<()> {
    let bounds = ParamBox::new(Bounds::new(0.0, 4.0), Bounds::new(-4.0, 4.0));
    for family in [Family::Hbs1, Family::Hbs2, Family::Hbs3, Family::Uniform] {
        let list = enumerate_condition_families(family, 8, &bounds)?;
        println!("{family}: {} members", list.len());
        for p in list.iter().take(3) {
            let (unit, _) = normalize(&analytic_state(p, TAU)?)?;
            let report = classify(&unit, 1e-6)?;
            println!(
                "  C=({:.2},{:.2},{:.2}) Δβ={:>5.2} -> {}",
                p.c1, p.c2, p.c3, p.delta_beta, report.label
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
