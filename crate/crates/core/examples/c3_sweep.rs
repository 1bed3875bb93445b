// Branch populations along C₃ with C₁ = C₂, under both Δβ rules.

use triplet_walk::explore::{sweep_c3, DbetaRule, SweepAxis};
use triplet_walk::{CouplerParams, Result, StateLabel};

pub fn run_example() -> Result<()> {
    let base = CouplerParams::new(1.0, 1.0, 1.0, 0.0);
    let axis = SweepAxis::new("c3", 0.25, 4.0, 16);
    for rule in [DbetaRule::MinusC3, DbetaRule::Fixed(0.0)] {
        println!("rule {rule:?}");
        println!(
            "  {:>5} {:>9} {:>9} {:>9}  label",
            "C3", "000+111", "001+110", "rest"
        );
        for pt in sweep_c3(&base, &axis, rule, 1e-6)?.points {
            let b = pt.branches;
            let mark = if pt.label == StateLabel::None {
                String::new()
            } else {
                pt.label.to_string()
            };
            println!(
                "  {:>5.2} {:>9.5} {:>9.5} {:>9.5}  {mark}",
                pt.coords[0], b.ghz, b.herald, b.rest
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
