// Search a parameter box for the output closest to a target state.

use triplet_walk::dynamics::analytic_state;
use triplet_walk::explore::{search_max_fidelity, Bounds, ParamBox};
use triplet_walk::{Result, TripletAmplitudes};

pub fn run_example() -> Result<()> {
    let bounds = ParamBox::new(Bounds::new(0.0, 2.0), Bounds::new(-2.0, 2.0));
    for (name, target) in [
        ("GHZ", TripletAmplitudes::ghz()),
        ("heralded Bell", TripletAmplitudes::heralded_bell()),
    ] {
        let out = search_max_fidelity(&target, &bounds, 2000, 7)?;
        println!(
            "{name}: grid best {:.6} -> {:.6} after {} evaluations",
            out.grid_best_fidelity, out.best_fidelity, out.evaluations
        );
        let b = out.best;
        println!(
            "  C=({:.5},{:.5},{:.5}) Δβ={:.5}",
            b.c1, b.c2, b.c3, b.delta_beta
        );
        // fidelity ignores brightness; a tiny norm means a near-dark point
        println!(
            "  raw output norm {:.3e}",
            analytic_state(&b, b.length)?.norm()
        );
        for t in out.trace.iter().rev().take(3) {
            println!("  @{:>5}  {:.9}", t.evaluations, t.fidelity);
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
