// Map of heralded-Bell quality over (C₁ = C₂, C₃) with Δβ = −C₃.

use triplet_walk::explore::{sweep_2d_hbs, SweepAxis};
use triplet_walk::{CouplerParams, Result, StateLabel};

pub fn run_example() -> Result<()> {
    let cs = SweepAxis::new("c1c2", 0.25, 3.0, 12);
    let c3s = SweepAxis::new("c3", 0.25, 4.0, 16);
    let result = sweep_2d_hbs(&CouplerParams::default(), &cs, &c3s, 1e-6)?;

    // shade by the herald branch weight; H marks an exact heralded Bell state
    let shades = [' ', '.', ':', '+', '*', '#'];
    println!("rows C1=C2, columns C3 = {:?}", c3s.values());
    for row in result.points.chunks(c3s.count) {
        let line: String = row
            .iter()
            .map(|pt| match pt.label {
                StateLabel::Hbs => 'H',
                _ => shades[((pt.branches.herald * 5.0).round() as usize).min(5)],
            })
            .collect();
        println!("{:>5.2} |{line}|", row[0].coords[0]);
    }
    let hits: Vec<_> = result
        .points
        .iter()
        .filter(|p| p.label == StateLabel::Hbs)
        .map(|p| (p.coords[0], p.coords[1]))
        .collect();
    println!("exact heralded Bell points: {hits:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
