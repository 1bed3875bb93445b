// A heralded Bell state from equal pumps: detecting photon 3 in one
// waveguide leaves photons 1 and 2 in a Bell state.

use std::f64::consts::TAU;

use triplet_walk::analysis::{classify, hbs_param_check, normalize};
use triplet_walk::dynamics::symmetric_state;
use triplet_walk::model::spectrum;
use triplet_walk::{BasisIndex, CouplerParams, Result};

pub fn run_example() -> Result<()> {
    let p = CouplerParams::new(1.0, 1.0, 2.0, -2.0);
    let s = spectrum(&p);
    println!(
        "λ_a={} λ_b={} λ_c={} λ_d={}",
        s.lambda_a, s.lambda_b, s.lambda_c, s.lambda_d
    );

    // λ_c, λ_d complete whole cycles over 2π; a and b grow linearly
    let sol = symmetric_state(&p, TAU)?;
    println!(
        "modes: a={:.4} b={:.4} c={:.1e} d={:.1e}",
        sol.a,
        sol.b,
        sol.c.norm(),
        sol.d.norm()
    );

    let (unit, norm) = normalize(&sol.amps)?;
    println!("‖Ψ‖ = {norm:.6}");
    for b in BasisIndex::ORDER {
        let a = unit.get(b);
        println!("  {b}  {:+.4}{:+.4}i", a.re, a.im);
    }

    let report = classify(&unit, 1e-6)?;
    println!(
        "label {} (score {:.12})",
        report.label,
        report.primary_score()
    );

    for m in hbs_param_check(&p, 32) {
        println!(
            "family {} m={:?} n={:?} realized={}",
            m.family, m.m, m.n, m.realized
        );
    }

    // photon 3 in waveguide 0: 000 or 110
    let p3_in_0: f64 = [0, 4].iter().map(|&k| unit.amps[k].norm_sqr()).sum();
    println!("P(photon 3 in waveguide 0) = {p3_in_0:.6}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
