//! Tour of the built-in fan catalog: projective spaces, Hirzebruch
//! surfaces, weighted projective planes, and blow-ups, with the structural
//! predicates each fan carries.
//!
//! Run with `cargo run --example fan_catalog`.

use toric_vanishing::catalog;
use toric_vanishing::fan::Fan;
use toric_vanishing::lattice::LatticeVec;
use toric_vanishing::Result;

fn main() -> Result<()> {
    println!(
        "{:<10} {:>4} {:>5} {:>6} {:>7} {:>7} {:>9}  fingerprint",
        "name", "rank", "rays", "cones", "smooth", "simpl.", "complete"
    );
    for (name, fan) in catalog::acceptance_catalog() {
        println!(
            "{:<10} {:>4} {:>5} {:>6} {:>7} {:>7} {:>9}  {}",
            name,
            fan.rank(),
            fan.n_rays(),
            fan.n_max_cones(),
            fan.is_smooth(),
            fan.is_simplicial(),
            fan.is_complete()?,
            &fan.fingerprint()[..12],
        );
    }

    println!("\nrays of the Hirzebruch surface F_2:");
    let f2 = catalog::catalog_fan("F2")?;
    for (i, ray) in f2.rays().iter().enumerate() {
        println!("  v{i} = {ray}");
    }

    println!("\nfans serialize to JSON and parse back:");
    let json = f2.to_json_string();
    println!("  {json}");
    let back = Fan::from_json_str(&json)?;
    assert_eq!(back.fingerprint(), f2.fingerprint());
    println!("  round trip preserves the fingerprint");

    println!("\nvalidation rejects malformed input:");
    let overlapping = Fan::new(
        2,
        vec![
            LatticeVec::new(vec![1, 0]),
            LatticeVec::new(vec![0, 1]),
            LatticeVec::new(vec![1, 1]),
        ],
        vec![vec![0, 1], vec![0, 2]],
    );
    match overlapping {
        Ok(_) => println!("  unexpected: overlapping cones accepted"),
        Err(e) => println!("  overlapping cones -> {e}"),
    }
    Ok(())
}
