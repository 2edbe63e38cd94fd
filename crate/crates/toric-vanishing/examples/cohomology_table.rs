//! Graded sheaf cohomology of divisors on complete simplicial toric
//! varieties: dimension tables, the degrees that carry them, and exact
//! Euler characteristics.
//!
//! Run with `cargo run --example cohomology_table`.

use toric_vanishing::catalog;
use toric_vanishing::cohomology::CohomologyEngine;
use toric_vanishing::divisor::QDivisor;
use toric_vanishing::Result;

fn main() -> Result<()> {
    let p2 = catalog::catalog_fan("P2")?;
    let engine = CohomologyEngine::new(&p2, 2)?;

    println!("cohomology of O(k) on P^2 (columns h^0, h^1, h^2, then chi):");
    for k in -4..=3i64 {
        let d = QDivisor::from_integers(&p2, &[0, 0, k])?;
        let t = engine.table(&d)?;
        println!("  k = {k:>2}:  h = {:?}   chi = {}", t.h, t.euler_characteristic());
    }
    println!("  (chi matches the binomial (k+2)(k+1)/2 at every k, including negatives)");

    println!("\nthe canonical divisor K on P^2 concentrates in one degree:");
    let k = QDivisor::canonical(&p2);
    let t = engine.table(&k)?;
    println!("  h = {:?}", t.h);
    for (m, dims) in &t.by_degree {
        println!("  degree {m} contributes {dims:?}");
    }

    println!("\na divisor with cohomology at two levels: on the Hirzebruch");
    println!("surface F_2, the (-2)-curve D_1 is effective but far from nef:");
    let f2 = catalog::catalog_fan("F2")?;
    let e2 = CohomologyEngine::new(&f2, 2)?;
    let mixed = QDivisor::from_integers(&f2, &[0, 1, 0, 0])?;
    let tm = e2.table(&mixed)?;
    println!("  h = {:?}   chi = {}", tm.h, tm.euler_characteristic());

    println!("\ntwo independent engines agree (subset partition vs box scan):");
    let ts = e2.table_by_scan(&mixed, 3)?;
    println!("  scan engine: h = {:?}   match = {}", ts.h, ts.h == tm.h);

    println!("\nhuge anti-ample twists stay cheap when only low levels are needed:");
    let big = QDivisor::from_integers(&p2, &[-200, -170, -130])?;
    let low = engine.table_restricted(&big, 1)?;
    println!("  O(-500ish) on P^2, levels 0..=1 only: {low:?} (all the mass sits in h^2)");
    Ok(())
}
