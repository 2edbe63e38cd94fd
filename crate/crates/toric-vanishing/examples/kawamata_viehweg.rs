//! Kawamata-Viehweg vanishing runs: for an ample Q-divisor H, all higher
//! cohomology of `K + ceil(H)` vanishes, verified in exact arithmetic and
//! cross-checked through Serre duality.
//!
//! Run with `cargo run --example kawamata_viehweg`.

use toric_vanishing::catalog;
use toric_vanishing::divisor::QDivisor;
use toric_vanishing::rat::Rat;
use toric_vanishing::suites;
use toric_vanishing::Result;

fn main() -> Result<()> {
    // The classical test case: on P(1,1,2) the half-divisor H = (1/2) D_2
    // is ample but not integral; its round-up enters the adjoint bundle.
    let fan = catalog::catalog_fan("P(1,1,2)")?;
    let h = QDivisor::new(
        &fan,
        vec![Rat::from_integer(0.into()), Rat::from_integer(0.into()), Rat::new(1.into(), 2.into())],
    )?;
    println!("H = (1/2) D_2 on P(1,1,2); K + ceil(H) has coefficients:");
    let adjoint = QDivisor::canonical(&fan).add(&h.round_up());
    let cs: Vec<String> = adjoint.coeffs().iter().map(|c| c.to_string()).collect();
    println!("  [{}]\n", cs.join(", "));

    for p in [2u64, 3, 5, 7] {
        let report = suites::check_kv(&fan, &h, p)?;
        print!("{}", report.render_text());
        println!();
    }

    println!("the conclusion is characteristic-free here: the same degrees are");
    println!("checked at every prime, and the table never moves.\n");

    // A fractional divisor on a smooth surface, with all four coefficients
    // engaged.
    let f3 = catalog::catalog_fan("F3")?;
    let h2 = QDivisor::new(
        &f3,
        vec![
            Rat::new(1.into(), 3.into()),
            Rat::new(1.into(), 2.into()),
            Rat::new(4.into(), 3.into()),
            Rat::new(7.into(), 2.into()),
        ],
    )?;
    println!("a fractional ample divisor on the Hirzebruch surface F_3:");
    println!("  ample: {}", h2.is_ample()?);
    let report = suites::check_kv(&f3, &h2, 3)?;
    print!("{}", report.render_text());

    println!("\nnon-ample input is refused rather than reported vacuously:");
    match suites::check_kv(&f3, &QDivisor::zero(&f3), 3) {
        Ok(_) => println!("  unexpected acceptance"),
        Err(e) => println!("  H = 0 -> {e}"),
    }
    Ok(())
}
