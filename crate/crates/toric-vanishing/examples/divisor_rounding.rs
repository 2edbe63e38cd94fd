//! Q-divisors on toric varieties: exact rational coefficients, the
//! round-up/round-down/fractional-part calculus, Cartier data, and
//! ampleness certificates.
//!
//! Run with `cargo run --example divisor_rounding`.

use toric_vanishing::catalog;
use toric_vanishing::divisor::QDivisor;
use toric_vanishing::rat::Rat;
use toric_vanishing::Result;

fn show(label: &str, d: &QDivisor) {
    let cs: Vec<String> = d.coeffs().iter().map(|c| c.to_string()).collect();
    println!("  {label:<12} [{}]", cs.join(", "));
}

fn main() -> Result<()> {
    let fan = catalog::catalog_fan("P(1,1,2)")?;
    let d = QDivisor::new(
        &fan,
        vec![Rat::new(3.into(), 2.into()), Rat::new((-5).into(), 3.into()), Rat::from_integer(2.into())],
    )?;

    println!("a Q-divisor on P(1,1,2) and its rounding calculus:");
    show("D", &d);
    let up = d.round_up();
    let down = d.round_down();
    let frac = d.frac();
    show("ceil(D)", &up);
    show("floor(D)", &down);
    show("{D}", &frac);
    let reassembled = down.add(&frac);
    assert_eq!(reassembled.coeffs(), d.coeffs());
    println!("  floor(D) + {{D}} recovers D exactly");

    println!("\nthe round-up defect used in characteristic-p descent:");
    for p in [2u64, 3, 5] {
        let defect = d.frobenius_defect(p);
        show(&format!("p = {p}"), &defect);
    }
    println!("  (each entry is p * ceil(D) - ceil(p * D), always in 0..p; it is 0");
    println!("   exactly where multiplying by p clears the denominator)");

    println!("\nCartier data of the ray divisor D_2 on P(1,1,2):");
    let d2 = QDivisor::from_integers(&fan, &[0, 0, 1])?;
    for (i, u) in d2.cartier_data()?.iter().enumerate() {
        let cs: Vec<String> = u.iter().map(|c| c.to_string()).collect();
        println!("  cone {i}: u = ({})", cs.join(", "));
    }
    println!("  Cartier index of D_2: {}", d2.cartier_index()?);
    println!("  Cartier index of -K:  {}", QDivisor::canonical(&fan).neg().cartier_index()?);

    println!("\nampleness and nefness on the Hirzebruch surface F_2:");
    let f2 = catalog::catalog_fan("F2")?;
    for coeffs in [[0, 0, 1, 2], [0, 0, 0, 1], [0, 0, -1, 1]] {
        let e = QDivisor::from_integers(&f2, &coeffs)?;
        println!("  coeffs {coeffs:?}: ample = {}, nef = {}", e.is_ample()?, e.is_nef()?);
    }
    Ok(())
}
