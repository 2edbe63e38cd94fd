//! Length-two Witt vector arithmetic and its correspondence with the
//! integers modulo `p^2`.
//!
//! Run with `cargo run --example witt_ring`.

use toric_vanishing::witt::{teichmuller, WittElem};
use toric_vanishing::Result;

fn main() -> Result<()> {
    let p = 3;
    println!("arithmetic in W_2(F_{p}) — pairs (a0, a1) with a carry in the sum\n");

    let a = WittElem::new(p, 2, 1)?;
    let b = WittElem::new(p, 2, 2)?;
    let sum = a.add(&b)?;
    let prod = a.mul(&b)?;
    println!("  a = {:?}", a.components());
    println!("  b = {:?}", b.components());
    println!("  a + b = {:?}   (the first components alone would give 2 + 2 = 1 with a carry)", sum.components());
    println!("  a * b = {:?}", prod.components());
    println!("  F(a)  = {:?}   (componentwise p-th powers)", a.frobenius().components());

    println!("\ncorrespondence with Z/{}:", p * p);
    for x in 0..p * p {
        let w = WittElem::from_zp2(p, x)?;
        print!("  {x} <-> {:?}", w.components());
        assert_eq!(w.to_zp2(), x);
        if x % 3 == 2 {
            println!();
        }
    }
    println!("\nround trips confirmed for all {} residues", p * p);

    println!("\nmultiplicative (Teichmuller) representatives mod {}:", p * p);
    for a0 in 0..p {
        println!("  [{a0}] = {}", teichmuller(p, a0));
    }

    // The additive correspondence makes the carry visible: the sum of two
    // representatives is usually not a representative.
    let t1 = WittElem::from_zp2(p, teichmuller(p, 1))?;
    let s = t1.add(&t1)?;
    println!(
        "\n[1] + [1] = {:?} -> {} mod {}, while [2] = {}: the carry shows up",
        s.components(),
        s.to_zp2(),
        p * p,
        teichmuller(p, 2)
    );
    Ok(())
}
