//! Monomial Frobenius liftings on affine charts: ring elements over
//! length-two Witt vectors, the lift `chi^u -> chi^{pu}`, and the check
//! that reduction mod p turns the lift into the honest p-th power map.
//!
//! Run with `cargo run --example frobenius_lift`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toric_vanishing::catalog;
use toric_vanishing::chart::Chart;
use toric_vanishing::divisor::QDivisor;
use toric_vanishing::lattice::LatticeVec;
use toric_vanishing::witt::WittElem;
use toric_vanishing::Result;

fn show(label: &str, e: &toric_vanishing::chart::SemigroupElem) {
    let terms: Vec<String> =
        e.terms().iter().map(|(u, c)| format!("{:?}*x^{u}", c.components())).collect();
    println!("  {label} = {}", terms.join(" + "));
}

fn main() -> Result<()> {
    let p = 3;
    let fan = catalog::catalog_fan("P2")?;
    let chart = Chart::new(&fan, 0, p)?;

    println!("chart 0 of P^2 at p = {p}; coordinates x^u for u in the dual cone\n");
    let x = chart.monomial(&LatticeVec::new(vec![1, 0]), WittElem::one(p)?)?;
    let y = chart.monomial(&LatticeVec::new(vec![0, 1]), WittElem::one(p)?)?;
    let one = chart.one_elem()?;
    let f = chart.add(&chart.add(&one, &x)?, &y)?;
    show("f", &f);

    let lifted = chart.lift_frobenius(&f)?;
    show("F(f)", &lifted);
    println!("  (each exponent is multiplied by {p}; coefficients get the Witt Frobenius)");

    println!("\nreduction mod {p} of F(f) equals the cube of the reduction of f:");
    let lhs = chart.reduce(&lifted)?;
    let rhs = chart.fp_pow(&chart.reduce(&f)?, p);
    println!("  reduce(F(f)) == reduce(f)^{p}: {}", lhs == rhs);

    println!("\nthe same identity on random ring elements of a singular chart:");
    let wfan = catalog::catalog_fan("P(1,1,2)")?;
    let singular = Chart::new(&wfan, 1, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..4 {
        let g = singular.random_element(&mut rng, 9)?;
        let ok = singular.reduce(&singular.lift_frobenius(&g)?)?
            == singular.fp_pow(&singular.reduce(&g)?, p);
        println!("  trial {trial}: {} terms, identity holds: {ok}", g.terms().len());
    }

    println!("\ncompatibility with a divisor ideal (the lift must map the");
    println!("fractional ideal of -D into its p-th multiple):");
    let d = QDivisor::from_integers(&fan, &[1, 0, 0])?;
    let ideal = chart.ideal_of_minus(&d)?;
    println!("  ideal generators for D_0 on chart 0: {:?}", ideal.iter().map(|u| u.to_string()).collect::<Vec<_>>());
    println!("  monomial lift compatible: {}", chart.compatibility_check(&ideal)?);

    let skewed = |u: &LatticeVec| u.scaled(p as i64).add(&LatticeVec::new(vec![1, 0]));
    println!(
        "  a skewed lift u -> {p}u + (1,0) is rejected: compatible = {}",
        chart.compatibility_check_with(&ideal, skewed)?
    );
    Ok(())
}
