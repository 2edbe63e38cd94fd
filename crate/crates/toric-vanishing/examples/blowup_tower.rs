//! A tower of toric blow-ups via stellar subdivision: start from P^2,
//! subdivide a cone at each stage, and confirm that the verification
//! suites keep passing on every floor of the tower.
//!
//! Run with `cargo run --example blowup_tower`.

use toric_vanishing::catalog;
use toric_vanishing::divisor::QDivisor;
use toric_vanishing::fan::Fan;
use toric_vanishing::suites;
use toric_vanishing::Result;

/// An ample divisor produced by sweeping integer coefficients; on these
/// small fans the first strictly-positive certificate appears quickly.
fn find_ample(fan: &Fan) -> Result<QDivisor<'_>> {
    let r = fan.n_rays();
    for budget in 1..=4i64 {
        let mut coeffs = vec![0i64; r];
        loop {
            let d = QDivisor::from_integers(fan, &coeffs)?;
            if d.is_ample()? {
                return Ok(d);
            }
            let mut i = 0;
            while i < r {
                coeffs[i] += 1;
                if coeffs[i] <= budget {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == r {
                break;
            }
        }
    }
    unreachable!("complete smooth toric surfaces always carry an ample divisor")
}

fn main() -> Result<()> {
    let mut fan = catalog::catalog_fan("P2")?;
    println!("stellar subdivision tower over P^2 (each step blows up the");
    println!("torus-fixed point of one maximal cone):\n");

    for stage in 0..=3 {
        println!(
            "stage {stage}: {} rays, {} maximal cones, smooth = {}, complete = {}",
            fan.n_rays(),
            fan.n_max_cones(),
            fan.is_smooth(),
            fan.is_complete()?,
        );

        let ample = find_ample(&fan)?;
        let coeffs: Vec<String> = ample.coeffs().iter().map(|c| c.to_string()).collect();
        println!("  ample certificate: [{}]", coeffs.join(", "));

        let bott = suites::check_bott(&fan, &ample, 2)?;
        let hodge = suites::check_hodge(&fan, 2)?;
        println!(
            "  bott: {} ({} checks)   hodge: {} ({} checks)",
            if bott.passed() { "pass" } else { "FAIL" },
            bott.checks.len(),
            if hodge.passed() { "pass" } else { "FAIL" },
            hodge.checks.len(),
        );
        for check in &hodge.checks {
            if check.id == "e1-row" {
                println!("  {}", check.witness);
            }
        }

        if stage < 3 {
            fan = fan.stellar_subdivision(stage % fan.n_max_cones())?;
        }
        println!();
    }

    println!("each blow-up adds one ray and one cone, keeps the fan smooth and");
    println!("complete, and none of the vanishing statements degrade.");
    Ok(())
}
