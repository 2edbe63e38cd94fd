//! Affine charts of a toric variety and the Hilbert bases of their dual
//! cones — the minimal monoid generators of the coordinate rings.
//!
//! Run with `cargo run --example hilbert_basis`.

use toric_vanishing::catalog;
use toric_vanishing::chart::Chart;
use toric_vanishing::lattice::{Cone, LatticeVec};
use toric_vanishing::Result;

fn main() -> Result<()> {
    // A smooth cone: the dual basis generates, nothing more is needed.
    let smooth = Cone::from_rays(2, vec![LatticeVec::new(vec![1, 0]), LatticeVec::new(vec![0, 1])])?;
    println!("smooth cone spanned by (1,0), (0,1):");
    for u in smooth.dual()?.hilbert_basis()? {
        println!("  generator {u}");
    }

    // The quadric cone: three generators with one relation a*c = b^2.
    let singular =
        Cone::from_rays(2, vec![LatticeVec::new(vec![1, 0]), LatticeVec::new(vec![1, 2])])?;
    println!("\nsingular cone spanned by (1,0), (1,2) — the A_1 surface singularity:");
    let gens = singular.dual()?.hilbert_basis()?;
    for u in &gens {
        println!("  generator {u}");
    }
    let (a, b, c) = (&gens[0], &gens[1], &gens[2]);
    assert_eq!(a.add(c), b.add(b));
    println!("  relation: {a} + {c} = 2 * {b}  (so a*c = b^2 in the chart algebra)");

    println!("\nmembership in the dual cone is a finite set of inequalities:");
    let dual = singular.dual()?;
    for probe in [vec![1, -1], vec![0, 1], vec![2, -1], vec![-1, 0]] {
        let u = LatticeVec::new(probe);
        println!("  {u} in dual cone: {}", dual.contains(&u)?);
    }

    // Every maximal cone of a catalog fan gives a chart whose monoid basis
    // is computed the same way.
    println!("\ncharts of the weighted projective plane P(1,1,3):");
    let fan = catalog::catalog_fan("P(1,1,3)")?;
    for i in 0..fan.n_max_cones() {
        let chart = Chart::new(&fan, i, 2)?;
        let gens: Vec<String> =
            chart.semigroup_generators().iter().map(|u| u.to_string()).collect();
        println!("  chart {i}: {} generators: {}", gens.len(), gens.join(", "));
    }
    println!("\nthe 4-generator chart is the 1/3(1,1) singularity; its algebra");
    println!("needs a degree-3 Veronese-style basis, not just a coordinate pair.");
    Ok(())
}
