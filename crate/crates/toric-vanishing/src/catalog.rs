//! Built-in fans: projective spaces, Hirzebruch surfaces, weighted
//! projective planes, products, and blow-up towers.
//!
//! Every constructor returns a fully validated [`Fan`]; the named catalog at
//! the bottom is the fixed list of varieties the verification suites run
//! over by default.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{primitive, LatticeVec};
use crate::linalg;

/// The fan of projective `n`-space: rays `e_1, ..., e_n, -(e_1 + ... + e_n)`,
/// maximal cones all `n`-subsets.
pub fn projective_space(n: usize) -> Result<Fan> {
    if n == 0 {
        return Err(Error::InvalidInput("projective space needs dimension >= 1".into()));
    }
    let mut rays: Vec<LatticeVec> = (0..n).map(|i| LatticeVec::basis(n, i)).collect();
    rays.push(LatticeVec(vec![-1; n]));
    let max_cones: Vec<Vec<usize>> = (0..=n).combinations(n).collect();
    Fan::new(n, rays, max_cones)
}

/// The fan of the Hirzebruch surface with self-intersection parameter
/// `a >= 0`: rays `(1,0), (0,1), (-1,a), (0,-1)` with the four adjacent
/// cones.
pub fn hirzebruch(a: i64) -> Result<Fan> {
    if a < 0 {
        return Err(Error::InvalidInput("Hirzebruch parameter must be >= 0".into()));
    }
    let rays = vec![
        LatticeVec(vec![1, 0]),
        LatticeVec(vec![0, 1]),
        LatticeVec(vec![-1, a]),
        LatticeVec(vec![0, -1]),
    ];
    let max_cones = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]];
    Fan::new(2, rays, max_cones)
}

/// The fan of weighted projective space `P(w_0, ..., w_n)`, built as the
/// quotient of `Z^{n+1}` by the weight vector: the rays are the primitive
/// images of the coordinate vectors, listed in decreasing lexicographic
/// order, and the maximal cones are all `n`-subsets.
pub fn weighted_projective(weights: &[i64]) -> Result<Fan> {
    let m = weights.len();
    if m < 2 {
        return Err(Error::InvalidInput("need at least two weights".into()));
    }
    if weights.iter().any(|&w| w <= 0) {
        return Err(Error::InvalidInput("weights must be positive".into()));
    }
    let g = weights.iter().fold(0i64, |acc, &w| num_integer::gcd(acc, w));
    if g != 1 {
        return Err(Error::InvalidInput(format!(
            "weights must have gcd 1, got gcd {g}"
        )));
    }
    let rank = m - 1;
    // Change basis so the weight vector becomes a coordinate direction; the
    // quotient lattice is then read off the remaining rows.
    let col: Vec<Vec<BigInt>> = weights.iter().map(|&w| vec![BigInt::from(w)]).collect();
    let snf = linalg::smith_normal_form(&col);
    let mut u = snf.u.clone();
    // Make the transformed weight vector +e_1 rather than -e_1.
    let first: BigInt = (0..m).map(|j| &u[0][j] * BigInt::from(weights[j])).sum();
    if first.is_negative() {
        for x in &mut u[0] {
            *x = -&*x;
        }
    }
    let mut rays: Vec<LatticeVec> = Vec::new();
    for j in 0..m {
        let img: Vec<i64> = (1..m)
            .map(|i| u[i][j].to_i64().expect("quotient coordinate fits i64"))
            .collect();
        rays.push(primitive(&LatticeVec(img))?);
    }
    rays.sort_by(|a, b| b.cmp(a));
    let max_cones: Vec<Vec<usize>> = (0..m).combinations(rank).collect();
    Fan::new(rank, rays, max_cones)
}

/// The product fan on the direct sum of the two lattices.
pub fn product(a: &Fan, b: &Fan) -> Result<Fan> {
    let rank = a.rank() + b.rank();
    if rank > 4 {
        return Err(Error::Unsupported(format!(
            "product fan would have rank {rank}, beyond the supported 4"
        )));
    }
    let mut rays: Vec<LatticeVec> = Vec::new();
    for r in a.rays() {
        let mut v = r.0.clone();
        v.extend(std::iter::repeat(0).take(b.rank()));
        rays.push(LatticeVec(v));
    }
    for r in b.rays() {
        let mut v = vec![0; a.rank()];
        v.extend_from_slice(&r.0);
        rays.push(LatticeVec(v));
    }
    let offset = a.n_rays();
    let mut max_cones = Vec::new();
    for ca in a.max_cones() {
        for cb in b.max_cones() {
            let mut c = ca.clone();
            c.extend(cb.iter().map(|&i| i + offset));
            max_cones.push(c);
        }
    }
    Fan::new(rank, rays, max_cones)
}

/// The fixed, deterministically ordered list of varieties the default
/// verification suites run over.
pub fn acceptance_catalog() -> Vec<(String, Fan)> {
    let p1 = projective_space(1).expect("catalog fan");
    let p2 = projective_space(2).expect("catalog fan");
    let bl1 = p2.stellar_subdivision(0).expect("catalog fan");
    let bl2 = bl1.stellar_subdivision(2).expect("catalog fan");
    vec![
        ("P1".to_string(), p1.clone()),
        ("P2".to_string(), p2),
        ("P3".to_string(), projective_space(3).expect("catalog fan")),
        ("P1xP1".to_string(), product(&p1, &p1).expect("catalog fan")),
        ("F0".to_string(), hirzebruch(0).expect("catalog fan")),
        ("F1".to_string(), hirzebruch(1).expect("catalog fan")),
        ("F2".to_string(), hirzebruch(2).expect("catalog fan")),
        ("F3".to_string(), hirzebruch(3).expect("catalog fan")),
        ("P(1,1,2)".to_string(), weighted_projective(&[1, 1, 2]).expect("catalog fan")),
        ("P(1,1,3)".to_string(), weighted_projective(&[1, 1, 3]).expect("catalog fan")),
        ("Bl1(P2)".to_string(), bl1),
        ("Bl2(P2)".to_string(), bl2),
    ]
}

/// Looks up a catalog fan by its name.
pub fn catalog_fan(name: &str) -> Result<Fan> {
    acceptance_catalog()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, f)| f)
        .ok_or_else(|| {
            let names: Vec<String> =
                acceptance_catalog().into_iter().map(|(n, _)| n).collect();
            Error::InvalidInput(format!(
                "unknown catalog fan {name:?}; available: {}",
                names.join(", ")
            ))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(coords: &[i64]) -> LatticeVec {
        LatticeVec(coords.to_vec())
    }

    #[test]
    fn projective_spaces() {
        for n in 1..=4 {
            let f = projective_space(n).unwrap();
            assert_eq!(f.rank(), n);
            assert_eq!(f.n_rays(), n + 1);
            assert_eq!(f.n_max_cones(), n + 1);
            assert!(f.is_complete().unwrap());
            assert!(f.is_smooth());
        }
        let p2 = projective_space(2).unwrap();
        assert_eq!(p2.rays(), &[v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])]);
        assert!(projective_space(0).is_err());
    }

    #[test]
    fn hirzebruch_surfaces() {
        for a in 0..=3 {
            let f = hirzebruch(a).unwrap();
            assert!(f.is_complete().unwrap());
            assert!(f.is_smooth());
            assert_eq!(f.n_rays(), 4);
        }
        assert!(hirzebruch(-1).is_err());
    }

    #[test]
    fn weighted_projective_frozen_rays() {
        let f = weighted_projective(&[1, 1, 2]).unwrap();
        assert_eq!(f.rays(), &[v(&[1, 0]), v(&[0, 1]), v(&[-1, -2])]);
        assert!(f.is_complete().unwrap());
        assert!(f.is_simplicial());
        assert!(!f.is_smooth());

        let f = weighted_projective(&[1, 1, 3]).unwrap();
        assert_eq!(f.rays(), &[v(&[1, 0]), v(&[0, 1]), v(&[-1, -3])]);
        assert!(f.is_complete().unwrap());
        assert!(!f.is_smooth());
    }

    #[test]
    fn unit_weights_give_ordinary_projective_space() {
        assert_eq!(weighted_projective(&[1, 1, 1]).unwrap(), projective_space(2).unwrap());
        assert_eq!(weighted_projective(&[1, 1]).unwrap(), projective_space(1).unwrap());
    }

    #[test]
    fn weighted_projective_rejects_bad_weights() {
        assert!(weighted_projective(&[2, 4]).is_err());
        assert!(weighted_projective(&[1, 0]).is_err());
        assert!(weighted_projective(&[3]).is_err());
    }

    #[test]
    fn products() {
        let p1 = projective_space(1).unwrap();
        let sq = product(&p1, &p1).unwrap();
        assert_eq!(sq.rank(), 2);
        assert_eq!(sq.n_rays(), 4);
        assert_eq!(sq.n_max_cones(), 4);
        assert!(sq.is_complete().unwrap());
        assert!(sq.is_smooth());
        let p3 = projective_space(3).unwrap();
        assert!(product(&p3, &sq).is_err());
        let cube = product(&sq, &p1).unwrap();
        assert_eq!(cube.rank(), 3);
        assert!(cube.is_complete().unwrap());
    }

    #[test]
    fn catalog_is_deterministic_complete_and_simplicial() {
        let cat = acceptance_catalog();
        assert_eq!(cat.len(), 12);
        let names: Vec<&str> = cat.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(
            names,
            [
                "P1", "P2", "P3", "P1xP1", "F0", "F1", "F2", "F3", "P(1,1,2)", "P(1,1,3)",
                "Bl1(P2)", "Bl2(P2)"
            ]
        );
        for (name, fan) in &cat {
            assert!(fan.is_complete().unwrap(), "{name} must be complete");
            assert!(fan.is_simplicial(), "{name} must be simplicial");
        }
        // Fingerprints are stable across two constructions.
        let again = acceptance_catalog();
        for ((_, a), (_, b)) in cat.iter().zip(&again) {
            assert_eq!(a.fingerprint(), b.fingerprint());
        }
        // The blow-up tower grows one ray per step.
        assert_eq!(catalog_fan("Bl1(P2)").unwrap().n_rays(), 4);
        assert_eq!(catalog_fan("Bl2(P2)").unwrap().n_rays(), 5);
        assert!(catalog_fan("nope").is_err());
    }
}
