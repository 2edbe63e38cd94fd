//! M-graded sheaf cohomology of line bundles on complete simplicial toric
//! varieties.
//!
//! The graded piece of `H^i(X, O(D))` in degree `m` is the reduced
//! cohomology, one dimension lower, of the simplicial complex spanned by the
//! rays on which `m` violates the divisor inequality.  That complex only
//! depends on the *set* of violated rays, so a table over all degrees is
//! assembled by counting lattice points in finitely many polyhedral regions,
//! one per subset of rays with nonzero reduced cohomology.  A literal
//! degree-by-degree scan over an enlarged box is kept alongside as an
//! independent cross-check.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::divisor::QDivisor;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{scan_box, LatticeVec, RationalPolyhedron};
use crate::rat::{self, Rat};

/// Upper bound on ray count: the engine precomputes data for every subset of
/// rays.
const MAX_RAYS: usize = 14;

/// Graded cohomology engine for one fan and one coefficient prime.
pub struct CohomologyEngine<'f> {
    fan: &'f Fan,
    p: u64,
    /// `lut[mask]` = sheaf-cohomology dimensions contributed by a degree
    /// whose violated-ray set is `mask`: entry `i` feeds `H^i`.
    lut: Vec<Vec<usize>>,
}

/// A full cohomology table: total dimensions and the nonzero graded pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    /// `h[i] = dim H^i(X, O(D))`, for `i = 0..=rank`.
    pub h: Vec<usize>,
    /// Degrees with at least one nonzero graded piece, with their per-level
    /// dimensions.
    pub by_degree: BTreeMap<LatticeVec, Vec<usize>>,
}

impl CohomologyTable {
    pub fn euler_characteristic(&self) -> i64 {
        self.h
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    pub fn total_dimension(&self) -> usize {
        self.h.iter().sum()
    }

    /// True when all cohomology above level zero vanishes.
    pub fn higher_vanishing(&self) -> bool {
        self.h[1..].iter().all(|&d| d == 0)
    }
}

impl<'f> CohomologyEngine<'f> {
    /// Builds the engine; the fan must be complete and simplicial and `p`
    /// prime.
    pub fn new(fan: &'f Fan, p: u64) -> Result<CohomologyEngine<'f>> {
        if !crate::witt::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if !fan.is_complete()? {
            return Err(Error::Hypothesis(
                "graded cohomology tables require a complete fan".into(),
            ));
        }
        if !fan.is_simplicial() {
            return Err(Error::Hypothesis(
                "graded cohomology tables require a simplicial fan".into(),
            ));
        }
        let r = fan.n_rays();
        if r > MAX_RAYS {
            return Err(Error::Unsupported(format!(
                "fan has {r} rays; subset tables are limited to {MAX_RAYS}"
            )));
        }
        let mut lut = Vec::with_capacity(1 << r);
        for mask in 0u32..(1 << r) {
            let vset: Vec<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
            lut.push(reduced_complex_dims(fan, &vset, p));
        }
        Ok(CohomologyEngine { fan, p, lut })
    }

    pub fn fan(&self) -> &'f Fan {
        self.fan
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// The set of rays a degree violates, as a bitmask.
    fn violated_mask(&self, d: &QDivisor, m: &LatticeVec) -> u32 {
        let mut mask = 0u32;
        for (i, v) in self.fan.rays().iter().enumerate() {
            let lhs = Rat::from_integer(BigInt::from(m.dot(v)));
            if lhs < -d.coeff(i) {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Full cohomology table of `O(D)` for an integral divisor `D`, via the
    /// subset partition of the degree lattice.
    pub fn table(&self, d: &QDivisor) -> Result<CohomologyTable> {
        self.check_divisor(d)?;
        let n = self.fan.rank();
        let r = self.fan.n_rays();
        let mut h = vec![0usize; n + 1];
        let mut by_degree = BTreeMap::new();
        for mask in 0u32..(1 << r) {
            let dims = &self.lut[mask as usize];
            if dims.iter().all(|&x| x == 0) {
                continue;
            }
            let region = self.subset_region(d, mask)?;
            if !region.is_bounded()? {
                return Err(Error::Internal(format!(
                    "cohomology region for ray subset {mask:#b} is unbounded on a complete fan"
                )));
            }
            for m in region.lattice_points()? {
                for i in 0..=n {
                    h[i] += dims[i];
                }
                by_degree.insert(m, dims.clone());
            }
        }
        Ok(CohomologyTable { h, by_degree })
    }

    /// Dimensions `h^0..h^max_level` only.  Ray subsets whose contributions
    /// all sit above `max_level` are skipped, which avoids enumerating their
    /// (possibly enormous) degree regions; in particular the all-rays subset
    /// is skipped whenever `max_level` is below the fan's rank.
    pub fn table_restricted(&self, d: &QDivisor, max_level: usize) -> Result<Vec<usize>> {
        self.check_divisor(d)?;
        let n = self.fan.rank();
        let top = max_level.min(n);
        let r = self.fan.n_rays();
        let mut h = vec![0usize; top + 1];
        for mask in 0u32..(1 << r) {
            let dims = &self.lut[mask as usize];
            if dims[..=top].iter().all(|&x| x == 0) {
                continue;
            }
            let region = self.subset_region(d, mask)?;
            if !region.is_bounded()? {
                return Err(Error::Internal(format!(
                    "cohomology region for ray subset {mask:#b} is unbounded on a complete fan"
                )));
            }
            let count = region.lattice_points()?.len();
            for i in 0..=top {
                h[i] += count * dims[i];
            }
        }
        Ok(h)
    }

    /// The polyhedron of degrees whose violated-ray set is exactly `mask`:
    /// `<m, v_rho> <= -a_rho - 1` inside the mask, `>= -a_rho` outside.
    fn subset_region(&self, d: &QDivisor, mask: u32) -> Result<RationalPolyhedron> {
        let mut constraints = Vec::new();
        for (i, v) in self.fan.rays().iter().enumerate() {
            if mask >> i & 1 == 1 {
                constraints.push((v.neg(), d.coeff(i) + rat::rat_int(1)));
            } else {
                constraints.push((v.clone(), -d.coeff(i)));
            }
        }
        RationalPolyhedron::new(self.fan.rank(), constraints)
    }

    /// Independent slow path: scans every degree of a bounding box
    /// (enlarged `margin_factor` times beyond the certified bounds) and sums
    /// graded pieces one degree at a time.
    pub fn table_by_scan(&self, d: &QDivisor, margin_factor: i64) -> Result<CohomologyTable> {
        self.check_divisor(d)?;
        let n = self.fan.rank();
        let (mut lo, mut hi) = self.degree_bounds(d)?;
        if margin_factor > 1 {
            for i in 0..n {
                let w = hi[i] - lo[i] + 1;
                lo[i] -= (margin_factor - 1) * w;
                hi[i] += (margin_factor - 1) * w;
            }
        }
        let mut h = vec![0usize; n + 1];
        let mut by_degree = BTreeMap::new();
        let mut out_of_certified_bounds: Option<LatticeVec> = None;
        let (clo, chi) = self.degree_bounds(d)?;
        scan_box(&lo, &hi, |pt| {
            let m = LatticeVec(pt.to_vec());
            let mask = self.violated_mask(d, &m);
            let dims = &self.lut[mask as usize];
            if dims.iter().all(|&x| x == 0) {
                return;
            }
            for i in 0..=n {
                h[i] += dims[i];
            }
            if (0..n).any(|i| pt[i] < clo[i] || pt[i] > chi[i]) {
                out_of_certified_bounds.get_or_insert(m.clone());
            }
            by_degree.insert(m, dims.clone());
        });
        if let Some(m) = out_of_certified_bounds {
            return Err(Error::Internal(format!(
                "degree {m} carries cohomology outside the certified bounds"
            )));
        }
        Ok(CohomologyTable { h, by_degree })
    }

    /// A box certified to contain every degree with nonzero cohomology: the
    /// bounding box of all vertices of all subset regions, plus margin one.
    fn degree_bounds(&self, d: &QDivisor) -> Result<(Vec<i64>, Vec<i64>)> {
        let n = self.fan.rank();
        let r = self.fan.n_rays();
        let mut lo = vec![0i64; n];
        let mut hi = vec![0i64; n];
        let mut seen_any = false;
        // Region vertices solve n tight constraints, each at one of the two
        // offsets -a_rho or -a_rho - 1; enumerate all of them.
        for subset in (0..r).combinations(n) {
            let rows: Vec<Vec<i64>> =
                subset.iter().map(|&i| self.fan.rays()[i].0.clone()).collect();
            if crate::linalg::integer_rank(&rows) != n {
                continue;
            }
            for offsets in 0u32..(1 << n) {
                let rhs: Vec<Rat> = subset
                    .iter()
                    .enumerate()
                    .map(|(k, &i)| {
                        let shift =
                            if offsets >> k & 1 == 1 { rat::rat_int(-1) } else { Rat::from_integer(BigInt::from(0)) };
                        -d.coeff(i) + shift
                    })
                    .collect();
                let sol = crate::linalg::solve_square(&rows, &rhs)?;
                for i in 0..n {
                    let f = rat::floor_int(&sol[i]).to_i64().ok_or_else(|| {
                        Error::Internal("degree bound overflowed i64".into())
                    })?;
                    let c = rat::ceil_int(&sol[i]).to_i64().ok_or_else(|| {
                        Error::Internal("degree bound overflowed i64".into())
                    })?;
                    if !seen_any {
                        lo[i] = f;
                        hi[i] = c;
                    } else {
                        lo[i] = lo[i].min(f);
                        hi[i] = hi[i].max(c);
                    }
                }
                seen_any = true;
            }
        }
        if !seen_any {
            return Err(Error::Internal(
                "no full-rank ray subset found on a complete fan".into(),
            ));
        }
        for i in 0..n {
            lo[i] -= 1;
            hi[i] += 1;
        }
        Ok((lo, hi))
    }

    fn check_divisor(&self, d: &QDivisor) -> Result<()> {
        if !std::ptr::eq(d.fan(), self.fan) {
            return Err(Error::InvalidInput(
                "divisor and cohomology engine use different fans".into(),
            ));
        }
        if !d.is_integral() {
            return Err(Error::InvalidInput(
                "cohomology tables need an integral divisor; round explicitly first".into(),
            ));
        }
        Ok(())
    }
}

/// Dimensions of the reduced cochain cohomology, shifted so that entry `i`
/// is the contribution to sheaf `H^i`: entry `i` is `dim H~^{i-1}` of the
/// simplicial complex on `vset` whose faces are the subsets lying in a
/// common cone of the fan.
fn reduced_complex_dims(fan: &Fan, vset: &[usize], p: u64) -> Vec<usize> {
    let n = fan.rank();
    // faces[c] = faces with exactly c vertices; the empty face is always
    // present (level 0).
    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n + 1];
    faces[0].push(Vec::new());
    for c in 1..=n.min(vset.len()) {
        for s in vset.iter().copied().combinations(c) {
            if fan.indices_in_common_cone(&s) {
                faces[c].push(s);
            }
        }
    }
    // Coboundary from (c-1)-vertex faces to c-vertex faces, entries in F_p.
    let mut ranks = vec![0usize; n + 2];
    for c in 1..=n {
        if faces[c].is_empty() || faces[c - 1].is_empty() {
            ranks[c] = 0;
            continue;
        }
        let col_index: BTreeMap<&[usize], usize> = faces[c - 1]
            .iter()
            .enumerate()
            .map(|(j, f)| (f.as_slice(), j))
            .collect();
        let mut mat = vec![vec![0u64; faces[c - 1].len()]; faces[c].len()];
        for (row, f) in faces[c].iter().enumerate() {
            for omit in 0..c {
                let sub: Vec<usize> = f
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != omit)
                    .map(|(_, &x)| x)
                    .collect();
                if let Some(&col) = col_index.get(sub.as_slice()) {
                    mat[row][col] = if omit % 2 == 0 { 1 } else { p - 1 };
                }
            }
        }
        ranks[c] = crate::linalg::fp_rank(&mat, p);
    }
    (0..=n)
        .map(|c| faces[c].len().saturating_sub(ranks[c]).saturating_sub(ranks[c + 1]))
        .collect()
}

/// Returns a human-readable witness if Serre duality
/// `h^i(D) = h^{n-i}(K - D)` fails between the two tables, `None` when it
/// holds.  A violation always indicates a bug in the table computation.
pub fn serre_duality_gap(
    engine: &CohomologyEngine,
    d: &QDivisor,
) -> Result<Option<String>> {
    let n = engine.fan().rank();
    let t = engine.table(d)?;
    let dual = QDivisor::canonical(engine.fan()).sub(d);
    let td = engine.table(&dual)?;
    for i in 0..=n {
        if t.h[i] != td.h[n - i] {
            return Ok(Some(format!(
                "h^{i}(D) = {} but h^{}(K - D) = {}",
                t.h[i],
                n - i,
                td.h[n - i]
            )));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rat::rat;

    fn v(coords: &[i64]) -> LatticeVec {
        LatticeVec(coords.to_vec())
    }

    fn binom(n: i64, k: i64) -> usize {
        if k < 0 || n < 0 || k > n {
            return 0;
        }
        let mut acc: i128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as i128 / (i + 1) as i128;
        }
        acc as usize
    }

    /// Closed-form table for projective n-space: `O(k)` has sections in
    /// degree zero cohomology for `k >= 0` and everything else concentrated
    /// at the top.
    fn pn_expected(n: usize, k: i64) -> Vec<usize> {
        let mut h = vec![0usize; n + 1];
        h[0] = binom(k + n as i64, n as i64);
        h[n] = binom(-k - 1, n as i64);
        h
    }

    #[test]
    fn line_bundles_on_projective_spaces_match_closed_forms() {
        for n in 1..=3usize {
            let fan = catalog::projective_space(n).unwrap();
            let engine = CohomologyEngine::new(&fan, 5).unwrap();
            for k in -6..=6i64 {
                let mut coeffs = vec![0i64; n + 1];
                coeffs[n] = k;
                let d = QDivisor::from_integers(&fan, &coeffs).unwrap();
                let t = engine.table(&d).unwrap();
                assert_eq!(t.h, pn_expected(n, k), "P^{n}, O({k})");
                // Degree-zero piece agrees with the lattice-point count.
                assert_eq!(t.h[0], d.h0().unwrap(), "P^{n}, O({k}) sections");
            }
        }
    }

    #[test]
    fn canonical_bundle_of_the_plane_has_a_single_interior_degree() {
        let fan = catalog::projective_space(2).unwrap();
        let engine = CohomologyEngine::new(&fan, 3).unwrap();
        let k = QDivisor::canonical(&fan);
        let t = engine.table(&k).unwrap();
        assert_eq!(t.h, vec![0, 0, 1]);
        let mut expect = BTreeMap::new();
        expect.insert(v(&[0, 0]), vec![0, 0, 1]);
        assert_eq!(t.by_degree, expect);
    }

    #[test]
    fn kuenneth_on_the_product_of_two_lines() {
        let p1 = catalog::projective_space(1).unwrap();
        let sq = catalog::product(&p1, &p1).unwrap();
        let engine = CohomologyEngine::new(&sq, 5).unwrap();
        let line = |k: i64| -> (usize, usize) {
            ((k + 1).max(0) as usize, (-k - 1).max(0) as usize)
        };
        for a in -3..=2i64 {
            for b in -3..=2i64 {
                let d = QDivisor::from_integers(&sq, &[0, a, 0, b]).unwrap();
                let t = engine.table(&d).unwrap();
                let (h0a, h1a) = line(a);
                let (h0b, h1b) = line(b);
                let expect = vec![
                    h0a * h0b,
                    h0a * h1b + h1a * h0b,
                    h1a * h1b,
                ];
                assert_eq!(t.h, expect, "O({a},{b})");
            }
        }
    }

    #[test]
    fn serre_duality_across_the_catalog() {
        for (name, fan) in catalog::acceptance_catalog() {
            if fan.rank() > 2 && name != "P3" {
                continue;
            }
            let engine = CohomologyEngine::new(&fan, 3).unwrap();
            // A deterministic little batch of integral divisors.
            let patterns: Vec<Vec<i64>> = vec![
                vec![1; fan.n_rays()],
                (0..fan.n_rays() as i64).map(|i| i - 2).collect(),
                (0..fan.n_rays() as i64).map(|i| (i * i) % 5 - 1).collect(),
            ];
            for coeffs in patterns {
                let d = QDivisor::from_integers(&fan, &coeffs).unwrap();
                let gap = serre_duality_gap(&engine, &d).unwrap();
                assert_eq!(gap, None, "{name} with {d}");
            }
        }
    }

    #[test]
    fn scan_path_agrees_with_region_path() {
        let fan = catalog::hirzebruch(2).unwrap();
        let engine = CohomologyEngine::new(&fan, 5).unwrap();
        for coeffs in [[2, 1, 0, 1], [0, 0, 0, 0], [-1, 2, -1, 3], [-2, -1, -2, -1]] {
            let d = QDivisor::from_integers(&fan, &coeffs).unwrap();
            let fast = engine.table(&d).unwrap();
            let slow = engine.table_by_scan(&d, 1).unwrap();
            assert_eq!(fast, slow);
            // Tripling the scan box finds nothing new.
            let wide = engine.table_by_scan(&d, 3).unwrap();
            assert_eq!(fast, wide);
        }
    }

    #[test]
    fn weighted_plane_tables() {
        let fan = catalog::weighted_projective(&[1, 1, 2]).unwrap();
        let engine = CohomologyEngine::new(&fan, 3).unwrap();
        // O(D) for the index-two ray divisor: sections count lattice points
        // of a half-integral triangle.
        let d = QDivisor::from_integers(&fan, &[0, 0, 1]).unwrap();
        let t = engine.table(&d).unwrap();
        assert_eq!(t.h[0], d.h0().unwrap());
        assert!(t.higher_vanishing(), "ample integral divisor on a surface");
        // Serre duality with the canonical divisor.
        assert_eq!(serre_duality_gap(&engine, &d).unwrap(), None);
    }

    #[test]
    fn nef_fiber_class_on_a_ruled_surface() {
        let fan = catalog::hirzebruch(1).unwrap();
        let engine = CohomologyEngine::new(&fan, 3).unwrap();
        let fiber = QDivisor::from_integers(&fan, &[1, 0, 0, 0]).unwrap();
        let t = engine.table(&fiber).unwrap();
        assert_eq!(t.h, vec![2, 0, 0]);
    }

    #[test]
    fn engine_rejects_bad_inputs() {
        let fan = catalog::projective_space(2).unwrap();
        assert!(matches!(CohomologyEngine::new(&fan, 6), Err(Error::InvalidInput(_))));
        let quad = Fan::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1])],
            vec![vec![0, 1]],
        )
        .unwrap();
        assert!(matches!(CohomologyEngine::new(&quad, 3), Err(Error::Hypothesis(_))));
        // Complete but non-simplicial: the fan over the cube's faces.
        let cube = Fan::new(
            3,
            vec![
                v(&[1, 1, 1]),
                v(&[1, 1, -1]),
                v(&[1, -1, 1]),
                v(&[1, -1, -1]),
                v(&[-1, 1, 1]),
                v(&[-1, 1, -1]),
                v(&[-1, -1, 1]),
                v(&[-1, -1, -1]),
            ],
            vec![
                vec![0, 1, 2, 3],
                vec![4, 5, 6, 7],
                vec![0, 1, 4, 5],
                vec![2, 3, 6, 7],
                vec![0, 2, 4, 6],
                vec![1, 3, 5, 7],
            ],
        )
        .unwrap();
        assert!(cube.is_complete().unwrap());
        assert!(!cube.is_simplicial());
        assert!(matches!(CohomologyEngine::new(&cube, 3), Err(Error::Hypothesis(_))));
        // Fractional divisors are refused.
        let engine = CohomologyEngine::new(&fan, 3).unwrap();
        let frac = QDivisor::new(&fan, vec![rat(1, 2), rat(0, 1), rat(0, 1)]).unwrap();
        assert!(matches!(engine.table(&frac), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn euler_characteristic_is_additive_on_twists() {
        // chi(O(k)) on P^2 equals the Riemann-Roch polynomial
        // (k+1)(k+2)/2 for every integer k.
        let fan = catalog::projective_space(2).unwrap();
        let engine = CohomologyEngine::new(&fan, 3).unwrap();
        for k in -5..=5i64 {
            let d = QDivisor::from_integers(&fan, &[0, 0, k]).unwrap();
            let chi = engine.table(&d).unwrap().euler_characteristic();
            assert_eq!(chi, (k + 1) * (k + 2) / 2, "chi(O({k}))");
        }
    }

    #[test]
    fn restricted_table_matches_truncation_of_full_table() {
        for (_, fan) in catalog::acceptance_catalog() {
            let engine = CohomologyEngine::new(&fan, 2).unwrap();
            let n = fan.rank();
            let d = QDivisor::from_integers(
                &fan,
                &(0..fan.n_rays()).map(|i| (i as i64 % 5) - 2).collect::<Vec<_>>(),
            )
            .unwrap();
            let full = engine.table(&d).unwrap();
            for top in 0..=n {
                let restricted = engine.table_restricted(&d, top).unwrap();
                assert_eq!(restricted, full.h[..=top], "truncation at {top}");
            }
        }
    }

    #[test]
    fn restricted_table_handles_large_negative_twists_quickly() {
        // Degrees below the top level of a very negative multiple of an
        // ample divisor: the all-rays region is huge, every other region is
        // empty, and the restricted query must notice that without
        // enumerating anything.
        let fan = catalog::projective_space(2).unwrap();
        let engine = CohomologyEngine::new(&fan, 5).unwrap();
        let d = QDivisor::from_integers(&fan, &[-200, -170, -130]).unwrap();
        assert_eq!(engine.table_restricted(&d, 1).unwrap(), vec![0, 0]);
    }
}
