//! Lattice vectors, rational polyhedral cones and bounded polyhedra.
//!
//! This is the convex-geometry kernel the rest of the crate sits on: dual
//! cones by exact facet enumeration (rank <= 4), Hilbert bases of pointed
//! cones (rank <= 3), and lattice-point enumeration in bounded rational
//! polyhedra.  All computations are exact; every search box is derived from
//! vertex or generator data, never guessed.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::Rat;

/// A point of the ambient lattice (or its dual), with exact i64 coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVec(pub Vec<i64>);

/// A point with exact rational coordinates (vertices, Cartier solutions).
pub type RationalVec = Vec<Rat>;

impl LatticeVec {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVec(coords)
    }

    pub fn zero(n: usize) -> Self {
        LatticeVec(vec![0; n])
    }

    /// Standard basis vector `e_i` in dimension `n`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        LatticeVec(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Exact pairing; panics on (desk-scale-impossible) overflow.
    pub fn dot(&self, other: &LatticeVec) -> i64 {
        assert_eq!(self.dim(), other.dim(), "pairing of mismatched dimensions");
        let s: i128 = self.0.iter().zip(&other.0).map(|(&a, &b)| a as i128 * b as i128).sum();
        i64::try_from(s).expect("pairing overflowed i64")
    }

    pub fn add(&self, other: &LatticeVec) -> LatticeVec {
        LatticeVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVec) -> LatticeVec {
        LatticeVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LatticeVec {
        LatticeVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, k: i64) -> LatticeVec {
        LatticeVec(self.0.iter().map(|a| a * k).collect())
    }

    /// Converts exact big-integer coordinates, failing on overflow.
    pub fn from_bigints(v: &[BigInt]) -> Result<LatticeVec> {
        v.iter()
            .map(|x| x.to_i64().ok_or_else(|| Error::Internal("lattice coordinate overflowed i64".into())))
            .collect::<Result<Vec<i64>>>()
            .map(LatticeVec)
    }
}

impl std::fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Divides out the (positive) gcd of the coordinates, preserving direction.
pub fn primitive(v: &LatticeVec) -> Result<LatticeVec> {
    if v.is_zero() {
        return Err(Error::InvalidInput("zero vector has no primitive representative".into()));
    }
    let g = v.0.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x.abs()));
    Ok(LatticeVec(v.0.iter().map(|&x| x / g).collect()))
}

/// A rational polyhedral cone described by generators.  Cones inside fans are
/// always strongly convex with extremal primitive rays (see
/// [`Cone::validated`]); dual cones of lower-dimensional inputs may carry
/// lineality and are only available through [`Cone::from_rays`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVec>,
}

impl Cone {
    /// Builds a fan-grade cone: rays must be primitive, nonzero, pairwise
    /// distinct, extremal, and the cone strongly convex.
    pub fn validated(rank: usize, rays: Vec<LatticeVec>) -> Result<Cone> {
        check_rank(rank)?;
        for r in &rays {
            if r.dim() != rank {
                return Err(Error::InvalidInput(format!(
                    "ray {r} has dimension {} in a rank-{rank} cone",
                    r.dim()
                )));
            }
            if r.is_zero() {
                return Err(Error::InvalidInput("cone ray must be nonzero".into()));
            }
            if primitive(r)? != *r {
                return Err(Error::InvalidInput(format!("cone ray {r} is not primitive")));
            }
        }
        for (i, r) in rays.iter().enumerate() {
            if rays[..i].contains(r) {
                return Err(Error::InvalidInput(format!("duplicate cone ray {r}")));
            }
        }
        let cone = Cone { rank, rays };
        if !cone.is_strongly_convex()? {
            return Err(Error::InvalidInput("cone is not strongly convex".into()));
        }
        for i in 0..cone.rays.len() {
            let others: Vec<LatticeVec> =
                cone.rays.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, r)| r.clone()).collect();
            let sub = Cone { rank, rays: others };
            if sub.contains(&cone.rays[i])? {
                return Err(Error::InvalidInput(format!(
                    "ray {} is not extremal",
                    cone.rays[i]
                )));
            }
        }
        Ok(cone)
    }

    /// Builds a generator description without convexity requirements; rays
    /// are primitivized and deduplicated.
    pub fn from_rays(rank: usize, rays: Vec<LatticeVec>) -> Result<Cone> {
        check_rank(rank)?;
        let mut out: Vec<LatticeVec> = Vec::new();
        for r in rays {
            if r.dim() != rank {
                return Err(Error::InvalidInput("ray dimension does not match cone rank".into()));
            }
            if r.is_zero() {
                continue;
            }
            let p = primitive(&r)?;
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(Cone { rank, rays: out })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVec] {
        &self.rays
    }

    /// Dimension of the linear span of the cone.
    pub fn dim(&self) -> usize {
        let rows: Vec<Vec<i64>> = self.rays.iter().map(|r| r.0.clone()).collect();
        linalg::integer_rank(&rows)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.rank
    }

    /// A cone is strongly convex when it contains no line; equivalently its
    /// dual spans the full ambient space.
    pub fn is_strongly_convex(&self) -> Result<bool> {
        let dual = dual_cone(self)?;
        let rows: Vec<Vec<i64>> = dual.rays.iter().map(|r| r.0.clone()).collect();
        Ok(linalg::integer_rank(&rows) == self.rank)
    }

    /// Membership in the closed cone, decided against the facet description.
    pub fn contains(&self, x: &LatticeVec) -> Result<bool> {
        let dual = dual_cone(self)?;
        Ok(dual.rays.iter().all(|w| w.dot(x) >= 0))
    }

    /// Rays sorted lexicographically (for order-insensitive comparisons).
    pub fn sorted_rays(&self) -> Vec<LatticeVec> {
        let mut r = self.rays.clone();
        r.sort();
        r
    }

    pub fn dual(&self) -> Result<Cone> {
        dual_cone(self)
    }

    pub fn hilbert_basis(&self) -> Result<Vec<LatticeVec>> {
        hilbert_basis(self)
    }
}

fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 || rank > 4 {
        return Err(Error::Unsupported(format!(
            "ambient rank {rank} outside the supported range 1..=4"
        )));
    }
    Ok(())
}

/// Computes the dual cone `{u : <u, v> >= 0 for all generators v}` by exact
/// facet enumeration.  For a full-dimensional strongly convex input the
/// result is again full-dimensional and strongly convex with extremal rays;
/// lower-dimensional inputs produce lineality, returned as opposite ray
/// pairs.
pub fn dual_cone(c: &Cone) -> Result<Cone> {
    let n = c.rank;
    check_rank(n)?;
    if c.rays.is_empty() {
        // Dual of the origin is everything.
        let mut gens = Vec::new();
        for i in 0..n {
            gens.push(LatticeVec::basis(n, i));
            gens.push(LatticeVec::basis(n, i).neg());
        }
        return Cone::from_rays(n, gens);
    }
    let a: Vec<Vec<i64>> = c.rays.iter().map(|r| r.0.clone()).collect();
    let kernel = linalg::integer_kernel(&linalg::to_bigint_matrix(&a));
    if kernel.is_empty() {
        let gens = pointed_dual_rays(n, &a)?;
        return Cone::from_rays(n, gens);
    }

    // The dual has lineality (the span of the generators is a proper
    // subspace).  Change coordinates so the lineality becomes the first
    // coordinates, solve the pointed part in the quotient, and map back.
    let ell = kernel.len();
    let kmat: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..ell).map(|j| kernel[j][i].clone()).collect())
        .collect();
    let snf = linalg::smith_normal_form(&kmat);
    // z = U u puts the lineality lattice onto the first `ell` coordinates.
    let u_inv = unimodular_inverse(&snf.u)?;
    // Generators transform contravariantly: w = (U^-1)^T v.
    let mut reduced: Vec<Vec<i64>> = Vec::new();
    for v in &c.rays {
        let mut w = vec![BigInt::zero(); n];
        for (j, wj) in w.iter_mut().enumerate() {
            for i in 0..n {
                *wj += &u_inv[i][j] * BigInt::from(v.0[i]);
            }
        }
        for wj in w.iter().take(ell) {
            debug_assert!(wj.is_zero(), "lineality coordinates must vanish on generators");
        }
        let tail: Vec<i64> = w[ell..]
            .iter()
            .map(|x| x.to_i64().expect("transformed generator fits i64"))
            .collect();
        reduced.push(tail);
    }
    let quotient_rays = if n - ell == 0 { Vec::new() } else { pointed_dual_rays(n - ell, &reduced)? };

    let mut z_gens: Vec<LatticeVec> = Vec::new();
    for i in 0..ell {
        z_gens.push(LatticeVec::basis(n, i));
        z_gens.push(LatticeVec::basis(n, i).neg());
    }
    for r in quotient_rays {
        let mut z = vec![0i64; n];
        z[ell..].copy_from_slice(&r.0);
        z_gens.push(LatticeVec(z));
    }
    // Map back: u = U^-1 z.
    let mut gens = Vec::new();
    for z in z_gens {
        let mut u = vec![BigInt::zero(); n];
        for (i, ui) in u.iter_mut().enumerate() {
            for j in 0..n {
                *ui += &u_inv[i][j] * BigInt::from(z.0[j]);
            }
        }
        gens.push(LatticeVec::from_bigints(&u)?);
    }
    Cone::from_rays(n, gens)
}

/// Extremal rays of the pointed cone `{u : A u >= 0}` (rows of `a` span rank
/// `n`): each ray is the kernel direction of `n-1` independent tight rows,
/// kept when it satisfies every inequality.
fn pointed_dual_rays(n: usize, a: &[Vec<i64>]) -> Result<Vec<LatticeVec>> {
    if n == 1 {
        let pos = a.iter().any(|r| r[0] > 0);
        let neg = a.iter().any(|r| r[0] < 0);
        return Ok(match (pos, neg) {
            (true, false) => vec![LatticeVec(vec![1])],
            (false, true) => vec![LatticeVec(vec![-1])],
            _ => Vec::new(), // mixed signs: only the origin survives
        });
    }
    let mut out: Vec<LatticeVec> = Vec::new();
    for subset in (0..a.len()).combinations(n - 1) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&i| a[i].clone()).collect();
        if linalg::integer_rank(&rows) != n - 1 {
            continue;
        }
        let ker = linalg::integer_kernel(&linalg::to_bigint_matrix(&rows));
        debug_assert_eq!(ker.len(), 1);
        let w = LatticeVec::from_bigints(&ker[0])?;
        for cand in [w.clone(), w.neg()] {
            if a.iter().all(|row| LatticeVec(row.clone()).dot(&cand) >= 0) {
                let p = primitive(&cand)?;
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Inverse of a unimodular big-integer matrix via the adjugate.
fn unimodular_inverse(u: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let n = u.len();
    let det = linalg::bigint_det(u);
    if !det.abs().is_one() {
        return Err(Error::Internal("expected a unimodular matrix".into()));
    }
    let mut inv = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| u[r][c].clone()).collect())
                .collect();
            let mut cof = linalg::bigint_det(&minor);
            if (i + j) % 2 == 1 {
                cof = -cof;
            }
            inv[i][j] = cof * &det; // det is +-1, so this divides by det
        }
    }
    Ok(inv)
}

/// Minimal generating set of the monoid `c` intersected with the lattice
/// (Hilbert basis), for pointed cones of rank <= 3.
///
/// Every irreducible element lies in the zonotope spanned by the generators,
/// so candidates are enumerated in its bounding box and reduced by an exact
/// decomposability test.
pub fn hilbert_basis(c: &Cone) -> Result<Vec<LatticeVec>> {
    let n = c.rank;
    if n > 3 {
        return Err(Error::Unsupported(format!(
            "Hilbert bases are computed at rank <= 3, got rank {n}"
        )));
    }
    if c.rays.is_empty() {
        return Ok(Vec::new());
    }
    let facets = dual_cone(c)?;
    let frows: Vec<Vec<i64>> = facets.rays.iter().map(|r| r.0.clone()).collect();
    if linalg::integer_rank(&frows) < n {
        return Err(Error::InvalidInput(
            "Hilbert basis requires a strongly convex cone".into(),
        ));
    }

    let mut lo = vec![0i64; n];
    let mut hi = vec![0i64; n];
    for g in &c.rays {
        for j in 0..n {
            lo[j] += g.0[j].min(0);
            hi[j] += g.0[j].max(0);
        }
    }

    let mut candidates: Vec<LatticeVec> = Vec::new();
    scan_box(&lo, &hi, |pt| {
        let x = LatticeVec(pt.to_vec());
        if !x.is_zero() && facets.rays.iter().all(|w| w.dot(&x) >= 0) {
            candidates.push(x);
        }
    });

    let mut basis = Vec::new();
    'next: for x in &candidates {
        // x is reducible iff the order interval {y in c : x - y in c} holds a
        // lattice point besides 0 and x.
        let mut constraints = Vec::new();
        for w in facets.rays.iter() {
            constraints.push((w.clone(), Rat::zero()));
            constraints.push((w.neg(), Rat::from_integer(BigInt::from(-w.dot(x)))));
        }
        let interval = RationalPolyhedron::new(n, constraints)?;
        for y in interval.lattice_points()? {
            if !y.is_zero() && y != *x {
                continue 'next;
            }
        }
        basis.push(x.clone());
    }
    basis.sort();
    Ok(basis)
}

/// A rational polyhedron `{u : <u, normal_i> >= bound_i}` with integer
/// normals and exact rational bounds.
#[derive(Debug, Clone)]
pub struct RationalPolyhedron {
    rank: usize,
    constraints: Vec<(LatticeVec, Rat)>,
}

impl RationalPolyhedron {
    pub fn new(rank: usize, constraints: Vec<(LatticeVec, Rat)>) -> Result<RationalPolyhedron> {
        check_rank(rank)?;
        for (normal, _) in &constraints {
            if normal.dim() != rank {
                return Err(Error::InvalidInput("constraint normal has wrong dimension".into()));
            }
            if normal.is_zero() {
                return Err(Error::InvalidInput("constraint normal must be nonzero".into()));
            }
        }
        Ok(RationalPolyhedron { rank, constraints })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn constraints(&self) -> &[(LatticeVec, Rat)] {
        &self.constraints
    }

    /// True when the recession cone `{d : <d, normal_i> >= 0}` is trivial.
    pub fn is_bounded(&self) -> Result<bool> {
        let n = self.rank;
        let a: Vec<Vec<i64>> = self.constraints.iter().map(|(v, _)| v.0.clone()).collect();
        if a.is_empty() {
            return Ok(false);
        }
        if !linalg::integer_kernel(&linalg::to_bigint_matrix(&a)).is_empty() {
            return Ok(false);
        }
        // The recession cone is pointed; it is nontrivial iff it has an
        // extremal ray.
        Ok(pointed_dual_rays(n, &a)?.is_empty())
    }

    /// Vertices: feasible solutions of full-rank square subsystems taken
    /// with equality.
    pub fn vertices(&self) -> Result<Vec<RationalVec>> {
        let n = self.rank;
        let mut verts: Vec<RationalVec> = Vec::new();
        for subset in (0..self.constraints.len()).combinations(n) {
            let rows: Vec<Vec<i64>> = subset.iter().map(|&i| self.constraints[i].0 .0.clone()).collect();
            if linalg::integer_rank(&rows) != n {
                continue;
            }
            let rhs: Vec<Rat> = subset.iter().map(|&i| self.constraints[i].1.clone()).collect();
            let v = linalg::solve_square(&rows, &rhs)?;
            if self.feasible(&v) && !verts.contains(&v) {
                verts.push(v);
            }
        }
        Ok(verts)
    }

    fn feasible(&self, u: &[Rat]) -> bool {
        self.constraints.iter().all(|(normal, bound)| {
            let lhs: Rat = normal
                .0
                .iter()
                .zip(u)
                .map(|(&a, x)| Rat::from_integer(BigInt::from(a)) * x)
                .sum();
            lhs >= *bound
        })
    }

    /// All lattice points, in lexicographic order.  Errors if the polyhedron
    /// is unbounded; returns an empty list for the empty polytope.
    pub fn lattice_points(&self) -> Result<Vec<LatticeVec>> {
        if !self.is_bounded()? {
            return Err(Error::Unbounded(
                "lattice point enumeration requires a bounded polyhedron".into(),
            ));
        }
        let verts = self.vertices()?;
        if verts.is_empty() {
            // A nonempty bounded polyhedron has a vertex, so this is empty.
            return Ok(Vec::new());
        }
        let n = self.rank;
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for v in &verts {
            for j in 0..n {
                let f = crate::rat::floor_int(&v[j]).to_i64().ok_or_else(overflow)?;
                let c = crate::rat::ceil_int(&v[j]).to_i64().ok_or_else(overflow)?;
                lo[j] = lo[j].min(f);
                hi[j] = hi[j].max(c);
            }
        }
        // Clear denominators once: den * <u, normal> >= num with den > 0.
        let scaled: Vec<(Vec<i64>, i64, i64)> = self
            .constraints
            .iter()
            .map(|(normal, bound)| {
                let den = bound.denom().to_i64().ok_or_else(overflow)?;
                let num = bound.numer().to_i64().ok_or_else(overflow)?;
                Ok((normal.0.clone(), den, num))
            })
            .collect::<Result<_>>()?;
        let mut pts = Vec::new();
        scan_box(&lo, &hi, |pt| {
            let ok = scaled.iter().all(|(normal, den, num)| {
                let dot: i64 = normal.iter().zip(pt).map(|(&a, &x)| a * x).sum();
                den * dot >= *num
            });
            if ok {
                pts.push(LatticeVec(pt.to_vec()));
            }
        });
        Ok(pts)
    }
}

fn overflow() -> Error {
    Error::Internal("coordinate overflowed i64".into())
}

/// Calls `f` on every integer point of the box `[lo, hi]`, in lexicographic
/// order.
pub fn scan_box(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    let n = lo.len();
    if n == 0 {
        f(&[]);
        return;
    }
    if (0..n).any(|i| lo[i] > hi[i]) {
        return;
    }
    let mut cur = lo.to_vec();
    loop {
        f(&cur);
        let mut k = n as isize - 1;
        loop {
            if k < 0 {
                return;
            }
            let ku = k as usize;
            if cur[ku] < hi[ku] {
                cur[ku] += 1;
                for j in (ku + 1)..n {
                    cur[j] = lo[j];
                }
                break;
            }
            k -= 1;
        }
    }
}
