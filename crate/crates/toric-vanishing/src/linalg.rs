//! Exact linear algebra over the integers, the rationals and prime fields.
//!
//! Everything here is small and dense — the geometry layers never exceed a
//! handful of rows — so the implementations favour transparency over speed:
//! classical Smith reduction with explicit unimodular witnesses, fraction-free
//! cofactor determinants, and plain Gaussian elimination over exact fields.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Smith normal form `U * A * V = D` of an integer matrix, with unimodular
/// row and column witnesses.
#[derive(Debug, Clone)]
pub struct SmithForm {
    /// Diagonal of `D`, length `min(m, n)`, each entry dividing the next;
    /// trailing entries may be zero.
    pub divisors: Vec<BigInt>,
    /// Unimodular `m x m` row transform.
    pub u: Vec<Vec<BigInt>>,
    /// Unimodular `n x n` column transform.
    pub v: Vec<Vec<BigInt>>,
    /// Number of nonzero divisors.
    pub rank: usize,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Converts an i64 matrix to big integers.
pub fn to_bigint_matrix(a: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    a.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Computes the Smith normal form of `a` (may be empty or non-square).
pub fn smith_normal_form(a: &[Vec<BigInt>]) -> SmithForm {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut d: Vec<Vec<BigInt>> = a.to_vec();
    let mut u = identity(m);
    let mut v = identity(n);

    let mut t = 0usize;
    while t < m.min(n) {
        // Find a nonzero entry of minimal absolute value in the submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }

        // Clear row and column t; restarts whenever a reduction leaves a
        // remainder, which strictly shrinks the pivot.
        'reduce: loop {
            for i in (t + 1)..m {
                if !d[i][t].is_zero() {
                    let q = div_round(&d[i][t], &d[t][t]);
                    for j in 0..n {
                        let s = &d[t][j] * &q;
                        d[i][j] -= s;
                    }
                    for j in 0..m {
                        let s = &u[t][j] * &q;
                        u[i][j] -= s;
                    }
                    if !d[i][t].is_zero() {
                        d.swap(t, i);
                        u.swap(t, i);
                        continue 'reduce;
                    }
                }
            }
            for j in (t + 1)..n {
                if !d[t][j].is_zero() {
                    let q = div_round(&d[t][j], &d[t][t]);
                    for i in 0..m {
                        let s = &d[i][t] * &q;
                        d[i][j] -= s;
                    }
                    for i in 0..n {
                        let s = &v[i][t] * &q;
                        v[i][j] -= s;
                    }
                    if !d[t][j].is_zero() {
                        for row in d.iter_mut() {
                            row.swap(t, j);
                        }
                        for row in v.iter_mut() {
                            row.swap(t, j);
                        }
                        continue 'reduce;
                    }
                }
            }
            break;
        }

        // Enforce the divisibility chain: fold any non-divisible entry into
        // the pivot's row and redo the elimination.
        let mut redo = false;
        'scan: for i in (t + 1)..m {
            for j in (t + 1)..n {
                if !(&d[i][j] % &d[t][t]).is_zero() {
                    for k in 0..n {
                        let s = d[i][k].clone();
                        d[t][k] += s;
                    }
                    for k in 0..m {
                        let s = u[i][k].clone();
                        u[t][k] += s;
                    }
                    redo = true;
                    break 'scan;
                }
            }
        }
        if redo {
            continue;
        }

        if d[t][t].is_negative() {
            for j in 0..n {
                d[t][j] = -d[t][j].clone();
            }
            for j in 0..m {
                u[t][j] = -u[t][j].clone();
            }
        }
        t += 1;
    }

    let divisors: Vec<BigInt> = (0..m.min(n)).map(|i| d[i][i].clone()).collect();
    let rank = divisors.iter().filter(|x| !x.is_zero()).count();
    SmithForm { divisors, u, v, rank }
}

/// Nearest-integer division, which keeps Smith pivots shrinking.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num_integer::div_rem(a.clone(), b.clone());
    if r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Matrix product of big-integer matrices.
pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = a.len();
    let k = if m == 0 { 0 } else { a[0].len() };
    let n = if b.is_empty() { 0 } else { b[0].len() };
    let mut c = vec![vec![BigInt::zero(); n]; m];
    for i in 0..m {
        for j in 0..n {
            let mut s = BigInt::zero();
            for l in 0..k {
                s += &a[i][l] * &b[l][j];
            }
            c[i][j] = s;
        }
    }
    c
}

/// Determinant by cofactor expansion; intended for the tiny matrices that
/// arise at rank <= 4.
pub fn bigint_det(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return a[0][0].clone();
    }
    let mut det = BigInt::zero();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &a[0][j] * bigint_det(&minor);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Basis of the integer kernel `{x : A x = 0}`; the basis spans a saturated
/// sublattice because it comes from a unimodular column transform.
pub fn integer_kernel(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    if n == 0 {
        return Vec::new();
    }
    if m == 0 {
        // Everything is in the kernel.
        return identity(n);
    }
    let snf = smith_normal_form(a);
    // A = U^-1 D V^-1, so A x = 0 iff D (V^-1 x) = 0 iff V^-1 x is supported
    // on the zero-divisor coordinates; the kernel basis is the corresponding
    // columns of V.
    (snf.rank..n)
        .map(|j| (0..n).map(|i| snf.v[i][j].clone()).collect())
        .collect()
}

/// Rank of an integer matrix.
pub fn integer_rank(a: &[Vec<i64>]) -> usize {
    smith_normal_form(&to_bigint_matrix(a)).rank
}

/// Solves `A x = b` over the rationals by Gaussian elimination.  Returns
/// `None` if the system is inconsistent; free variables are set to zero, so
/// for full-column-rank systems the solution is the unique one.
pub fn rational_solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.len();
    assert_eq!(m, b.len(), "matrix and rhs sizes differ");
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row = a[i].clone();
            row.push(b[i].clone());
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        let Some(pr) = (r..m).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(r, pr);
        let inv = aug[r][c].clone();
        for x in aug[r].iter_mut() {
            *x = x.clone() / inv.clone();
        }
        for i in 0..m {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..=n {
                    let s = aug[r][j].clone() * f.clone();
                    aug[i][j] = aug[i][j].clone() - s;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero rhs.
    for i in r..m {
        if !aug[i][n].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); n];
    for (k, &c) in pivot_cols.iter().enumerate() {
        x[c] = aug[k][n].clone();
    }
    Some(x)
}

/// Rank of a matrix over F_p (entries given as canonical residues).
pub fn fp_rank(mat: &[Vec<u64>], p: u64) -> usize {
    let m = mat.len();
    let n = if m == 0 { 0 } else { mat[0].len() };
    let mut a: Vec<Vec<u64>> = mat.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let mut rank = 0usize;
    for c in 0..n {
        let Some(pr) = (rank..m).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, pr);
        let inv = fp_inv(a[rank][c], p);
        for j in 0..n {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for i in 0..m {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..n {
                    let s = a[rank][j] * f % p;
                    a[i][j] = (a[i][j] + p - s) % p;
                }
            }
        }
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

/// Multiplicative inverse mod the prime `p`.
pub fn fp_inv(x: u64, p: u64) -> u64 {
    // Fermat: x^(p-2); fine for word-sized primes.
    let mut acc: u128 = 1;
    let mut base: u128 = (x % p) as u128;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

/// Checks that a square big-integer matrix has determinant +-1.
pub fn is_unimodular(a: &[Vec<BigInt>]) -> bool {
    bigint_det(a).abs().is_one()
}

/// Solves the square integer system `A x = b` exactly, returning the
/// rational solution, or an error if `A` is singular.
pub fn solve_square(a: &[Vec<i64>], b: &[Rat]) -> Result<Vec<Rat>> {
    let aq: Vec<Vec<Rat>> = a
        .iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect())
        .collect();
    let n = a.len();
    if integer_rank(a) != n {
        return Err(Error::InvalidInput("singular square system".into()));
    }
    rational_solve(&aq, b).ok_or_else(|| Error::Internal("square solve of full-rank system failed".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn big(a: &[&[i64]]) -> Vec<Vec<BigInt>> {
        a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    /// Re-multiplies the witnesses and checks the full Smith contract.
    fn check_snf(a: &[Vec<BigInt>]) -> Vec<BigInt> {
        let snf = smith_normal_form(a);
        assert!(is_unimodular(&snf.u), "U not unimodular");
        assert!(is_unimodular(&snf.v), "V not unimodular");
        let uav = mat_mul(&mat_mul(&snf.u, a), &snf.v);
        for (i, row) in uav.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j && i < snf.divisors.len() {
                    assert_eq!(x, &snf.divisors[i]);
                } else {
                    assert!(x.is_zero(), "off-diagonal entry at ({i},{j})");
                }
            }
        }
        for w in snf.divisors.windows(2) {
            if !w[0].is_zero() && !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken");
            }
        }
        snf.divisors
    }

    #[test]
    fn smith_frozen_example() {
        // Index-two sublattice: divisors (1, 2).
        let d = check_snf(&big(&[&[1, 0], &[1, 2]]));
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn smith_identity_and_zero() {
        assert_eq!(check_snf(&big(&[&[1, 0], &[0, 1]])), vec![BigInt::one(), BigInt::one()]);
        let d = check_snf(&big(&[&[0, 0], &[0, 0]]));
        assert!(d.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn smith_rectangular_and_random() {
        check_snf(&big(&[&[2, 4, 4]]));
        check_snf(&big(&[&[2], &[3], &[5]]));
        let d = check_snf(&big(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]));
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]);
        // A few deterministic pseudo-random small matrices.
        let mut seed = 1u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 15) as i64 - 7
        };
        for _ in 0..25 {
            let a: Vec<Vec<BigInt>> =
                (0..3).map(|_| (0..4).map(|_| BigInt::from(next())).collect()).collect();
            check_snf(&a);
        }
    }

    #[test]
    fn kernel_is_exact_and_saturated() {
        // Kernel of [1 1 1] is rank 2 and saturated.
        let a = big(&[&[1, 1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: BigInt = v.iter().sum();
            assert!(s.is_zero());
        }
        // Saturation: the kernel basis matrix has elementary divisors 1.
        let kb: Vec<Vec<BigInt>> = k.clone();
        let snf = smith_normal_form(&kb);
        assert!(snf.divisors.iter().take(snf.rank).all(|d| d.is_one()));
        // Full-rank matrix has trivial kernel.
        assert!(integer_kernel(&big(&[&[2, 0], &[0, 3]])).is_empty());
    }

    #[test]
    fn rational_solver() {
        // Unique solution.
        let a = vec![vec![rat_int(1), rat_int(2)], vec![rat_int(3), rat_int(1)]];
        let x = rational_solve(&a, &[rat_int(5), rat_int(5)]).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(2)]);
        // Inconsistent.
        let a = vec![vec![rat_int(1), rat_int(1)], vec![rat_int(2), rat_int(2)]];
        assert!(rational_solve(&a, &[rat_int(0), rat_int(1)]).is_none());
        // Underdetermined: free variable pinned to zero.
        let a = vec![vec![rat_int(0), rat_int(2)]];
        let x = rational_solve(&a, &[rat_int(1)]).unwrap();
        assert_eq!(x, vec![rat_int(0), rat(1, 2)]);
    }

    #[test]
    fn fp_ranks() {
        // Rank drops mod 2 but not mod 3.
        let m = vec![vec![1u64, 1], vec![1, 3]];
        assert_eq!(fp_rank(&m, 2), 1);
        assert_eq!(fp_rank(&m, 3), 2);
        assert_eq!(fp_rank(&[], 5), 0);
        for p in [2u64, 3, 5, 7] {
            for x in 1..p {
                assert_eq!(x * fp_inv(x, p) % p, 1);
            }
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(bigint_det(&big(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        assert_eq!(bigint_det(&big(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]])), BigInt::from(30));
        assert_eq!(bigint_det(&[]), BigInt::one());
    }

    #[test]
    fn square_solver() {
        let x = solve_square(&[vec![1, 0], vec![1, 2]], &[rat_int(1), rat_int(2)]).unwrap();
        assert_eq!(x, vec![rat_int(1), rat(1, 2)]);
        assert!(solve_square(&[vec![1, 1], vec![2, 2]], &[rat_int(0), rat_int(0)]).is_err());
    }
}
