//! Length-two Witt vectors over the prime field F_p.
//!
//! An element is a pair `(a0, a1)` of residues mod `p`.  Addition carries via
//! a universal polynomial whose coefficients are binomials `C(p,i)/p`, and
//! multiplication twists the second component by p-th powers:
//!
//! ```text
//! (a0, a1) + (b0, b1) = (a0 + b0, a1 + b1 - (1/p) * sum_{0<i<p} C(p,i) a0^i b0^(p-i))
//! (a0, a1) * (b0, b1) = (a0 b0, a0^p b1 + b0^p a1)
//! ```
//!
//! The carry sum is evaluated over arbitrary-precision integers and divided
//! exactly by `p` before reduction; intermediate terms overflow any fixed
//! width already for moderate primes, so no shortcut is taken.  The ring is
//! isomorphic to Z/p^2 via the Teichmuller section (see [`WittElem::to_zp2`]),
//! which the test suite uses as an independent oracle.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A length-two Witt vector `(a0, a1)` over F_p, with both components stored
/// as canonical residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WittElem {
    p: u64,
    a0: u64,
    a1: u64,
}

/// Deterministic primality test by trial division; ample for the desk-scale
/// primes this crate runs at.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not prime")))
    }
}

/// `b^e mod m` on u64 operands via u128 intermediates.
fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut base: u128 = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

impl WittElem {
    /// Builds an element with components reduced into `[0, p)`.
    /// Errors if `p` is not prime.
    pub fn new(p: u64, a0: i64, a1: i64) -> Result<Self> {
        check_prime(p)?;
        let r = |x: i64| -> u64 { (x.rem_euclid(p as i64)) as u64 };
        Ok(WittElem { p, a0: r(a0), a1: r(a1) })
    }

    /// The additive identity `(0, 0)`.
    pub fn zero(p: u64) -> Result<Self> {
        Self::new(p, 0, 0)
    }

    /// The multiplicative identity `(1, 0)`.
    pub fn one(p: u64) -> Result<Self> {
        Self::new(p, 1, 0)
    }

    /// The element `(0, x)`, i.e. the image of `x` under the additive
    /// section of the projection onto the first component.
    pub fn vertical(p: u64, x: i64) -> Result<Self> {
        Self::new(p, 0, x)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn components(&self) -> (u64, u64) {
        (self.a0, self.a1)
    }

    /// Projection onto the first component: the reduction map to F_p.
    pub fn reduce(&self) -> u64 {
        self.a0
    }

    pub fn is_zero(&self) -> bool {
        self.a0 == 0 && self.a1 == 0
    }

    fn check_same_prime(&self, rhs: &Self) -> Result<()> {
        if self.p == rhs.p {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "mismatched primes: {} vs {}",
                self.p, rhs.p
            )))
        }
    }

    /// Witt sum.  The carry `(1/p) sum_{0<i<p} C(p,i) a0^i b0^(p-i)` is
    /// computed over the integers and divided exactly by `p`.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_prime(rhs)?;
        let p = self.p;
        let pb = BigInt::from(p);
        let a0 = BigInt::from(self.a0);
        let b0 = BigInt::from(rhs.a0);
        // sum_{0<i<p} C(p,i) a0^i b0^(p-i), with C(p,i) by multiplicative
        // recurrence to stay exact.
        let mut sum = BigInt::zero();
        let mut binom = BigInt::from(1u64);
        for i in 1..p {
            // C(p,i) = C(p,i-1) * (p-i+1) / i
            binom = binom * BigInt::from(p - i + 1) / BigInt::from(i);
            sum += &binom * a0.pow(i as u32) * b0.pow((p - i) as u32);
        }
        let (carry, rem) = num_integer::div_rem(sum, pb.clone());
        if !rem.is_zero() {
            return Err(Error::Internal(
                "Witt addition carry was not divisible by p".into(),
            ));
        }
        let carry_mod = (carry % &pb + &pb) % &pb;
        let carry_mod = carry_mod.to_u64().expect("reduced carry fits u64");
        let c0 = (self.a0 + rhs.a0) % p;
        let c1 = ((self.a1 + rhs.a1) % p + p - carry_mod) % p;
        WittElem::new(p, c0 as i64, c1 as i64)
    }

    /// Witt product `(a0 b0, a0^p b1 + b0^p a1)`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_prime(rhs)?;
        let p = self.p;
        let c0 = (self.a0 as u128 * rhs.a0 as u128 % p as u128) as u64;
        let t1 = pow_mod(self.a0, p, p) as u128 * rhs.a1 as u128 % p as u128;
        let t2 = pow_mod(rhs.a0, p, p) as u128 * self.a1 as u128 % p as u128;
        let c1 = ((t1 + t2) % p as u128) as u64;
        WittElem::new(p, c0 as i64, c1 as i64)
    }

    /// Additive inverse.
    pub fn neg(&self) -> Self {
        // -(a0, a1) has first component -a0; the second component is fixed by
        // solving self + x = 0 directly, which keeps the carry convention in
        // one place.
        let p = self.p;
        let m0 = ((p - self.a0) % p) as i64;
        for m1 in 0..p {
            let cand = WittElem { p, a0: m0 as u64, a1: m1 };
            if self.add(&cand).map(|s| s.is_zero()).unwrap_or(false) {
                return cand;
            }
        }
        unreachable!("every Witt vector has an additive inverse");
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    /// Witt-vector Frobenius `(a0, a1) -> (a0^p, a1^p)`, evaluated through
    /// the power formula rather than the (equal, by Fermat) identity map.
    pub fn frobenius(&self) -> Self {
        WittElem {
            p: self.p,
            a0: pow_mod(self.a0, self.p, self.p),
            a1: pow_mod(self.a1, self.p, self.p),
        }
    }

    /// Ring isomorphism onto Z/p^2: `(a0, a1) -> t(a0) + p*a1` where `t` is
    /// the Teichmuller section.  Requires `p^2` to fit in u64.
    pub fn to_zp2(&self) -> u64 {
        let p2 = self.p * self.p;
        (teichmuller(self.p, self.a0) + self.p * self.a1) % p2
    }

    /// Inverse of [`WittElem::to_zp2`]: decomposes a residue mod `p^2` as
    /// `t(a0) + p*a1`.
    pub fn from_zp2(p: u64, x: u64) -> Result<Self> {
        check_prime(p)?;
        let p2 = p * p;
        let x = x % p2;
        let a0 = x % p;
        let t = teichmuller(p, a0);
        // x - t(a0) is divisible by p because t(a0) = a0 mod p.
        let diff = (x + p2 - t) % p2;
        debug_assert_eq!(diff % p, 0);
        WittElem::new(p, a0 as i64, (diff / p) as i64)
    }
}

/// Teichmuller representative of `a` in Z/p^2: the unique lift fixed by the
/// p-th power map, computed as `a^p mod p^2`.
pub fn teichmuller(p: u64, a: u64) -> u64 {
    let p2 = p * p;
    pow_mod(a % p2, p, p2)
}

impl std::fmt::Display for WittElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.a0, self.a1)
    }
}
