//! Torus-invariant Q-divisors: rounding calculus, local trivializations,
//! positivity certificates, and global sections.
//!
//! A divisor is a rational coefficient per ray of a fixed fan.  All rounding
//! operations act coefficientwise; ampleness and nefness are decided exactly
//! through the piecewise-linear support function, and global sections are
//! enumerated as lattice points of the associated polytope.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{LatticeVec, RationalPolyhedron, RationalVec};
use crate::rat::{self, Rat};

/// A torus-invariant Q-divisor `sum a_rho D_rho` on a fixed fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QDivisor<'a> {
    fan: &'a Fan,
    coeffs: Vec<Rat>,
}

/// Serialization shape: `{"coeffs": ["1/2", "-3", ...]}`, ray order of the
/// fan.
#[derive(Debug, Serialize, Deserialize)]
struct DivisorJson {
    coeffs: Vec<String>,
}

impl<'a> QDivisor<'a> {
    pub fn new(fan: &'a Fan, coeffs: Vec<Rat>) -> Result<QDivisor<'a>> {
        if coeffs.len() != fan.n_rays() {
            return Err(Error::InvalidInput(format!(
                "divisor has {} coefficients but the fan has {} rays",
                coeffs.len(),
                fan.n_rays()
            )));
        }
        Ok(QDivisor { fan, coeffs })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_integers(fan: &'a Fan, coeffs: &[i64]) -> Result<QDivisor<'a>> {
        QDivisor::new(fan, coeffs.iter().map(|&c| rat::rat_int(c)).collect())
    }

    /// The canonical divisor `-sum D_rho`.
    pub fn canonical(fan: &'a Fan) -> QDivisor<'a> {
        QDivisor { fan, coeffs: vec![rat::rat_int(-1); fan.n_rays()] }
    }

    pub fn zero(fan: &'a Fan) -> QDivisor<'a> {
        QDivisor { fan, coeffs: vec![Rat::zero(); fan.n_rays()] }
    }

    pub fn fan(&self) -> &'a Fan {
        self.fan
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(rat::is_integer)
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Coefficientwise ceiling.
    pub fn round_up(&self) -> QDivisor<'a> {
        self.map(|c| Rat::from_integer(rat::ceil_int(c)))
    }

    /// Coefficientwise floor.
    pub fn round_down(&self) -> QDivisor<'a> {
        self.map(|c| Rat::from_integer(rat::floor_int(c)))
    }

    /// Coefficientwise fractional part, in `[0, 1)`.
    pub fn frac(&self) -> QDivisor<'a> {
        self.map(rat::frac_part)
    }

    pub fn neg(&self) -> QDivisor<'a> {
        self.map(|c| -c)
    }

    pub fn add(&self, other: &QDivisor<'a>) -> QDivisor<'a> {
        assert!(std::ptr::eq(self.fan, other.fan), "divisors on different fans");
        QDivisor {
            fan: self.fan,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &QDivisor<'a>) -> QDivisor<'a> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rat) -> QDivisor<'a> {
        self.map(|c| c * k)
    }

    pub fn scale_int(&self, k: i64) -> QDivisor<'a> {
        self.scale(&rat::rat_int(k))
    }

    fn map(&self, f: impl Fn(&Rat) -> Rat) -> QDivisor<'a> {
        QDivisor { fan: self.fan, coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// The divisor `D + div(chi^u)`, linearly equivalent to `D`; its section
    /// polytope is the translate of `D`'s by `-u`.
    pub fn linear_shift(&self, u: &LatticeVec) -> QDivisor<'a> {
        let coeffs = self
            .coeffs
            .iter()
            .zip(self.fan.rays())
            .map(|(a, v)| a + Rat::from_integer(BigInt::from(u.dot(v))))
            .collect();
        QDivisor { fan: self.fan, coeffs }
    }

    /// The rounding defect `p * ceil(D) - ceil(p * D)`; every coefficient
    /// lies in `[0, p)`, and it vanishes exactly where `p` clears the
    /// fractional part.
    pub fn frobenius_defect(&self, p: u64) -> QDivisor<'a> {
        let d = self
            .round_up()
            .scale_int(p as i64)
            .sub(&self.scale_int(p as i64).round_up());
        for c in &d.coeffs {
            debug_assert!(
                !c.is_negative() && *c < rat::rat_int(p as i64),
                "rounding defect out of range"
            );
        }
        d
    }

    /// The section polytope `{u : <u, v_rho> >= -a_rho}`.
    pub fn polytope(&self) -> Result<RationalPolyhedron> {
        let constraints = self
            .fan
            .rays()
            .iter()
            .zip(&self.coeffs)
            .map(|(v, a)| (v.clone(), -a))
            .collect();
        RationalPolyhedron::new(self.fan.rank(), constraints)
    }

    /// Lattice points of the section polytope; their characters form a basis
    /// of the global sections of `O(round_down(D))`... of `O(D)` itself when
    /// `D` is integral.
    pub fn global_section_degrees(&self) -> Result<Vec<LatticeVec>> {
        self.polytope()?.lattice_points()
    }

    /// Dimension of the space of global sections.
    pub fn h0(&self) -> Result<usize> {
        Ok(self.global_section_degrees()?.len())
    }

    /// One local trivialization per maximal cone: the vector `u_sigma` with
    /// `<u_sigma, v_rho> = -a_rho` on every ray of the cone.  Fails with a
    /// witness when the divisor is not Q-Cartier.
    pub fn cartier_data(&self) -> Result<Vec<RationalVec>> {
        let n = self.fan.rank();
        let mut data = Vec::new();
        for cone_idx in self.fan.max_cones() {
            let a: Vec<Vec<Rat>> = cone_idx
                .iter()
                .map(|&i| {
                    self.fan.rays()[i]
                        .0
                        .iter()
                        .map(|&x| Rat::from_integer(BigInt::from(x)))
                        .collect()
                })
                .collect();
            let b: Vec<Rat> = cone_idx.iter().map(|&i| -&self.coeffs[i]).collect();
            match crate::linalg::rational_solve(&a, &b) {
                Some(u) => {
                    debug_assert_eq!(u.len(), n);
                    data.push(u);
                }
                None => {
                    return Err(Error::NotQCartier(format!(
                        "no linear functional matches the divisor on cone {cone_idx:?}"
                    )));
                }
            }
        }
        Ok(data)
    }

    pub fn is_q_cartier(&self) -> bool {
        self.cartier_data().is_ok()
    }

    /// The smallest positive integer `m` such that `m * D` is Cartier.
    pub fn cartier_index(&self) -> Result<BigInt> {
        let data = self.cartier_data()?;
        let all: Vec<&Rat> = data.iter().flatten().collect();
        Ok(rat::denominator_lcm(all.into_iter().chain(self.coeffs.iter())))
    }

    /// Exact ampleness via strict convexity of the support function: for
    /// every maximal cone the local functional must undershoot the divisor
    /// on every ray outside the cone.  Requires a complete fan.
    pub fn is_ample(&self) -> Result<bool> {
        self.positivity(true)
    }

    /// Like [`QDivisor::is_ample`] with non-strict inequalities.
    pub fn is_nef(&self) -> Result<bool> {
        self.positivity(false)
    }

    fn positivity(&self, strict: bool) -> Result<bool> {
        if !self.fan.is_complete()? {
            return Err(Error::Hypothesis(
                "ampleness and nefness are only decided on complete fans".into(),
            ));
        }
        let data = match self.cartier_data() {
            Ok(d) => d,
            Err(Error::NotQCartier(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        for (u, cone_idx) in data.iter().zip(self.fan.max_cones()) {
            for (i, v) in self.fan.rays().iter().enumerate() {
                if cone_idx.contains(&i) {
                    continue;
                }
                let lhs = pair(u, v);
                let rhs = -&self.coeffs[i];
                let ok = if strict { lhs > rhs } else { lhs >= rhs };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Parses `{"coeffs": [...]}` with entries like `"2"` or `"-1/3"`.
    pub fn from_json_str(fan: &'a Fan, s: &str) -> Result<QDivisor<'a>> {
        let j: DivisorJson = serde_json::from_str(s)
            .map_err(|e| Error::InvalidInput(format!("divisor JSON: {e}")))?;
        let coeffs = j
            .coeffs
            .iter()
            .map(|c| rat::parse_rat(c))
            .collect::<Result<Vec<Rat>>>()?;
        QDivisor::new(fan, coeffs)
    }

    pub fn to_json_string(&self) -> String {
        let j = DivisorJson { coeffs: self.coeffs.iter().map(rat::format_rat).collect() };
        serde_json::to_string(&j).expect("divisor serialization cannot fail")
    }
}

impl std::fmt::Display for QDivisor<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rat::format_rat(c))?;
        }
        write!(f, "]")
    }
}

/// Exact pairing of a rational functional with a lattice vector.
pub fn pair(u: &[Rat], v: &LatticeVec) -> Rat {
    u.iter()
        .zip(&v.0)
        .map(|(a, &b)| a * Rat::from_integer(BigInt::from(b)))
        .sum()
}
