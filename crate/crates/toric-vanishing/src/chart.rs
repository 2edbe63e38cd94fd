//! Affine chart semigroup algebras over length-two Witt vectors, with the
//! monomial Frobenius lifting.
//!
//! Each maximal cone of a fan gives a chart whose coordinate ring is the
//! semigroup algebra on the dual cone's lattice points.  Elements are finite
//! Witt-coefficient sums of characters; the distinguished lifting of
//! Frobenius sends a character to its `p`-th power and applies the Witt
//! Frobenius to coefficients.  The divisor-compatibility check compares
//! monomial ideals by mutual divisibility inside the semigroup.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::LatticeVec;
use crate::witt::{self, WittElem};

/// One affine chart of a toric variety at a fixed prime: the maximal cone,
/// its prime, and the minimal generators of the dual semigroup.
pub struct Chart<'f> {
    fan: &'f Fan,
    cone_index: usize,
    p: u64,
    generators: Vec<LatticeVec>,
}

/// A finite Witt-coefficient sum of characters on one chart.  Constructed
/// and combined only through [`Chart`] methods, which maintain the
/// invariants: every degree satisfies the chart inequalities and no zero
/// coefficient is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupElem {
    cone_index: usize,
    p: u64,
    terms: BTreeMap<LatticeVec, WittElem>,
}

/// The reduction of a [`SemigroupElem`] modulo the prime: coefficients in
/// `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpSemigroupElem {
    cone_index: usize,
    p: u64,
    terms: BTreeMap<LatticeVec, u64>,
}

impl SemigroupElem {
    pub fn terms(&self) -> &BTreeMap<LatticeVec, WittElem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl FpSemigroupElem {
    pub fn terms(&self) -> &BTreeMap<LatticeVec, u64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<'f> Chart<'f> {
    /// Builds the chart of the `i`-th maximal cone.  The cone must be
    /// full-dimensional (so the dual semigroup is pointed) and of rank at
    /// most three, the range where Hilbert bases are computed.
    pub fn new(fan: &'f Fan, cone_index: usize, p: u64) -> Result<Chart<'f>> {
        if !witt::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let cone = fan
            .max_cones()
            .get(cone_index)
            .map(|_| fan.max_cone(cone_index))
            .ok_or_else(|| {
                Error::InvalidInput(format!("no maximal cone with index {cone_index}"))
            })?;
        if !cone.is_full_dimensional() {
            return Err(Error::Unsupported(
                "chart semigroups are computed for full-dimensional cones only".into(),
            ));
        }
        let generators = cone.dual()?.hilbert_basis()?;
        Ok(Chart { fan, cone_index, p, generators })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn cone_index(&self) -> usize {
        self.cone_index
    }

    /// Minimal generating set of the chart semigroup.
    pub fn semigroup_generators(&self) -> &[LatticeVec] {
        &self.generators
    }

    /// Membership of a degree in the chart semigroup.
    pub fn contains_degree(&self, u: &LatticeVec) -> bool {
        self.fan.max_cone(self.cone_index).rays().iter().all(|v| u.dot(v) >= 0)
    }

    pub fn zero_elem(&self) -> SemigroupElem {
        SemigroupElem { cone_index: self.cone_index, p: self.p, terms: BTreeMap::new() }
    }

    pub fn one_elem(&self) -> Result<SemigroupElem> {
        let rank = self.fan.rank();
        self.monomial(&LatticeVec::zero(rank), WittElem::one(self.p)?)
    }

    /// The element `c * chi^u`; the degree must lie in the chart semigroup.
    pub fn monomial(&self, u: &LatticeVec, c: WittElem) -> Result<SemigroupElem> {
        if c.prime() != self.p {
            return Err(Error::InvalidInput("coefficient prime differs from chart prime".into()));
        }
        if !self.contains_degree(u) {
            return Err(Error::InvalidInput(format!(
                "degree {u} violates the chart inequalities"
            )));
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(u.clone(), c);
        }
        Ok(SemigroupElem { cone_index: self.cone_index, p: self.p, terms })
    }

    fn check_elem(&self, e: &SemigroupElem) -> Result<()> {
        if e.cone_index != self.cone_index || e.p != self.p {
            return Err(Error::InvalidInput(
                "element belongs to a different chart".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, a: &SemigroupElem, b: &SemigroupElem) -> Result<SemigroupElem> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        let mut terms = a.terms.clone();
        for (u, c) in &b.terms {
            let next = match terms.get(u) {
                Some(prev) => prev.add(c)?,
                None => *c,
            };
            if next.is_zero() {
                terms.remove(u);
            } else {
                terms.insert(u.clone(), next);
            }
        }
        Ok(SemigroupElem { cone_index: self.cone_index, p: self.p, terms })
    }

    pub fn neg(&self, a: &SemigroupElem) -> Result<SemigroupElem> {
        self.check_elem(a)?;
        let terms = a.terms.iter().map(|(u, c)| (u.clone(), c.neg())).collect();
        Ok(SemigroupElem { cone_index: self.cone_index, p: self.p, terms })
    }

    /// Convolution product.
    pub fn mul(&self, a: &SemigroupElem, b: &SemigroupElem) -> Result<SemigroupElem> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        let mut terms: BTreeMap<LatticeVec, WittElem> = BTreeMap::new();
        for (u, cu) in &a.terms {
            for (v, cv) in &b.terms {
                let w = u.add(v);
                let prod = cu.mul(cv)?;
                let next = match terms.get(&w) {
                    Some(prev) => prev.add(&prod)?,
                    None => prod,
                };
                if next.is_zero() {
                    terms.remove(&w);
                } else {
                    terms.insert(w, next);
                }
            }
        }
        Ok(SemigroupElem { cone_index: self.cone_index, p: self.p, terms })
    }

    /// The distinguished lifting of Frobenius: characters to their `p`-th
    /// powers, coefficients through the Witt Frobenius.  It is a ring
    /// homomorphism, and reducing after lifting equals the plain `p`-th
    /// power of the reduction.
    pub fn lift_frobenius(&self, a: &SemigroupElem) -> Result<SemigroupElem> {
        self.check_elem(a)?;
        let mut terms = BTreeMap::new();
        for (u, c) in &a.terms {
            let fu = u.scaled(self.p as i64);
            let fc = c.frobenius();
            if !fc.is_zero() {
                terms.insert(fu, fc);
            }
        }
        Ok(SemigroupElem { cone_index: self.cone_index, p: self.p, terms })
    }

    /// Coefficientwise reduction modulo `p`.
    pub fn reduce(&self, a: &SemigroupElem) -> Result<FpSemigroupElem> {
        self.check_elem(a)?;
        let terms = a
            .terms
            .iter()
            .filter_map(|(u, c)| {
                let r = c.reduce();
                (r != 0).then(|| (u.clone(), r))
            })
            .collect();
        Ok(FpSemigroupElem { cone_index: self.cone_index, p: self.p, terms })
    }

    pub fn fp_mul(&self, a: &FpSemigroupElem, b: &FpSemigroupElem) -> FpSemigroupElem {
        let mut terms: BTreeMap<LatticeVec, u64> = BTreeMap::new();
        for (u, cu) in &a.terms {
            for (v, cv) in &b.terms {
                let w = u.add(v);
                let next = (terms.get(&w).copied().unwrap_or(0) + cu * cv) % self.p;
                if next == 0 {
                    terms.remove(&w);
                } else {
                    terms.insert(w, next);
                }
            }
        }
        FpSemigroupElem { cone_index: self.cone_index, p: self.p, terms }
    }

    pub fn fp_pow(&self, a: &FpSemigroupElem, k: u64) -> FpSemigroupElem {
        let mut acc = FpSemigroupElem {
            cone_index: self.cone_index,
            p: self.p,
            terms: BTreeMap::from([(
                LatticeVec::zero(self.fan.rank()),
                1,
            )]),
        };
        for _ in 0..k {
            acc = self.fp_mul(&acc, a);
        }
        acc
    }

    /// A reproducible random element: degrees are short nonnegative
    /// combinations of the semigroup generators, coefficients uniform.
    pub fn random_element(&self, rng: &mut impl Rng, max_terms: usize) -> Result<SemigroupElem> {
        let rank = self.fan.rank();
        let mut e = self.zero_elem();
        let n_terms = rng.gen_range(0..=max_terms);
        for _ in 0..n_terms {
            let mut u = LatticeVec::zero(rank);
            let length = rng.gen_range(0..=3usize);
            for _ in 0..length {
                let g = &self.generators[rng.gen_range(0..self.generators.len())];
                u = u.add(g);
            }
            let c = WittElem::new(
                self.p,
                rng.gen_range(0..self.p) as i64,
                rng.gen_range(0..self.p) as i64,
            )?;
            e = self.add(&e, &self.monomial(&u, c)?)?;
        }
        Ok(e)
    }

    /// Checks that the lifting sends the monomial ideal with the given
    /// generator degrees onto the ideal of `p` times the divisor: the ideal
    /// generated by the lifted generators must equal the ideal generated by
    /// the `p`-fold degrees, by mutual divisibility in the semigroup.
    pub fn compatibility_check(&self, ideal_gens: &[LatticeVec]) -> Result<bool> {
        self.compatibility_check_with(ideal_gens, |u| u.scaled(self.p as i64))
    }

    /// Same check against an arbitrary degree map, so that incorrect
    /// liftings are detectable.
    pub fn compatibility_check_with(
        &self,
        ideal_gens: &[LatticeVec],
        lift_degree: impl Fn(&LatticeVec) -> LatticeVec,
    ) -> Result<bool> {
        for g in ideal_gens {
            if !self.contains_degree(g) {
                return Err(Error::InvalidInput(format!(
                    "ideal generator {g} lies outside the chart semigroup"
                )));
            }
        }
        let image: Vec<LatticeVec> = ideal_gens.iter().map(&lift_degree).collect();
        let target: Vec<LatticeVec> =
            ideal_gens.iter().map(|g| g.scaled(self.p as i64)).collect();
        Ok(self.ideal_contains(&target, &image) && self.ideal_contains(&image, &target))
    }

    /// `chi^a` lies in the monomial ideal generated by `gens` iff `a - g`
    /// is a semigroup element for some generator `g`.
    fn ideal_contains(&self, gens: &[LatticeVec], elems: &[LatticeVec]) -> bool {
        elems
            .iter()
            .all(|a| gens.iter().any(|g| self.contains_degree(&a.sub(g))))
    }

    /// The degrees generating the restriction of `O(-D)` to this chart, for
    /// a divisor that is Cartier here: the single degree `-u_sigma`.
    pub fn ideal_of_minus(&self, d: &crate::divisor::QDivisor) -> Result<Vec<LatticeVec>> {
        if !std::ptr::eq(d.fan(), self.fan) {
            return Err(Error::InvalidInput("divisor lives on a different fan".into()));
        }
        let data = d.cartier_data()?;
        let u = &data[self.cone_index];
        let mut coords = Vec::new();
        for x in u {
            if !crate::rat::is_integer(x) {
                return Err(Error::NotQCartier(format!(
                    "divisor is not Cartier on cone {}: local functional has fractional entry",
                    self.cone_index
                )));
            }
            coords.push(
                num_traits::ToPrimitive::to_i64(&crate::rat::floor_int(x))
                    .ok_or_else(|| Error::Internal("Cartier datum overflowed i64".into()))?,
            );
        }
        Ok(vec![LatticeVec(coords).neg()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::divisor::QDivisor;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(coords: &[i64]) -> LatticeVec {
        LatticeVec(coords.to_vec())
    }

    #[test]
    fn chart_generators_on_the_plane() {
        let fan = catalog::projective_space(2).unwrap();
        let chart = Chart::new(&fan, 0, 3).unwrap(); // cone (e1, e2)
        assert_eq!(chart.semigroup_generators(), &[v(&[0, 1]), v(&[1, 0])]);
        assert!(chart.contains_degree(&v(&[4, 1])));
        assert!(!chart.contains_degree(&v(&[-1, 0])));
    }

    #[test]
    fn singular_chart_has_three_generators() {
        let fan = catalog::weighted_projective(&[1, 1, 2]).unwrap();
        // Cone [0,2] spans rays (1,0), (-1,-2): the quadric cone chart.
        assert_eq!(fan.max_cones()[1], vec![0, 2]);
        let chart = Chart::new(&fan, 1, 2).unwrap();
        assert_eq!(
            chart.semigroup_generators(),
            &[v(&[0, -1]), v(&[1, -1]), v(&[2, -1])]
        );
        // The middle generator squares to the product of the outer two.
        let one = WittElem::one(2).unwrap();
        let a = chart.monomial(&v(&[0, -1]), one).unwrap();
        let b = chart.monomial(&v(&[2, -1]), one).unwrap();
        let mid = chart.monomial(&v(&[1, -1]), one).unwrap();
        assert_eq!(
            chart.mul(&a, &b).unwrap(),
            chart.mul(&mid, &mid).unwrap()
        );
    }

    #[test]
    fn frozen_square_of_one_plus_chi() {
        // (1 + chi^u)^2 at p = 2: the cross term's coefficient is 1+1 = (0,1).
        let fan = catalog::projective_space(2).unwrap();
        let chart = Chart::new(&fan, 0, 2).unwrap();
        let u = v(&[1, 0]);
        let one = WittElem::one(2).unwrap();
        let x = chart.add(&chart.one_elem().unwrap(), &chart.monomial(&u, one).unwrap()).unwrap();
        let sq = chart.mul(&x, &x).unwrap();
        let mut expect = BTreeMap::new();
        expect.insert(v(&[0, 0]), WittElem::one(2).unwrap());
        expect.insert(v(&[1, 0]), WittElem::vertical(2, 1).unwrap());
        expect.insert(v(&[2, 0]), WittElem::one(2).unwrap());
        assert_eq!(sq.terms(), &expect);
    }

    #[test]
    fn ring_axioms_on_random_elements() {
        let fan = catalog::projective_space(2).unwrap();
        for p in [2, 3, 5] {
            let chart = Chart::new(&fan, 1, p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(17 + p);
            for _ in 0..25 {
                let a = chart.random_element(&mut rng, 3).unwrap();
                let b = chart.random_element(&mut rng, 3).unwrap();
                let c = chart.random_element(&mut rng, 3).unwrap();
                // Commutativity and associativity.
                assert_eq!(chart.mul(&a, &b).unwrap(), chart.mul(&b, &a).unwrap());
                let ab_c = chart.mul(&chart.mul(&a, &b).unwrap(), &c).unwrap();
                let a_bc = chart.mul(&a, &chart.mul(&b, &c).unwrap()).unwrap();
                assert_eq!(ab_c, a_bc);
                // Distributivity.
                let lhs = chart.mul(&a, &chart.add(&b, &c).unwrap()).unwrap();
                let rhs = chart
                    .add(&chart.mul(&a, &b).unwrap(), &chart.mul(&a, &c).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
                // Additive inverse.
                assert!(chart.add(&a, &chart.neg(&a).unwrap()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn lifting_is_a_ring_homomorphism_reducing_to_frobenius() {
        let fan = catalog::weighted_projective(&[1, 1, 2]).unwrap();
        for p in [2, 3, 5] {
            for cone in 0..fan.n_max_cones() {
                let chart = Chart::new(&fan, cone, p).unwrap();
                let mut rng = ChaCha8Rng::seed_from_u64(100 * p + cone as u64);
                for _ in 0..10 {
                    let a = chart.random_element(&mut rng, 3).unwrap();
                    let b = chart.random_element(&mut rng, 3).unwrap();
                    let fab = chart.lift_frobenius(&chart.mul(&a, &b).unwrap()).unwrap();
                    let fa_fb = chart
                        .mul(&chart.lift_frobenius(&a).unwrap(), &chart.lift_frobenius(&b).unwrap())
                        .unwrap();
                    assert_eq!(fab, fa_fb);
                    let fsum = chart.lift_frobenius(&chart.add(&a, &b).unwrap()).unwrap();
                    let sum_f = chart
                        .add(&chart.lift_frobenius(&a).unwrap(), &chart.lift_frobenius(&b).unwrap())
                        .unwrap();
                    assert_eq!(fsum, sum_f);
                    // Reduce-after-lift equals p-th power of the reduction.
                    let red_lift = chart.reduce(&chart.lift_frobenius(&a).unwrap()).unwrap();
                    let pow_red = chart.fp_pow(&chart.reduce(&a).unwrap(), p);
                    assert_eq!(red_lift, pow_red);
                }
            }
        }
    }

    #[test]
    fn lifting_fixes_constants_and_sends_characters_to_powers() {
        let fan = catalog::projective_space(2).unwrap();
        let chart = Chart::new(&fan, 0, 5).unwrap();
        let c = WittElem::new(5, 3, 4).unwrap();
        let constant = chart.monomial(&v(&[0, 0]), c).unwrap();
        assert_eq!(chart.lift_frobenius(&constant).unwrap(), constant);
        let x = chart.monomial(&v(&[1, 2]), WittElem::one(5).unwrap()).unwrap();
        let fx = chart.lift_frobenius(&x).unwrap();
        let expect = chart.monomial(&v(&[5, 10]), WittElem::one(5).unwrap()).unwrap();
        assert_eq!(fx, expect);
    }

    #[test]
    fn divisor_compatibility_on_smooth_and_singular_charts() {
        let fan = catalog::projective_space(2).unwrap();
        let chart = Chart::new(&fan, 0, 3).unwrap();
        // D = first coordinate divisor: ideal (x1) on this chart.
        let d = QDivisor::from_integers(&fan, &[1, 0, 0]).unwrap();
        let gens = chart.ideal_of_minus(&d).unwrap();
        assert_eq!(gens, vec![v(&[1, 0])]);
        assert!(chart.compatibility_check(&gens).unwrap());
        // A deliberately wrong lifting u -> pu + w fails.
        let w = v(&[1, 0]);
        assert!(!chart
            .compatibility_check_with(&gens, |u| u.scaled(3).add(&w))
            .unwrap());
        // The anticanonical divisor is Cartier on the singular chart of
        // P(1,1,2) and passes there too.
        let wfan = catalog::weighted_projective(&[1, 1, 2]).unwrap();
        let wchart = Chart::new(&wfan, 1, 3).unwrap();
        let antik = QDivisor::canonical(&wfan).neg();
        let gens = wchart.ideal_of_minus(&antik).unwrap();
        assert!(wchart.compatibility_check(&gens).unwrap());
    }

    #[test]
    fn chart_hygiene() {
        let fan = catalog::projective_space(2).unwrap();
        let chart0 = Chart::new(&fan, 0, 3).unwrap();
        let chart1 = Chart::new(&fan, 1, 3).unwrap();
        let a = chart0.one_elem().unwrap();
        assert!(chart1.add(&a, &a).is_err());
        assert!(chart0.monomial(&v(&[-1, 0]), WittElem::one(3).unwrap()).is_err());
        assert!(Chart::new(&fan, 9, 3).is_err());
        assert!(Chart::new(&fan, 0, 4).is_err());
        // Non-Cartier restriction is refused with a witness.
        let wfan = catalog::weighted_projective(&[1, 1, 2]).unwrap();
        let wchart = Chart::new(&wfan, 1, 3).unwrap();
        let d3 = QDivisor::from_integers(&wfan, &[0, 0, 1]).unwrap();
        assert!(matches!(wchart.ideal_of_minus(&d3), Err(Error::NotQCartier(_))));
    }
}
