//! Complete rational fans: validation, predicates, subdivision, JSON.
//!
//! A fan is stored as a list of primitive rays plus index sets of maximal
//! cones.  Construction validates the full fan axioms — strongly convex
//! cones, pairwise intersection in a common face — and reports a concrete
//! witness for every violation, so that everything downstream may assume a
//! genuine fan.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lattice::{dual_cone, Cone, LatticeVec};

/// A validated rational fan in a lattice of rank `<= 4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVec>,
    max_cones: Vec<Vec<usize>>,
    /// Cached cone objects, index-aligned with `max_cones`.
    cones: Vec<Cone>,
}

/// Serialization shape: `{"rank": ..., "rays": [[..]], "max_cones": [[..]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct FanJson {
    rank: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Builds and fully validates a fan.
    ///
    /// Checks, with witnesses in the error messages: ray primitivity and
    /// distinctness, cone validity (strong convexity, extremal generators),
    /// index hygiene, that every ray is used, that no maximal cone lies in
    /// another, and that every pair of cones meets in a common face.
    pub fn new(rank: usize, rays: Vec<LatticeVec>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        for (i, r) in rays.iter().enumerate() {
            if rays[..i].contains(r) {
                return Err(Error::InvalidFan(format!("duplicate ray {r}")));
            }
        }
        if max_cones.is_empty() {
            return Err(Error::InvalidFan("a fan needs at least one maximal cone".into()));
        }
        let mut sorted_cones: Vec<Vec<usize>> = Vec::new();
        for c in &max_cones {
            let mut s = c.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != c.len() {
                return Err(Error::InvalidFan(format!("cone {c:?} repeats a ray index")));
            }
            if let Some(&bad) = s.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!(
                    "cone {c:?} references ray index {bad}, but there are only {} rays",
                    rays.len()
                )));
            }
            if sorted_cones.contains(&s) {
                return Err(Error::InvalidFan(format!("maximal cone {s:?} is listed twice")));
            }
            sorted_cones.push(s);
        }
        let mut used = vec![false; rays.len()];
        for c in &sorted_cones {
            for &i in c {
                used[i] = true;
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::InvalidFan(format!(
                "ray {} (index {i}) does not appear in any maximal cone",
                rays[i]
            )));
        }

        let mut cones = Vec::new();
        for c in &sorted_cones {
            let cone_rays: Vec<LatticeVec> = c.iter().map(|&i| rays[i].clone()).collect();
            let cone = Cone::validated(rank, cone_rays)
                .map_err(|e| Error::InvalidFan(format!("cone {c:?}: {e}")))?;
            cones.push(cone);
        }

        for i in 0..cones.len() {
            for j in (i + 1)..cones.len() {
                check_common_face(&cones[i], &cones[j]).map_err(|e| {
                    Error::InvalidFan(format!(
                        "cones {:?} and {:?}: {e}",
                        sorted_cones[i], sorted_cones[j]
                    ))
                })?;
            }
        }

        Ok(Fan { rank, rays, max_cones: sorted_cones, cones })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVec] {
        &self.rays
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    /// Maximal cones as sorted ray-index sets.
    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn n_max_cones(&self) -> usize {
        self.max_cones.len()
    }

    pub fn max_cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    /// True when some maximal cone contains `x`.
    pub fn support_contains(&self, x: &LatticeVec) -> Result<bool> {
        for c in &self.cones {
            if c.contains(x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// True when the given ray indices all lie in one maximal cone.  On a
    /// simplicial fan this is exactly the condition that they span a cone of
    /// the fan.
    pub fn indices_in_common_cone(&self, indices: &[usize]) -> bool {
        self.max_cones
            .iter()
            .any(|c| indices.iter().all(|i| c.binary_search(i).is_ok()))
    }

    /// Every maximal cone is spanned by linearly independent rays.
    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(|c| c.rays().len() == c.dim())
    }

    /// Every maximal cone is spanned by part of a lattice basis.
    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(|c| cone_is_smooth(c))
    }

    /// The support is the whole space: all maximal cones are
    /// full-dimensional and every facet is shared by exactly two of them.
    pub fn is_complete(&self) -> Result<bool> {
        if self.cones.iter().any(|c| !c.is_full_dimensional()) {
            return Ok(false);
        }
        let mut facet_counts: std::collections::BTreeMap<Vec<LatticeVec>, usize> =
            std::collections::BTreeMap::new();
        for c in &self.cones {
            for f in cone_facets(c)? {
                *facet_counts.entry(f).or_insert(0) += 1;
            }
        }
        Ok(facet_counts.values().all(|&n| n == 2))
    }

    /// Stellar subdivision of the `i`-th maximal cone, which must be smooth
    /// and full-dimensional: the cone is starred at the sum of its rays.
    ///
    /// On a smooth fan this is the toric blow-up at the corresponding fixed
    /// point.
    pub fn stellar_subdivision(&self, i: usize) -> Result<Fan> {
        let target = self
            .cones
            .get(i)
            .ok_or_else(|| Error::InvalidInput(format!("no maximal cone with index {i}")))?;
        if !target.is_full_dimensional() || !cone_is_smooth(target) {
            return Err(Error::InvalidInput(format!(
                "stellar subdivision needs a smooth full-dimensional cone, but cone {:?} is not",
                self.max_cones[i]
            )));
        }
        let mut center = LatticeVec::zero(self.rank);
        for r in target.rays() {
            center = center.add(r);
        }
        let mut rays = self.rays.clone();
        let center_index = rays.len();
        rays.push(center);
        let mut max_cones: Vec<Vec<usize>> = Vec::new();
        for (j, c) in self.max_cones.iter().enumerate() {
            if j == i {
                for omit in c {
                    let mut nc: Vec<usize> =
                        c.iter().copied().filter(|k| k != omit).collect();
                    nc.push(center_index);
                    max_cones.push(nc);
                }
            } else {
                max_cones.push(c.clone());
            }
        }
        Fan::new(self.rank, rays, max_cones)
    }

    /// Canonical JSON text: fixed field order, compact, cones sorted.
    pub fn to_json_string(&self) -> String {
        let j = FanJson {
            rank: self.rank,
            rays: self.rays.iter().map(|r| r.0.clone()).collect(),
            max_cones: self.max_cones.clone(),
        };
        serde_json::to_string(&j).expect("fan serialization cannot fail")
    }

    /// Parses and validates a fan from its JSON description.
    pub fn from_json_str(s: &str) -> Result<Fan> {
        let j: FanJson = serde_json::from_str(s)
            .map_err(|e| Error::InvalidInput(format!("fan JSON: {e}")))?;
        Fan::new(j.rank, j.rays.into_iter().map(LatticeVec).collect(), j.max_cones)
    }

    /// Hex SHA-256 of the canonical JSON form; stable across runs.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.to_json_string().as_bytes());
        let out = h.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Smoothness of a single cone: simplicial with all elementary divisors 1.
fn cone_is_smooth(c: &Cone) -> bool {
    let rows: Vec<Vec<i64>> = c.rays().iter().map(|r| r.0.clone()).collect();
    if rows.is_empty() {
        return true;
    }
    let snf = crate::linalg::smith_normal_form(&crate::linalg::to_bigint_matrix(&rows));
    snf.rank == rows.len() && snf.divisors.iter().all(|d| d == &num_bigint::BigInt::from(1))
}

/// Facets of a full-dimensional cone, each as its sorted list of rays.
fn cone_facets(c: &Cone) -> Result<Vec<Vec<LatticeVec>>> {
    let dual = dual_cone(c)?;
    let mut facets = Vec::new();
    for w in dual.rays() {
        let mut f: Vec<LatticeVec> =
            c.rays().iter().filter(|r| w.dot(r) == 0).cloned().collect();
        f.sort();
        facets.push(f);
    }
    Ok(facets)
}

/// Decides whether the rays `face` span a face of `c`, by exhibiting a
/// supporting functional: the sum of all dual generators vanishing on `face`
/// must be strictly positive on every other ray of `c`.
fn spans_face(c: &Cone, face: &[LatticeVec]) -> Result<bool> {
    let dual = dual_cone(c)?;
    let mut u = LatticeVec::zero(face.first().map_or(c.rank(), |r| r.dim()));
    if u.dim() != c.rank() {
        return Err(Error::Internal("face/cone dimension mismatch".into()));
    }
    for w in dual.rays() {
        if face.iter().all(|r| w.dot(r) == 0) {
            u = u.add(w);
        }
    }
    for r in c.rays() {
        if face.contains(r) {
            if u.dot(r) != 0 {
                return Err(Error::Internal("supporting functional fails on the face".into()));
            }
        } else if u.dot(r) <= 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Verifies the fan axiom for one pair: the intersection must be a common
/// proper-or-equal face spanned by shared rays, and neither maximal cone may
/// contain the other.
fn check_common_face(a: &Cone, b: &Cone) -> Result<()> {
    let mut halfspaces = dual_cone(a)?.rays().to_vec();
    halfspaces.extend(dual_cone(b)?.rays().iter().cloned());
    let meet = dual_cone(&Cone::from_rays(a.rank(), halfspaces)?)?;
    let meet_rays = meet.sorted_rays();
    if meet_rays == a.sorted_rays() || meet_rays == b.sorted_rays() {
        return Err(Error::InvalidFan(
            "one maximal cone is contained in the other".into(),
        ));
    }
    for r in &meet_rays {
        if !a.rays().contains(r) || !b.rays().contains(r) {
            return Err(Error::InvalidFan(format!(
                "intersection ray {r} is not a shared ray, so the cones overlap improperly"
            )));
        }
    }
    if !spans_face(a, &meet_rays)? || !spans_face(b, &meet_rays)? {
        return Err(Error::InvalidFan(
            "the intersection is not a face of both cones".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::scan_box;

    fn v(coords: &[i64]) -> LatticeVec {
        LatticeVec(coords.to_vec())
    }

    fn p2() -> Fan {
        Fan::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap()
    }

    #[test]
    fn valid_plane_fan_and_predicates() {
        let f = p2();
        assert_eq!(f.rank(), 2);
        assert_eq!(f.n_rays(), 3);
        assert!(f.is_complete().unwrap());
        assert!(f.is_smooth());
        assert!(f.is_simplicial());
    }

    #[test]
    fn incomplete_and_singular_fans() {
        // One quadrant: valid fan, incomplete.
        let quad = Fan::new(2, vec![v(&[1, 0]), v(&[0, 1])], vec![vec![0, 1]]).unwrap();
        assert!(!quad.is_complete().unwrap());
        assert!(quad.is_smooth());
        // Index-two cone: simplicial but singular.
        let half = Fan::new(2, vec![v(&[0, 1]), v(&[2, -1])], vec![vec![0, 1]]).unwrap();
        assert!(!half.is_smooth());
        assert!(half.is_simplicial());
        // Missing one cone of the plane fan: incomplete.
        let open = Fan::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        assert!(!open.is_complete().unwrap());
    }

    #[test]
    fn rank_one_complete_fan() {
        let f = Fan::new(1, vec![v(&[1]), v(&[-1])], vec![vec![0], vec![1]]).unwrap();
        assert!(f.is_complete().unwrap());
        assert!(f.is_smooth());
        let half = Fan::new(1, vec![v(&[1])], vec![vec![0]]).unwrap();
        assert!(!half.is_complete().unwrap());
    }

    #[test]
    fn non_simplicial_cone_over_square() {
        let f = Fan::new(
            3,
            vec![v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[-1, 0, 1]), v(&[0, -1, 1])],
            vec![vec![0, 1, 2, 3]],
        )
        .unwrap();
        assert!(!f.is_simplicial());
        assert!(!f.is_smooth());
        assert!(!f.is_complete().unwrap());
    }

    #[test]
    fn invalid_fans_are_rejected_with_witnesses() {
        // Overlapping cones that do not meet in a face.
        let err = Fan::new(
            2,
            vec![v(&[1, 0]), v(&[1, 2]), v(&[1, 1]), v(&[0, 1])],
            vec![vec![0, 1], vec![2, 3]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidFan(_)), "got {err}");
        // One cone inside another.
        let err = Fan::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])],
            vec![vec![0, 1], vec![0, 2]],
        )
        .unwrap_err();
        assert!(format!("{err}").contains("contained"), "got {err}");
        // Unused ray.
        let err = Fan::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])],
            vec![vec![0, 1]],
        )
        .unwrap_err();
        assert!(format!("{err}").contains("does not appear"), "got {err}");
        // Non-primitive ray.
        let err = Fan::new(2, vec![v(&[2, 0]), v(&[0, 1])], vec![vec![0, 1]]).unwrap_err();
        assert!(format!("{err}").contains("primitive"), "got {err}");
        // Out-of-range index.
        let err = Fan::new(2, vec![v(&[1, 0]), v(&[0, 1])], vec![vec![0, 5]]).unwrap_err();
        assert!(format!("{err}").contains("index 5"), "got {err}");
        // Cone with a line.
        let err = Fan::new(2, vec![v(&[1, 0]), v(&[-1, 0])], vec![vec![0, 1]]).unwrap_err();
        assert!(format!("{err}").contains("convex"), "got {err}");
    }

    #[test]
    fn adjacent_cones_sharing_a_facet_are_fine() {
        // Two quadrants glued along a ray.
        let f = Fan::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 0])],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        assert!(!f.is_complete().unwrap());
        assert!(f.indices_in_common_cone(&[0, 1]));
        assert!(!f.indices_in_common_cone(&[0, 2]));
    }

    #[test]
    fn completeness_matches_point_sampling() {
        let complete = p2();
        let incomplete = Fan::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        let mut all_in = true;
        let mut all_in_partial = true;
        scan_box(&[-5, -5], &[5, 5], |pt| {
            let x = v(pt);
            all_in &= complete.support_contains(&x).unwrap();
            all_in_partial &= incomplete.support_contains(&x).unwrap();
        });
        assert!(all_in);
        assert!(!all_in_partial);
    }

    #[test]
    fn stellar_subdivision_of_plane_fan() {
        let f = p2();
        let blown = f.stellar_subdivision(0).unwrap();
        assert_eq!(blown.n_rays(), 4);
        assert_eq!(blown.rays()[3], v(&[1, 1]));
        assert_eq!(blown.n_max_cones(), 4);
        assert!(blown.is_complete().unwrap());
        assert!(blown.is_smooth());
        // Second subdivision still yields a smooth complete fan.
        let twice = blown.stellar_subdivision(1).unwrap();
        assert_eq!(twice.n_rays(), 5);
        assert!(twice.is_complete().unwrap());
        assert!(twice.is_smooth());
    }

    #[test]
    fn stellar_subdivision_rejects_singular_cones() {
        let half = Fan::new(2, vec![v(&[0, 1]), v(&[2, -1])], vec![vec![0, 1]]).unwrap();
        assert!(half.stellar_subdivision(0).is_err());
        assert!(p2().stellar_subdivision(7).is_err());
    }

    #[test]
    fn json_round_trip_and_fingerprint() {
        let f = p2();
        let s = f.to_json_string();
        assert_eq!(
            s,
            r#"{"rank":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[0,2]]}"#
        );
        let g = Fan::from_json_str(&s).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.fingerprint(), g.fingerprint());
        assert_eq!(f.fingerprint().len(), 64);
        let other = Fan::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -2])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        assert_ne!(f.fingerprint(), other.fingerprint());
    }

    #[test]
    fn json_parsing_rejects_garbage() {
        assert!(Fan::from_json_str("{").is_err());
        // Structurally fine but not a fan.
        let bad = r#"{"rank":2,"rays":[[2,0],[0,1]],"max_cones":[[0,1]]}"#;
        assert!(matches!(Fan::from_json_str(bad), Err(Error::InvalidFan(_))));
    }
}
