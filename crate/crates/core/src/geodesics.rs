//! Conjugate points, Morse index, nullity and `mu` of the geodesic rays
//! `t -> tH` in the maximal flat.
//!
//! The ray meets the singular plane `(alpha, n)` at `t = n / alpha(H)`. Every
//! interior time at which some root takes a nonzero integer value is a
//! conjugate time, and its multiplicity is the sum of the multiplicities of
//! all such roots. Coincident crossings are merged.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::check::{CheckItem, CheckResult};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::rational::{gcd_all, RatVec, Rational};
use crate::rootspace::SymmetricSpaceData;

/// One interior conjugate time along a ray.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugateTime {
    pub t: Rational,
    pub multiplicity: u32,
    /// `(root index, level n)` for every plane `alpha(tH) = n` crossed at `t`.
    pub contributing_roots: Vec<(usize, i128)>,
}

pub fn crossing_times(space: &SymmetricSpaceData, h: &RatVec) -> Result<Vec<ConjugateTime>> {
    space.check_dim(h)?;
    if h.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let mut by_time: BTreeMap<Rational, ConjugateTime> = BTreeMap::new();
    for (root, value) in space.root_values(h).into_iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        let magnitude = value.abs();
        let sign: i128 = if value.is_negative() { -1 } else { 1 };
        // Levels j with 0 < j / |alpha(H)| < 1.
        let last = magnitude.ceil() - 1;
        for j in 1..=last {
            let t = Rational::from(j) / magnitude;
            let entry = by_time.entry(t).or_insert_with(|| ConjugateTime {
                t,
                multiplicity: 0,
                contributing_roots: Vec::new(),
            });
            entry.multiplicity += space.multiplicity(root);
            entry.contributing_roots.push((root, sign * j));
        }
    }
    Ok(by_time.into_values().collect())
}

fn require_closed(space: &SymmetricSpaceData, h: &RatVec) -> Result<Vec<i128>> {
    let coords = space.lattice_coords(h)?;
    if h.is_zero() {
        return Err(Error::ZeroDirection);
    }
    Ok(coords)
}

/// Morse index: the total multiplicity of interior conjugate times.
pub fn index(space: &SymmetricSpaceData, h: &RatVec) -> Result<u64> {
    require_closed(space, h)?;
    Ok(crossing_times(space, h)?
        .iter()
        .map(|c| c.multiplicity as u64)
        .sum())
}

/// `mu = dim K - dim K_c`: multiplicities of the roots not vanishing on `H`.
pub fn mu(space: &SymmetricSpaceData, h: &RatVec) -> Result<u32> {
    space.check_dim(h)?;
    if h.is_zero() {
        return Err(Error::ZeroDirection);
    }
    Ok(space
        .root_values(h)
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, _)| space.multiplicity(i))
        .sum())
}

/// Dimension of the critical manifold through the closed geodesic: `n + mu`.
pub fn nullity(space: &SymmetricSpaceData, h: &RatVec) -> Result<u32> {
    require_closed(space, h)?;
    Ok(space.dim_n() + mu(space, h)?)
}

/// Splits a nonzero lattice point as `k * primitive` with `k` the gcd of its
/// lattice coordinates.
pub fn primitive_decomposition(space: &SymmetricSpaceData, h: &RatVec) -> Result<(RatVec, u64)> {
    let coords = require_closed(space, h)?;
    let k = gcd_all(&coords);
    let prim: Vec<i128> = coords.iter().map(|c| c / k).collect();
    Ok((space.lattice().point(&prim), k as u64))
}

/// Everything known about one closed geodesic `t -> tH`, `t in [0,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeodesicReport {
    pub h: RatVec,
    pub lattice_coords: Vec<i128>,
    pub conjugate_times: Vec<ConjugateTime>,
    pub index: u64,
    pub mu: u32,
    pub nullity: u32,
    pub energy: Rational,
    pub prime: bool,
    pub primitive: RatVec,
    pub iterate_k: u64,
}

pub fn report(space: &SymmetricSpaceData, h: &RatVec) -> Result<GeodesicReport> {
    let lattice_coords = require_closed(space, h)?;
    let conjugate_times = crossing_times(space, h)?;
    let index = conjugate_times.iter().map(|c| c.multiplicity as u64).sum();
    let mu = mu(space, h)?;
    let (primitive, iterate_k) = primitive_decomposition(space, h)?;
    Ok(GeodesicReport {
        h: h.clone(),
        lattice_coords,
        conjugate_times,
        index,
        mu,
        nullity: space.dim_n() + mu,
        energy: space.energy(h),
        prime: iterate_k == 1,
        primitive,
        iterate_k,
    })
}

/// Reports for many directions at once; output order matches input order.
pub fn batch_reports(
    space: &SymmetricSpaceData,
    hs: &[RatVec],
    exec: Execution,
) -> Vec<Result<GeodesicReport>> {
    exec::map_slice(exec, hs, |h| report(space, h))
}

impl GeodesicReport {
    pub fn render(&self, space: &SymmetricSpaceData) -> String {
        let mut s = String::new();
        use std::fmt::Write;
        let coords: Vec<String> = self.lattice_coords.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(s, "space: {}", space.name());
        let _ = writeln!(s, "H: {}", self.h);
        let _ = writeln!(s, "lattice_coords: ({})", coords.join(", "));
        let _ = writeln!(s, "energy: {}", self.energy);
        let _ = writeln!(
            s,
            "primitive: {}  iterate: {}  prime: {}",
            self.primitive, self.iterate_k, self.prime
        );
        let _ = writeln!(s, "conjugate_times: {}", self.conjugate_times.len());
        for c in &self.conjugate_times {
            let planes: Vec<String> = c
                .contributing_roots
                .iter()
                .map(|(r, n)| format!("({},{})", space.root_label(*r), n))
                .collect();
            let _ = writeln!(
                s,
                "  t = {:<6} multiplicity {}  planes {}",
                c.t.to_string(),
                c.multiplicity,
                planes.join(" ")
            );
        }
        let _ = writeln!(s, "index: {}", self.index);
        let _ = writeln!(s, "mu: {}", self.mu);
        let _ = write!(s, "nullity: {}", self.nullity);
        s
    }
}

impl fmt::Display for ConjugateTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={} (mult {})", self.t, self.multiplicity)
    }
}

/// Checks the iteration identities for the `k`-th iterate of a primitive
/// lattice point, computing each side independently:
///
/// * `ind(kH) = k ind(H) + (k-1) mu`
/// * `(ind + null)(kH) = k ind(H) + k mu + n`
pub fn iterate_check(
    space: &SymmetricSpaceData,
    primitive: &RatVec,
    k: u64,
) -> Result<CheckResult> {
    let (_, g) = primitive_decomposition(space, primitive)?;
    if g != 1 {
        return Err(Error::NotPrimitive(primitive.to_string()));
    }
    if k == 0 {
        return Err(Error::Unsupported(
            "iterate count must be at least 1".into(),
        ));
    }
    let base_index = index(space, primitive)?;
    let mu_h = mu(space, primitive)? as u64;
    let n = space.dim_n() as u64;
    let iterate = primitive.scale(Rational::from(k as i128));
    let iter_index = index(space, &iterate)?;
    let iter_nullity = nullity(space, &iterate)? as u64;

    let mut result = CheckResult::default();
    result.push(CheckItem::identity(
        "index_iteration",
        iter_index,
        k * base_index + (k - 1) * mu_h,
    ));
    result.push(CheckItem::identity(
        "index_plus_nullity_iteration",
        iter_index + iter_nullity,
        k * base_index + k * mu_h + n,
    ));
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootspace::catalog;

    fn v(xs: &[i64]) -> RatVec {
        RatVec::from_ints(xs)
    }

    #[test]
    fn five_conjugate_times_on_gr2c4() {
        let g = catalog("gr2c4").unwrap();
        let times = crossing_times(&g, &v(&[2, 1])).unwrap();
        let ts: Vec<Rational> = times.iter().map(|c| c.t).collect();
        assert_eq!(
            ts,
            vec![
                Rational::new(1, 4),
                Rational::new(1, 3),
                Rational::new(1, 2),
                Rational::new(2, 3),
                Rational::new(3, 4)
            ]
        );
        let mults: Vec<u32> = times.iter().map(|c| c.multiplicity).collect();
        assert_eq!(mults, vec![1, 2, 2, 2, 1]);
        assert_eq!(index(&g, &v(&[2, 1])).unwrap(), 8);
        assert_eq!(mu(&g, &v(&[2, 1])).unwrap(), 6);
        assert_eq!(nullity(&g, &v(&[2, 1])).unwrap(), 14);
    }

    #[test]
    fn sphere_values() {
        let s3 = catalog("sphere(3)").unwrap();
        let times = crossing_times(&s3, &v(&[2])).unwrap();
        assert_eq!(times.len(), 1);
        assert_eq!(
            (times[0].t, times[0].multiplicity),
            (Rational::new(1, 2), 2)
        );
        assert_eq!(nullity(&s3, &v(&[2])).unwrap(), 5);
        for n in 2..7 {
            let s = catalog(&format!("sphere({n})")).unwrap();
            assert_eq!(index(&s, &v(&[2])).unwrap(), (n - 1) as u64);
            assert_eq!(mu(&s, &v(&[-6])).unwrap(), n - 1);
        }
    }

    #[test]
    fn cpn_nullity() {
        let c2 = catalog("cpn(2)").unwrap();
        assert_eq!(nullity(&c2, &v(&[1])).unwrap(), 7);
        assert_eq!(index(&c2, &v(&[1])).unwrap(), 1);
    }

    #[test]
    fn wall_direction_mu() {
        let g = catalog("gr2c4").unwrap();
        assert_eq!(mu(&g, &v(&[1, 1])).unwrap(), 4);
    }

    #[test]
    fn no_crossings_when_values_are_small() {
        let g = catalog("gr2c4").unwrap();
        // alpha values: 0, 1, 1, 1.
        let h = RatVec(vec![Rational::new(1, 2), Rational::new(1, 2)]);
        assert!(crossing_times(&g, &h).unwrap().is_empty());
        assert_eq!(index(&g, &h).unwrap(), 0);
    }

    #[test]
    fn error_paths() {
        let g = catalog("gr2c4").unwrap();
        assert_eq!(crossing_times(&g, &v(&[0, 0])), Err(Error::ZeroDirection));
        assert_eq!(mu(&g, &v(&[0, 0])), Err(Error::ZeroDirection));
        let off = RatVec(vec![Rational::new(1, 3), Rational::ZERO]);
        assert!(matches!(index(&g, &off), Err(Error::NotClosed(_))));
        assert!(matches!(nullity(&g, &off), Err(Error::NotClosed(_))));
        assert!(matches!(index(&g, &v(&[0, 0])), Err(Error::ZeroDirection)));
        assert!(matches!(
            index(&g, &v(&[1, 2, 3])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn iterate_examples() {
        let s3 = catalog("sphere(3)").unwrap();
        let check = iterate_check(&s3, &v(&[2]), 3).unwrap();
        assert!(check.passed());
        assert_eq!(index(&s3, &v(&[6])).unwrap(), 10);
        let g = catalog("gr2c4").unwrap();
        assert!(iterate_check(&g, &v(&[2, 1]), 2).unwrap().passed());
        assert_eq!(index(&g, &v(&[4, 2])).unwrap(), 22);
        assert!(iterate_check(&g, &v(&[2, 1]), 1).unwrap().passed());
        assert!(matches!(
            iterate_check(&g, &v(&[4, 2]), 2),
            Err(Error::NotPrimitive(_))
        ));
    }

    #[test]
    fn multiplicity_at_lattice_times_is_mu() {
        let g = catalog("gr2c4").unwrap();
        let h = v(&[6, 3]);
        let m = mu(&g, &h).unwrap();
        for c in crossing_times(&g, &h).unwrap() {
            if g.in_lattice(&h.scale(c.t)) {
                assert_eq!(c.multiplicity, m, "t = {}", c.t);
            }
        }
    }

    #[test]
    fn report_fields() {
        let g = catalog("gr2c4").unwrap();
        let r = report(&g, &v(&[4, 2])).unwrap();
        assert_eq!(r.lattice_coords, vec![2, 4]);
        assert_eq!((r.iterate_k, r.prime), (2, false));
        assert_eq!(r.primitive, v(&[2, 1]));
        assert_eq!(r.energy, Rational::from(10));
        assert_eq!(r.nullity, g.dim_n() + r.mu);
    }
}
