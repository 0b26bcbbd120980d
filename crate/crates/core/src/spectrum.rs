//! Critical manifolds of the energy functional.
//!
//! Critical manifolds of the free loop space correspond one-to-one to the
//! lattice points in the closed positive Weyl chamber. This module walks the
//! lattice inside the energy ellipsoid, keeps the dominant points, and builds
//! the Morse ledger: for each critical manifold its index, the dimension of
//! the manifold `Sigma` (`n + mu`), and primality.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::geodesics;
use crate::rational::{gcd_all, RatVec, Rational};
use crate::rootspace::SymmetricSpaceData;
use crate::weyl;

/// One critical manifold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalEntry {
    pub h_dom: RatVec,
    pub lattice_coords: Vec<i128>,
    pub energy: Rational,
    pub index: u64,
    pub mu: u32,
    /// `dim Sigma = n + mu`, which is also the nullity.
    pub dim_sigma: u32,
    pub prime: bool,
    pub primitive: RatVec,
    pub iterate_k: u64,
    /// Degree of the class of the completing manifold's W-cycle.
    pub w_class_degree: u64,
    /// Whether the coproduct of that class is known to vanish (rank >= 2).
    pub w_class_coproduct_trivial: bool,
}

/// The critical manifolds up to an energy bound, sorted by energy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorseLedger {
    pub space: String,
    pub energy_bound: Rational,
    /// The constant loops: index 0, a copy of `M`.
    pub constant_index: u64,
    pub constant_dim: u32,
    pub entries: Vec<CriticalEntry>,
}

impl MorseLedger {
    /// `(index, dim Sigma)` per entry: entry `i` contributes the summand
    /// `H_{* - index}(Sigma)` to the homology of the free loop space.
    pub fn splitting_trace(&self) -> Vec<(u64, u32)> {
        self.entries
            .iter()
            .map(|e| (e.index, e.dim_sigma))
            .collect()
    }

    pub fn prime_count(&self) -> usize {
        self.entries.iter().filter(|e| e.prime).count()
    }

    /// Partial Morse series `P_M(t) + sum_i t^{index_i} P_{Sigma_i}(t)` from
    /// user-supplied Poincare polynomials (coefficient lists, lowest degree
    /// first). Returns `None` if any polynomial is missing.
    pub fn morse_series<F>(&self, constant: &[u64], sigma_poly: F) -> Option<Vec<u64>>
    where
        F: Fn(&CriticalEntry) -> Option<Vec<u64>>,
    {
        let mut series = constant.to_vec();
        for e in &self.entries {
            let p = sigma_poly(e)?;
            let shift = e.index as usize;
            if series.len() < shift + p.len() {
                series.resize(shift + p.len(), 0);
            }
            for (d, c) in p.iter().enumerate() {
                series[shift + d] += c;
            }
        }
        Some(series)
    }

    /// Fixed-width text table, one row per critical manifold.
    pub fn render_table(&self) -> String {
        let header = [
            "H",
            "coords",
            "energy",
            "index",
            "nullity",
            "prime",
            "primitive",
            "k",
            "W-class",
        ];
        let rows: Vec<[String; 9]> = self
            .entries
            .iter()
            .map(|e| {
                let coords: Vec<String> = e.lattice_coords.iter().map(|c| c.to_string()).collect();
                [
                    e.h_dom.to_string(),
                    format!("({})", coords.join(", ")),
                    e.energy.to_string(),
                    e.index.to_string(),
                    e.dim_sigma.to_string(),
                    if e.prime { "yes" } else { "no" }.to_string(),
                    e.primitive.to_string(),
                    e.iterate_k.to_string(),
                    if e.w_class_coproduct_trivial {
                        "trivial"
                    } else {
                        "unknown"
                    }
                    .to_string(),
                ]
            })
            .collect();
        let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: &[String]| -> String {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let mut out = String::new();
        out.push_str(&format!(
            "# critical manifolds of {} with 0 < E <= {}\n",
            self.space, self.energy_bound
        ));
        out.push_str(&format!(
            "# constant loops: index {}, dim {}\n",
            self.constant_index, self.constant_dim
        ));
        let header: Vec<String> = header.iter().map(|s| s.to_string()).collect();
        out.push_str(&line(&header));
        out.push('\n');
        for row in &rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        out.push_str(&format!(
            "# {} entries, {} prime\n",
            self.entries.len(),
            self.prime_count()
        ));
        out
    }

    /// One JSON object per line; rationals as `"p/q"` strings.
    pub fn render_records(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("entry serializes"));
            out.push('\n');
        }
        out
    }
}

/// Prime iff the lattice coordinates are coprime.
pub fn is_prime(space: &SymmetricSpaceData, h: &RatVec) -> Result<bool> {
    let coords = space.lattice_coords(h)?;
    if h.is_zero() {
        return Err(Error::ZeroDirection);
    }
    Ok(gcd_all(&coords) == 1)
}

/// Lattice coordinates `c != 0` with `E(Bc) <= bound`, in lexicographic order.
pub fn lattice_points_within(
    space: &SymmetricSpaceData,
    bound: Rational,
    exec: Execution,
) -> Vec<Vec<i128>> {
    let b = space.lattice().basis_matrix();
    let q = b.transpose().mul(&space.gram().mul(b));
    let q_inv = q.inverse().expect("lattice Gram matrix is invertible");
    let two_bound = bound * Rational::from(2);
    // |c_i| <= sqrt(2 E (Q^-1)_ii) on the ellipsoid c^T Q c <= 2E.
    let radii: Vec<i128> = (0..space.rank())
        .map(|i| (two_bound * q_inv.get(i, i)).floor_sqrt())
        .collect();
    let firsts: Vec<i128> = (-radii[0]..=radii[0]).collect();
    exec::flat_map_slice(exec, &firsts, |&c0| {
        let mut found = Vec::new();
        let mut c: Vec<i128> = std::iter::once(c0)
            .chain(radii[1..].iter().map(|r| -r))
            .collect();
        loop {
            if c.iter().any(|&x| x != 0) {
                let cv = RatVec(c.iter().map(|&x| Rational::from(x)).collect());
                if cv.dot(&q.mul_vec(&cv)) <= two_bound {
                    found.push(c.clone());
                }
            }
            // Odometer over coordinates 1..r.
            let mut i = c.len();
            loop {
                if i == 1 {
                    return found;
                }
                i -= 1;
                if c[i] < radii[i] {
                    c[i] += 1;
                    break;
                }
                c[i] = -radii[i];
            }
        }
    })
}

fn entry(space: &SymmetricSpaceData, coords: Vec<i128>) -> CriticalEntry {
    let h = space.lattice().point(&coords);
    let report = geodesics::report(space, &h).expect("nonzero lattice point");
    CriticalEntry {
        energy: report.energy,
        index: report.index,
        mu: report.mu,
        dim_sigma: report.nullity,
        prime: report.prime,
        primitive: report.primitive,
        iterate_k: report.iterate_k,
        w_class_degree: report.index,
        w_class_coproduct_trivial: space.rank() >= 2,
        lattice_coords: coords,
        h_dom: h,
    }
}

pub fn enumerate_critical(
    space: &SymmetricSpaceData,
    energy_bound: Rational,
) -> Result<MorseLedger> {
    enumerate_critical_with(space, energy_bound, Execution::default())
}

/// All dominant lattice points with `0 < E(H) <= energy_bound`.
pub fn enumerate_critical_with(
    space: &SymmetricSpaceData,
    energy_bound: Rational,
    exec: Execution,
) -> Result<MorseLedger> {
    if !energy_bound.is_positive() {
        return Err(Error::InvalidBound(energy_bound.to_string()));
    }
    let simple = weyl::simple_roots(space);
    let dominant: Vec<Vec<i128>> = lattice_points_within(space, energy_bound, exec)
        .into_iter()
        .filter(|c| {
            let h = space.lattice().point(c);
            simple
                .iter()
                .all(|&s| !space.root_value(s, &h).is_negative())
        })
        .collect();
    let mut entries: Vec<CriticalEntry> =
        exec::map_slice(exec, &dominant, |c| entry(space, c.clone()));
    entries.sort_by(|a, b| a.energy.cmp(&b.energy).then_with(|| a.h_dom.cmp(&b.h_dom)));
    Ok(MorseLedger {
        space: space.name().to_string(),
        energy_bound,
        constant_index: 0,
        constant_dim: space.dim_n(),
        entries,
    })
}

pub fn count_prime(space: &SymmetricSpaceData, energy_bound: Rational) -> Result<usize> {
    Ok(enumerate_critical(space, energy_bound)?.prime_count())
}
