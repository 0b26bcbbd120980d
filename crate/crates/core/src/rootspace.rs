//! Restricted-root data of a compact symmetric space.
//!
//! A space is described entirely by its rank, the positive restricted roots
//! with multiplicities, a Gram matrix on the maximal abelian subspace and the
//! unit lattice (directions `H` with `Exp(H) = o`). Root functionals are
//! stored as vectors `a` of the subspace and act through the Gram pairing,
//! `alpha(H) = a^T G H`.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::check::{CheckItem, CheckResult};
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rational::{RatVec, Rational};

/// A positive restricted root and its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootDatum {
    pub functional: RatVec,
    pub multiplicity: u32,
}

impl RootDatum {
    pub fn new(functional: RatVec, multiplicity: u32) -> Self {
        RootDatum {
            functional,
            multiplicity,
        }
    }
}

/// The unit lattice, given by a basis of the maximal abelian subspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    basis: Vec<RatVec>,
    // Columns are basis vectors.
    basis_matrix: RatMatrix,
    inverse: RatMatrix,
}

impl Lattice {
    pub fn new(basis: Vec<RatVec>) -> Result<Self> {
        let r = basis.len();
        if r == 0 || basis.iter().any(|b| b.dim() != r) {
            return Err(Error::Malformed(
                "lattice_basis: expected rank-many vectors of length rank".into(),
            ));
        }
        let basis_matrix = RatMatrix::from_columns(&basis);
        let inverse = basis_matrix.inverse().ok_or_else(|| {
            Error::Malformed("lattice_independent: lattice basis is linearly dependent".into())
        })?;
        Ok(Lattice {
            basis,
            basis_matrix,
            inverse,
        })
    }

    pub fn basis(&self) -> &[RatVec] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `h` in the lattice basis (rational in general).
    pub fn rational_coords(&self, h: &RatVec) -> RatVec {
        self.inverse.mul_vec(h)
    }

    /// Integer coordinates of `h`, or `None` when `h` is not a lattice point.
    pub fn coords(&self, h: &RatVec) -> Option<Vec<i128>> {
        self.rational_coords(h)
            .iter()
            .map(Rational::to_integer)
            .collect()
    }

    pub fn contains(&self, h: &RatVec) -> bool {
        self.coords(h).is_some()
    }

    /// The lattice point with the given integer coordinates.
    pub fn point(&self, coords: &[i128]) -> RatVec {
        let c = RatVec(coords.iter().map(|&x| Rational::from(x)).collect());
        self.basis_matrix.mul_vec(&c)
    }

    pub fn basis_matrix(&self) -> &RatMatrix {
        &self.basis_matrix
    }
}

/// The single source of truth for one symmetric space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetricSpaceData {
    name: String,
    rank: usize,
    positive_roots: Vec<RootDatum>,
    gram: RatMatrix,
    lattice: Lattice,
    dim_n: u32,
    z2_orientable_cycles: bool,
    // G * a for every root, so that alpha(H) is a plain dot product.
    covectors: Vec<RatVec>,
}

pub type SharedSpace = Arc<SymmetricSpaceData>;

impl SymmetricSpaceData {
    /// Assembles a space, rejecting structurally unusable data. Semantic
    /// invariants (dimension count, lattice integrality, Weyl invariance) are
    /// left to [`validate`] so that they can be reported rather than refused.
    ///
    /// `dim_n` defaults to `rank + sum of multiplicities`.
    pub fn new(
        name: impl Into<String>,
        gram: RatMatrix,
        positive_roots: Vec<RootDatum>,
        lattice_basis: Vec<RatVec>,
        dim_n: Option<u32>,
        z2_orientable_cycles: bool,
    ) -> Result<Self> {
        let rank = gram.rows();
        if rank == 0 || !gram.is_square() {
            return Err(Error::Malformed(
                "gram: must be a nonempty square matrix".into(),
            ));
        }
        if !gram.is_symmetric() {
            return Err(Error::Malformed(
                "gram_symmetric: Gram matrix is not symmetric".into(),
            ));
        }
        if !gram.is_positive_definite() {
            return Err(Error::Malformed(
                "gram_positive_definite: Gram matrix is not positive definite".into(),
            ));
        }
        for (i, root) in positive_roots.iter().enumerate() {
            if root.functional.dim() != rank {
                return Err(Error::Malformed(format!(
                    "rank_consistent: root {i} has length {} but rank is {rank}",
                    root.functional.dim()
                )));
            }
            if root.functional.is_zero() {
                return Err(Error::Malformed(format!("roots_nonzero: root {i} is zero")));
            }
            if root.multiplicity == 0 {
                return Err(Error::Malformed(format!(
                    "multiplicities_positive: root {i} has multiplicity 0"
                )));
            }
        }
        if lattice_basis.len() != rank {
            return Err(Error::Malformed(format!(
                "rank_consistent: {} lattice basis vectors for rank {rank}",
                lattice_basis.len()
            )));
        }
        let lattice = Lattice::new(lattice_basis)?;
        let covectors = positive_roots
            .iter()
            .map(|r| gram.mul_vec(&r.functional))
            .collect();
        let total: u32 = positive_roots.iter().map(|r| r.multiplicity).sum();
        Ok(SymmetricSpaceData {
            name: name.into(),
            rank,
            dim_n: dim_n.unwrap_or(rank as u32 + total),
            positive_roots,
            gram,
            lattice,
            z2_orientable_cycles,
            covectors,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn positive_roots(&self) -> &[RootDatum] {
        &self.positive_roots
    }

    pub fn num_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dim_n(&self) -> u32 {
        self.dim_n
    }

    pub fn z2_orientable_cycles(&self) -> bool {
        self.z2_orientable_cycles
    }

    pub fn multiplicity(&self, root: usize) -> u32 {
        self.positive_roots[root].multiplicity
    }

    /// Sum of all root multiplicities.
    pub fn total_multiplicity(&self) -> u32 {
        self.positive_roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Errors unless `h` has length `rank`.
    pub fn check_dim(&self, h: &RatVec) -> Result<()> {
        if h.dim() == self.rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank,
                got: h.dim(),
            })
        }
    }

    pub fn check_root(&self, root: usize) -> Result<()> {
        if root < self.positive_roots.len() {
            Ok(())
        } else {
            Err(Error::InvalidRootIndex(root))
        }
    }

    /// `alpha_root(H)`.
    pub fn root_value(&self, root: usize, h: &RatVec) -> Rational {
        self.covectors[root].dot(h)
    }

    pub fn root_values(&self, h: &RatVec) -> Vec<Rational> {
        self.covectors.iter().map(|w| w.dot(h)).collect()
    }

    /// The covector `G a` of a root, so that `alpha(H) = covector . H`.
    pub fn covector(&self, root: usize) -> &RatVec {
        &self.covectors[root]
    }

    /// Gram inner product.
    pub fn inner(&self, a: &RatVec, b: &RatVec) -> Rational {
        a.dot(&self.gram.mul_vec(b))
    }

    /// `E(H) = |H|^2 / 2` in the Gram metric.
    pub fn energy(&self, h: &RatVec) -> Rational {
        self.inner(h, h) * Rational::new(1, 2)
    }

    /// Reflection in the wall of a root: `H - 2 alpha(H)/<a,a> a`.
    pub fn reflect(&self, root: usize, h: &RatVec) -> RatVec {
        let a = &self.positive_roots[root].functional;
        let coeff = Rational::from(2) * self.root_value(root, h) / self.inner(a, a);
        h.sub(&a.scale(coeff))
    }

    /// Reflection matrix of a root acting on coordinates.
    pub fn reflection_matrix(&self, root: usize) -> RatMatrix {
        let a = &self.positive_roots[root].functional;
        let w = &self.covectors[root];
        let c = Rational::from(2) / self.inner(a, a);
        let mut m = RatMatrix::identity(self.rank);
        for i in 0..self.rank {
            for j in 0..self.rank {
                m.set(i, j, m.get(i, j) - c * a[i] * w[j]);
            }
        }
        m
    }

    pub fn in_lattice(&self, h: &RatVec) -> bool {
        h.dim() == self.rank && self.lattice.contains(h)
    }

    /// Integer lattice coordinates, or `NotClosed`.
    pub fn lattice_coords(&self, h: &RatVec) -> Result<Vec<i128>> {
        self.check_dim(h)?;
        self.lattice
            .coords(h)
            .ok_or_else(|| Error::NotClosed(h.to_string()))
    }

    /// Human-readable label of a root, e.g. `#1[1,1]`.
    pub fn root_label(&self, root: usize) -> String {
        let f = &self.positive_roots[root].functional;
        let coords: Vec<String> = f.iter().map(|x| x.to_string()).collect();
        format!("#{root}[{}]", coords.join(","))
    }

    pub fn to_file(&self) -> SpaceFile {
        SpaceFile {
            name: self.name.clone(),
            rank: self.rank,
            gram: self.gram.row_major().to_vec(),
            roots: self
                .positive_roots
                .iter()
                .map(|r| RootEntry {
                    functional: r.functional.0.clone(),
                    multiplicity: r.multiplicity,
                })
                .collect(),
            lattice_basis: self.lattice.basis().iter().map(|b| b.0.clone()).collect(),
            dim_n: Some(self.dim_n),
            z2_orientable_cycles: Some(self.z2_orientable_cycles),
        }
    }
}

impl fmt::Display for SymmetricSpaceData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "space: {}", self.name)?;
        writeln!(f, "rank: {}", self.rank)?;
        writeln!(f, "dim_n: {}", self.dim_n)?;
        writeln!(f, "gram: {:?}", self.gram)?;
        writeln!(f, "positive roots:")?;
        for (i, r) in self.positive_roots.iter().enumerate() {
            writeln!(
                f,
                "  {}  functional {}  multiplicity {}",
                i, r.functional, r.multiplicity
            )?;
        }
        write!(f, "lattice basis:")?;
        for b in self.lattice.basis() {
            write!(f, " {b}")?;
        }
        Ok(())
    }
}

/// Knobs for [`validate_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationOptions {
    /// Also require closure of the root set under its own reflections and
    /// integral Cartan numbers.
    pub strict: bool,
    /// In strict mode, accept non-reduced systems (both `a` and `2a` roots).
    pub allow_nonreduced: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            strict: false,
            allow_nonreduced: true,
        }
    }
}

pub fn validate(space: &SymmetricSpaceData) -> CheckResult {
    validate_with(space, ValidationOptions::default())
}

pub fn validate_with(space: &SymmetricSpaceData, opts: ValidationOptions) -> CheckResult {
    let mut report = CheckResult::default();
    let r = space.rank();

    report.push(CheckItem::flag(
        "gram_symmetric",
        space.gram.is_symmetric(),
        "",
    ));
    report.push(CheckItem::flag(
        "gram_positive_definite",
        space.gram.is_positive_definite(),
        "",
    ));
    report.push(CheckItem::flag(
        "roots_nonzero",
        space.positive_roots.iter().all(|a| !a.functional.is_zero()),
        "",
    ));
    report.push(CheckItem::flag(
        "multiplicities_positive",
        space.positive_roots.iter().all(|a| a.multiplicity >= 1),
        "",
    ));
    let distinct = (0..space.num_roots()).all(|i| {
        (0..i).all(|j| space.positive_roots[i].functional != space.positive_roots[j].functional)
    });
    report.push(CheckItem::flag("roots_distinct", distinct, ""));
    report.push(CheckItem::flag(
        "lattice_independent",
        !space.lattice.basis_matrix().determinant().is_zero(),
        "",
    ));
    report.push(CheckItem::identity(
        "dimension_consistent",
        space.dim_n as u64,
        r as u64 + space.total_multiplicity() as u64,
    ));

    let mut bad_integral = Vec::new();
    for (i, x) in space.lattice.basis().iter().enumerate() {
        for (a, v) in space.root_values(x).iter().enumerate() {
            if !v.is_integer() {
                bad_integral.push(format!("root {a} on X_{i} = {v}"));
            }
        }
    }
    report.push(CheckItem::flag(
        "lattice_integral",
        bad_integral.is_empty(),
        bad_integral.join("; "),
    ));

    let mut bad_invariant = Vec::new();
    for (i, x) in space.lattice.basis().iter().enumerate() {
        for a in 0..space.num_roots() {
            if !space.lattice.contains(&space.reflect(a, x)) {
                bad_invariant.push(format!("s_{a}(X_{i})"));
            }
        }
    }
    report.push(CheckItem::flag(
        "lattice_weyl_invariant",
        bad_invariant.is_empty(),
        bad_invariant.join("; "),
    ));

    if opts.strict {
        let functionals: Vec<&RatVec> =
            space.positive_roots.iter().map(|a| &a.functional).collect();
        let mut not_closed = Vec::new();
        let mut non_integral = Vec::new();
        let mut non_reduced = Vec::new();
        for i in 0..space.num_roots() {
            let ai = functionals[i];
            let norm_i = space.inner(ai, ai);
            for (j, &aj) in functionals.iter().enumerate() {
                let image = space.reflect(i, aj);
                let neg = image.scale(-Rational::ONE);
                if !functionals.iter().any(|&f| *f == image || *f == neg) {
                    not_closed.push(format!("s_{i}(root {j})"));
                }
                let cartan = Rational::from(2) * space.inner(ai, aj) / norm_i;
                if !cartan.is_integer() {
                    non_integral.push(format!("<{j},{i}> = {cartan}"));
                }
                if i != j {
                    if let Some(c) = proportionality(ai, aj) {
                        if c.abs() != Rational::ONE {
                            non_reduced.push(format!("root {j} = {c} * root {i}"));
                        }
                    }
                }
            }
        }
        report.push(CheckItem::flag(
            "root_system_closed",
            not_closed.is_empty(),
            not_closed.join("; "),
        ));
        report.push(CheckItem::flag(
            "cartan_integers",
            non_integral.is_empty(),
            non_integral.join("; "),
        ));
        if !opts.allow_nonreduced {
            report.push(CheckItem::flag(
                "reduced",
                non_reduced.is_empty(),
                non_reduced.join("; "),
            ));
        }
    }
    report
}

/// `Some(c)` with `b = c a` when the two vectors are proportional.
pub fn proportionality(a: &RatVec, b: &RatVec) -> Option<Rational> {
    let pivot = a.iter().position(|x| !x.is_zero())?;
    let c = b[pivot] / a[pivot];
    (a.scale(c) == *b).then_some(c)
}

fn rank_one(name: String, roots: Vec<RootDatum>, generator: i64) -> SymmetricSpaceData {
    SymmetricSpaceData::new(
        name,
        RatMatrix::identity(1),
        roots,
        vec![RatVec::from_ints(&[generator])],
        None,
        true,
    )
    .expect("catalog entry is well formed")
}

/// The n-sphere: one root of multiplicity `n - 1`; the lattice generator is
/// the prime great circle `alpha(H) = 2`.
pub fn sphere(n: u32) -> Result<SymmetricSpaceData> {
    if n < 2 {
        return Err(Error::NotInCatalog(format!("sphere({n})")));
    }
    Ok(rank_one(
        format!("sphere({n})"),
        vec![RootDatum::new(RatVec::from_ints(&[1]), n - 1)],
        2,
    ))
}

/// Complex projective space CP^n: roots `a` (multiplicity `2n - 2`, absent
/// when n = 1) and `2a` (multiplicity 1).
pub fn cpn(n: u32) -> Result<SymmetricSpaceData> {
    if n < 1 {
        return Err(Error::NotInCatalog(format!("cpn({n})")));
    }
    let mut roots = Vec::new();
    if n >= 2 {
        roots.push(RootDatum::new(RatVec::from_ints(&[1]), 2 * n - 2));
    }
    roots.push(RootDatum::new(RatVec::from_ints(&[2]), 1));
    Ok(rank_one(format!("cpn({n})"), roots, 1))
}

/// The complex Grassmannian of 2-planes in C^4 (restricted roots of type C2).
pub fn gr2c4() -> SymmetricSpaceData {
    SymmetricSpaceData::new(
        "gr2c4",
        RatMatrix::identity(2),
        vec![
            RootDatum::new(RatVec::from_ints(&[1, -1]), 2),
            RootDatum::new(RatVec::from_ints(&[1, 1]), 2),
            RootDatum::new(RatVec::from_ints(&[2, 0]), 1),
            RootDatum::new(RatVec::from_ints(&[0, 2]), 1),
        ],
        vec![
            RatVec::from_ints(&[1, 0]),
            RatVec(vec![Rational::new(1, 2), Rational::new(1, 2)]),
        ],
        None,
        true,
    )
    .expect("catalog entry is well formed")
}

/// Looks up a catalog entry. Accepted names: `sphere(n)` / `sphereN`,
/// `cpn(n)` / `cpnN`, `gr2c4`, and products joined by `*`.
pub fn catalog(name: &str) -> Result<SymmetricSpaceData> {
    let name = name.trim();
    if let Some((a, b)) = name.split_once('*') {
        let left = catalog(a)?;
        let right = catalog(b)?;
        return Ok(crate::products::compose(&left, &right).space);
    }
    let not_found = || Error::NotInCatalog(name.to_string());
    let lower = name.to_ascii_lowercase();
    if lower == "gr2c4" {
        return Ok(gr2c4());
    }
    let param = |prefix: &str| -> Option<u32> {
        let rest = lower.strip_prefix(prefix)?;
        let rest = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(rest);
        rest.parse().ok()
    };
    if let Some(n) = param("sphere") {
        return sphere(n).map_err(|_| not_found());
    }
    if let Some(n) = param("cpn") {
        return cpn(n).map_err(|_| not_found());
    }
    Err(not_found())
}

/// On-disk space definition (TOML). Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub name: String,
    pub rank: usize,
    /// Row-major `rank x rank` Gram matrix.
    pub gram: Vec<Rational>,
    pub roots: Vec<RootEntry>,
    pub lattice_basis: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z2_orientable_cycles: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootEntry {
    pub functional: Vec<Rational>,
    pub multiplicity: u32,
}

impl SpaceFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.message().to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("space file serializes")
    }

    pub fn into_space(self) -> Result<SymmetricSpaceData> {
        if self.gram.len() != self.rank * self.rank {
            return Err(Error::Malformed(format!(
                "rank_consistent: gram has {} entries, expected {}",
                self.gram.len(),
                self.rank * self.rank
            )));
        }
        let gram = RatMatrix::from_row_major(self.rank, self.rank, self.gram);
        let roots = self
            .roots
            .into_iter()
            .map(|r| RootDatum::new(RatVec(r.functional), r.multiplicity))
            .collect();
        let basis = self.lattice_basis.into_iter().map(RatVec).collect();
        SymmetricSpaceData::new(
            self.name,
            gram,
            roots,
            basis,
            self.dim_n,
            self.z2_orientable_cycles.unwrap_or(false),
        )
    }
}

/// Reads and assembles a space definition file.
pub fn load_space_file(path: &Path) -> Result<SymmetricSpaceData> {
    let text = std::fs::read_to_string(path)?;
    SpaceFile::parse(&text)?.into_space()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_entries_validate() {
        for name in [
            "sphere(2)",
            "sphere(3)",
            "sphere(6)",
            "cpn(1)",
            "cpn(2)",
            "cpn(4)",
            "gr2c4",
        ] {
            let s = catalog(name).unwrap();
            let strict = ValidationOptions {
                strict: true,
                allow_nonreduced: true,
            };
            let rep = validate_with(&s, strict);
            assert!(rep.passed(), "{name}: {rep}");
        }
    }

    #[test]
    fn catalog_dimensions() {
        let s3 = catalog("sphere(3)").unwrap();
        assert_eq!(
            (s3.rank(), s3.num_roots(), s3.multiplicity(0), s3.dim_n()),
            (1, 1, 2, 3)
        );
        let g = catalog("gr2c4").unwrap();
        assert_eq!((g.rank(), g.num_roots(), g.dim_n()), (2, 4, 8));
        let c2 = catalog("cpn(2)").unwrap();
        let mults: Vec<u32> = c2.positive_roots().iter().map(|r| r.multiplicity).collect();
        assert_eq!(mults, vec![2, 1]);
        assert_eq!(c2.dim_n(), 4);
        assert_eq!(catalog("sphere3").unwrap(), s3);
        assert_eq!(catalog("cpn1").unwrap().dim_n(), 2);
    }

    #[test]
    fn unknown_names() {
        for bad in ["torus", "sphere(1)", "cpn(0)", "sphere(x)", ""] {
            assert!(matches!(catalog(bad), Err(Error::NotInCatalog(_))), "{bad}");
        }
    }

    #[test]
    fn dimension_mismatch_detected() {
        let s = SymmetricSpaceData::new(
            "bad",
            RatMatrix::identity(1),
            vec![RootDatum::new(RatVec::from_ints(&[1]), 2)],
            vec![RatVec::from_ints(&[2])],
            Some(5),
            false,
        )
        .unwrap();
        let rep = validate(&s);
        assert!(!rep.passed());
        assert!(!rep.get("dimension_consistent").unwrap().passed);
        assert!(rep.get("lattice_integral").unwrap().passed);
    }

    #[test]
    fn non_integral_lattice_detected() {
        let s = SymmetricSpaceData::new(
            "bad",
            RatMatrix::identity(1),
            vec![RootDatum::new(RatVec::from_ints(&[1]), 1)],
            vec![RatVec(vec![Rational::new(1, 2)])],
            None,
            false,
        )
        .unwrap();
        assert!(!validate(&s).get("lattice_integral").unwrap().passed);
    }

    #[test]
    fn structural_errors_name_the_invariant() {
        let zero_root = SymmetricSpaceData::new(
            "z",
            RatMatrix::identity(1),
            vec![RootDatum::new(RatVec::from_ints(&[0]), 1)],
            vec![RatVec::from_ints(&[1])],
            None,
            false,
        );
        assert!(matches!(zero_root, Err(Error::Malformed(m)) if m.starts_with("roots_nonzero")));
        let dependent = SymmetricSpaceData::new(
            "d",
            RatMatrix::identity(2),
            vec![],
            vec![RatVec::from_ints(&[1, 1]), RatVec::from_ints(&[2, 2])],
            None,
            false,
        );
        assert!(
            matches!(dependent, Err(Error::Malformed(m)) if m.starts_with("lattice_independent"))
        );
    }

    #[test]
    fn strict_mode_flags_non_root_systems() {
        // Roots e1 and e1+e2 are not closed under reflection.
        let s = SymmetricSpaceData::new(
            "odd",
            RatMatrix::identity(2),
            vec![
                RootDatum::new(RatVec::from_ints(&[1, 0]), 1),
                RootDatum::new(RatVec::from_ints(&[1, 1]), 1),
            ],
            vec![RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[0, 1])],
            None,
            false,
        )
        .unwrap();
        let rep = validate_with(
            &s,
            ValidationOptions {
                strict: true,
                allow_nonreduced: true,
            },
        );
        assert!(!rep.get("root_system_closed").unwrap().passed);
        // Non-reduced systems are rejected only when asked to.
        let cp = catalog("cpn(3)").unwrap();
        let reduced_only = ValidationOptions {
            strict: true,
            allow_nonreduced: false,
        };
        assert!(
            !validate_with(&cp, reduced_only)
                .get("reduced")
                .unwrap()
                .passed
        );
    }

    #[test]
    fn space_file_round_trip_and_unknown_keys() {
        let g = gr2c4();
        let text = g.to_file().to_toml();
        let back = SpaceFile::parse(&text).unwrap().into_space().unwrap();
        assert_eq!(back, g);
        let bad = format!("{text}\ncolour = \"blue\"\n");
        assert!(matches!(SpaceFile::parse(&bad), Err(Error::Parse(_))));
    }

    #[test]
    fn space_file_defaults_dimension() {
        let text = r#"
            name = "s4"
            rank = 1
            gram = [1]
            lattice_basis = [[2]]
            [[roots]]
            functional = [1]
            multiplicity = 3
        "#;
        let s = SpaceFile::parse(text).unwrap().into_space().unwrap();
        assert_eq!(s.dim_n(), 4);
        assert!(validate(&s).passed());
    }

    #[test]
    fn energy_and_reflection() {
        let g = gr2c4();
        assert_eq!(g.energy(&RatVec::from_ints(&[2, 1])), Rational::new(5, 2));
        assert_eq!(
            g.reflect(0, &RatVec::from_ints(&[2, 1])),
            RatVec::from_ints(&[1, 2])
        );
        let m = g.reflection_matrix(2);
        assert_eq!(
            m.mul_vec(&RatVec::from_ints(&[3, 1])),
            RatVec::from_ints(&[-3, 1])
        );
    }
}
