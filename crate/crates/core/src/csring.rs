//! Ledger of completing-manifold classes and their Chas-Sullivan products.
//!
//! A class is recorded as `(primitive direction, iterate k, a)` where `a` is a
//! mod-2 homology class of the critical manifold `Sigma` of the primitive
//! geodesic, pushed into the loop space through the completing manifold of
//! the `k`-th iterate. Its degree is `index(kH) + deg a`.
//!
//! Products of classes along the same direction are known to leading order:
//! the leading term is `(H, k1 + k2, a . b)` with `.` the intersection product
//! of `Sigma`. When one factor is `[Sigma]` the product is exactly that term;
//! otherwise, when `a . b != 0`, it is nonzero with that leading term plus an
//! undetermined part of lower energy; when `a . b = 0` nothing is claimed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::check::{CheckItem, CheckResult};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::geodesics;
use crate::rational::{RatVec, Rational};
use crate::rootspace::SymmetricSpaceData;
use crate::spectrum;

/// A mod-2 combination of ring basis elements, stored as the set of basis
/// indices with coefficient 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement(BTreeSet<usize>);

impl RingElement {
    pub fn zero() -> Self {
        RingElement(BTreeSet::new())
    }

    pub fn basis(i: usize) -> Self {
        RingElement(BTreeSet::from([i]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Adds a basis element (mod 2).
    pub fn toggle(&mut self, i: usize) {
        if !self.0.remove(&i) {
            self.0.insert(i);
        }
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        RingElement(self.0.symmetric_difference(&other.0).copied().collect())
    }
}

/// Homology of `Sigma` with mod-2 coefficients and its intersection product,
/// given by structure constants on a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionRing {
    labels: Vec<String>,
    degrees: Vec<u32>,
    products: BTreeMap<(usize, usize), RingElement>,
    fundamental: usize,
    point: usize,
}

impl IntersectionRing {
    /// Builds and validates a ring. Each `(i, j, k)` triple adds `k` to `i . j`
    /// (so listing a triple twice cancels it).
    pub fn new(
        basis: Vec<(String, u32)>,
        products: &[(String, String, String)],
        fundamental: &str,
        point: &str,
    ) -> Result<Self> {
        let ring = Self::assemble(basis, products, fundamental, point)?;
        let report = ring.validate(Execution::default());
        if let Some(bad) = report.failures().next() {
            return Err(Error::InvalidRing(format!("{}: {}", bad.name, bad.detail)));
        }
        Ok(ring)
    }

    fn assemble(
        basis: Vec<(String, u32)>,
        products: &[(String, String, String)],
        fundamental: &str,
        point: &str,
    ) -> Result<Self> {
        let (labels, degrees): (Vec<String>, Vec<u32>) = basis.into_iter().unzip();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate label `{l}`")));
            }
        }
        let find = |l: &str| {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::InvalidRing(format!("unknown label `{l}`")))
        };
        let mut table: BTreeMap<(usize, usize), RingElement> = BTreeMap::new();
        for (a, b, c) in products {
            let key = (find(a)?, find(b)?);
            table.entry(key).or_default().toggle(find(c)?);
        }
        table.retain(|_, v| !v.is_zero());
        Ok(IntersectionRing {
            fundamental: find(fundamental)?,
            point: find(point)?,
            labels,
            degrees,
            products: table,
        })
    }

    /// The two-class ring `{point, [Sigma]}` with all other products zero.
    /// It is a truncation valid for any closed `Sigma` of the given dimension.
    pub fn two_class(dim_sigma: u32) -> Self {
        let (pt, fund) = ("pt".to_string(), "Sigma".to_string());
        let products = vec![
            (fund.clone(), fund.clone(), fund.clone()),
            (fund.clone(), pt.clone(), pt.clone()),
            (pt.clone(), fund.clone(), pt.clone()),
        ];
        if dim_sigma == 0 {
            // Sigma is a point: pt and [Sigma] coincide in degree 0.
            return IntersectionRing::new(
                vec![(fund.clone(), 0)],
                &[(fund.clone(), fund.clone(), fund.clone())],
                &fund,
                &fund,
            )
            .expect("point ring is valid");
        }
        IntersectionRing::new(
            vec![(pt.clone(), 0), (fund.clone(), dim_sigma)],
            &products,
            &fund,
            &pt,
        )
        .expect("two-class ring is valid")
    }

    /// Mod-2 homology of `S^2 x S^3`, the unit tangent bundle of `S^3`.
    /// Basis: `pt`, `A = [S^2 x pt]`, `B = [pt x S^3]`, `Sigma`; the only
    /// product beyond the unit is `A . B = B . A = pt`.
    pub fn s2_times_s3() -> Self {
        let s = |x: &str| x.to_string();
        let basis = vec![(s("pt"), 0), (s("A"), 2), (s("B"), 3), (s("Sigma"), 5)];
        let mut products = Vec::new();
        for l in ["pt", "A", "B", "Sigma"] {
            products.push((s("Sigma"), s(l), s(l)));
            if l != "Sigma" {
                products.push((s(l), s("Sigma"), s(l)));
            }
        }
        products.push((s("A"), s("B"), s("pt")));
        products.push((s("B"), s("A"), s("pt")));
        IntersectionRing::new(basis, &products, "Sigma", "pt").expect("S2 x S3 ring is valid")
    }

    pub fn dim_sigma(&self) -> u32 {
        self.degrees[self.fundamental]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn fundamental(&self) -> RingElement {
        RingElement::basis(self.fundamental)
    }

    pub fn point(&self) -> RingElement {
        RingElement::basis(self.point)
    }

    /// Parses `a+b+...` into an element.
    pub fn element(&self, expr: &str) -> Result<RingElement> {
        let mut e = RingElement::zero();
        for part in expr.split('+').map(str::trim) {
            if part == "0" {
                continue;
            }
            let i = self
                .labels
                .iter()
                .position(|l| l == part)
                .ok_or_else(|| Error::Parse(format!("unknown ring label `{part}`")))?;
            e.toggle(i);
        }
        Ok(e)
    }

    pub fn render(&self, e: &RingElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        e.terms()
            .map(|i| self.labels[i].as_str())
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn basis_product(&self, i: usize, j: usize) -> RingElement {
        self.products.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// The intersection product, extended bilinearly over Z/2.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for i in a.terms() {
            for j in b.terms() {
                out = out.add(&self.basis_product(i, j));
            }
        }
        out
    }

    /// Degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self, e: &RingElement) -> Option<u32> {
        let mut degs = e.terms().map(|i| self.degrees[i]);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Exhaustive checks of the ring axioms over basis pairs and triples.
    pub fn validate(&self, exec: Execution) -> CheckResult {
        let n = self.len();
        let dim = self.dim_sigma();
        let mut report = CheckResult::default();
        report.push(CheckItem::flag(
            "point_degree_zero",
            self.degrees[self.point] == 0,
            "",
        ));
        report.push(CheckItem::flag(
            "degrees_within_dim",
            self.degrees.iter().all(|&d| d <= dim),
            format!("dim Sigma = {dim}"),
        ));
        let mut bad_grading = Vec::new();
        for (&(i, j), v) in &self.products {
            for k in v.terms() {
                if self.degrees[k] as i64
                    != self.degrees[i] as i64 + self.degrees[j] as i64 - dim as i64
                {
                    bad_grading.push(format!(
                        "{}.{} -> {}",
                        self.labels[i], self.labels[j], self.labels[k]
                    ));
                }
            }
        }
        report.push(CheckItem::flag(
            "graded",
            bad_grading.is_empty(),
            bad_grading.join("; "),
        ));
        let fund = self.fundamental();
        let unit_fail: Vec<String> = (0..n)
            .filter(|&i| {
                let x = RingElement::basis(i);
                self.mul(&fund, &x) != x || self.mul(&x, &fund) != x
            })
            .map(|i| self.labels[i].clone())
            .collect();
        report.push(CheckItem::flag(
            "unit",
            unit_fail.is_empty(),
            unit_fail.join("; "),
        ));
        let comm_fail: Vec<String> = (0..n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .filter(|&(i, j)| self.basis_product(i, j) != self.basis_product(j, i))
            .map(|(i, j)| format!("{}.{}", self.labels[i], self.labels[j]))
            .collect();
        report.push(CheckItem::flag(
            "commutative",
            comm_fail.is_empty(),
            comm_fail.join("; "),
        ));
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .collect();
        let associative = exec::all_slice(exec, &triples, |&(i, j, k)| {
            let (a, b, c) = (
                RingElement::basis(i),
                RingElement::basis(j),
                RingElement::basis(k),
            );
            self.mul(&self.mul(&a, &b), &c) == self.mul(&a, &self.mul(&b, &c))
        });
        report.push(CheckItem::flag("associative", associative, ""));
        report
    }

    pub fn to_file(&self) -> RingFile {
        let mut products = Vec::new();
        for (&(i, j), v) in &self.products {
            for k in v.terms() {
                products.push([
                    self.labels[i].clone(),
                    self.labels[j].clone(),
                    self.labels[k].clone(),
                ]);
            }
        }
        RingFile {
            basis: self
                .labels
                .iter()
                .cloned()
                .zip(self.degrees.iter().copied())
                .collect(),
            fundamental: self.labels[self.fundamental].clone(),
            point: self.labels[self.point].clone(),
            products,
        }
    }
}

/// On-disk ring table (TOML).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    /// `(label, degree)` pairs.
    pub basis: Vec<(String, u32)>,
    pub fundamental: String,
    pub point: String,
    /// `(i, j, k)`: `k` appears in `i . j`.
    #[serde(default)]
    pub products: Vec<[String; 3]>,
}

impl RingFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.message().to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("ring file serializes")
    }

    pub fn into_ring(self) -> Result<IntersectionRing> {
        let triples: Vec<(String, String, String)> = self
            .products
            .into_iter()
            .map(|[a, b, c]| (a, b, c))
            .collect();
        IntersectionRing::new(self.basis, &triples, &self.fundamental, &self.point)
    }
}

pub fn load_ring_file(path: &Path) -> Result<IntersectionRing> {
    RingFile::parse(&std::fs::read_to_string(path)?)?.into_ring()
}

/// A class `f_* p_!(a)` of the completing manifold of the `k`-th iterate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletingClass {
    pub space: Arc<SymmetricSpaceData>,
    pub ring: Arc<IntersectionRing>,
    pub primitive: RatVec,
    pub iterate_k: u64,
    pub sigma_elt: RingElement,
    pub index: u64,
    pub degree: u64,
}

impl fmt::Display for CompletingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(H={}, k={}, {}) in degree {}",
            self.primitive,
            self.iterate_k,
            self.ring.render(&self.sigma_elt),
            self.degree
        )
    }
}

pub fn make_class(
    space: &Arc<SymmetricSpaceData>,
    ring: &Arc<IntersectionRing>,
    primitive: &RatVec,
    k: u64,
    a: &RingElement,
) -> Result<CompletingClass> {
    if !spectrum::is_prime(space, primitive)? {
        return Err(Error::NotPrimitive(primitive.to_string()));
    }
    if k == 0 {
        return Err(Error::Unsupported(
            "iterate count must be at least 1".into(),
        ));
    }
    let sigma = space.dim_n() + geodesics::mu(space, primitive)?;
    if ring.dim_sigma() != sigma {
        return Err(Error::RingMismatch {
            ring: ring.dim_sigma(),
            sigma,
        });
    }
    if a.is_zero() {
        return Err(Error::ZeroClass);
    }
    if a.terms().any(|i| i >= ring.len()) {
        return Err(Error::Unsupported("element outside the ring basis".into()));
    }
    let deg_a = ring.homogeneous_degree(a).ok_or(Error::Inhomogeneous)?;
    let index = geodesics::index(space, &primitive.scale(Rational::from(k as i128)))?;
    Ok(CompletingClass {
        space: Arc::clone(space),
        ring: Arc::clone(ring),
        primitive: primitive.clone(),
        iterate_k: k,
        sigma_elt: a.clone(),
        index,
        degree: index + deg_a as u64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProductStatus {
    /// The product equals the leading class.
    ExactlyEqual,
    /// The product is nonzero; its leading term is known, the rest is not.
    NonzeroWithLeadingTerm,
    /// `a . b = 0`: no statement.
    Indeterminate,
}

impl fmt::Display for ProductStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductVerdict {
    /// `None` stands for the zero leading term.
    pub leading: Option<CompletingClass>,
    pub status: ProductStatus,
    /// `deg c1 + deg c2 - n`, the degree of the product.
    pub degree: i64,
}

pub fn cs_product(c1: &CompletingClass, c2: &CompletingClass) -> Result<ProductVerdict> {
    if c1.space != c2.space {
        return Err(Error::Unsupported(
            "classes live on different spaces".into(),
        ));
    }
    if c1.ring != c2.ring {
        return Err(Error::Unsupported(
            "classes use different intersection rings".into(),
        ));
    }
    if c1.primitive != c2.primitive {
        return Err(Error::Unsupported(
            "products across different prime directions are not determined".into(),
        ));
    }
    let degree = c1.degree as i64 + c2.degree as i64 - c1.space.dim_n() as i64;
    let ring = &c1.ring;
    let ab = ring.mul(&c1.sigma_elt, &c2.sigma_elt);
    if ab.is_zero() {
        return Ok(ProductVerdict {
            leading: None,
            status: ProductStatus::Indeterminate,
            degree,
        });
    }
    let leading = make_class(
        &c1.space,
        ring,
        &c1.primitive,
        c1.iterate_k + c2.iterate_k,
        &ab,
    )?;
    let fund = ring.fundamental();
    let status = if c1.sigma_elt == fund || c2.sigma_elt == fund {
        ProductStatus::ExactlyEqual
    } else {
        ProductStatus::NonzeroWithLeadingTerm
    };
    Ok(ProductVerdict {
        leading: Some(leading),
        status,
        degree,
    })
}

/// One row of a power report: `Theta^k` is nonzero in the given degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerRow {
    pub k: u64,
    pub degree: u64,
    pub nonzero: bool,
}

/// Powers of `Theta = (H, 1, [Sigma])` up to `k_max`, by repeated products.
pub fn power_report(theta: &CompletingClass, k_max: u64) -> Result<Vec<PowerRow>> {
    if theta.sigma_elt != theta.ring.fundamental() || theta.iterate_k != 1 {
        return Err(Error::Unsupported(
            "power reports need the fundamental class of the prime iterate".into(),
        ));
    }
    let mut rows = Vec::new();
    let mut current = theta.clone();
    for k in 1..=k_max {
        if k > 1 {
            let v = cs_product(&current, theta)?;
            match (v.status, v.leading) {
                (ProductStatus::ExactlyEqual, Some(next)) => current = next,
                _ => unreachable!("[Sigma] is a unit, so Theta powers are exact"),
            }
        }
        rows.push(PowerRow {
            k,
            degree: current.degree,
            nonzero: true,
        });
    }
    Ok(rows)
}
