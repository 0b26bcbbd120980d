//! Products `M1 x M2` with the product metric.
//!
//! The maximal flat of a product is the orthogonal sum of the factors' flats,
//! roots of each factor are extended by zero on the other block, and the
//! unit lattice is the product lattice. Conjugate-point data therefore splits
//! factor by factor, which [`factor_check`] verifies numerically.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::check::{CheckItem, CheckResult};
use crate::error::{Error, Result};
use crate::geodesics::{self, ConjugateTime};
use crate::matrix::RatMatrix;
use crate::rational::{RatVec, Rational};
use crate::rootspace::{RootDatum, SymmetricSpaceData};

/// Block structure of a product space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductTag {
    pub components: [String; 2],
    pub ranks: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSpace {
    pub space: SymmetricSpaceData,
    pub tag: ProductTag,
    pub left: SymmetricSpaceData,
    pub right: SymmetricSpaceData,
}

impl ProductSpace {
    /// `(H1, H2)` as a vector of the product flat.
    pub fn join(&self, h1: &RatVec, h2: &RatVec) -> Result<RatVec> {
        self.left.check_dim(h1)?;
        self.right.check_dim(h2)?;
        Ok(h1.concat(h2))
    }

    pub fn split(&self, h: &RatVec) -> Result<(RatVec, RatVec)> {
        self.space.check_dim(h)?;
        let r1 = self.tag.ranks[0];
        Ok((RatVec(h.0[..r1].to_vec()), RatVec(h.0[r1..].to_vec())))
    }
}

pub fn compose(s1: &SymmetricSpaceData, s2: &SymmetricSpaceData) -> ProductSpace {
    let (r1, r2) = (s1.rank(), s2.rank());
    let r = r1 + r2;
    let mut gram = RatMatrix::zeros(r, r);
    for i in 0..r1 {
        for j in 0..r1 {
            gram.set(i, j, s1.gram().get(i, j));
        }
    }
    for i in 0..r2 {
        for j in 0..r2 {
            gram.set(r1 + i, r1 + j, s2.gram().get(i, j));
        }
    }
    let z1 = RatVec::zeros(r1);
    let z2 = RatVec::zeros(r2);
    let roots = s1
        .positive_roots()
        .iter()
        .map(|a| RootDatum::new(a.functional.concat(&z2), a.multiplicity))
        .chain(
            s2.positive_roots()
                .iter()
                .map(|a| RootDatum::new(z1.concat(&a.functional), a.multiplicity)),
        )
        .collect();
    let basis = s1
        .lattice()
        .basis()
        .iter()
        .map(|x| x.concat(&z2))
        .chain(s2.lattice().basis().iter().map(|x| z1.concat(x)))
        .collect();
    let space = SymmetricSpaceData::new(
        format!("{}*{}", s1.name(), s2.name()),
        gram,
        roots,
        basis,
        Some(s1.dim_n() + s2.dim_n()),
        s1.z2_orientable_cycles() && s2.z2_orientable_cycles(),
    )
    .expect("block assembly of well-formed factors is well formed");
    ProductSpace {
        space,
        tag: ProductTag {
            components: [s1.name().to_string(), s2.name().to_string()],
            ranks: [r1, r2],
        },
        left: s1.clone(),
        right: s2.clone(),
    }
}

struct FactorData {
    times: Vec<ConjugateTime>,
    index: u64,
    mu: u32,
    energy: Rational,
}

// A constant factor (H = 0) contributes nothing.
fn factor_data(space: &SymmetricSpaceData, h: &RatVec) -> Result<FactorData> {
    space.lattice_coords(h)?;
    if h.is_zero() {
        return Ok(FactorData {
            times: Vec::new(),
            index: 0,
            mu: 0,
            energy: Rational::ZERO,
        });
    }
    Ok(FactorData {
        times: geodesics::crossing_times(space, h)?,
        index: geodesics::index(space, h)?,
        mu: geodesics::mu(space, h)?,
        energy: space.energy(h),
    })
}

fn time_profile(times: &[ConjugateTime]) -> String {
    let parts: Vec<String> = times
        .iter()
        .map(|c| format!("{}:{}", c.t, c.multiplicity))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Compares the conjugate-point data of `(H1, H2)` in the product with the
/// data of the factors: the time sets unite with multiplicities adding at
/// coincident times, and index, `mu`, `nullity - n` and energy add.
pub fn factor_check(
    s1: &SymmetricSpaceData,
    s2: &SymmetricSpaceData,
    h1: &RatVec,
    h2: &RatVec,
) -> Result<CheckResult> {
    let f1 = factor_data(s1, h1)?;
    let f2 = factor_data(s2, h2)?;
    if h1.is_zero() && h2.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let product = compose(s1, s2);
    let h = product.join(h1, h2)?;
    let whole = &product.space;

    let times = geodesics::crossing_times(whole, &h)?;
    let mut union: BTreeMap<Rational, u32> = BTreeMap::new();
    for c in f1.times.iter().chain(&f2.times) {
        *union.entry(c.t).or_default() += c.multiplicity;
    }
    let union: Vec<ConjugateTime> = union
        .into_iter()
        .map(|(t, multiplicity)| ConjugateTime {
            t,
            multiplicity,
            contributing_roots: Vec::new(),
        })
        .collect();

    let mut result = CheckResult::default();
    result.push(CheckItem::identity(
        "conjugate_times_union",
        time_profile(&times),
        time_profile(&union),
    ));
    result.push(CheckItem::identity(
        "index_additive",
        geodesics::index(whole, &h)?,
        f1.index + f2.index,
    ));
    let mu = geodesics::mu(whole, &h)?;
    result.push(CheckItem::identity("mu_additive", mu, f1.mu + f2.mu));
    result.push(CheckItem::identity(
        "nullity_minus_n_additive",
        geodesics::nullity(whole, &h)? - whole.dim_n(),
        f1.mu + f2.mu,
    ));
    result.push(CheckItem::identity(
        "energy_additive",
        whole.energy(&h),
        f1.energy + f2.energy,
    ));
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SummandStatus {
    Trivial,
    Unknown,
}

impl fmt::Display for SummandStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SummandStatus::Trivial => "trivial",
            SummandStatus::Unknown => "unknown",
        })
    }
}

/// Coproduct verdict for the critical manifold of `(H1, H2)` with both
/// factors non-constant, plus the three-summand Kunneth bookkeeping of the
/// relative homology `H(LM, M)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KunnethReport {
    pub h: RatVec,
    /// Every class pushed forward from `Gamma1 x Gamma2` has trivial coproduct.
    pub coproduct_trivial: bool,
    /// `dim Gamma_i = index_i + dim Sigma_i` for each factor.
    pub gamma_dims: [u64; 2],
    pub summands: Vec<(String, SummandStatus)>,
}

impl fmt::Display for KunnethReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "H: {}", self.h)?;
        writeln!(
            f,
            "verdict: {}",
            if self.coproduct_trivial {
                "CoproductTrivial"
            } else {
                "Unknown"
            }
        )?;
        writeln!(
            f,
            "completing manifolds: dim Gamma1 = {}, dim Gamma2 = {}",
            self.gamma_dims[0], self.gamma_dims[1]
        )?;
        write!(f, "kunneth summands of H(LM, M):")?;
        for (name, status) in &self.summands {
            write!(f, "\n  {name}: {status}")?;
        }
        Ok(())
    }
}

pub fn coproduct_vanishing_report(
    product: &ProductSpace,
    h1: &RatVec,
    h2: &RatVec,
) -> Result<KunnethReport> {
    product.left.lattice_coords(h1)?;
    product.right.lattice_coords(h2)?;
    if h1.is_zero() || h2.is_zero() {
        return Err(Error::NotApplicable(
            "both factors must be non-constant closed geodesics".into(),
        ));
    }
    let gamma = |s: &SymmetricSpaceData, h: &RatVec| -> Result<u64> {
        Ok(geodesics::index(s, h)? + geodesics::nullity(s, h)? as u64)
    };
    Ok(KunnethReport {
        h: product.join(h1, h2)?,
        coproduct_trivial: true,
        gamma_dims: [gamma(&product.left, h1)?, gamma(&product.right, h2)?],
        summands: vec![
            (
                "H(LM1, M1) (x) H(LM2, M2)".to_string(),
                SummandStatus::Trivial,
            ),
            ("H(LM1, M1) (x) H(M2)".to_string(), SummandStatus::Unknown),
            ("H(M1) (x) H(LM2, M2)".to_string(), SummandStatus::Unknown),
        ],
    })
}
