//! The Weyl group generated by root reflections, chamber membership, and
//! canonicalization of points into the closed positive chamber.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::matrix::RatMatrix;
use crate::rational::RatVec;
use crate::rootspace::SymmetricSpaceData;

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// Finite reflection group as an explicit, sorted list of matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylGroup {
    elements: Vec<RatMatrix>,
    generators: Vec<RatMatrix>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[RatMatrix] {
        &self.elements
    }

    /// One reflection per positive root, in root order.
    pub fn generators(&self) -> &[RatMatrix] {
        &self.generators
    }

    /// The Weyl orbit of `h`, sorted and deduplicated.
    pub fn orbit(&self, h: &RatVec) -> Vec<RatVec> {
        let set: BTreeSet<RatVec> = self.elements.iter().map(|w| w.mul_vec(h)).collect();
        set.into_iter().collect()
    }
}

/// Where a point sits relative to the walls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberPosition {
    pub point: RatVec,
    pub dominant: bool,
    /// Positive roots vanishing on the point.
    pub stabilizing_walls: Vec<usize>,
}

pub fn reflect(space: &SymmetricSpaceData, root: usize, h: &RatVec) -> Result<RatVec> {
    space.check_root(root)?;
    space.check_dim(h)?;
    Ok(space.reflect(root, h))
}

pub fn generate_group(space: &SymmetricSpaceData) -> Result<WeylGroup> {
    generate_group_with(space, DEFAULT_GROUP_CAP, Execution::default())
}

/// Breadth-first closure of the reflection generators. The frontier product
/// step may run in parallel; deduplication is exact and the result sorted.
pub fn generate_group_with(
    space: &SymmetricSpaceData,
    cap: usize,
    exec: Execution,
) -> Result<WeylGroup> {
    let generators: Vec<RatMatrix> = (0..space.num_roots())
        .map(|i| space.reflection_matrix(i))
        .collect();
    let identity = RatMatrix::identity(space.rank());
    let mut seen: BTreeSet<RatMatrix> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let products = exec::flat_map_slice(exec, &frontier, |m| {
            generators.iter().map(|g| g.mul(m)).collect()
        });
        let mut next = Vec::new();
        for p in products {
            if !seen.contains(&p) {
                seen.insert(p.clone());
                next.push(p);
                if seen.len() > cap {
                    return Err(Error::CapExceeded(cap));
                }
            }
        }
        frontier = next;
    }
    Ok(WeylGroup {
        elements: seen.into_iter().collect(),
        generators,
    })
}

/// Positive roots that are not the sum of two (possibly equal) positive roots.
pub fn simple_roots(space: &SymmetricSpaceData) -> Vec<usize> {
    let roots: Vec<&RatVec> = space
        .positive_roots()
        .iter()
        .map(|r| &r.functional)
        .collect();
    (0..roots.len())
        .filter(|&k| {
            !(0..roots.len()).any(|i| (i..roots.len()).any(|j| roots[i].add(roots[j]) == *roots[k]))
        })
        .collect()
}

/// Closed-chamber dominance: every simple root is nonnegative on `h`.
pub fn is_dominant(space: &SymmetricSpaceData, h: &RatVec) -> bool {
    simple_roots(space)
        .into_iter()
        .all(|s| !space.root_value(s, h).is_negative())
}

pub fn chamber_position(space: &SymmetricSpaceData, h: &RatVec) -> ChamberPosition {
    let values = space.root_values(h);
    ChamberPosition {
        point: h.clone(),
        dominant: is_dominant(space, h),
        stabilizing_walls: values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_zero())
            .map(|(i, _)| i)
            .collect(),
    }
}

/// Moves `h` into the closed positive chamber by repeatedly reflecting in the
/// first simple root that is negative on it. Returns the dominant point and
/// the reflection word (root indices, in application order).
pub fn canonicalize(space: &SymmetricSpaceData, h: &RatVec) -> Result<(RatVec, Vec<usize>)> {
    space.check_dim(h)?;
    let simple = simple_roots(space);
    let mut current = h.clone();
    let mut word = Vec::new();
    // A reduced word never exceeds the number of positive roots; anything
    // longer means the data is not a root system.
    let limit = 4 * space.num_roots().max(1) * space.num_roots().max(1) + 16;
    while let Some(&s) = simple
        .iter()
        .find(|&&s| space.root_value(s, &current).is_negative())
    {
        if word.len() >= limit {
            return Err(Error::CapExceeded(limit));
        }
        current = space.reflect(s, &current);
        word.push(s);
    }
    Ok((current, word))
}

/// Applies a reflection word to a point.
pub fn apply_word(space: &SymmetricSpaceData, word: &[usize], h: &RatVec) -> RatVec {
    word.iter().fold(h.clone(), |p, &s| space.reflect(s, &p))
}
