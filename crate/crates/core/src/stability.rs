//! Decompositions of a family into at most `s` stars.
//!
//! A family is a union of `s` trivial intersecting families exactly when `s`
//! vertices cover it, so [`stars_cover`] is an exact cover search.
//! [`stability_decompose`] instead runs the matching-based pipeline: take a
//! maximum matching `F_1..F_s`, form `B_i` (edges meeting `F_i` and no other
//! `F_j`), read a center off each `B_i`, then check that the centers cover.
//! The pipeline is sound but can fail on small instances; it reports where.

use std::fmt;

use num_traits::Zero;

use crate::count::{binomial, pow, Count};
use crate::error::{invalid, Result};
use crate::family::{EdgeSet, Family, Vertex};
use crate::matching::{cover_within, maximum_matching};
use crate::quantities::{co_norm_of, codegree_table, high_codegree_family, trivial_center};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarDecomposition {
    centers: Vec<Vertex>,
    parts: Vec<Family>,
}

impl StarDecomposition {
    /// Assigns every edge to the smallest center it contains.
    fn assign(h: &Family, centers: &[Vertex]) -> Option<Self> {
        let mut centers = centers.to_vec();
        centers.sort();
        centers.dedup();
        let mut buckets: Vec<Vec<EdgeSet>> = vec![Vec::new(); centers.len()];
        for e in h {
            let slot = centers.iter().position(|c| e.contains(c.label()))?;
            buckets[slot].push(*e);
        }
        let parts = buckets.into_iter().map(|b| Family::from_sorted(h.n(), h.k(), b)).collect();
        Some(StarDecomposition { centers, parts })
    }

    pub fn centers(&self) -> &[Vertex] {
        &self.centers
    }

    pub fn parts(&self) -> &[Family] {
        &self.parts
    }

    /// Parts partition `h`, each part lies in the star of its center, and
    /// there are at most `s` centers.
    pub fn verify(&self, h: &Family, s: usize) -> bool {
        if self.centers.len() > s || self.centers.len() != self.parts.len() {
            return false;
        }
        let mut all: Vec<EdgeSet> = self.parts.iter().flat_map(|p| p.edges().iter().copied()).collect();
        all.sort();
        let partitions = all.len() == h.len() && all.iter().zip(h.edges()).all(|(a, b)| a == b);
        let starred = self
            .centers
            .iter()
            .zip(&self.parts)
            .all(|(c, p)| p.iter().all(|e| e.contains(c.label())));
        partitions && starred
    }

    /// The full union of the stars at these centers.
    pub fn augmented(&self, n: u32, k: u32) -> Result<Family> {
        let centers = EdgeSet::from_vertices(self.centers.iter().map(|c| c.label()))?;
        let all = Family::complete(n, k)?;
        Ok(all.filter(|e| !e.is_disjoint(centers)))
    }
}

/// Where the pipeline stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    /// `B_i` has no common vertex.
    NonTrivialPart { index: usize, matched: EdgeSet },
    /// An edge avoids all centers read off the `B_i`.
    UncoveredEdge { edge: EdgeSet, centers: Vec<Vertex> },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NonTrivialPart { index, matched } => {
                write!(f, "part B_{index} for matched edge {matched} has no common vertex")
            }
            Diagnostic::UncoveredEdge { edge, centers } => {
                let c: Vec<String> = centers.iter().map(|v| v.to_string()).collect();
                write!(f, "edge {edge} avoids the centers {{{}}}", c.join(","))
            }
        }
    }
}

/// A decomposition into at most `s` stars iff `τ(h) <= s`.
pub fn stars_cover(h: &Family, s: usize) -> Option<StarDecomposition> {
    let cover = cover_within(h, s)?;
    StarDecomposition::assign(h, &cover.centers())
}

/// Runs the matching-based decomposition pipeline. Requires `ν(h) = s`.
pub fn stability_decompose(h: &Family, s: usize) -> Result<std::result::Result<StarDecomposition, Diagnostic>> {
    let matching = maximum_matching(h);
    if matching.len() != s {
        return invalid(format!("matching number is {}, expected s = {s}", matching.len()));
    }
    let matched = matching.edges();
    let mut centers = Vec::with_capacity(s);
    for (i, fi) in matched.iter().enumerate() {
        let others = matched
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(EdgeSet::EMPTY, |acc, (_, e)| acc.union(*e));
        let part = h.filter(|e| !e.is_disjoint(*fi) && e.is_disjoint(others));
        // part always contains F_i, so an empty part cannot occur here
        match trivial_center(&part) {
            Some(c) => centers.push(c),
            None => return Ok(Err(Diagnostic::NonTrivialPart { index: i + 1, matched: *fi })),
        }
    }
    let center_set = EdgeSet::from_vertices(centers.iter().map(|c| c.label()))?;
    if let Some(edge) = h.iter().find(|e| e.is_disjoint(center_set)) {
        centers.sort();
        return Ok(Err(Diagnostic::UncoveredEdge { edge: *edge, centers }));
    }
    Ok(Ok(StarDecomposition::assign(h, &centers).expect("centers cover every edge")))
}

/// Both sides of `co_p(h) <= (sk)^p (C(n,k-1) - |K|) + (n-k+1)^p |K|`, where
/// `K` is the set of `(k-1)`-sets with codegree at least `sk + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowBound {
    pub lhs: Count,
    pub rhs: Count,
    pub shadow_size: usize,
}

impl ShadowBound {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }

    /// `rhs - lhs`, or zero when violated.
    pub fn slack(&self) -> Count {
        if self.holds() {
            &self.rhs - &self.lhs
        } else {
            Count::zero()
        }
    }
}

pub fn shadow_counting_bound(h: &Family, s: u32, p: u32) -> Result<ShadowBound> {
    if h.k() < 2 {
        return invalid("the counting bound needs k >= 2");
    }
    let (n, k) = (h.n(), h.k());
    let table = codegree_table(h)?;
    let lhs = co_norm_of(&table, p);
    let shadow_size = high_codegree_family(h, s * k + 1)?.len();
    let low = binomial(n as i64, k as i64 - 1) - Count::from(shadow_size);
    let rhs = low * pow(u64::from(s * k), p) + Count::from(shadow_size) * pow(u64::from(n - k + 1), p);
    Ok(ShadowBound { lhs, rhs, shadow_size })
}

/// Whether `co_p(h)` stays within the shadow counting bound plus `extra`.
pub fn check_shadow_counting_bound(h: &Family, s: u32, p: u32, extra: &Count) -> Result<bool> {
    let b = shadow_counting_bound(h, s, p)?;
    Ok(b.lhs <= b.rhs + extra)
}
