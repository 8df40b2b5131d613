//! Codegree-based quantities of a uniform family.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::count::{binomial, pow, Count};
use crate::error::{invalid, Result};
use crate::family::{EdgeSet, Family, Vertex};

/// Number of edges of `h` containing the `(k-1)`-set `e`.
pub fn codegree(h: &Family, e: EdgeSet) -> Result<u32> {
    if h.k() == 0 || e.len() != h.k() - 1 {
        return invalid(format!(
            "codegree needs a set of size {}, got {e}",
            h.k().saturating_sub(1)
        ));
    }
    if e.max_vertex().is_some_and(|v| v > h.n()) {
        return invalid(format!("{e} is not contained in [{}]", h.n()));
    }
    Ok(h.iter().filter(|f| e.is_subset(**f)).count() as u32)
}

/// Codegrees of all `(k-1)`-subsets of `[n]`. Zero entries are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodegreeTable {
    n: u32,
    ridge_size: u32,
    entries: BTreeMap<EdgeSet, u32>,
}

impl CodegreeTable {
    pub fn get(&self, e: &EdgeSet) -> u32 {
        self.entries.get(e).copied().unwrap_or(0)
    }

    /// Size of the sets indexed by this table (`k - 1`).
    pub fn ridge_size(&self) -> u32 {
        self.ridge_size
    }

    /// `(set, codegree)` pairs with positive codegree, in lexicographic order.
    pub fn nonzero(&self) -> impl Iterator<Item = (EdgeSet, u32)> + '_ {
        self.entries.iter().map(|(e, d)| (*e, *d))
    }

    pub fn nonzero_len(&self) -> usize {
        self.entries.len()
    }

    /// `C(n, k-1)`: the number of indexed sets, zeros included.
    pub fn domain_size(&self) -> Count {
        binomial(self.n as i64, self.ridge_size as i64)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().map(|&d| u64::from(d)).sum()
    }

    pub fn max(&self) -> u32 {
        self.entries.values().copied().max().unwrap_or(0)
    }

    /// `Σ f(d_E)` over all indexed sets, zeros included via `f(0)`.
    fn sum_over_domain(&self, f: impl Fn(u32) -> Count) -> Count {
        let mut acc: Count = self.entries.values().map(|&d| f(d)).sum();
        let zero_term = f(0);
        if !zero_term.is_zero() {
            let zeros = self.domain_size() - Count::from(self.entries.len());
            acc += zeros * zero_term;
        }
        acc
    }
}

pub fn codegree_table(h: &Family) -> Result<CodegreeTable> {
    if h.k() < 2 {
        return invalid("codegree table requires k >= 2");
    }
    let mut entries = BTreeMap::new();
    for f in h {
        for ridge in f.facets() {
            *entries.entry(ridge).or_insert(0u32) += 1;
        }
    }
    Ok(CodegreeTable { n: h.n(), ridge_size: h.k() - 1, entries })
}

/// `co_p(h) = Σ_E d(E)^p` over all `(k-1)`-subsets `E` of `[n]`, with `0^0 = 1`.
pub fn co_norm(h: &Family, p: u32) -> Result<Count> {
    let table = codegree_table(h)?;
    Ok(co_norm_of(&table, p))
}

pub fn co_norm_of(table: &CodegreeTable, p: u32) -> Count {
    table.sum_over_domain(|d| pow(u64::from(d), p))
}

/// Number of copies of the sunflower with `l` petals and a `(k-1)`-core:
/// `Σ_E C(d(E), l)`.
pub fn sunflower_count(h: &Family, l: u32) -> Result<Count> {
    if l < 2 {
        return invalid(format!("sunflowers need at least 2 petals, got {l}"));
    }
    let table = codegree_table(h)?;
    Ok(sunflower_count_of(&table, l))
}

pub fn sunflower_count_of(table: &CodegreeTable, l: u32) -> Count {
    table.sum_over_domain(|d| binomial(i64::from(d), i64::from(l)))
}

/// The `(k-1)`-uniform family of sets with codegree at least `d` in `h`.
pub fn high_codegree_family(h: &Family, d: u32) -> Result<Family> {
    let table = codegree_table(h)?;
    if d == 0 {
        return Family::complete(h.n(), h.k() - 1);
    }
    let edges = table.nonzero().filter(|&(_, c)| c >= d).map(|(e, _)| e).collect();
    Ok(Family::from_sorted(h.n(), h.k() - 1, edges))
}

/// Edges of `h` disjoint from `avoid`; the ground set is unchanged.
pub fn restrict_avoid(h: &Family, avoid: EdgeSet) -> Family {
    h.filter(|e| e.is_disjoint(avoid))
}

/// `Δ(h)`, the largest codegree; 0 for the empty family.
pub fn max_codegree(h: &Family) -> Result<u32> {
    Ok(codegree_table(h)?.max())
}

/// Smallest vertex lying in every edge.
///
/// The empty family is treated as a (vacuous) star and yields vertex 1.
pub fn trivial_center(h: &Family) -> Option<Vertex> {
    let common = h.iter().fold(crate::family::ground_mask(h.n()), |m, e| m & e.mask());
    EdgeSet::from_mask(common).min_vertex().map(|v| Vertex::new(v).expect("label within [1, 64]"))
}
