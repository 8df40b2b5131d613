//! Uniform set systems on a ground set `[n] = {1, ..., n}`.
//!
//! Edges are stored as 64-bit masks (vertex `v` is bit `v - 1`), so the
//! ground set is capped at [`MAX_N`] vertices. Vertices are 1-based at every
//! public boundary.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{invalid, Error, Result};

/// Largest supported ground set.
pub const MAX_N: u32 = 64;

/// A vertex label in `[1, n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(u32);

impl Vertex {
    pub fn new(label: u32) -> Result<Self> {
        if label == 0 || label > MAX_N {
            return invalid(format!("vertex label {label} outside [1, {MAX_N}]"));
        }
        Ok(Vertex(label))
    }

    pub fn label(self) -> u32 {
        self.0
    }

    pub(crate) fn bit(self) -> u64 {
        1u64 << (self.0 - 1)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite subset of the ground set.
///
/// Ordering is lexicographic on the increasing vertex sequence, which is the
/// order used for edges throughout (`{1,2,5} < {1,3,4} < {2,3,4}`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EdgeSet(u64);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub fn from_mask(mask: u64) -> Self {
        EdgeSet(mask)
    }

    /// Builds a set from 1-based labels, rejecting repeats and out-of-range labels.
    pub fn from_vertices<I: IntoIterator<Item = u32>>(labels: I) -> Result<Self> {
        let mut mask = 0u64;
        for label in labels {
            let bit = Vertex::new(label)?.bit();
            if mask & bit != 0 {
                return invalid(format!("vertex {label} repeated"));
            }
            mask |= bit;
        }
        Ok(EdgeSet(mask))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: u32) -> bool {
        (1..=MAX_N).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn is_disjoint(self, other: EdgeSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: EdgeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & other.0)
    }

    pub fn with(self, v: u32) -> EdgeSet {
        EdgeSet(self.0 | (1u64 << (v - 1)))
    }

    pub fn without(self, v: u32) -> EdgeSet {
        EdgeSet(self.0 & !(1u64 << (v - 1)))
    }

    /// Smallest label, if any.
    pub fn min_vertex(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max_vertex(self) -> Option<u32> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// Labels in increasing order.
    pub fn vertices(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            Some(v + 1)
        })
    }

    /// All subsets obtained by deleting one vertex, in increasing order of the
    /// deleted vertex.
    pub fn facets(self) -> impl Iterator<Item = EdgeSet> {
        self.vertices().map(move |v| self.without(v))
    }
}

impl Ord for EdgeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // first position where the increasing sequences differ
        let low = diff.trailing_zeros();
        let above = if low == 63 { 0 } else { !0u64 << (low + 1) };
        if self.0 & (1u64 << low) != 0 {
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for EdgeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.vertices()).finish()
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.vertices().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

/// Mask of `[n]`.
pub fn ground_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All `k`-subsets of `[n]` in lexicographic order.
pub fn k_subsets(n: u32, k: u32) -> Vec<EdgeSet> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(EdgeSet::EMPTY);
        return out;
    }
    let k = k as usize;
    let mut idx: Vec<u32> = (1..=k as u32).collect();
    loop {
        out.push(EdgeSet(idx.iter().fold(0u64, |m, &v| m | (1u64 << (v - 1)))));
        // advance the rightmost position that still has room
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == n - (k - pos) as u32 {
            pos -= 1;
        }
        if pos == 0 {
            return out;
        }
        idx[pos - 1] += 1;
        for j in pos..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// A `k`-uniform family on `[n]`: sorted, duplicate-free edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    n: u32,
    k: u32,
    edges: Vec<EdgeSet>,
}

impl Family {
    /// Validates and canonicalizes; duplicate edges are an error.
    pub fn new<I: IntoIterator<Item = EdgeSet>>(n: u32, k: u32, edges: I) -> Result<Self> {
        check_params(n, k)?;
        let ground = ground_mask(n);
        let mut edges: Vec<EdgeSet> = edges.into_iter().collect();
        for e in &edges {
            if e.len() != k {
                return invalid(format!("edge {e} has size {}, expected {k}", e.len()));
            }
            if e.mask() & !ground != 0 {
                return invalid(format!("edge {e} is not contained in [{n}]"));
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return invalid(format!("duplicate edge {}", w[0]));
        }
        Ok(Family { n, k, edges })
    }

    pub fn empty(n: u32, k: u32) -> Result<Self> {
        Family::new(n, k, [])
    }

    /// Every `k`-subset of `[n]`.
    pub fn complete(n: u32, k: u32) -> Result<Self> {
        check_params(n, k)?;
        Ok(Family { n, k, edges: k_subsets(n, k) })
    }

    /// Caller guarantees the edges are valid, sorted and distinct.
    pub(crate) fn from_sorted(n: u32, k: u32, edges: Vec<EdgeSet>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.len() == k && e.mask() & !ground_mask(n) == 0));
        Family { n, k, edges }
    }

    /// Convenience constructor from label lists.
    pub fn from_lists(n: u32, k: u32, lists: &[&[u32]]) -> Result<Self> {
        let edges = lists
            .iter()
            .map(|l| EdgeSet::from_vertices(l.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Family::new(n, k, edges)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeSet] {
        &self.edges
    }

    pub fn iter(&self) -> std::slice::Iter<'_, EdgeSet> {
        self.edges.iter()
    }

    pub fn masks(&self) -> Vec<u64> {
        self.edges.iter().map(|e| e.mask()).collect()
    }

    pub fn contains(&self, e: &EdgeSet) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Union of all edges.
    pub fn support(&self) -> EdgeSet {
        EdgeSet(self.edges.iter().fold(0, |m, e| m | e.mask()))
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Subfamily of edges satisfying `keep`; ground set unchanged.
    pub fn filter<F: FnMut(&EdgeSet) -> bool>(&self, mut keep: F) -> Family {
        Family::from_sorted(self.n, self.k, self.edges.iter().copied().filter(|e| keep(e)).collect())
    }

    /// Family with `e` added (no-op if present).
    pub fn with_edge(&self, e: EdgeSet) -> Result<Family> {
        if self.contains(&e) {
            return Ok(self.clone());
        }
        let mut edges = self.edges.clone();
        edges.push(e);
        Family::new(self.n, self.k, edges)
    }

    /// Family without `e`.
    pub fn without_edge(&self, e: &EdgeSet) -> Family {
        self.filter(|f| f != e)
    }

    /// Parses the shared text format.
    ///
    /// ```text
    /// # comment
    /// n k
    /// 1 2 3
    /// 1 2 4
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(u32, u32)> = None;
        let mut edges = Vec::new();
        let mut seen = std::collections::HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let nums = fields
                .iter()
                .map(|f| {
                    f.parse::<u32>().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("expected a nonnegative integer, found {f:?}"),
                    })
                })
                .collect::<Result<Vec<u32>>>()?;
            let Some((n, k)) = header else {
                if nums.len() != 2 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("header must be \"n k\", found {} fields", nums.len()),
                    });
                }
                check_params(nums[0], nums[1]).map_err(|e| Error::Parse {
                    line: line_no,
                    msg: e.to_string(),
                })?;
                header = Some((nums[0], nums[1]));
                continue;
            };
            let perr = |msg: String| Error::Parse { line: line_no, msg };
            if nums.len() != k as usize {
                return Err(perr(format!("edge has {} labels, expected {k}", nums.len())));
            }
            let mut mask = 0u64;
            for &v in &nums {
                if v == 0 || v > n {
                    return Err(perr(format!("vertex {v} outside [1, {n}]")));
                }
                let bit = 1u64 << (v - 1);
                if mask & bit != 0 {
                    return Err(perr(format!("duplicate vertex {v} in edge")));
                }
                mask |= bit;
            }
            let e = EdgeSet(mask);
            if let Some(first) = seen.insert(e, line_no) {
                return Err(perr(format!("duplicate edge {e} (first seen on line {first})")));
            }
            edges.push(e);
        }
        let (n, k) = header.ok_or(Error::Parse { line: 0, msg: "missing \"n k\" header".into() })?;
        Family::new(n, k, edges)
    }

    /// Renders the shared text format with edges in canonical order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.k);
        for e in &self.edges {
            let labels: Vec<String> = e.vertices().map(|v| v.to_string()).collect();
            out.push_str(&labels.join(" "));
            out.push('\n');
        }
        out
    }

    /// Edges as label lists.
    pub fn to_lists(&self) -> Vec<Vec<u32>> {
        self.edges.iter().map(|e| e.vertices().collect()).collect()
    }
}

fn check_params(n: u32, k: u32) -> Result<()> {
    if n > MAX_N {
        return invalid(format!("n = {n} exceeds the supported maximum {MAX_N}"));
    }
    if k == 0 {
        return invalid("uniformity k must be at least 1");
    }
    if k > n {
        return invalid(format!("uniformity k = {k} exceeds n = {n}"));
    }
    Ok(())
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(n={}, k={}, {:?})", self.n, self.k, self.edges)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a EdgeSet;
    type IntoIter = std::slice::Iter<'a, EdgeSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.edges.iter()
    }
}
