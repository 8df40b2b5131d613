use crate::count::{pow, Count};
use crate::error::{invalid, Error, Result};
use crate::family::{k_subsets, EdgeSet, Family};
use crate::iso::ClassCollector;
use crate::matching::has_packing;

use super::WITNESS_CAP;

/// Outcome of the capped-sequence inequality for one value of `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceCase {
    pub m: u64,
    /// Largest `Σ x_i^p` over admissible sequences.
    pub max: Count,
    /// The first non-increasing sequence (in decreasing lexicographic order)
    /// attaining `max`.
    pub argmax: Vec<u64>,
    /// `c a^p + (m - c a) b^(p-1)`
    pub bound: Count,
    pub attained: bool,
}

impl SequenceCase {
    pub fn holds(&self) -> bool {
        self.max <= self.bound
    }
}

/// For every `m` with `ca < m < ca + (n-c)b`, enumerates the non-increasing
/// sequences `x_1..x_n` with `x_i <= a` for `i <= c`, `x_i <= b` after, and
/// `Σ x_i <= m`, and compares `max Σ x_i^p` with the bound.
pub fn verify_sequence_inequality(a: u64, b: u64, c: u64, n: u64, p: u32) -> Result<Vec<SequenceCase>> {
    if !(0 < b && b < a) {
        return invalid(format!("need 0 < b < a, got a = {a}, b = {b}"));
    }
    if c >= n {
        return invalid(format!("need 0 <= c < n, got c = {c}, n = {n}"));
    }
    if p < 2 {
        return invalid(format!("need p >= 2, got {p}"));
    }
    if n > 16 || a > 64 {
        return Err(Error::Guard(format!("sequence enumeration limited to n <= 16 and a <= 64, got n = {n}, a = {a}")));
    }
    let ca = c * a;
    let mut cases = Vec::new();
    for m in ca + 1..ca + (n - c) * b {
        let mut best = (Count::from(0u32), Vec::new());
        let mut seq = Vec::with_capacity(n as usize);
        let caps = |i: u64| if i < c { a } else { b };
        best_sequence(n, p, m, &caps, a, &mut seq, Count::from(0u32), &mut best);
        let bound = Count::from(c) * pow(a, p) + Count::from(m - ca) * pow(b, p - 1);
        cases.push(SequenceCase { m, attained: best.0 == bound, max: best.0, argmax: best.1, bound });
    }
    Ok(cases)
}

#[allow(clippy::too_many_arguments)]
fn best_sequence(
    n: u64,
    p: u32,
    left: u64,
    caps: &dyn Fn(u64) -> u64,
    prev: u64,
    seq: &mut Vec<u64>,
    acc: Count,
    best: &mut (Count, Vec<u64>),
) {
    let i = seq.len() as u64;
    if i == n {
        if acc > best.0 || best.1.is_empty() {
            *best = (acc, seq.clone());
        }
        return;
    }
    let top = prev.min(caps(i)).min(left);
    for x in (0..=top).rev() {
        seq.push(x);
        best_sequence(n, p, left - x, caps, x, seq, acc.clone() + pow(x, p), best);
        seq.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphBoundReport {
    pub n: u32,
    pub s: u32,
    /// Largest graph with `ν <= s` and maximum degree at most `2s`.
    pub max_size: usize,
    /// `s(2s+1)`
    pub bound: usize,
    pub attained: bool,
    /// Non-isomorphic graphs of size `max_size`, at most [`WITNESS_CAP`].
    pub extremal: Vec<Family>,
    pub extremal_truncated: bool,
    pub nodes_explored: u64,
}

impl GraphBoundReport {
    pub fn holds(&self) -> bool {
        self.max_size <= self.bound
    }
}

/// Exhaustive check of `|H| <= s(2s+1)` for graphs on `[n]` with `ν <= s`
/// and all degrees at most `2s`. Needs `2s+1 <= n <= 8`.
pub fn verify_graph_bound(n: u32, s: u32) -> Result<GraphBoundReport> {
    if s == 0 || n < 2 * s + 1 {
        return invalid(format!("need s >= 1 and n >= 2s+1, got n = {n}, s = {s}"));
    }
    if n > 8 {
        return Err(Error::Guard(format!("graph bound enumeration needs n <= 8, got {n}")));
    }
    let candidates: Vec<u64> = k_subsets(n, 2).into_iter().map(|e| e.mask()).collect();
    let mut walk = GraphWalk {
        candidates: &candidates,
        n,
        s: s as usize,
        cap: 2 * s,
        degree: vec![0; n as usize],
        chosen: Vec::new(),
        best: 0,
        classes: ClassCollector::new(),
        truncated: false,
        nodes: 0,
    };
    walk.go(0);
    let bound = (s * (2 * s + 1)) as usize;
    Ok(GraphBoundReport {
        n,
        s,
        max_size: walk.best,
        bound,
        attained: walk.best == bound,
        extremal: walk.classes.into_representatives(),
        extremal_truncated: walk.truncated,
        nodes_explored: walk.nodes,
    })
}

struct GraphWalk<'a> {
    candidates: &'a [u64],
    n: u32,
    s: usize,
    cap: u32,
    degree: Vec<u32>,
    chosen: Vec<u64>,
    best: usize,
    classes: ClassCollector,
    truncated: bool,
    nodes: u64,
}

impl GraphWalk<'_> {
    fn go(&mut self, i: usize) {
        self.nodes += 1;
        if self.chosen.len() + (self.candidates.len() - i) < self.best {
            return;
        }
        if i == self.candidates.len() {
            self.leaf();
            return;
        }
        let c = self.candidates[i];
        let (u, v) = (c.trailing_zeros() as usize, 63 - c.leading_zeros() as usize);
        if self.degree[u] < self.cap && self.degree[v] < self.cap && self.fits(c) {
            self.degree[u] += 1;
            self.degree[v] += 1;
            self.chosen.push(c);
            self.go(i + 1);
            self.chosen.pop();
            self.degree[u] -= 1;
            self.degree[v] -= 1;
        }
        self.go(i + 1);
    }

    fn fits(&self, c: u64) -> bool {
        let disjoint: Vec<u64> = self.chosen.iter().copied().filter(|&m| m & c == 0).collect();
        disjoint.len() < self.s || !has_packing(&disjoint, 2, self.s)
    }

    fn leaf(&mut self) {
        let size = self.chosen.len();
        if size < self.best {
            return;
        }
        if size > self.best {
            self.best = size;
            self.classes = ClassCollector::new();
            self.truncated = false;
        }
        let edges: Vec<EdgeSet> = self.chosen.iter().map(|&m| EdgeSet::from_mask(m)).collect();
        let g = Family::new(self.n, 2, edges).expect("distinct pairs");
        if self.classes.len() < WITNESS_CAP {
            self.classes.insert(&g);
        } else if !self.truncated {
            self.truncated = self.classes.clone().insert(&g);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::isomorphic;

    fn case(cases: &[SequenceCase], m: u64) -> &SequenceCase {
        cases.iter().find(|c| c.m == m).unwrap()
    }

    #[test]
    fn sequence_examples() {
        let cases = verify_sequence_inequality(5, 2, 1, 3, 2).unwrap();
        let c = case(&cases, 8);
        assert_eq!((c.max.clone(), c.bound.clone()), (Count::from(30u32), Count::from(31u32)));
        assert_eq!(c.argmax, vec![5, 2, 1]);
        assert!(!c.attained);

        let cases = verify_sequence_inequality(3, 2, 1, 4, 2).unwrap();
        let c = case(&cases, 7);
        assert_eq!((c.max.clone(), c.bound.clone()), (Count::from(17u32), Count::from(17u32)));
        assert_eq!(c.argmax, vec![3, 2, 2, 0]);
        assert!(c.attained);

        let cases = verify_sequence_inequality(4, 2, 0, 3, 2).unwrap();
        let c = case(&cases, 5);
        assert_eq!((c.max.clone(), c.bound.clone()), (Count::from(9u32), Count::from(10u32)));
    }

    #[test]
    fn sequence_range_and_preconditions() {
        let cases = verify_sequence_inequality(5, 2, 1, 3, 2).unwrap();
        assert_eq!(cases.iter().map(|c| c.m).collect::<Vec<_>>(), vec![6, 7, 8]);
        assert!(verify_sequence_inequality(2, 2, 0, 3, 2).is_err());
        assert!(verify_sequence_inequality(3, 2, 3, 3, 2).is_err());
        assert!(verify_sequence_inequality(3, 2, 1, 3, 1).is_err());
    }

    #[test]
    fn graph_bound_examples() {
        let r = verify_graph_bound(3, 1).unwrap();
        assert_eq!(r.max_size, 3);
        assert!(r.attained);
        let triangle = Family::from_lists(3, 2, &[&[1, 2], &[1, 3], &[2, 3]]).unwrap();
        assert_eq!(r.extremal.len(), 1);
        assert!(isomorphic(&r.extremal[0], &triangle));

        let r = verify_graph_bound(7, 1).unwrap();
        assert_eq!(r.max_size, 3);
        assert!(r.extremal.iter().any(|g| g.len() == 3 && crate::matching::matching_number(g) == 1));
        assert!(verify_graph_bound(4, 2).is_err());
        assert!(matches!(verify_graph_bound(9, 1), Err(Error::Guard(_))));
    }

    #[test]
    fn graph_bound_two() {
        let r = verify_graph_bound(7, 2).unwrap();
        assert!(r.holds());
        assert_eq!(r.max_size, 10);
    }
}
