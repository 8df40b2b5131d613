//! Exact matching and cover numbers, and the greedy lifting of a matching
//! in the high-codegree shadow back to the host family.

use crate::error::{invalid, Error, Result};
use crate::family::{EdgeSet, Family, Vertex};
use crate::quantities::codegree;

/// Pairwise disjoint edges of a host family.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Matching {
    edges: Vec<EdgeSet>,
}

impl Matching {
    pub fn new(edges: Vec<EdgeSet>) -> Self {
        Matching { edges }
    }

    pub fn edges(&self) -> &[EdgeSet] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Every edge belongs to `host` and no two edges meet.
    pub fn is_valid_in(&self, host: &Family) -> bool {
        self.edges.iter().all(|e| host.contains(e)) && pairwise_disjoint(&self.edges)
    }
}

/// A vertex set meeting every edge of a host family.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cover {
    centers: EdgeSet,
}

impl Cover {
    pub fn centers(&self) -> Vec<Vertex> {
        self.centers.vertices().map(|v| Vertex::new(v).expect("label in range")).collect()
    }

    pub fn as_set(&self) -> EdgeSet {
        self.centers
    }

    pub fn len(&self) -> usize {
        self.centers.len() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn covers(&self, host: &Family) -> bool {
        host.iter().all(|e| !e.is_disjoint(self.centers))
    }
}

fn pairwise_disjoint(edges: &[EdgeSet]) -> bool {
    let mut seen = 0u64;
    for e in edges {
        if e.mask() & seen != 0 {
            return false;
        }
        seen |= e.mask();
    }
    true
}

/// Branch-and-bound maximum set packing over uniform masks.
///
/// Branches on the smallest vertex `v` still covered by a remaining edge:
/// first each edge through `v` in the input order, then `v` left unmatched.
/// With lexicographically sorted input this visits matchings in
/// lexicographic order, so the first matching of a given size found is the
/// lexicographically least one.
struct Packer {
    k: u32,
    target: Option<usize>,
    best: Vec<u64>,
    chosen: Vec<u64>,
}

impl Packer {
    fn search(&mut self, edges: &[u64]) -> bool {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
            if self.target == Some(self.best.len()) {
                return true;
            }
        }
        if edges.is_empty() {
            return false;
        }
        let union = edges.iter().fold(0u64, |m, e| m | e);
        let room = edges.len().min((union.count_ones() / self.k.max(1)) as usize);
        let needed = match self.target {
            Some(t) => t,
            None => self.best.len() + 1,
        };
        if self.chosen.len() + room < needed {
            return false;
        }
        let low = union & union.wrapping_neg();
        for &e in edges.iter().filter(|&&e| e & low != 0) {
            let rest: Vec<u64> = edges.iter().copied().filter(|&f| f & e == 0).collect();
            self.chosen.push(e);
            if self.search(&rest) {
                return true;
            }
            self.chosen.pop();
        }
        let rest: Vec<u64> = edges.iter().copied().filter(|&f| f & low == 0).collect();
        self.search(&rest)
    }
}

/// Largest matching among `masks` (each of size `k`), or the first of size
/// `target` when given. Inputs in lexicographic order give the
/// lexicographically least answer.
pub(crate) fn pack(masks: &[u64], k: u32, target: Option<usize>) -> Vec<u64> {
    if target == Some(0) {
        return Vec::new();
    }
    let mut p = Packer { k, target, best: Vec::new(), chosen: Vec::new() };
    p.search(masks);
    p.best
}

/// Whether `masks` contain `m` pairwise disjoint sets.
pub(crate) fn has_packing(masks: &[u64], k: u32, m: usize) -> bool {
    m == 0 || pack(masks, k, Some(m)).len() >= m
}

/// `ν(h)`.
pub fn matching_number(h: &Family) -> usize {
    maximum_matching(h).len()
}

/// The lexicographically least maximum matching.
pub fn maximum_matching(h: &Family) -> Matching {
    let best = pack(&h.masks(), h.k(), None);
    Matching::new(best.into_iter().map(EdgeSet::from_mask).collect())
}

/// A matching of exactly `m` edges if one exists. Stops at the first one found.
pub fn has_matching(h: &Family, m: usize) -> Option<Matching> {
    if m > h.len() {
        return None;
    }
    let found = pack(&h.masks(), h.k(), Some(m));
    (found.len() == m).then(|| Matching::new(found.into_iter().map(EdgeSet::from_mask).collect()))
}

/// `τ(h)` with a witness cover: the first minimum cover found when branching
/// on the vertices of the lexicographically first uncovered edge.
pub fn cover_number(h: &Family) -> (usize, Cover) {
    let masks = h.masks();
    let mut best: Option<u64> = None;
    cover_search(&masks, 0, &mut best);
    let centers = best.unwrap_or(0);
    (centers.count_ones() as usize, Cover { centers: EdgeSet::from_mask(centers) })
}

/// Minimum cover, or `None` if it needs more than `limit` vertices.
pub fn cover_within(h: &Family, limit: usize) -> Option<Cover> {
    let (size, cover) = cover_number(h);
    (size <= limit).then_some(cover)
}

fn cover_search(edges: &[u64], chosen: u64, best: &mut Option<u64>) {
    let size = chosen.count_ones();
    let Some(&first) = edges.iter().find(|&&e| e & chosen == 0) else {
        if best.is_none_or(|b| size < b.count_ones()) {
            *best = Some(chosen);
        }
        return;
    };
    // disjoint uncovered edges each need their own center
    let mut used = 0u64;
    let mut lower = 0u32;
    for &e in edges {
        if e & chosen == 0 && e & used == 0 {
            used |= e;
            lower += 1;
        }
    }
    if best.is_some_and(|b| size + lower >= b.count_ones()) {
        return;
    }
    let mut rest = first;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        rest &= rest - 1;
        cover_search(edges, chosen | bit, best);
    }
}

/// Lifts a matching `f_1, ..., f_m` of `(k-1)`-sets, each of codegree at
/// least `s*k + 1` in `h`, to a matching `g_1, ..., g_m` of `h` with
/// `f_i ⊂ g_i`.
///
/// Each `f_i` in turn is extended by the smallest vertex that avoids the
/// already chosen `g_j` (`j < i`) and the still pending `f_j` (`j > i`). At
/// step `i` at most `(i-1)k + (m-i)(k-1)` vertices are blocked, which is
/// below the codegree, so an extension always exists.
pub fn lift_matching(h: &Family, s: usize, m: &Matching) -> Result<Matching> {
    let k = h.k();
    if k < 2 {
        return invalid("lifting needs k >= 2");
    }
    let sets = m.edges();
    if sets.len() > s + 1 {
        return invalid(format!("matching of size {} exceeds s + 1 = {}", sets.len(), s + 1));
    }
    if !pairwise_disjoint(sets) {
        return invalid("sets to lift are not pairwise disjoint");
    }
    let threshold = s * k as usize + 1;
    for f in sets {
        let d = codegree(h, *f)? as usize;
        if d < threshold {
            return invalid(format!("{f} has codegree {d} < s*k + 1 = {threshold}"));
        }
    }

    let mut lifted: Vec<EdgeSet> = Vec::with_capacity(sets.len());
    for (i, f) in sets.iter().enumerate() {
        let blocked = lifted
            .iter()
            .chain(&sets[i + 1..])
            .fold(EdgeSet::EMPTY, |acc, e| acc.union(*e));
        let g = (1..=h.n())
            .filter(|&x| !f.contains(x) && !blocked.contains(x))
            .map(|x| f.with(x))
            .find(|g| h.contains(g))
            .ok_or_else(|| Error::Invariant(format!("no extension of {f} avoids {blocked}")))?;
        lifted.push(g);
    }
    Ok(Matching::new(lifted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_a, build_h, ExtremalSpec};
    use crate::quantities::high_codegree_family;

    fn set(v: &[u32]) -> EdgeSet {
        EdgeSet::from_vertices(v.iter().copied()).unwrap()
    }

    /// Exhaustive oracle: largest pairwise-disjoint subset.
    fn brute_nu(h: &Family) -> usize {
        fn rec(edges: &[EdgeSet], used: u64) -> usize {
            match edges.split_first() {
                None => 0,
                Some((e, rest)) => {
                    let skip = rec(rest, used);
                    if e.mask() & used == 0 {
                        skip.max(1 + rec(rest, used | e.mask()))
                    } else {
                        skip
                    }
                }
            }
        }
        rec(h.edges(), 0)
    }

    /// Exhaustive oracle: smallest vertex subset meeting every edge.
    fn brute_tau(h: &Family) -> usize {
        (0u64..1 << h.n())
            .filter(|&c| h.iter().all(|e| e.mask() & c != 0))
            .map(|c| c.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn matching_examples() {
        let h = Family::from_lists(7, 3, &[&[1, 2, 3], &[4, 5, 6], &[1, 4, 7]]).unwrap();
        assert_eq!(matching_number(&h), 2);
        assert_eq!(matching_number(&build_h(9, 3, 2).unwrap()), 2);
        assert_eq!(matching_number(&Family::empty(5, 3).unwrap()), 0);
        assert_eq!(maximum_matching(&h).edges(), &[set(&[1, 2, 3]), set(&[4, 5, 6])]);
    }

    #[test]
    fn has_matching_examples() {
        let h = build_h(7, 3, 2).unwrap();
        assert!(has_matching(&h, 3).is_none());
        let m = has_matching(&h, 2).unwrap();
        assert_eq!(m.len(), 2);
        assert!(m.is_valid_in(&h));
        assert_eq!(m.edges(), &[set(&[1, 3, 4]), set(&[2, 5, 6])]);
        assert!(has_matching(&h, 0).unwrap().is_empty());
    }

    #[test]
    fn cover_examples() {
        let (t, c) = cover_number(&build_h(8, 3, 2).unwrap());
        assert_eq!(t, 2);
        assert_eq!(c.as_set(), set(&[1, 2]));
        let disjoint = Family::from_lists(9, 3, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).unwrap();
        assert_eq!(cover_number(&disjoint).0, 3);
        assert_eq!(cover_number(&Family::empty(4, 2).unwrap()).0, 0);
        assert!(cover_within(&disjoint, 2).is_none());
    }

    #[test]
    fn extremal_families_have_matching_number_s() {
        for k in 2..=3u32 {
            for s in 1..=3u32 {
                for n in (k * s + k - 1)..=12 {
                    for i in 1..=k {
                        let spec = ExtremalSpec::new(n, k, s, i).unwrap();
                        if spec.is_degenerate() {
                            continue;
                        }
                        assert_eq!(matching_number(&build_a(&spec)), s as usize, "{spec:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn agrees_with_oracles_on_random_families() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..400 {
            let n = rng.gen_range(3..=8);
            let k = rng.gen_range(1..=3.min(n));
            let q = rng.gen_range(0.05..0.5);
            let edges = crate::family::k_subsets(n, k).into_iter().filter(|_| rng.gen_bool(q));
            let h = Family::new(n, k, edges).unwrap();
            let nu = matching_number(&h);
            assert_eq!(nu, brute_nu(&h), "{h:?}");
            assert!(maximum_matching(&h).is_valid_in(&h));
            let (tau, cover) = cover_number(&h);
            assert_eq!(tau, brute_tau(&h), "{h:?}");
            assert!(cover.covers(&h));
            assert!(tau >= nu);
            for m in 0..=nu + 1 {
                let found = has_matching(&h, m);
                assert_eq!(found.is_some(), m <= nu);
                if let Some(w) = found {
                    assert_eq!(w.len(), m);
                    assert!(w.is_valid_in(&h));
                }
            }
        }
    }

    #[test]
    fn lift_examples() {
        let h = build_h(6, 3, 1).unwrap();
        let lifted = lift_matching(&h, 1, &Matching::new(vec![set(&[1, 2])])).unwrap();
        assert_eq!(lifted.edges(), &[set(&[1, 2, 3])]);

        let h = build_h(12, 3, 2).unwrap();
        let m = Matching::new(vec![set(&[1, 3]), set(&[2, 4])]);
        let lifted = lift_matching(&h, 2, &m).unwrap();
        assert_eq!(lifted.edges(), &[set(&[1, 3, 5]), set(&[2, 4, 6])]);
        assert!(lifted.is_valid_in(&h));

        assert!(lift_matching(&h, 2, &Matching::default()).unwrap().is_empty());
    }

    #[test]
    fn lift_rejects_bad_input() {
        let h = build_h(12, 3, 2).unwrap();
        // {3,4} has codegree 2 < 7
        assert!(lift_matching(&h, 2, &Matching::new(vec![set(&[3, 4])])).is_err());
        assert!(lift_matching(&h, 2, &Matching::new(vec![set(&[1, 3]), set(&[1, 4])])).is_err());
        let too_many = Matching::new(vec![set(&[1, 3]), set(&[2, 4]), set(&[1, 5]), set(&[2, 6])]);
        assert!(lift_matching(&h, 2, &too_many).is_err());
    }

    #[test]
    fn lift_every_shadow_matching_of_extremal_families() {
        for s in 1..=2usize {
            for n in 8..=12u32 {
                let h = build_h(n, 3, s as u32).unwrap();
                let shadow = high_codegree_family(&h, 3 * s as u32 + 1).unwrap();
                let m = maximum_matching(&shadow);
                assert!(m.len() <= s);
                let lifted = lift_matching(&h, s, &m).unwrap();
                assert!(lifted.is_valid_in(&h));
                for (f, g) in m.edges().iter().zip(lifted.edges()) {
                    assert!(f.is_subset(*g));
                }
            }
        }
    }
}
