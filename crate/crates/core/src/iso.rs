//! Isomorphism of uniform families.
//!
//! Vertices are first coloured by an iterated incidence refinement whose
//! colours are hashes of structural signatures, so colours are comparable
//! across families. A backtracking search then looks for a colour-preserving
//! bijection, checking every edge as soon as all of its vertices are mapped.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use crate::family::Family;

fn hash_of<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

/// Refined vertex colours, indexed by `label - 1`.
fn refined_colors(h: &Family) -> Vec<u64> {
    let n = h.n() as usize;
    let masks = h.masks();
    let mut colors: Vec<u64> =
        (1..=n as u32).map(|v| hash_of(&(0u8, h.degree(v)))).collect();
    let mut classes = distinct(&colors);
    for round in 0..n {
        let next: Vec<u64> = (0..n)
            .map(|v| {
                let bit = 1u64 << v;
                let mut around: Vec<u64> = masks
                    .iter()
                    .filter(|&&m| m & bit != 0)
                    .map(|&m| {
                        let mut others: Vec<u64> = (0..n)
                            .filter(|&u| u != v && m & (1u64 << u) != 0)
                            .map(|u| colors[u])
                            .collect();
                        others.sort_unstable();
                        hash_of(&others)
                    })
                    .collect();
                around.sort_unstable();
                hash_of(&(round as u64 + 1, colors[v], around))
            })
            .collect();
        let next_classes = distinct(&next);
        colors = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    colors
}

fn distinct(colors: &[u64]) -> usize {
    colors.iter().collect::<HashSet<_>>().len()
}

/// Isomorphism-invariant summary; equal for isomorphic families.
pub fn fingerprint(h: &Family) -> u64 {
    let mut colors = refined_colors(h);
    colors.sort_unstable();
    hash_of(&(h.n(), h.k(), h.len(), colors))
}

/// Whether some permutation of `[n]` maps `a` onto `b`.
pub fn isomorphic(a: &Family, b: &Family) -> bool {
    isomorphism(a, b).is_some()
}

/// A vertex map `label -> label` (index `v - 1` holds the image of `v`)
/// carrying `a` onto `b`, if one exists.
pub fn isomorphism(a: &Family, b: &Family) -> Option<Vec<u32>> {
    if a.n() != b.n() || a.k() != b.k() || a.len() != b.len() {
        return None;
    }
    let n = a.n() as usize;
    let ca = refined_colors(a);
    let cb = refined_colors(b);
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }

    // map rare colours first
    let class_size = |c: u64| ca.iter().filter(|&&x| x == c).count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class_size(ca[v]), v));
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }

    // edges of `a` grouped by the search step at which they become fully mapped
    let mut due: Vec<Vec<u64>> = vec![Vec::new(); n];
    for m in a.masks() {
        if m == 0 {
            continue;
        }
        let last = (0..n).filter(|&u| m & (1u64 << u) != 0).map(|u| position[u]).max().unwrap();
        due[last].push(m);
    }
    let targets: HashSet<u64> = b.masks().into_iter().collect();

    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let found = extend(0, &order, &ca, &cb, &due, &targets, &mut image, &mut used);
    found.then(|| image.iter().map(|&w| w as u32 + 1).collect())
}

#[allow(clippy::too_many_arguments)]
fn extend(
    step: usize,
    order: &[usize],
    ca: &[u64],
    cb: &[u64],
    due: &[Vec<u64>],
    targets: &HashSet<u64>,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if step == order.len() {
        return true;
    }
    let v = order[step];
    for w in 0..cb.len() {
        if used[w] || cb[w] != ca[v] {
            continue;
        }
        image[v] = w;
        let consistent = due[step].iter().all(|&m| {
            let mapped = (0..image.len())
                .filter(|&u| m & (1u64 << u) != 0)
                .fold(0u64, |acc, u| acc | (1u64 << image[u]));
            targets.contains(&mapped)
        });
        if consistent {
            used[w] = true;
            if extend(step + 1, order, ca, cb, due, targets, image, used) {
                return true;
            }
            used[w] = false;
        }
    }
    image[v] = usize::MAX;
    false
}

/// Groups families into isomorphism classes, keeping the first member of
/// each class in input order.
#[derive(Default, Debug, Clone)]
pub struct ClassCollector {
    reps: Vec<(u64, Family)>,
}

impl ClassCollector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `true` when `h` opens a new class.
    pub fn insert(&mut self, h: &Family) -> bool {
        let fp = fingerprint(h);
        if self.reps.iter().any(|(f, r)| *f == fp && isomorphic(r, h)) {
            return false;
        }
        self.reps.push((fp, h.clone()));
        true
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &Family> {
        self.reps.iter().map(|(_, r)| r)
    }

    pub fn into_representatives(self) -> Vec<Family> {
        self.reps.into_iter().map(|(_, r)| r).collect()
    }
}
