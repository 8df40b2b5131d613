//! The extremal candidates `A(n,k,s,i) = {F : |F ∩ [is+i-1]| >= i}` and
//! `H(n,k,s) = A(n,k,s,1)`, with closed forms for their sizes, codegree
//! norms and sunflower counts.
//!
//! Codegree profile of `A(n,k,s,i)` with window `W = [is+i-1]`: a
//! `(k-1)`-set meeting `W` in `j` points has codegree `n-k+1` if `j >= i`,
//! `|W|-i+1` if `j = i-1`, and 0 otherwise.

use num_traits::Zero;

use crate::count::{binomial, pow, Count};
use crate::error::{invalid, Result};
use crate::family::{k_subsets, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtremalSpec {
    pub n: u32,
    pub k: u32,
    pub s: u32,
    pub i: u32,
}

impl ExtremalSpec {
    pub fn new(n: u32, k: u32, s: u32, i: u32) -> Result<Self> {
        if s == 0 {
            return invalid("s must be at least 1");
        }
        if i == 0 || i > k {
            return invalid(format!("i = {i} must lie in [1, k = {k}]"));
        }
        if k > n {
            return invalid(format!("k = {k} exceeds n = {n}"));
        }
        Ok(ExtremalSpec { n, k, s, i })
    }

    /// Nominal window size `is + i - 1`.
    pub fn window(&self) -> u32 {
        self.i * self.s + self.i - 1
    }

    /// The window sticks out of `[n]`; the matching number need not be `s`.
    pub fn is_degenerate(&self) -> bool {
        self.window() > self.n
    }

    fn effective_window(&self) -> u32 {
        self.window().min(self.n)
    }
}

/// All `k`-sets meeting the window in at least `i` points.
pub fn build_a(spec: &ExtremalSpec) -> Family {
    let w = crate::family::ground_mask(spec.effective_window());
    let edges = k_subsets(spec.n, spec.k)
        .into_iter()
        .filter(|e| (e.mask() & w).count_ones() >= spec.i)
        .collect();
    Family::from_sorted(spec.n, spec.k, edges)
}

/// `H(n,k,s)`: all `k`-sets meeting `[s]`.
pub fn build_h(n: u32, k: u32, s: u32) -> Result<Family> {
    Ok(build_a(&ExtremalSpec::new(n, k, s, 1)?))
}

/// `|A(n,k,s,i)| = Σ_{j>=i} C(w, j) C(n-w, k-j)`.
pub fn size_a(spec: &ExtremalSpec) -> Count {
    let (n, k, w) = (spec.n as i64, spec.k as i64, spec.effective_window() as i64);
    (spec.i as i64..=k).map(|j| binomial(w, j) * binomial(n - w, k - j)).sum()
}

/// `co_p(H(n,k,s)) = (C(n,k-1) - C(n-s,k-1)) (n-k+1)^p + C(n-s,k-1) s^p`.
///
/// Accepts `s = 0` (the empty family), which the `k = 3` recurrence uses as
/// its base.
pub fn co_norm_h_closed(n: u32, k: u32, s: u32, p: u32) -> Result<Count> {
    check_hk(n, k)?;
    let (ni, ki, si) = (n as i64, k as i64, s.min(n) as i64);
    let meeting = binomial(ni, ki - 1) - binomial(ni - si, ki - 1);
    let avoiding = binomial(ni - si, ki - 1);
    Ok(meeting * pow(u64::from(n - k + 1), p) + avoiding * pow(si as u64, p))
}

/// `N(H(n,k,s)) = (C(n,k-1) - C(n-s,k-1)) C(n-k+1, l) + C(n-s,k-1) C(s, l)`.
pub fn sunflower_count_h_closed(n: u32, k: u32, s: u32, l: u32) -> Result<Count> {
    check_hk(n, k)?;
    if l < 2 {
        return invalid(format!("sunflowers need at least 2 petals, got {l}"));
    }
    let (ni, ki, si, li) = (n as i64, k as i64, s.min(n) as i64, l as i64);
    let meeting = binomial(ni, ki - 1) - binomial(ni - si, ki - 1);
    let avoiding = binomial(ni - si, ki - 1);
    Ok(meeting * binomial(ni - ki + 1, li) + avoiding * binomial(si, li))
}

fn check_hk(n: u32, k: u32) -> Result<()> {
    if k < 2 {
        return invalid("closed forms need k >= 2");
    }
    if k > n {
        return invalid(format!("k = {k} exceeds n = {n}"));
    }
    Ok(())
}

/// Number of `(k-1)`-sets of each codegree class in `A(n,k,s,i)`:
/// `(count, codegree)` pairs; sets of codegree 0 are omitted.
fn a_profile(spec: &ExtremalSpec) -> Vec<(Count, u64)> {
    let (n, k, i) = (spec.n as i64, spec.k as i64, spec.i as i64);
    let w = spec.effective_window() as i64;
    let full: Count = (i..k).map(|j| binomial(w, j) * binomial(n - w, k - 1 - j)).sum();
    let edge = binomial(w, i - 1) * binomial(n - w, k - i);
    vec![(full, (n - k + 1) as u64), (edge, (w - i + 1) as u64)]
        .into_iter()
        .filter(|(c, d)| *d > 0 && !c.is_zero())
        .collect()
}

/// `co_p(A(n,k,s,i))` from the codegree profile (`0^0 = 1`).
pub fn co_norm_a_closed(spec: &ExtremalSpec, p: u32) -> Result<Count> {
    check_hk(spec.n, spec.k)?;
    if p == 0 {
        return Ok(binomial(spec.n as i64, spec.k as i64 - 1));
    }
    Ok(a_profile(spec).into_iter().map(|(c, d)| c * pow(d, p)).sum())
}

/// `N(S_{k,l}^{k-1}, A(n,k,s,i))` from the codegree profile.
pub fn sunflower_count_a_closed(spec: &ExtremalSpec, l: u32) -> Result<Count> {
    check_hk(spec.n, spec.k)?;
    if l < 2 {
        return invalid(format!("sunflowers need at least 2 petals, got {l}"));
    }
    Ok(a_profile(spec).into_iter().map(|(c, d)| c * binomial(d as i64, l as i64)).sum())
}

/// Sizes from the Erdős–Ko–Rado and Hilton–Milner theorems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceBounds {
    pub ekr: Count,
    pub hm: Count,
}

/// `ekr = C(n-1,k-1)`, `hm = C(n-1,k-1) - C(n-k-1,k-1) + 1`; needs `n >= 2k`.
pub fn reference_bounds(n: u32, k: u32) -> Result<ReferenceBounds> {
    if k == 0 || n < 2 * k {
        return invalid(format!("reference bounds need n >= 2k, got n = {n}, k = {k}"));
    }
    let (n, k) = (n as i64, k as i64);
    let ekr = binomial(n - 1, k - 1);
    let hm = ekr.clone() + 1u32 - binomial(n - k - 1, k - 1);
    Ok(ReferenceBounds { ekr, hm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::{co_norm, sunflower_count};

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    #[test]
    fn build_a_examples() {
        let star = build_a(&ExtremalSpec::new(5, 3, 1, 1).unwrap());
        assert_eq!(star.len(), 6);
        assert!(star.iter().all(|e| e.contains(1)));
        let clique = build_a(&ExtremalSpec::new(9, 3, 2, 3).unwrap());
        assert_eq!(clique, {
            let mut f = Family::complete(8, 3).unwrap().to_lists();
            f.sort();
            let lists: Vec<&[u32]> = f.iter().map(|v| v.as_slice()).collect();
            Family::from_lists(9, 3, &lists).unwrap()
        });
        assert_eq!(clique.len(), 56);
        let graph = build_a(&ExtremalSpec::new(4, 2, 1, 1).unwrap());
        assert_eq!(graph.to_lists(), vec![vec![1, 2], vec![1, 3], vec![1, 4]]);
    }

    #[test]
    fn build_h_examples() {
        assert_eq!(build_h(6, 3, 1).unwrap().len(), 10);
        assert_eq!(build_h(5, 2, 2).unwrap().len(), 7);
        assert_eq!(build_h(6, 3, 6).unwrap().len(), 20);
    }

    #[test]
    fn degenerate_window_is_flagged() {
        let spec = ExtremalSpec::new(6, 3, 2, 3).unwrap();
        assert!(spec.is_degenerate());
        assert_eq!(build_a(&spec), Family::complete(6, 3).unwrap());
        assert!(!ExtremalSpec::new(8, 3, 2, 3).unwrap().is_degenerate());
        assert!(ExtremalSpec::new(8, 3, 0, 1).is_err());
        assert!(ExtremalSpec::new(8, 3, 1, 4).is_err());
    }

    #[test]
    fn size_examples() {
        assert_eq!(size_a(&ExtremalSpec::new(6, 3, 1, 1).unwrap()), c(10));
        assert_eq!(size_a(&ExtremalSpec::new(9, 3, 2, 3).unwrap()), c(56));
        assert_eq!(size_a(&ExtremalSpec::new(7, 3, 2, 2).unwrap()), c(30));
    }

    #[test]
    fn size_matches_enumeration() {
        for n in 1..=12 {
            for k in 1..=n.min(4) {
                for s in 1..=3 {
                    for i in 1..=k {
                        let spec = ExtremalSpec::new(n, k, s, i).unwrap();
                        assert_eq!(size_a(&spec), c(build_a(&spec).len() as u64), "{spec:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(co_norm_h_closed(6, 3, 1, 2).unwrap(), c(90));
        assert_eq!(sunflower_count_h_closed(6, 3, 1, 2).unwrap(), c(30));
        assert_eq!(sunflower_count_h_closed(7, 3, 2, 2).unwrap(), c(120));
        assert_eq!(co_norm_h_closed(13, 3, 1, 2).unwrap(), c(1518));
        assert_eq!(sunflower_count_h_closed(13, 3, 1, 2).unwrap(), c(660));
        // l beyond both codegree classes
        assert!(sunflower_count_h_closed(6, 3, 1, 5).unwrap().is_zero());
        for n in 3..=15 {
            for s in 1..=4 {
                let size = binomial(n as i64, 3) - binomial(n as i64 - s as i64, 3);
                assert_eq!(co_norm_h_closed(n, 3, s, 1).unwrap(), size * 3u32);
            }
        }
    }

    #[test]
    fn closed_forms_match_enumeration() {
        for n in 2..=12 {
            for k in 2..=n.min(4) {
                for s in 1..=3 {
                    let h = build_h(n, k, s).unwrap();
                    for p in 0..=4 {
                        assert_eq!(co_norm(&h, p).unwrap(), co_norm_h_closed(n, k, s, p).unwrap());
                    }
                    for l in 2..=4 {
                        assert_eq!(
                            sunflower_count(&h, l).unwrap(),
                            sunflower_count_h_closed(n, k, s, l).unwrap()
                        );
                    }
                    for i in 1..=k {
                        let spec = ExtremalSpec::new(n, k, s, i).unwrap();
                        let a = build_a(&spec);
                        for p in 0..=3 {
                            assert_eq!(co_norm(&a, p).unwrap(), co_norm_a_closed(&spec, p).unwrap(), "{spec:?} p={p}");
                        }
                        assert_eq!(sunflower_count(&a, 2).unwrap(), sunflower_count_a_closed(&spec, 2).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn reference_bound_examples() {
        let b = reference_bounds(6, 3).unwrap();
        assert_eq!((b.ekr, b.hm), (c(10), c(10)));
        let b = reference_bounds(8, 3).unwrap();
        assert_eq!((b.ekr, b.hm), (c(21), c(16)));
        assert_eq!(reference_bounds(10, 5).unwrap().ekr, c(126));
        assert!(reference_bounds(5, 3).is_err());
    }
}
