//! Independent oracles: plain subset arithmetic on vertex lists, sharing no
//! code with the library beyond building `Family` values for comparison.

#![allow(dead_code)]

use codegree::{isomorphic, Family};

/// All `k`-subsets of `1..=n`, in the order produced by nested loops.
pub fn subsets(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k as usize {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

fn disjoint(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|x| !b.contains(x))
}

/// Largest set of pairwise disjoint edges, by plain recursion.
pub fn nu(edges: &[Vec<u32>]) -> usize {
    fn go(edges: &[Vec<u32>], chosen: &mut Vec<usize>, from: usize) -> usize {
        let mut best = chosen.len();
        for i in from..edges.len() {
            if chosen.iter().all(|&j| disjoint(&edges[i], &edges[j])) {
                chosen.push(i);
                best = best.max(go(edges, chosen, i + 1));
                chosen.pop();
            }
        }
        best
    }
    go(edges, &mut Vec::new(), 0)
}

/// Codegree of every `(k-1)`-subset of `[n]`, zeros included.
pub fn codegrees(n: u32, k: u32, edges: &[Vec<u32>]) -> Vec<u64> {
    subsets(n, k - 1)
        .iter()
        .map(|r| edges.iter().filter(|e| r.iter().all(|v| e.contains(v))).count() as u64)
        .collect()
}

pub fn choose(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    (0..b).fold(1u128, |acc, i| acc * u128::from(a - i) / u128::from(i + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obj {
    Size,
    Co(u32),
    Sunflower(u32),
}

pub fn evaluate(obj: Obj, n: u32, k: u32, edges: &[Vec<u32>]) -> u128 {
    match obj {
        Obj::Size => edges.len() as u128,
        Obj::Co(p) => codegrees(n, k, edges).iter().map(|&d| u128::from(d).pow(p)).sum(),
        Obj::Sunflower(l) => codegrees(n, k, edges).iter().map(|&d| choose(d, u64::from(l))).sum(),
    }
}

/// Number of `l`-sets of edges whose common intersection has `k - 1` points.
pub fn brute_sunflowers(k: u32, edges: &[Vec<u32>], l: usize) -> u128 {
    fn go(k: u32, edges: &[Vec<u32>], l: usize, from: usize, core: Option<Vec<u32>>, taken: usize) -> u128 {
        if taken == l {
            return u128::from(core.is_some_and(|c| c.len() == k as usize - 1));
        }
        let mut total = 0;
        for i in from..edges.len() {
            let next: Vec<u32> = match &core {
                None => edges[i].clone(),
                Some(c) => c.iter().copied().filter(|v| edges[i].contains(v)).collect(),
            };
            if next.len() + 1 < k as usize {
                continue;
            }
            total += go(k, edges, l, i + 1, Some(next), taken + 1);
        }
        total
    }
    go(k, edges, l, 0, None, 0)
}

pub struct Enumerated {
    pub optimum: u128,
    pub optimal_families: u64,
    pub classes: Vec<Family>,
}

/// Maximum of `obj` over every subset of `k`-sets with `ν <= s`, visiting
/// all `2^C(n,k)` subsets with no pruning at all.
pub fn unpruned_max(n: u32, k: u32, s: usize, obj: Obj) -> Enumerated {
    let all = subsets(n, k);
    assert!(all.len() <= 20, "the unpruned oracle is limited to 20 candidate edges");
    let mut optimum = 0u128;
    let mut optimal: Vec<u32> = Vec::new();
    for mask in 0u32..(1u32 << all.len()) {
        let edges: Vec<Vec<u32>> = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i].clone()).collect();
        let value = evaluate(obj, n, k, &edges);
        if value < optimum || nu(&edges) > s {
            continue;
        }
        if value > optimum {
            optimum = value;
            optimal.clear();
        }
        optimal.push(mask);
    }
    let mut classes: Vec<Family> = Vec::new();
    for &mask in &optimal {
        let lists: Vec<&[u32]> = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i].as_slice()).collect();
        let h = Family::from_lists(n, k, &lists).unwrap();
        if !classes.iter().any(|c| same_up_to_relabelling(c, &h)) {
            classes.push(h);
        }
    }
    Enumerated { optimum, optimal_families: optimal.len() as u64, classes }
}

/// Isomorphism by trying every permutation of `[n]`.
pub fn same_up_to_relabelling(a: &Family, b: &Family) -> bool {
    if a.n() != b.n() || a.len() != b.len() {
        return false;
    }
    let n = a.n() as usize;
    let target: Vec<Vec<u32>> = b.to_lists();
    let mut perm: Vec<u32> = (1..=n as u32).collect();
    loop {
        let mut mapped: Vec<Vec<u32>> = a
            .to_lists()
            .iter()
            .map(|e| {
                let mut m: Vec<u32> = e.iter().map(|&v| perm[v as usize - 1]).collect();
                m.sort();
                m
            })
            .collect();
        mapped.sort();
        let mut t = target.clone();
        t.sort();
        if mapped == t {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [u32]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Library isomorphism agrees with the permutation oracle on these classes.
pub fn library_agrees(classes: &[Family]) -> bool {
    classes.iter().enumerate().all(|(i, a)| {
        classes.iter().enumerate().all(|(j, b)| isomorphic(a, b) == (i == j))
    })
}
