use crate::count::binomial;
use crate::error::{Error, Result};
use crate::family::{EdgeSet, Family};
use crate::iso::ClassCollector;
use crate::matching::has_packing;

use super::{Layout, Method, Objective, SearchReport, WITNESS_CAP};

/// Largest `C(n, k)` the exhaustive search accepts.
pub const EXHAUSTIVE_GUARD: u64 = 24;

fn guard(n: u32, k: u32) -> Result<()> {
    let m = binomial(i64::from(n), i64::from(k));
    if m > EXHAUSTIVE_GUARD.into() {
        return Err(Error::Guard(format!(
            "exhaustive search needs C(n,k) <= {EXHAUSTIVE_GUARD}, but C({n},{k}) = {m}"
        )));
    }
    Ok(())
}

/// Exact maximum of `objective` over all families on `[n]` with `ν <= s`.
///
/// Depth-first over the candidate edges in lexicographic order, trying
/// "add" before "skip". An edge is added only if the matching number stays
/// at most `s`. Each `(k-1)`-set `E` carries its current codegree `d(E)` and
/// the number `r(E)` of undecided candidates through it; `Σ f(d + r)` bounds
/// every completion, and branches whose bound falls below the incumbent are
/// cut. Ties are explored so every optimal family is counted.
pub fn exhaustive_max(n: u32, k: u32, s: u32, objective: Objective) -> Result<SearchReport> {
    guard(n, k)?;
    let layout = Layout::new(n, k, objective)?;
    let top = n - k + 1;
    let mut dfs = Dfs {
        layout: &layout,
        n,
        s: s as usize,
        d: vec![0; layout.ridge_count],
        r: vec![top; layout.ridge_count],
        chosen: Vec::new(),
        score: 0,
        bound: layout.ridge_count as u128 * layout.weights[top as usize],
        best: None,
        count: 0,
        classes: ClassCollector::new(),
        truncated: false,
        nodes: 0,
    };
    dfs.go(0);
    let best = dfs.best.expect("the empty family is always feasible");
    Ok(SearchReport {
        n,
        k,
        s,
        objective,
        optimum: layout.finish(objective, best),
        witnesses: dfs.classes.into_representatives(),
        witnesses_truncated: dfs.truncated,
        optimal_families: dfs.count,
        nodes_explored: dfs.nodes,
        method: Method::Exhaustive,
        seed: None,
        patience: None,
    })
}

struct Dfs<'a> {
    layout: &'a Layout,
    n: u32,
    s: usize,
    d: Vec<u32>,
    r: Vec<u32>,
    chosen: Vec<usize>,
    score: u128,
    bound: u128,
    best: Option<u128>,
    count: u64,
    classes: ClassCollector,
    truncated: bool,
    nodes: u64,
}

impl Dfs<'_> {
    fn go(&mut self, i: usize) {
        self.nodes += 1;
        if self.best.is_some_and(|b| self.bound < b) {
            return;
        }
        if i == self.layout.candidates.len() {
            self.leaf();
            return;
        }
        let layout = self.layout;
        if self.can_add(i) {
            for &q in layout.ridges_of(i) {
                let q = q as usize;
                self.score += layout.step_up(self.d[q]);
                self.d[q] += 1;
                self.r[q] -= 1;
            }
            self.chosen.push(i);
            self.go(i + 1);
            self.chosen.pop();
            for &q in layout.ridges_of(i) {
                let q = q as usize;
                self.r[q] += 1;
                self.d[q] -= 1;
                self.score -= layout.step_up(self.d[q]);
            }
        }
        for &q in layout.ridges_of(i) {
            let q = q as usize;
            self.r[q] -= 1;
            self.bound -= layout.step_up(self.d[q] + self.r[q]);
        }
        self.go(i + 1);
        for &q in layout.ridges_of(i) {
            let q = q as usize;
            self.bound += layout.step_up(self.d[q] + self.r[q]);
            self.r[q] += 1;
        }
    }

    fn can_add(&self, c: usize) -> bool {
        let mask = self.layout.candidates[c];
        let disjoint: Vec<u64> = self
            .chosen
            .iter()
            .map(|&i| self.layout.candidates[i])
            .filter(|&m| m & mask == 0)
            .collect();
        disjoint.len() < self.s || !has_packing(&disjoint, self.layout.k, self.s)
    }

    fn leaf(&mut self) {
        let family = self.layout.family(self.n, &self.chosen);
        match self.best {
            Some(b) if self.score < b => {}
            Some(b) if self.score == b => {
                self.count += 1;
                self.record(&family);
            }
            _ => {
                self.best = Some(self.score);
                self.count = 1;
                self.classes = ClassCollector::new();
                self.truncated = false;
                self.record(&family);
            }
        }
    }

    fn record(&mut self, family: &Family) {
        if self.classes.len() < WITNESS_CAP {
            self.classes.insert(family);
        } else if !self.truncated {
            let mut probe = self.classes.clone();
            self.truncated = probe.insert(family);
        }
    }
}

/// Calls `visit` on every family on `[n]` with `ν <= s` (edge-by-edge
/// depth-first, never extending past matching number `s`).
pub fn for_each_family<F: FnMut(&Family)>(n: u32, k: u32, s: u32, mut visit: F) -> Result<u64> {
    guard(n, k)?;
    let candidates: Vec<u64> =
        crate::family::k_subsets(n, k).into_iter().map(|e| e.mask()).collect();
    let mut chosen = Vec::new();
    let mut visited = 0u64;
    walk(n, k, s as usize, &candidates, 0, &mut chosen, &mut visit, &mut visited);
    Ok(visited)
}

#[allow(clippy::too_many_arguments)]
fn walk<F: FnMut(&Family)>(
    n: u32,
    k: u32,
    s: usize,
    candidates: &[u64],
    i: usize,
    chosen: &mut Vec<u64>,
    visit: &mut F,
    visited: &mut u64,
) {
    if i == candidates.len() {
        let mut edges: Vec<EdgeSet> = chosen.iter().map(|&m| EdgeSet::from_mask(m)).collect();
        edges.sort_unstable();
        *visited += 1;
        visit(&Family::from_sorted(n, k, edges));
        return;
    }
    let c = candidates[i];
    let disjoint: Vec<u64> = chosen.iter().copied().filter(|&m| m & c == 0).collect();
    if disjoint.len() < s || !has_packing(&disjoint, k, s) {
        chosen.push(c);
        walk(n, k, s, candidates, i + 1, chosen, visit, visited);
        chosen.pop();
    }
    walk(n, k, s, candidates, i + 1, chosen, visit, visited);
}
