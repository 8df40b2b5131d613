use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::count::binomial;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::iso::ClassCollector;
use crate::matching::has_packing;

use super::{Layout, Method, Objective, SearchReport, WITNESS_CAP};

/// Consecutive sideways (equal-score) moves accepted before only strict
/// improvements are taken.
pub const PATIENCE: usize = 50;

/// Candidate edges the hill climber will index.
const CANDIDATE_GUARD: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HillConfig {
    pub seed: u64,
    pub restarts: usize,
    pub steps: usize,
    /// Worker threads for restarts; results do not depend on it.
    pub threads: usize,
}

impl Default for HillConfig {
    fn default() -> Self {
        HillConfig { seed: 1, restarts: 1000, steps: 1000, threads: 1 }
    }
}

/// Seeded local search for a family with `ν <= s` maximising `objective`.
///
/// Each restart starts from the empty family and proposes `steps` moves,
/// each an add, remove or swap chosen uniformly; the edges involved are
/// drawn uniformly among those keeping `ν <= s`. Improvements are always
/// accepted, sideways moves up to [`PATIENCE`] in a row, worse moves never.
/// Restart `r` draws from ChaCha stream `r` of the seed, so the report is
/// identical for any thread count.
pub fn hill_climb(n: u32, k: u32, s: u32, objective: Objective, config: HillConfig) -> Result<SearchReport> {
    let m = binomial(i64::from(n), i64::from(k));
    if m > CANDIDATE_GUARD.into() {
        return Err(Error::Guard(format!(
            "hill climbing indexes at most {CANDIDATE_GUARD} candidate edges, but C({n},{k}) = {m}"
        )));
    }
    let layout = Layout::new(n, k, objective)?;
    let disjoint = disjoint_lists(&layout.candidates);
    let run = |restart: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(restart as u64);
        Climber::new(&layout, &disjoint, s as usize).run(&mut rng, config.steps)
    };
    let outcomes: Vec<(u128, Vec<usize>)> = if config.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
        pool.install(|| (0..config.restarts).into_par_iter().map(run).collect())
    } else {
        (0..config.restarts).map(run).collect()
    };

    let best = outcomes.iter().map(|(score, _)| *score).max().unwrap_or(0);
    let mut winners: Vec<Family> = outcomes
        .iter()
        .filter(|(score, _)| *score == best)
        .map(|(_, members)| layout.family(n, members))
        .collect();
    let optimal_families = winners.len() as u64;
    winners.sort_by(|a, b| a.edges().cmp(b.edges()));
    let mut classes = ClassCollector::new();
    let mut truncated = false;
    for w in &winners {
        if classes.len() < WITNESS_CAP {
            classes.insert(w);
        } else if classes.clone().insert(w) {
            truncated = true;
            break;
        }
    }
    if winners.is_empty() {
        classes.insert(&layout.family(n, &[]));
    }
    Ok(SearchReport {
        n,
        k,
        s,
        objective,
        optimum: layout.finish(objective, best),
        witnesses: classes.into_representatives(),
        witnesses_truncated: truncated,
        optimal_families,
        nodes_explored: (config.restarts * config.steps) as u64,
        method: Method::HillClimb,
        seed: Some(config.seed),
        patience: Some(PATIENCE),
    })
}

fn disjoint_lists(candidates: &[u64]) -> Vec<Vec<u32>> {
    candidates
        .iter()
        .map(|&c| {
            candidates
                .iter()
                .enumerate()
                .filter(|&(_, &o)| o & c == 0)
                .map(|(i, _)| i as u32)
                .collect()
        })
        .collect()
}

struct Climber<'a> {
    layout: &'a Layout,
    disjoint: &'a [Vec<u32>],
    s: usize,
    present: Vec<bool>,
    members: Vec<usize>,
    /// Number of present edges disjoint from each candidate.
    conflicts: Vec<u32>,
    d: Vec<u32>,
    score: u128,
    scratch: Vec<usize>,
}

impl<'a> Climber<'a> {
    fn new(layout: &'a Layout, disjoint: &'a [Vec<u32>], s: usize) -> Self {
        let m = layout.candidates.len();
        Climber {
            layout,
            disjoint,
            s,
            present: vec![false; m],
            members: Vec::new(),
            conflicts: vec![0; m],
            d: vec![0; layout.ridge_count],
            score: 0,
            scratch: Vec::new(),
        }
    }

    fn run(mut self, rng: &mut ChaCha8Rng, steps: usize) -> (u128, Vec<usize>) {
        let mut best = (self.score, self.members.clone());
        let mut sideways = 0usize;
        for _ in 0..steps {
            let before = self.score;
            let undo = match rng.gen_range(0..3) {
                0 => {
                    self.feasible_adds(None);
                    if self.scratch.is_empty() {
                        continue;
                    }
                    let c = self.scratch[rng.gen_range(0..self.scratch.len())];
                    self.add(c);
                    Undo::Add(c)
                }
                1 => {
                    if self.members.is_empty() {
                        continue;
                    }
                    let r = self.members[rng.gen_range(0..self.members.len())];
                    self.remove(r);
                    Undo::Remove(r)
                }
                _ => {
                    if self.members.is_empty() {
                        continue;
                    }
                    let r = self.members[rng.gen_range(0..self.members.len())];
                    self.feasible_adds(Some(r));
                    if self.scratch.is_empty() {
                        continue;
                    }
                    let c = self.scratch[rng.gen_range(0..self.scratch.len())];
                    self.remove(r);
                    self.add(c);
                    Undo::Swap(r, c)
                }
            };
            let accept = if self.score > before {
                sideways = 0;
                true
            } else if self.score == before && sideways < PATIENCE {
                sideways += 1;
                true
            } else {
                false
            };
            if !accept {
                match undo {
                    Undo::Add(c) => self.remove(c),
                    Undo::Remove(r) => self.add(r),
                    Undo::Swap(r, c) => {
                        self.remove(c);
                        self.add(r);
                    }
                }
            } else if self.score > best.0 {
                best = (self.score, self.members.clone());
            }
        }
        best
    }

    /// Fills `scratch` with absent candidates whose addition keeps `ν <= s`
    /// in the current family, minus `removed` if given.
    fn feasible_adds(&mut self, removed: Option<usize>) {
        self.scratch.clear();
        let removed_mask = removed.map(|r| self.layout.candidates[r]);
        for c in 0..self.present.len() {
            if self.present[c] {
                continue;
            }
            let mask = self.layout.candidates[c];
            let mut conflicts = self.conflicts[c] as usize;
            if removed_mask.is_some_and(|r| r & mask == 0) {
                conflicts -= 1;
            }
            // fewer than s disjoint edges cannot form an s-matching, and for
            // s <= 1 a single disjoint edge already completes one
            let ok = conflicts < self.s || self.s > 1 && {
                let others: Vec<u64> = self
                    .members
                    .iter()
                    .filter(|&&i| Some(i) != removed)
                    .map(|&i| self.layout.candidates[i])
                    .filter(|&o| o & mask == 0)
                    .collect();
                !has_packing(&others, self.layout.k, self.s)
            };
            if ok {
                self.scratch.push(c);
            }
        }
    }

    fn add(&mut self, c: usize) {
        self.present[c] = true;
        self.members.push(c);
        for &o in &self.disjoint[c] {
            self.conflicts[o as usize] += 1;
        }
        for &q in self.layout.ridges_of(c) {
            let q = q as usize;
            self.score += self.layout.step_up(self.d[q]);
            self.d[q] += 1;
        }
    }

    fn remove(&mut self, c: usize) {
        self.present[c] = false;
        let pos = self.members.iter().position(|&x| x == c).expect("present member");
        self.members.swap_remove(pos);
        for &o in &self.disjoint[c] {
            self.conflicts[o as usize] -= 1;
        }
        for &q in self.layout.ridges_of(c) {
            let q = q as usize;
            self.d[q] -= 1;
            self.score -= self.layout.step_up(self.d[q]);
        }
    }
}

enum Undo {
    Add(usize),
    Remove(usize),
    Swap(usize, usize),
}
