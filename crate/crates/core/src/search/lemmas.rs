//! Checkers for the structural lemmas about families with `ν(H) = s`, and a
//! grid runner that applies them to random corpora and exhaustive instances.

use std::fmt;

use crate::constructions::co_norm_h_closed;
use crate::count::{binomial, pow, Count};
use crate::error::{invalid, Result};
use crate::family::{EdgeSet, Family};
use crate::matching::{lift_matching, matching_number, maximum_matching};
use crate::quantities::{high_codegree_family, restrict_avoid};
use crate::stability::check_shadow_counting_bound;

use super::random::random_corpus;
use super::{for_each_family, hill_climb, verify_graph_bound, verify_sequence_inequality, HillConfig, Objective};

/// `s - 1 <= ν(H - i) <= s` for every vertex `i`. Needs `ν(h) = s`.
pub fn check_restricted_matching(h: &Family, s: usize) -> bool {
    (1..=h.n()).all(|i| {
        let nu = matching_number(&restrict_avoid(h, single(i)));
        nu + 1 >= s && nu <= s
    })
}

/// For `k = 3`: every pair `{i,j}` with codegree at least `3s + 1` has
/// `ν(H - i - j) <= s - 1`. Needs `ν(h) = s`.
pub fn check_pair_codegree(h: &Family, s: usize) -> Result<bool> {
    if h.k() != 3 {
        return invalid("the pair codegree lemma is about 3-uniform families");
    }
    let heavy = high_codegree_family(h, 3 * s as u32 + 1)?;
    Ok(heavy.iter().all(|pair| matching_number(&restrict_avoid(h, *pair)) < s))
}

/// For `k = 3`: a vertex lying in at least `2s + 1` pairs of codegree at
/// least `3s + 1` has `ν(H - i) = s - 1`. Needs `ν(h) = s`.
///
/// This can fail: with `s = 1`, the triangle `{a,b,c}` together with all
/// triples `{x,u,v}`, `u ∈ {a,b,c}`, `v ∈ {a,b,c,y,z}` is intersecting, `x`
/// has three heavy pairs, and `H - x` keeps `{a,b,c}`. See
/// [`check_max_degree_at`] for the version with `3s + 1` heavy pairs.
pub fn check_max_degree(h: &Family, s: usize) -> Result<bool> {
    check_max_degree_at(h, s, 2 * s + 1)
}

/// For `k = 3`: a vertex lying in at least `min_pairs` pairs of codegree at
/// least `3s + 1` has `ν(H - i) = s - 1`. Holds whenever
/// `min_pairs >= 3s + 1`, since an `s`-matching of `H - i` then misses one
/// of those pairs.
pub fn check_max_degree_at(h: &Family, s: usize, min_pairs: usize) -> Result<bool> {
    if h.k() != 3 {
        return invalid("the max-degree lemma is about 3-uniform families");
    }
    let heavy = high_codegree_family(h, 3 * s as u32 + 1)?;
    Ok((1..=h.n()).all(|i| {
        heavy.degree(i) < min_pairs || matching_number(&restrict_avoid(h, single(i))) + 1 == s
    }))
}

/// `ν(K_{sk+1}(H)) <= s`, and a maximum matching of `K_{sk+1}(H)` lifts to a
/// matching of `h` edge by edge. Needs `ν(h) <= s` and `k >= 2`.
pub fn check_shadow_lemma(h: &Family, s: usize) -> Result<bool> {
    let k = h.k();
    let heavy = high_codegree_family(h, s as u32 * k + 1)?;
    let m = maximum_matching(&heavy);
    if m.len() > s {
        return Ok(false);
    }
    let lifted = lift_matching(h, s, &m)?;
    let sound = lifted.is_valid_in(h)
        && lifted.len() == m.len()
        && m.edges().iter().zip(lifted.edges()).all(|(f, g)| f.is_subset(*g));
    Ok(sound)
}

/// `co_p(H(n,3,s)) = (n-1)(n-2)^p + Σ_i C(p,i) co_i(H(n-1,3,s-1))`.
pub fn check_recurrence(n: u32, s: u32, p: u32) -> Result<bool> {
    if s == 0 || n < 4 || s > n - 1 {
        return invalid(format!("recurrence needs 1 <= s < n and n >= 4, got n = {n}, s = {s}"));
    }
    let lhs = co_norm_h_closed(n, 3, s, p)?;
    let mut rhs = Count::from(n - 1) * pow(u64::from(n - 2), p);
    for i in 0..=p {
        rhs += binomial(i64::from(p), i64::from(i)) * co_norm_h_closed(n - 1, 3, s - 1, i)?;
    }
    Ok(lhs == rhs)
}

/// `co_p(H(n,3,s)) >= (C(n,2) - C(n-s,2)) (n-2)^p >= s(n-s)(n-2)^p`.
pub fn check_lower_bound(n: u32, s: u32, p: u32) -> Result<bool> {
    if s > n || n < 3 {
        return invalid(format!("lower bound needs 3 <= n and s <= n, got n = {n}, s = {s}"));
    }
    let value = co_norm_h_closed(n, 3, s, p)?;
    let np = pow(u64::from(n - 2), p);
    let middle = (binomial(i64::from(n), 2) - binomial(i64::from(n - s), 2)) * np.clone();
    let low = Count::from(s) * Count::from(n - s) * np;
    Ok(value >= middle && middle >= low)
}

fn single(i: u32) -> EdgeSet {
    EdgeSet::from_mask(1u64 << (i - 1))
}

/// One line of a lemma grid run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub params: String,
    pub cases: u64,
    pub violations: u64,
    pub note: Option<String>,
}

impl LemmaCheck {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

impl fmt::Display for LemmaCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} [{}] cases={} violations={}", self.name, self.params, self.cases, self.violations)?;
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grid {
    Small,
    Full,
}

impl std::str::FromStr for Grid {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Grid::Small),
            "full" => Ok(Grid::Full),
            _ => invalid(format!("grid {s:?} is not one of small, full")),
        }
    }
}

struct Tally {
    name: &'static str,
    params: String,
    cases: u64,
    violations: u64,
    note: Option<String>,
}

impl Tally {
    fn new(name: &'static str, params: impl Into<String>) -> Self {
        Tally { name, params: params.into(), cases: 0, violations: 0, note: None }
    }

    fn record(&mut self, ok: bool) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
        }
    }

    fn done(self) -> LemmaCheck {
        LemmaCheck { name: self.name, params: self.params, cases: self.cases, violations: self.violations, note: self.note }
    }
}

/// Runs every lemma checker. `Small` finishes in seconds; `Full` uses the
/// 10^4-family corpus, all intersecting triple systems on `[6]` and larger
/// search budgets.
pub fn run_lemma_grid(grid: Grid, seed: u64) -> Result<Vec<LemmaCheck>> {
    let full = grid == Grid::Full;
    let corpus_size = if full { 10_000 } else { 500 };
    let corpus = random_corpus(seed, corpus_size);
    let corpus_params = format!("random corpus seed={seed} size={corpus_size} k<=3 n<=12 s<=3");
    let mut out = Vec::new();

    let mut restricted = Tally::new("restricted matching s-1 <= nu(H-i) <= s", corpus_params.clone());
    let mut pair = Tally::new("pair codegree >= 3s+1 forces nu(H-i-j) <= s-1", corpus_params.clone() + " k=3");
    let mut degree = Tally::new("heavy degree >= 2s+1 forces nu(H-i) = s-1", corpus_params.clone() + " k=3");
    let mut degree_strong = Tally::new("heavy degree >= 3s+1 forces nu(H-i) = s-1", corpus_params.clone() + " k=3");
    let mut shadow = Tally::new("shadow matching nu(K_{sk+1}) <= s with lifting", corpus_params.clone());
    let mut counting = Tally::new("counting bound co_p <= (sk)^p(C(n,k-1)-|K|) + (n-k+1)^p|K|", corpus_params + " p<=4");
    for entry in &corpus {
        let (h, s) = (&entry.family, entry.s as usize);
        shadow.record(check_shadow_lemma(h, s)?);
        for p in 1..=4 {
            counting.record(check_shadow_counting_bound(h, entry.s, p, &Count::from(0u32))?);
        }
        if matching_number(h) != s {
            continue;
        }
        restricted.record(check_restricted_matching(h, s));
        if h.k() == 3 {
            pair.record(check_pair_codegree(h, s)?);
            let ok = check_max_degree(h, s)?;
            if !ok && degree.note.is_none() {
                degree.note = Some(format!("first counterexample s={s}: {}", h.to_lists().iter().map(|e| format!("{e:?}")).collect::<Vec<_>>().join(" ")));
            }
            degree.record(ok);
            degree_strong.record(check_max_degree_at(h, s, 3 * s + 1)?);
        }
    }
    if full {
        let mut exhaustive = Tally::new("shadow matching nu(K_{sk+1}) <= s with lifting", "all families n=6 k=3 s=1");
        let mut failure = None;
        for_each_family(6, 3, 1, |h| match check_shadow_lemma(h, 1) {
            Ok(ok) => exhaustive.record(ok),
            Err(e) => {
                exhaustive.record(false);
                failure.get_or_insert(e.to_string());
            }
        })?;
        exhaustive.note = failure;
        out.push(restricted.done());
        out.push(pair.done());
        out.push(degree.done());
        out.push(degree_strong.done());
        out.push(shadow.done());
        out.push(exhaustive.done());
    } else {
        out.push(restricted.done());
        out.push(pair.done());
        out.push(degree.done());
        out.push(degree_strong.done());
        out.push(shadow.done());
    }
    out.push(counting.done());

    let mut recurrence = Tally::new("co_p recurrence for H(n,3,s)", "n<=30 s<=5 p<=6");
    let mut lower = Tally::new("lower bound co_p(H(n,3,s)) >= s(n-s)(n-2)^p", "n<=30 s<=5 p<=6");
    for n in 4..=30 {
        for s in 1..=5.min(n - 1) {
            for p in 0..=6 {
                recurrence.record(check_recurrence(n, s, p)?);
                lower.record(check_lower_bound(n, s, p)?);
            }
        }
    }
    out.push(recurrence.done());
    out.push(lower.done());

    let mut sequence = Tally::new("capped sequence sum x_i^p <= ca^p + (m-ca)b^(p-1)", "a<=5 b<a c<=3 n<=6 p in {2,3}");
    let mut equality = 0u64;
    for a in 2..=5u64 {
        for b in 1..a {
            for n in 1..=6u64 {
                for c in 0..=3u64.min(n - 1) {
                    for p in 2..=3 {
                        for case in verify_sequence_inequality(a, b, c, n, p)? {
                            let divides = (case.m - c * a) % b == 0;
                            sequence.record(case.holds() && (!divides || case.attained));
                            equality += u64::from(case.attained);
                        }
                    }
                }
            }
        }
    }
    sequence.note = Some(format!("equality in {equality} cases"));
    out.push(sequence.done());

    let mut pairs: Vec<(u32, u32)> = (3..=7).map(|n| (n, 1)).collect();
    pairs.extend((5..=if full { 7 } else { 6 }).map(|n| (n, 2)));
    let mut graph = Tally::new("graph bound |H| <= s(2s+1) under degree <= 2s", "");
    let mut listed = Vec::new();
    for &(n, s) in &pairs {
        let r = verify_graph_bound(n, s)?;
        graph.record(r.holds());
        listed.push(format!("({n},{s})->{}", r.max_size));
    }
    graph.params = format!("(n,s) in {{{}}}", pairs.iter().map(|(n, s)| format!("({n},{s})")).collect::<Vec<_>>().join(","));
    graph.note = Some(listed.join(" "));
    out.push(graph.done());

    let restarts = if full { 1000 } else { 40 };
    let config = HillConfig { seed, restarts, steps: 1000, threads: 1 };
    let mut base = Tally::new("base case s=1: co_p(H) <= co_p(H(n,3,1)) by hill climbing", format!("n=13 p in {{2,3}} seed={seed} restarts={restarts} steps=1000"));
    let mut reached = Vec::new();
    for p in 2..=3 {
        let report = hill_climb(13, 3, 1, Objective::CoNorm(p), config)?;
        let target = co_norm_h_closed(13, 3, 1, p)?;
        base.record(report.optimum <= target);
        reached.push(format!("p={p} best={} target={target}", report.optimum));
    }
    base.note = Some(reached.join(", "));
    out.push(base.done());

    Ok(out)
}
