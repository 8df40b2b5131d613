//! Extremal search over families with bounded matching number.

mod exhaustive;
mod hill;
pub mod lemmas;
pub mod random;
mod threshold;
mod verify;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::count::{binomial_u128, Count};
use crate::error::{invalid, Error, Result};
use crate::family::{k_subsets, Family};
use crate::quantities::{co_norm_of, codegree_table, sunflower_count_of};

pub use exhaustive::{exhaustive_max, for_each_family, EXHAUSTIVE_GUARD};
pub use hill::{hill_climb, HillConfig, PATIENCE};
pub use threshold::{threshold_scan, ThresholdRow, ThresholdScan, Winner};
pub use verify::{
    verify_graph_bound, verify_sequence_inequality, GraphBoundReport, SequenceCase,
};

/// The maximised quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    /// `|H|`
    Size,
    /// `co_p(H)`, `p >= 1`
    CoNorm(u32),
    /// `N(S_{k,l}^{k-1}, H)`, `l >= 2`
    Sunflower(u32),
}

impl Objective {
    pub fn validate(self) -> Result<Self> {
        match self {
            Objective::CoNorm(0) => invalid("co_norm objective needs p >= 1"),
            Objective::Sunflower(l) if l < 2 => invalid("sunflower objective needs l >= 2"),
            o => Ok(o),
        }
    }

    /// Exact value on a family.
    pub fn evaluate(self, h: &Family) -> Result<Count> {
        match self {
            Objective::Size => Ok(Count::from(h.len())),
            Objective::CoNorm(p) => Ok(co_norm_of(&codegree_table(h)?, p)),
            Objective::Sunflower(l) => Ok(sunflower_count_of(&codegree_table(h)?, l)),
        }
    }

    /// Per-`(k-1)`-set contribution `f(d)`, so that the objective is
    /// `Σ_E f(d(E))` (divided by `k` for [`Objective::Size`]).
    fn weight(self, d: u32) -> Option<u128> {
        match self {
            Objective::Size => Some(u128::from(d)),
            Objective::CoNorm(p) => u128::from(d).checked_pow(p),
            Objective::Sunflower(l) => binomial_u128(i64::from(d), i64::from(l)),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::Size => write!(f, "size"),
            Objective::CoNorm(p) => write!(f, "co:{p}"),
            Objective::Sunflower(l) => write!(f, "sunflower:{l}"),
        }
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parsed = match s.split_once(':') {
            None if s == "size" => Objective::Size,
            Some(("co", p)) => Objective::CoNorm(p.parse().map_err(|_| bad_objective(s))?),
            Some(("sunflower", l)) => Objective::Sunflower(l.parse().map_err(|_| bad_objective(s))?),
            _ => return Err(bad_objective(s)),
        };
        parsed.validate()
    }
}

fn bad_objective(s: &str) -> Error {
    Error::InvalidArgument(format!("objective {s:?} is not one of size, co:<p>, sunflower:<l>"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    HillClimb,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::HillClimb => "hill_climb",
        })
    }
}

/// Maximum stored witnesses per optimum.
pub const WITNESS_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub n: u32,
    pub k: u32,
    pub s: u32,
    pub objective: Objective,
    pub optimum: Count,
    /// Pairwise non-isomorphic optimal (or best found) families, at most
    /// [`WITNESS_CAP`].
    pub witnesses: Vec<Family>,
    /// More isomorphism classes attain the optimum than were stored.
    pub witnesses_truncated: bool,
    /// Exhaustive: labelled families attaining the optimum.
    /// Hill climbing: restarts that reached the best value.
    pub optimal_families: u64,
    pub nodes_explored: u64,
    pub method: Method,
    pub seed: Option<u64>,
    /// Sideways-move budget used by hill climbing.
    pub patience: Option<usize>,
}

/// Index of candidate edges and their `(k-1)`-subsets for incremental
/// objective bookkeeping.
struct Layout {
    k: u32,
    candidates: Vec<u64>,
    /// `ridges[c * k .. (c + 1) * k]` are the ridge indices of candidate `c`.
    ridges: Vec<u32>,
    ridge_count: usize,
    weights: Vec<u128>,
}

impl Layout {
    fn new(n: u32, k: u32, objective: Objective) -> Result<Self> {
        if k < 2 || k > n {
            return invalid(format!("search needs 2 <= k <= n, got n = {n}, k = {k}"));
        }
        objective.validate()?;
        let candidates: Vec<u64> = k_subsets(n, k).into_iter().map(|e| e.mask()).collect();
        let ridge_sets = k_subsets(n, k - 1);
        let index: HashMap<u64, u32> =
            ridge_sets.iter().enumerate().map(|(i, r)| (r.mask(), i as u32)).collect();
        let mut ridges = Vec::with_capacity(candidates.len() * k as usize);
        for &c in &candidates {
            let mut rest = c;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                ridges.push(index[&(c & !bit)]);
            }
        }
        let max_d = n - k + 1;
        let weights = (0..=max_d)
            .map(|d| objective.weight(d))
            .collect::<Option<Vec<u128>>>()
            .ok_or_else(|| Error::Guard(format!("{objective} values overflow 128 bits at n = {n}")))?;
        // the whole objective must fit comfortably in i128
        let total = (ridge_sets.len() as u128)
            .checked_mul(weights[max_d as usize])
            .filter(|t| *t < (1u128 << 120));
        if total.is_none() {
            return Err(Error::Guard(format!("{objective} values overflow 128 bits at n = {n}")));
        }
        Ok(Layout { k, candidates, ridges, ridge_count: ridge_sets.len(), weights })
    }

    fn ridges_of(&self, c: usize) -> &[u32] {
        let k = self.k as usize;
        &self.ridges[c * k..(c + 1) * k]
    }

    fn step_up(&self, d: u32) -> u128 {
        self.weights[d as usize + 1] - self.weights[d as usize]
    }

    /// Objective value from the raw ridge score.
    fn finish(&self, objective: Objective, raw: u128) -> Count {
        match objective {
            Objective::Size => Count::from(raw / u128::from(self.k)),
            _ => Count::from(raw),
        }
    }

    fn family(&self, n: u32, members: &[usize]) -> Family {
        let mut idx = members.to_vec();
        idx.sort_unstable();
        // candidates are in lexicographic order already
        let edges = idx.into_iter().map(|c| crate::family::EdgeSet::from_mask(self.candidates[c])).collect();
        Family::from_sorted(n, self.k, edges)
    }
}
