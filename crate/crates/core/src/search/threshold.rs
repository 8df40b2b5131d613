use std::fmt;

use crate::constructions::{
    co_norm_a_closed, co_norm_h_closed, size_a, sunflower_count_a_closed, sunflower_count_h_closed,
    ExtremalSpec,
};
use crate::count::Count;
use crate::error::{invalid, Result};

use super::Objective;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Winner {
    H,
    Ak,
    Tie,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::H => "H",
            Winner::Ak => "Ak",
            Winner::Tie => "tie",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdRow {
    pub n: u32,
    pub value_h: Count,
    pub value_ak: Count,
    pub winner: Winner,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdScan {
    pub rows: Vec<ThresholdRow>,
    /// Smallest scanned `n` where `H(n,k,s)` strictly wins.
    pub first_h_win: Option<u32>,
    /// `H` wins strictly at every scanned `n` from `first_h_win` on.
    pub stays_winning: bool,
}

/// Closed-form comparison of `objective` on `H(n,k,s)` and `A(n,k,s,k)`
/// for `n` in `from..=to`.
pub fn threshold_scan(k: u32, s: u32, objective: Objective, from: u32, to: u32) -> Result<ThresholdScan> {
    objective.validate()?;
    if k < 2 || from < k {
        return invalid(format!("threshold scans need 2 <= k <= n_from, got k = {k}, n_from = {from}"));
    }
    if s == 0 {
        return invalid("s must be at least 1");
    }
    let mut rows = Vec::new();
    for n in from..=to {
        let h = ExtremalSpec::new(n, k, s, 1)?;
        let ak = ExtremalSpec::new(n, k, s, k)?;
        let (value_h, value_ak) = match objective {
            Objective::Size => (size_a(&h), size_a(&ak)),
            Objective::CoNorm(p) => (co_norm_h_closed(n, k, s, p)?, co_norm_a_closed(&ak, p)?),
            Objective::Sunflower(l) => {
                (sunflower_count_h_closed(n, k, s, l)?, sunflower_count_a_closed(&ak, l)?)
            }
        };
        let winner = match value_h.cmp(&value_ak) {
            std::cmp::Ordering::Greater => Winner::H,
            std::cmp::Ordering::Less => Winner::Ak,
            std::cmp::Ordering::Equal => Winner::Tie,
        };
        rows.push(ThresholdRow { n, value_h, value_ak, winner });
    }
    let first = rows.iter().position(|r| r.winner == Winner::H);
    let stays_winning = first.is_some_and(|i| rows[i..].iter().all(|r| r.winner == Winner::H));
    Ok(ThresholdScan { first_h_win: first.map(|i| rows[i].n), rows, stays_winning })
}
