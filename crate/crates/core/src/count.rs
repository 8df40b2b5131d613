//! Exact counting helpers.
//!
//! Every aggregate the workbench reports (`co_p`, sunflower counts, family
//! sizes from closed forms) is a [`Count`]. Codegrees themselves are bounded
//! by `n` and stay in machine words.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Arbitrary-precision nonnegative integer.
pub type Count = BigUint;

/// Binomial coefficient `C(a, b)`, zero whenever `b < 0`, `a < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> Count {
    if a < 0 || b < 0 || b > a {
        return Count::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = Count::one();
    for i in 0..b {
        // acc * (a - i) is divisible by i + 1 after each step
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `C(a, b)` in machine words; `None` on overflow.
pub fn binomial_u128(a: i64, b: i64) -> Option<u128> {
    if a < 0 || b < 0 || b > a {
        return Some(0);
    }
    let b = b.min(a - b) as u128;
    let a = a as u128;
    let mut acc: u128 = 1;
    for i in 0..b {
        let g = gcd(acc, i + 1);
        let num = (a - i) / ((i + 1) / g);
        acc = (acc / g).checked_mul(num)?;
    }
    Some(acc)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `base^exp` with the convention `0^0 = 1`.
pub fn pow(base: u64, exp: u32) -> Count {
    num_traits::pow(Count::from(base), exp as usize)
}

/// `l!`
pub fn factorial(l: u32) -> Count {
    (1..=u64::from(l)).fold(Count::one(), |acc, i| acc * i)
}
