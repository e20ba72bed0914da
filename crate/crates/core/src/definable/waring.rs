use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Pow, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

/// `n = a² + b² + c² + d²`, entries in descending order.
///
/// Strips factors of 4, then searches the largest first square downward,
/// skipping remainders of the form `4^a(8b+7)` which are never sums of
/// three squares.
pub fn four_squares(n: u64) -> [u64; 4] {
    if n == 0 {
        return [0; 4];
    }
    let mut m = n;
    let mut scale = 1u64;
    while m % 4 == 0 {
        m /= 4;
        scale *= 2;
    }
    let mut a = m.sqrt();
    loop {
        let rest = m - a * a;
        if let Some([b, c, d]) = three_squares(rest) {
            let mut out = [a * scale, b * scale, c * scale, d * scale];
            out.sort_unstable_by(|x, y| y.cmp(x));
            return out;
        }
        // Lagrange guarantees success before a reaches zero.
        a -= 1;
    }
}

fn excluded_from_three_squares(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % 4 == 0 {
        n /= 4;
    }
    n % 8 == 7
}

fn three_squares(n: u64) -> Option<[u64; 3]> {
    if excluded_from_three_squares(n) {
        return None;
    }
    let mut b = n.sqrt();
    loop {
        if let Some([c, d]) = two_squares(n - b * b) {
            return Some([b, c, d]);
        }
        if b == 0 {
            return None;
        }
        b -= 1;
    }
}

fn two_squares(n: u64) -> Option<[u64; 2]> {
    let mut c = n.sqrt();
    while 2 * c * c >= n {
        let rest = n - c * c;
        let d = rest.sqrt();
        if d * d == rest {
            return Some([c, d]);
        }
        if c == 0 {
            break;
        }
        c -= 1;
    }
    None
}

/// Waring's number `g(k)` from the closed form `2^k + ⌊(3/2)^k⌋ − 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WaringParams {
    pub exponent_k: u32,
    #[serde(serialize_with = "crate::field::serde_impl::decimal")]
    pub g_value: BigInt,
    /// Whether `2^k·{(3/2)^k} + ⌊(3/2)^k⌋ ≤ 2^k` was checked to hold; the
    /// closed form is only proven under that condition.
    pub condition_verified: bool,
}

pub fn waring_g(k: u32) -> Result<WaringParams> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("Waring exponent {k} < 2")));
    }
    let two_k: BigInt = BigInt::from(2).pow(k);
    let three_k: BigInt = BigInt::from(3).pow(k);
    let quotient = &three_k / &two_k;
    let remainder = &three_k % &two_k;
    let condition_verified = &remainder + &quotient <= two_k;
    Ok(WaringParams {
        exponent_k: k,
        g_value: &two_k + &quotient - BigInt::from(2),
        condition_verified,
    })
}

/// A shortest representation of `m` as a sum of `k`-th powers, returned as
/// the bases in descending order. Dynamic programming over `0..=m`, so only
/// for desk-scale `m`.
pub fn power_decompose(m: u64, k: u32) -> Vec<u64> {
    if k == 2 {
        return four_squares(m).into_iter().filter(|&b| b > 0).collect();
    }
    let powers: Vec<(u64, u64)> = (1u64..)
        .map(|b| (b, b.checked_pow(k).unwrap_or(u64::MAX)))
        .take_while(|&(_, p)| p <= m)
        .collect();
    let size = m as usize + 1;
    let mut best = vec![u32::MAX; size];
    let mut last = vec![0u64; size];
    best[0] = 0;
    for v in 1..size {
        for &(b, p) in &powers {
            let p = p as usize;
            if p > v {
                break;
            }
            if best[v - p] != u32::MAX && best[v - p] + 1 < best[v] {
                best[v] = best[v - p] + 1;
                last[v] = b;
            }
        }
    }
    let mut out = Vec::new();
    let mut v = m as usize;
    while v > 0 {
        let b = last[v];
        out.push(b);
        v -= b.pow(k) as usize;
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

/// `g(k)` as a machine integer when it is small enough to materialize.
pub(crate) fn small_g(k: u32) -> Result<usize> {
    let params = waring_g(k)?;
    params
        .g_value
        .to_usize()
        .filter(|&g| g <= 100_000 && params.condition_verified)
        .ok_or_else(|| {
            Error::InvalidParameter(format!(
                "g({k}) = {} is too large to materialize",
                params.g_value
            ))
        })
}
