//! Certified membership in the sets `X⁽ⁿ⁾` and `W`.
//!
//! `X⁽⁰⁾` holds sums `u₁^{2N} + u₂^{2N}` of unit powers, `X⁽ⁿ⁺¹⁾` holds
//! differences of two `X⁽ⁿ⁾` members, and `W` holds sums of `g(2N)` members
//! of `X⁽²ᴺ⁾` plus a small natural remainder. A [`WitnessChain`] is an explicit
//! derivation tree for one such membership; nothing here decides membership
//! without a witness.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::poly::leading_constant;
use super::waring::{power_decompose, small_g, waring_g};
use crate::error::{Error, Result};
use crate::field::{factorize, sqrt_nat, square_split, Element, FieldSpec};
use crate::units::{is_unit, UnitWitness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// Membership in `X⁽ⁿ⁾`.
    X(u32),
    W,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::X(n) => write!(f, "X({n})"),
            Level::W => write!(f, "W"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Derivation {
    /// `target = left^{2N} + right^{2N}`.
    Units {
        left: UnitWitness,
        right: UnitWitness,
    },
    /// `target = minuend − subtrahend`.
    Difference {
        minuend: Box<WitnessChain>,
        subtrahend: Box<WitnessChain>,
    },
    /// `target = Σ terms + remainder`, with `0 ≤ remainder ≤ constant`.
    Sum {
        terms: Vec<WitnessChain>,
        #[serde(serialize_with = "crate::field::serde_impl::decimal")]
        remainder: BigInt,
        #[serde(serialize_with = "crate::field::serde_impl::decimal")]
        constant: BigInt,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessChain {
    pub target: Element,
    pub level: Level,
    pub derivation: Derivation,
}

impl WitnessChain {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("chain serializes")
    }

    /// Number of nodes in the derivation tree.
    pub fn size(&self) -> usize {
        1 + match &self.derivation {
            Derivation::Units { .. } => 0,
            Derivation::Difference {
                minuend,
                subtrahend,
            } => minuend.size() + subtrahend.size(),
            Derivation::Sum { terms, .. } => terms.iter().map(WitnessChain::size).sum(),
        }
    }
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedChain(msg.into())
}

/// Re-derives every node of `chain` by exact arithmetic.
///
/// Returns `Ok(false)` for arithmetic mismatches and `Err` for structural
/// problems (wrong node kind for a level, levels out of step, fields that
/// cannot be combined).
pub fn verify_chain(chain: &WitnessChain, n: u64) -> Result<bool> {
    let exponent = 2 * n;
    match (&chain.level, &chain.derivation) {
        (Level::X(0), Derivation::Units { left, right }) => {
            if !left.verify() || !right.verify() {
                return Ok(false);
            }
            let value = left
                .u
                .pow(exponent)
                .try_add(&right.u.pow(exponent))
                .map_err(|e| malformed(e.to_string()))?;
            Ok(value.same_value(&chain.target))
        }
        (
            Level::X(k),
            Derivation::Difference {
                minuend,
                subtrahend,
            },
        ) if *k > 0 => {
            if minuend.level != Level::X(k - 1) || subtrahend.level != Level::X(k - 1) {
                return Err(malformed(format!(
                    "children of an {} node must be at X({})",
                    chain.level,
                    k - 1
                )));
            }
            if !verify_chain(minuend, n)? || !verify_chain(subtrahend, n)? {
                return Ok(false);
            }
            let value = minuend
                .target
                .try_sub(&subtrahend.target)
                .map_err(|e| malformed(e.to_string()))?;
            Ok(value.same_value(&chain.target))
        }
        (
            Level::W,
            Derivation::Sum {
                terms,
                remainder,
                constant,
            },
        ) => {
            let top = Level::X(exponent as u32);
            if let Some(bad) = terms.iter().find(|t| t.level != top) {
                return Err(malformed(format!(
                    "W term at {} instead of {top}",
                    bad.level
                )));
            }
            let g = waring_g(exponent as u32)?.g_value;
            if BigInt::from(terms.len()) != g {
                return Err(malformed(format!(
                    "W node has {} terms, expected g = {g}",
                    terms.len()
                )));
            }
            if remainder.is_negative() || remainder > constant {
                return Ok(false);
            }
            let mut total = Element::from_integer(chain.target.field(), remainder.clone());
            for term in terms {
                if !verify_chain(term, n)? {
                    return Ok(false);
                }
                total = total
                    .try_add(&term.target)
                    .map_err(|e| malformed(e.to_string()))?;
            }
            Ok(total.same_value(&chain.target))
        }
        (level, _) => Err(malformed(format!("node kind does not match level {level}"))),
    }
}

/// Level-0 witness for `x`: an exhaustive search over pairs drawn from the
/// pool and the inverses of its members.
pub fn x0_witness(x: &Element, n: u64, pool: &[UnitWitness]) -> Option<WitnessChain> {
    let mut candidates: Vec<UnitWitness> = Vec::with_capacity(2 * pool.len());
    for u in pool {
        candidates.push(u.clone());
        candidates.push(UnitWitness {
            u: u.inverse.clone(),
            inverse: u.u.clone(),
            norm_value: u.norm_value,
        });
    }
    let powers: Vec<Element> = candidates.iter().map(|u| u.u.pow(2 * n)).collect();
    for i in 0..candidates.len() {
        for j in i..candidates.len() {
            let Ok(sum) = powers[i].try_add(&powers[j]) else {
                continue;
            };
            if sum.same_value(x) {
                return Some(WitnessChain {
                    target: x.clone(),
                    level: Level::X(0),
                    derivation: Derivation::Units {
                        left: candidates[i].clone(),
                        right: candidates[j].clone(),
                    },
                });
            }
        }
    }
    None
}

/// Smallest real field containing `√(x²+1)` for every listed `x`.
pub fn field_for_arguments<I: IntoIterator<Item = u64>>(xs: I) -> FieldSpec {
    let mut primes: Vec<u64> = Vec::new();
    for x in xs {
        for p in factorize(square_split(x * x + 1).1) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    FieldSpec::new(&primes, false).expect("factors are prime")
}

/// Level-0 chain for `f(x) = (x+√(x²+1))^{2N} + (x−√(x²+1))^{2N}`.
pub fn f_value_chain(x: u64, n: u64, field: &FieldSpec) -> Result<WitnessChain> {
    let root = sqrt_nat(x * x + 1, field)?;
    let x_el = Element::from_integer(field, x);
    let plus = &x_el + &root;
    let minus = &x_el - &root;
    let left = is_unit(&plus).ok_or_else(|| malformed(format!("{plus} is not a unit")))?;
    let right = is_unit(&minus).ok_or_else(|| malformed(format!("{minus} is not a unit")))?;
    let target = &plus.pow(2 * n) + &minus.pow(2 * n);
    Ok(WitnessChain {
        target,
        level: Level::X(0),
        derivation: Derivation::Units { left, right },
    })
}

/// Chain for `Δ_k^{depth} f(start)`, built from
/// `Δ^{d} f(x) = Δ^{d−1} f(x+k) − Δ^{d−1} f(x)`.
pub fn difference_chain(
    n: u64,
    k: u64,
    start: u64,
    depth: u32,
    field: &FieldSpec,
) -> Result<WitnessChain> {
    let mut leaves = HashMap::new();
    build_difference(n, k, start, depth, field, &mut leaves)
}

fn build_difference(
    n: u64,
    k: u64,
    start: u64,
    depth: u32,
    field: &FieldSpec,
    leaves: &mut HashMap<u64, WitnessChain>,
) -> Result<WitnessChain> {
    if depth == 0 {
        if let Some(leaf) = leaves.get(&start) {
            return Ok(leaf.clone());
        }
        let leaf = f_value_chain(start, n, field)?;
        leaves.insert(start, leaf.clone());
        return Ok(leaf);
    }
    let minuend = build_difference(n, k, start + k, depth - 1, field, leaves)?;
    let subtrahend = build_difference(n, k, start, depth - 1, field, leaves)?;
    let target = minuend.target.try_sub(&subtrahend.target)?;
    Ok(WitnessChain {
        target,
        level: Level::X(depth),
        derivation: Derivation::Difference {
            minuend: Box::new(minuend),
            subtrahend: Box::new(subtrahend),
        },
    })
}

/// Certificate that the natural number `x` lies in `W`:
/// `x = Σ_{i=1}^{g(2N)} C·kᵢ^{2N} + ℓ` with `0 ≤ ℓ < C`, each term carried by
/// an `X⁽²ᴺ⁾` chain for `Δ_{kᵢ}^{2N} f(0)`.
///
/// Returns `Ok(None)` when the assembled chain does not verify, which is
/// what happens when `C` is not the true value of `Δ_1^{2N} f`.
pub fn w_member(x: u64, n: u64, constant: &BigInt) -> Result<Option<WitnessChain>> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let c: u64 = constant
        .try_into()
        .ok()
        .filter(|&c| c > 0)
        .ok_or_else(|| Error::InvalidParameter(format!("constant {constant} out of range")))?;
    let exponent = (2 * n) as u32;
    let g = small_g(exponent)?;
    let (quotient, remainder) = (x / c, x % c);
    let mut bases = power_decompose(quotient, exponent);
    if bases.len() > g {
        return Ok(None);
    }
    bases.resize(g, 0);

    let arguments = bases.iter().flat_map(|&k| (0..=2 * n).map(move |j| j * k));
    let field = field_for_arguments(arguments);
    let mut term_cache: HashMap<u64, WitnessChain> = HashMap::new();
    let mut terms = Vec::with_capacity(g);
    for &k in &bases {
        let term = match term_cache.get(&k) {
            Some(t) => t.clone(),
            None => {
                let t = difference_chain(n, k, 0, exponent, &field)?;
                term_cache.insert(k, t.clone());
                t
            }
        };
        terms.push(term);
    }
    let chain = WitnessChain {
        target: Element::from_integer(&field, x),
        level: Level::W,
        derivation: Derivation::Sum {
            terms,
            remainder: BigInt::from(remainder),
            constant: constant.clone(),
        },
    };
    Ok(verify_chain(&chain, n)?.then_some(chain))
}

/// `w_member` with the default constant `(2N)!·2^{2N}`.
pub fn w_member_default(x: u64, n: u64) -> Result<Option<WitnessChain>> {
    w_member(x, n, &leading_constant(n))
}

/// Whether `target` lies in the real subfield and is an algebraic integer.
pub fn value_in_real_integers(target: &Element) -> bool {
    !target.has_imaginary_part() && target.is_integral()
}
