//! The definable tower `X⁽⁰⁾ ⊇ … ⊇ X⁽²ᴺ⁾`-style construction of `W`: the
//! polynomial `f`, iterated forward differences, Lagrange and Waring
//! decompositions, and certified membership chains.

mod chain;
mod poly;
mod waring;

pub use chain::{
    difference_chain, f_value_chain, field_for_arguments, value_in_real_integers, verify_chain,
    w_member, w_member_default, x0_witness, Derivation, Level, WitnessChain,
};
pub use poly::{alternative_constant, leading_constant, poly_f, IntPolynomial};
pub use waring::{four_squares, power_decompose, waring_g, WaringParams};

use num_bigint::BigInt;

use crate::error::Result;
use crate::field::{sqrt_nat, Element};

/// Checks `f(x) = u^{2N} + u^{−2N}` exactly, with `u = x + √(x²+1)`.
pub fn f_identity_holds(x: u64, n: u64) -> Result<bool> {
    let field = field_for_arguments([x]);
    let u = &Element::from_integer(&field, x) + &sqrt_nat(x * x + 1, &field)?;
    let lhs = poly_f(n).eval(&BigInt::from(x));
    let rhs = &u.pow(2 * n) + &u.inv()?.pow(2 * n);
    Ok(rhs.as_integer() == Some(lhs))
}
