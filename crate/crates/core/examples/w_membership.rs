//! Certificates that small naturals lie in W, checked by re-derivation.

use multiquad::definable::{
    four_squares, verify_chain, w_member, w_member_default, waring_g, Derivation,
};
use num_bigint::BigInt;

fn main() -> multiquad::Result<()> {
    for k in 2..=6 {
        let g = waring_g(k)?;
        println!("g({k}) = {}", g.g_value);
    }
    println!("310 = sum of squares of {:?}", four_squares(310));

    for x in [0, 7, 8, 42, 100] {
        let chain = w_member_default(x, 1)?.expect("certificate");
        let Derivation::Sum {
            terms,
            remainder,
            constant,
        } = &chain.derivation
        else {
            unreachable!()
        };
        println!(
            "x = {x:<3} {} terms, remainder {remainder} < {constant}, {} nodes, verified {}",
            terms.len(),
            chain.size(),
            verify_chain(&chain, 1)?
        );
    }

    let wrong = w_member(42, 1, &BigInt::from(4))?;
    println!(
        "with C = 4 the certificate for 42 verifies: {}",
        wrong.is_some()
    );
    Ok(())
}
