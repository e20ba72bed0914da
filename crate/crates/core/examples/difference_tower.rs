//! The polynomial f, its iterated differences and a level-2N witness chain.

use multiquad::definable::{
    alternative_constant, difference_chain, f_identity_holds, field_for_arguments,
    leading_constant, poly_f,
};
use num_bigint::BigInt;

fn main() -> multiquad::Result<()> {
    for n in 1..=3u64 {
        let f = poly_f(n);
        println!("N = {n}: f = {f}");
        for k in 1..=3 {
            let d = f.delta_iter(&BigInt::from(k), 2 * n as usize);
            println!("  delta_{k}^{} f = {}", 2 * n, d);
        }
        let ok = (0..=20).all(|x| f_identity_holds(x, n).unwrap_or(false));
        println!("  f(x) = u^2N + u^-2N for x <= 20: {ok}");
        println!(
            "  (2N)! 2^2N = {}, 2 (2N)! = {}",
            leading_constant(n),
            alternative_constant(n)
        );
    }

    let field = field_for_arguments([0, 2, 4]);
    let chain = difference_chain(1, 2, 0, 2, &field)?;
    println!(
        "X(2) chain for delta_2^2 f(0) = {} with {} nodes over {field}",
        chain.target,
        chain.size()
    );
    Ok(())
}
