//! Algebraic integers with every conjugate strictly between 0 and t.

use multiquad::enumerator::{default_order, totally_bounded_box, BoxQuery};
use multiquad::field::FieldSpec;
use num_rational::BigRational;

fn main() -> multiquad::Result<()> {
    for (primes, maximal) in [(vec![2], false), (vec![5], true), (vec![2, 3], false)] {
        let field = FieldSpec::new(&primes, false)?;
        let order = default_order(&field, maximal)?;
        print!("{field}:");
        for t in 1..=6 {
            let query = BoxQuery::up_to(order.clone(), BigRational::from_integer(t.into()))?;
            print!(" t={t}:{}", totally_bounded_box(&query).len());
        }
        println!();
    }

    let order = default_order(&FieldSpec::new(&[2], false)?, false)?;
    let query = BoxQuery::up_to(order, BigRational::from_integer(4.into()))?;
    for x in totally_bounded_box(&query) {
        println!("  {x}");
    }
    Ok(())
}
