//! Arithmetic, conjugates, norms and integrality in `Q(√2, √3)` and `Q(i, √2)`.

use multiquad::field::{Element, FieldSpec};
use num_rational::BigRational;

fn main() -> multiquad::Result<()> {
    let k = FieldSpec::new(&[2, 3], false)?;
    let r2 = Element::sqrt_prime(&k, 2)?;
    let r3 = Element::sqrt_prime(&k, 3)?;
    let x = &(&r2 + &r3) + &Element::one(&k);

    println!("field      {k} (degree {})", k.degree());
    println!("x          {x}");
    println!("x^2        {}", x.square());
    println!("1/x        {}", x.inv()?);
    println!("norm       {}", x.norm());
    println!("trace      {}", x.trace());
    println!("char poly  {}", x.char_poly());
    for (s, c) in k.sign_vectors().iter().zip(x.conjugates()) {
        let e = x.embed(s, 30)?;
        println!("  {c}  ~ {:.6}", e.re.midpoint_f64());
    }

    // (1 + √5)/2 is integral, (1 + √3)/2 is not
    let half = BigRational::new(1.into(), 2.into());
    let golden =
        Element::from_coordinates(&FieldSpec::new(&[5], false)?, &[half.clone(), half.clone()]);
    let half = Element::from_coordinates(&FieldSpec::new(&[3], false)?, &[half.clone(), half]);
    println!("{golden} integral: {}", golden.is_integral());
    println!("{half} integral: {}", half.is_integral());

    let i = Element::i(&FieldSpec::new(&[], true)?)?;
    let joint = i.field().join(r2.field());
    let z = i.coerce(&joint)?.try_add(&r2)?;
    let parsed = multiquad::formula::parse_element("i + sqrt2", None)?;
    assert!(parsed.same_value(&z));
    println!("{z} in {}: z^4 = {}", z.field(), z.pow(4));
    println!("json       {}", z.to_json());
    Ok(())
}
