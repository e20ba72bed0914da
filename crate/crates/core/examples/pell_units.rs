//! Fundamental units of real quadratic fields and a unit test on a few elements.

use multiquad::field::FieldSpec;
use multiquad::formula::parse_element;
use multiquad::units::{is_unit, pell_fundamental};

fn main() -> multiquad::Result<()> {
    for d in [2, 3, 5, 6, 7, 10, 13, 19, 46, 61] {
        let s = pell_fundamental(d)?;
        println!(
            "d = {d:<3} x = {:<12} y = {:<10} x^2 - d y^2 = {}",
            s.x, s.y, s.norm_sign
        );
    }

    let k = FieldSpec::new(&[2, 3], false)?;
    let eps = pell_fundamental(6)?.unit(&k)?;
    println!("unit for d = 6 in {k}: {eps}");
    for src in [
        "1 + sqrt2",
        "sqrt2 + sqrt3",
        "2 + sqrt3",
        "3 + sqrt2",
        "5 + 2*sqrt6",
    ] {
        let x = parse_element(src, None)?;
        match is_unit(&x) {
            Some(w) => println!(
                "{x} is a unit, inverse {}, norm {}",
                w.inverse, w.norm_value
            ),
            None => println!("{x} is not a unit"),
        }
    }
    Ok(())
}
