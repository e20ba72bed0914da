//! The four-squares family formula: parse, print, and the set it defines.

use multiquad::enumerator::{family_set_with_domain, family_w_domain};
use multiquad::field::{Element, FieldSpec};
use multiquad::formula::{define_set, parse, Assignment, Domains, FAMILY_FORMULA_SCOPED};

fn main() -> multiquad::Result<()> {
    let phi = parse(FAMILY_FORMULA_SCOPED).expect("family formula parses");
    println!("{phi}\n");

    let q_field = FieldSpec::rationals();
    for (p, q) in [(1u64, 10u64), (2, 10), (3, 20)] {
        let domain = family_w_domain(q, 1)?;
        let pool: Vec<Element> = (0..=q)
            .map(|v| Element::from_integer(&q_field, v))
            .collect();
        let mut a = Assignment::new();
        a.insert("p".into(), Element::from_integer(&q_field, p));
        a.insert("q".into(), Element::from_integer(&q_field, q));
        let doms = Domains::from([("W".to_string(), domain.elements())]);
        let defined = define_set(&phi, &a, "x", &pool, &doms)?;
        let shown: Vec<String> = defined.iter().map(Element::to_string).collect();
        println!("p = {p}, q = {q}: {{{}}}", shown.join(", "));

        let fam = family_set_with_domain(p, q, &domain, &pool)?;
        for m in &fam.members {
            println!(
                "  {} = {:?} and {} - {} = {:?}",
                m.px, m.px_squares, q, m.px, m.complement_squares
            );
        }
    }
    Ok(())
}
