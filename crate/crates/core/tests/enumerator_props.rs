use multiquad::enumerator::{
    coordinate_order, default_order, family_set, is_galois_closed, is_totally_between,
    totally_bounded_box, BoxQuery, OrderBasis,
};
use multiquad::field::{Element, FieldSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

fn t(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

// Floating conjugates of every coordinate vector in [-radius, radius]^n.
fn float_oracle(order: &OrderBasis, lower: f64, upper: f64, radius: i64) -> Vec<Element> {
    let field = order.field();
    let signs = field.sign_vectors();
    let table: Vec<Vec<f64>> = signs
        .iter()
        .map(|s| {
            order
                .basis()
                .iter()
                .map(|b| {
                    b.conjugate(s)
                        .unwrap()
                        .coeffs()
                        .map(|(l, c)| c.to_f64().unwrap() * (l.radicand as f64).sqrt())
                        .sum()
                })
                .collect()
        })
        .collect();
    let n = order.basis().len();
    let mut coords = vec![-radius; n];
    let mut out = Vec::new();
    loop {
        let inside = table.iter().all(|row| {
            let v: f64 = row.iter().zip(&coords).map(|(a, &c)| a * c as f64).sum();
            v > lower + 1e-9 && v < upper - 1e-9
        });
        if inside {
            let big: Vec<BigInt> = coords.iter().map(|&c| c.into()).collect();
            out.push(order.element(&big));
        }
        let mut k = n;
        loop {
            if k == 0 {
                out.sort_by(coordinate_order);
                return out;
            }
            k -= 1;
            if coords[k] < radius {
                coords[k] += 1;
                break;
            }
            coords[k] = -radius;
        }
    }
}

fn boxed(order: &OrderBasis, upper: i64) -> Vec<Element> {
    let mut v = totally_bounded_box(&BoxQuery::up_to(order.clone(), t(upper)).unwrap());
    v.sort_by(coordinate_order);
    v
}

#[test]
fn box_matches_float_oracle() {
    let cases: Vec<(Vec<u64>, bool, i64)> = vec![
        (vec![2], false, 10),
        (vec![3], false, 10),
        (vec![5], true, 10),
        (vec![13], true, 8),
        (vec![2, 3], false, 6),
        (vec![2, 5], false, 5),
    ];
    for (primes, maximal, max_t) in cases {
        let field = FieldSpec::new(&primes, false).unwrap();
        let order = default_order(&field, maximal).unwrap();
        for upper in 1..=max_t {
            let radius = upper * field.degree() as i64;
            let expected = float_oracle(&order, 0.0, upper as f64, radius);
            let got = boxed(&order, upper);
            assert_eq!(
                got, expected,
                "primes {primes:?} maximal {maximal} t {upper}"
            );
            assert!(is_galois_closed(&got));
        }
    }
}

#[test]
fn cardinality_is_monotone_in_t() {
    for primes in [vec![2u64], vec![3], vec![2, 3]] {
        let order = default_order(&FieldSpec::new(&primes, false).unwrap(), false).unwrap();
        let mut previous: Vec<Element> = Vec::new();
        for upper in 1..=7 {
            let current = boxed(&order, upper);
            assert!(previous.iter().all(|x| current.contains(x)));
            previous = current;
        }
    }
}

#[test]
fn shifted_ranges() {
    let order = default_order(&FieldSpec::new(&[2], false).unwrap(), false).unwrap();
    let query = BoxQuery::new(order, t(-2), t(2)).unwrap();
    let got = totally_bounded_box(&query);
    // a + b√2 with |b| = 1 needs |a| < 2 − √2, so only ±√2 join -1, 0, 1
    let mut shown: Vec<String> = got.iter().map(Element::to_string).collect();
    shown.sort();
    assert_eq!(shown, ["-1", "-√2", "0", "1", "√2"]);
    for x in &got {
        assert!(is_totally_between(x, &t(-2), &t(2)));
    }
}

#[test]
fn family_members_are_totally_between() {
    let q_field = FieldSpec::rationals();
    for (p, q) in [(1u64, 12u64), (2, 12), (3, 20), (4, 7)] {
        let pool: Vec<Element> = (0..=q)
            .map(|v| Element::from_integer(&q_field, v))
            .collect();
        let fam = family_set(p, q, 1, &pool).unwrap();
        for m in &fam.members {
            let px = m.x.scale(&t(p as i64));
            assert!(is_totally_between(&px, &t(0), &t(q as i64)));
            assert_eq!(m.px_squares.iter().map(|a| a * a).sum::<u64>(), m.px);
            assert_eq!(
                m.complement_squares.iter().map(|a| a * a).sum::<u64>(),
                q - m.px
            );
        }
        let expected = (1..q).filter(|x| x % p == 0).count();
        assert_eq!(fam.members.len(), expected, "p={p} q={q}");
    }
}

#[test]
fn irrational_pool_members_are_excluded() {
    let k = FieldSpec::new(&[2], false).unwrap();
    let pool = vec![
        &Element::from_integer(&k, 2) + &Element::sqrt_prime(&k, 2).unwrap(),
        Element::from_integer(&k, 3),
    ];
    let fam = family_set(1, 5, 1, &pool).unwrap();
    assert_eq!(fam.members.len(), 1);
    assert_eq!(fam.members[0].px, 3);
}
