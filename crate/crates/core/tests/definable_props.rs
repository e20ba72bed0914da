mod common;

use common::{f_by_recurrence, factorial, finite_difference, min_powers};
use multiquad::definable::{
    alternative_constant, difference_chain, f_identity_holds, f_value_chain, field_for_arguments,
    four_squares, leading_constant, poly_f, value_in_real_integers, verify_chain, w_member,
    w_member_default, waring_g, x0_witness, Derivation, WitnessChain,
};
use multiquad::field::{Element, FieldSpec};
use multiquad::units::is_unit;
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

fn walk<'a>(chain: &'a WitnessChain, out: &mut Vec<&'a WitnessChain>) {
    out.push(chain);
    match &chain.derivation {
        Derivation::Units { .. } => {}
        Derivation::Difference {
            minuend,
            subtrahend,
        } => {
            walk(minuend, out);
            walk(subtrahend, out);
        }
        Derivation::Sum { terms, .. } => terms.iter().for_each(|t| walk(t, out)),
    }
}

#[test]
fn f_matches_recurrence() {
    for n in 1..=6 {
        let f = poly_f(n);
        assert_eq!(f.degree(), Some(2 * n as usize));
        for x in -12..=12 {
            assert_eq!(
                f.eval(&BigInt::from(x)),
                f_by_recurrence(x, n),
                "N={n} x={x}"
            );
        }
    }
}

#[test]
fn leading_coefficient() {
    for n in [1u64, 2, 3, 24] {
        assert_eq!(
            poly_f(n).leading_coefficient(),
            BigInt::one() << (2 * n) as usize,
            "N={n}"
        );
    }
}

#[test]
fn iterated_difference_is_constant() {
    for n in 1..=3u64 {
        for k in 1..=5i64 {
            let expected = factorial(2 * n)
                * (BigInt::one() << (2 * n) as usize)
                * BigInt::from(k).pow(2 * n as u32);
            let delta = poly_f(n).delta_iter(&BigInt::from(k), 2 * n as usize);
            assert_eq!(delta.as_constant(), Some(expected.clone()), "N={n} k={k}");
            for x in -3..=3 {
                assert_eq!(
                    finite_difference(x, k, 2 * n, n),
                    expected,
                    "N={n} k={k} x={x}"
                );
            }
        }
        assert_eq!(leading_constant(n), finite_difference(0, 1, 2 * n, n));
    }
    assert_eq!(leading_constant(1), BigInt::from(8));
    assert_eq!(alternative_constant(1), BigInt::from(4));
    assert_eq!(finite_difference(0, 2, 2, 1), BigInt::from(32));
    assert_eq!(alternative_constant(1) * BigInt::from(4), BigInt::from(16));
}

#[test]
fn f_identity_in_the_field() {
    for n in 1..=3 {
        for x in 0..=20 {
            assert!(f_identity_holds(x, n).unwrap(), "N={n} x={x}");
        }
    }
}

#[test]
fn waring_values_match_brute_force() {
    let limit = 10_000;
    for (k, expected) in [(2u32, 4u32), (3, 9), (4, 19)] {
        let worst = *min_powers(k, limit).iter().max().unwrap();
        assert_eq!(worst, expected, "k={k}");
        let params = waring_g(k).unwrap();
        assert!(params.condition_verified);
        assert_eq!(params.g_value, BigInt::from(worst));
    }
}

proptest! {
    #[test]
    fn four_squares_sum_back(n in 0u64..=1_000_000_000) {
        let squares = four_squares(n);
        prop_assert_eq!(squares.iter().map(|a| a * a).sum::<u64>(), n);
    }
}

#[test]
fn four_squares_exhaustive() {
    for n in 0..=10_000u64 {
        assert_eq!(four_squares(n).iter().map(|a| a * a).sum::<u64>(), n);
    }
}

#[test]
fn chain_nodes_are_real_integers() {
    for x in [0u64, 1, 31, 32, 33, 95, 100] {
        let chain = w_member_default(x, 1).unwrap().expect("member");
        assert!(verify_chain(&chain, 1).unwrap());
        assert_eq!(chain.target.as_integer(), Some(BigInt::from(x)));
        let mut nodes = Vec::new();
        walk(&chain, &mut nodes);
        for node in nodes {
            assert!(value_in_real_integers(&node.target), "{}", node.target);
            assert!(!node.target.has_imaginary_part());
            assert!(node.target.char_poly().has_integer_coefficients());
        }
    }
}

#[test]
fn difference_chain_matches_oracle() {
    for n in 1..=2u64 {
        for k in 1..=3u64 {
            let field = field_for_arguments((0..=2 * n).map(|j| j * k));
            let chain = difference_chain(n, k, 0, 2 * n as u32, &field).unwrap();
            assert!(verify_chain(&chain, n).unwrap());
            assert_eq!(
                chain.target.as_integer(),
                Some(finite_difference(0, k as i64, 2 * n, n))
            );
        }
    }
    let field = field_for_arguments([3]);
    let leaf = f_value_chain(3, 2, &field).unwrap();
    assert_eq!(leaf.target.as_integer(), Some(f_by_recurrence(3, 2)));
}

#[test]
fn wrong_constant_fails_verification() {
    let bad = w_member(40, 1, &BigInt::from(4)).unwrap();
    assert!(bad.is_none());
    assert!(w_member(40, 1, &BigInt::from(8)).unwrap().is_some());
}

#[test]
fn x0_witness_examples() {
    let k = FieldSpec::new(&[2], false).unwrap();
    let u = is_unit(&(&Element::one(&k) + &Element::sqrt_prime(&k, 2).unwrap())).unwrap();
    let pool = [u];
    let six = x0_witness(&Element::from_integer(&k, 6), 1, &pool).unwrap();
    assert!(verify_chain(&six, 1).unwrap());
    let thirty_four = x0_witness(&Element::from_integer(&k, 34), 2, &pool).unwrap();
    assert!(verify_chain(&thirty_four, 2).unwrap());
    assert!(x0_witness(&Element::from_integer(&k, 3), 1, &pool).is_none());
    let two = x0_witness(&Element::from_integer(&k, 2), 1, &[]);
    assert!(two.is_none());
}
