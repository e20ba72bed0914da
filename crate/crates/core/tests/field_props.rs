use multiquad::field::{Element, FieldSpec};
use multiquad::interval::{ComplexInterval, Interval};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn arb_field() -> impl Strategy<Value = FieldSpec> {
    (
        prop::sample::subsequence(vec![2u64, 3, 5], 0..=3),
        any::<bool>(),
    )
        .prop_map(|(primes, i)| FieldSpec::new(&primes, i).unwrap())
}

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn arb_element_in(field: FieldSpec) -> impl Strategy<Value = Element> {
    let n = field.degree();
    prop::collection::vec(arb_rational(), n)
        .prop_map(move |c| Element::from_coordinates(&field, &c))
}

fn arb_pair() -> impl Strategy<Value = (Element, Element)> {
    arb_field().prop_flat_map(|f| (arb_element_in(f.clone()), arb_element_in(f)))
}

fn point(q: BigRational) -> ComplexInterval {
    ComplexInterval::real(Interval::point(q))
}

fn encloses(iv: &ComplexInterval, q: &BigRational) -> bool {
    iv.re.contains(q) && iv.im.contains_zero()
}

// ∏ (X − σ(x)) with element coefficients, lowest degree first.
fn conjugate_product(x: &Element) -> Vec<Element> {
    let field = x.field().clone();
    let mut acc = vec![Element::one(&field)];
    for c in x.conjugates() {
        let mut next = vec![Element::zero(&field); acc.len() + 1];
        for (k, a) in acc.iter().enumerate() {
            next[k + 1] = &next[k + 1] + a;
            next[k] = &next[k] - &(a * &c);
        }
        acc = next;
    }
    acc
}

// Classical integral bases of Q(√p) and Q(i): a + b√d is integral iff
// a, b ∈ Z, or d ≡ 1 (mod 4) and a, b ∈ Z + 1/2.
fn quadratic_integral_oracle(x: &Element, d: i64) -> bool {
    let coords = x.coordinates();
    let (a, b) = (&coords[0], &coords[1]);
    if a.is_integer() && b.is_integer() {
        return true;
    }
    let half = BigRational::new(1.into(), 2.into());
    d.rem_euclid(4) == 1 && (a - &half).is_integer() && (b - &half).is_integer()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn conjugation_is_a_ring_homomorphism((x, y) in arb_pair()) {
        for s in x.field().sign_vectors() {
            let sx = x.conjugate(&s).unwrap();
            let sy = y.conjugate(&s).unwrap();
            prop_assert_eq!((&x + &y).conjugate(&s).unwrap(), &sx + &sy);
            prop_assert_eq!((&x * &y).conjugate(&s).unwrap(), &sx * &sy);
        }
    }

    #[test]
    fn norm_is_multiplicative_and_trace_is_linear((x, y) in arb_pair()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!((&x + &y).trace(), x.trace() + y.trace());
        let three = BigRational::from_integer(3.into());
        prop_assert_eq!(x.scale(&three).trace(), x.trace() * &three);
    }

    #[test]
    fn embeddings_enclose_norm_and_trace((x, _y) in arb_pair()) {
        let embeds: Vec<ComplexInterval> = x
            .field()
            .sign_vectors()
            .iter()
            .map(|s| x.embed(s, 40).unwrap())
            .collect();
        let product = embeds.iter().fold(point(BigRational::one()), |acc, e| &acc * e);
        let sum = embeds.iter().fold(point(BigRational::zero()), |acc, e| &acc + e);
        prop_assert!(encloses(&product, &x.norm()));
        prop_assert!(encloses(&sum, &x.trace()));
    }

    #[test]
    fn inverse_is_two_sided((x, _y) in arb_pair()) {
        prop_assume!(!x.is_zero());
        let inv = x.inv().unwrap();
        prop_assert!((&x * &inv).is_one());
        prop_assert!((&inv * &x).is_one());
        prop_assert_eq!(inv.norm(), BigRational::one() / x.norm());
    }

    #[test]
    fn char_poly_is_product_over_conjugates((x, _y) in arb_pair()) {
        let expected = conjugate_product(&x);
        let poly = x.char_poly();
        prop_assert_eq!(poly.degree(), Some(x.field().degree()));
        for (k, c) in expected.iter().enumerate() {
            prop_assert_eq!(c.as_rational(), Some(poly.coeff(k)));
        }
    }

    #[test]
    fn integrality_agrees_with_char_poly((x, _y) in arb_pair()) {
        prop_assert_eq!(x.is_integral(), x.char_poly().has_integer_coefficients());
    }

    #[test]
    fn integrality_matches_classical_bases(
        (d, a, b) in (prop::sample::select(vec![-1i64, 2, 3, 5, 7, 13]), -8i64..=8, -8i64..=8),
        (da, db) in (1i64..=4, 1i64..=4),
    ) {
        let field = if d == -1 {
            FieldSpec::new(&[], true).unwrap()
        } else {
            FieldSpec::new(&[d as u64], false).unwrap()
        };
        let coords = [BigRational::new(a.into(), da.into()), BigRational::new(b.into(), db.into())];
        let x = Element::from_coordinates(&field, &coords);
        prop_assert_eq!(x.is_integral(), quadratic_integral_oracle(&x, d));
    }

    #[test]
    fn json_round_trip((x, _y) in arb_pair()) {
        let text = x.to_json();
        prop_assert_eq!(Element::from_json(&text).unwrap(), x);
    }
}

#[test]
fn coercion_preserves_arithmetic() {
    let small = FieldSpec::new(&[2], false).unwrap();
    let big = FieldSpec::new(&[2, 3], true).unwrap();
    let r2 = Element::sqrt_prime(&small, 2).unwrap();
    let x = &r2 + &Element::one(&small);
    let lifted = x.coerce(&big).unwrap();
    assert!(lifted.same_value(&x));
    assert_eq!(lifted.norm(), x.norm().pow(4));
    assert!(x.coerce(&FieldSpec::new(&[3], false).unwrap()).is_err());
    let i = Element::i(&FieldSpec::new(&[], true).unwrap()).unwrap();
    assert!(i.try_mul(&r2).is_err());
    let joint = i.field().join(r2.field());
    let product = i.coerce(&joint).unwrap().try_mul(&r2).unwrap();
    assert_eq!(product.field(), &FieldSpec::new(&[2], true).unwrap());
    assert_eq!(product.square().as_integer(), Some(BigInt::from(-2)));
}
