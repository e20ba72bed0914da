mod common;

use common::*;
use multiquad::enumerator::{family_set_with_domain, family_w_domain};
use multiquad::formula::{
    define_set, evaluate, parse, Assignment, Domains, Formula, Term, FAMILY_FORMULA,
    FAMILY_FORMULA_SCOPED,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::Zero),
        Just(Term::One),
        prop::sample::select(vec!["x", "y", "x1", "p"]).prop_map(Term::var),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::mul(a, b)),
            inner.prop_map(|a| Term::Neg(Box::new(a))),
        ]
    })
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    let atom = (arb_term(), arb_term()).prop_map(|(a, b)| Formula::eq(a, b));
    atom.prop_recursive(5, 32, 2, |inner| {
        let var = prop::sample::select(vec!["x", "y", "z"]);
        let dom = prop::sample::select(vec!["D", "W"]);
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (var.clone(), dom.clone(), inner.clone())
                .prop_map(|(v, d, b)| Formula::exists(v, d, b)),
            (var, dom, inner).prop_map(|(v, d, b)| Formula::forall(v, d, b)),
        ]
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(f in arb_formula()) {
        let printed = f.to_string();
        let reparsed = parse(&printed);
        prop_assert_eq!(reparsed, Ok(f), "printed as {}", printed);
    }
}

#[test]
fn hand_cases_match_reference() {
    let cases = hand_cases();
    assert_eq!(cases.len(), 20);
    for (src, mut env, doms) in cases {
        let f = parse(src).unwrap();
        let expected = reference_eval(&f, &mut env, &doms);
        let got = evaluate(&f, &to_assignment(&env), &to_domains(&doms)).unwrap();
        assert_eq!(got, expected, "{src}");
    }
}

#[test]
fn randomized_monotonicity() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for case in 0..100 {
        let mut vars = vec!["a".to_string()];
        let f = random_monotone_formula(&mut rng, &mut vars, 4);
        let a_value = rng.gen_range(-2..=2);
        let (e_small, e_big) = nested_sets(&mut rng);
        let (a_small, a_big) = nested_sets(&mut rng);
        let assignment = to_assignment(&env(&[("a", a_value)]));
        let run = |e: &[i64], a: &[i64]| {
            let doms = domains(&[("E", e), ("A", a)]);
            let got = evaluate(&f, &assignment, &to_domains(&doms)).unwrap();
            let mut reference_env = env(&[("a", a_value)]);
            assert_eq!(
                got,
                reference_eval(&f, &mut reference_env, &doms),
                "case {case}: {f}"
            );
            got
        };
        if run(&e_small, &a_small) {
            assert!(
                run(&e_big, &a_small),
                "case {case}: enlarging E lost truth of {f}"
            );
        }
        if !run(&e_small, &a_small) {
            assert!(
                !run(&e_small, &a_big),
                "case {case}: enlarging A gained truth of {f}"
            );
        }
    }
}

#[test]
fn scoped_and_prenex_family_formulas_agree() {
    let prenex = parse(FAMILY_FORMULA).unwrap();
    let scoped = parse(FAMILY_FORMULA_SCOPED).unwrap();
    let w = Domains::from([("W".to_string(), (0..=2).map(int).collect())]);
    for (p, q) in [(1, 5), (2, 5), (1, 4), (3, 7)] {
        let mut a = Assignment::new();
        a.insert("p".into(), int(p));
        a.insert("q".into(), int(q));
        let pool: Vec<_> = (0..=q).map(int).collect();
        assert_eq!(
            define_set(&prenex, &a, "x", &pool, &w).unwrap(),
            define_set(&scoped, &a, "x", &pool, &w).unwrap(),
            "p={p} q={q}"
        );
    }
}

#[test]
fn define_set_matches_family_set() {
    let scoped = parse(FAMILY_FORMULA_SCOPED).unwrap();
    for (p, q) in [(1, 5), (2, 4), (2, 9), (3, 12), (1, 1), (5, 3)] {
        let domain = family_w_domain(q as u64, 1).unwrap();
        let pool: Vec<_> = (0..=q).map(int).collect();
        let fam = family_set_with_domain(p as u64, q as u64, &domain, &pool).unwrap();
        let mut a = Assignment::new();
        a.insert("p".into(), int(p));
        a.insert("q".into(), int(q));
        let doms = Domains::from([("W".to_string(), domain.elements())]);
        let defined = define_set(&scoped, &a, "x", &pool, &doms).unwrap();
        let members: Vec<_> = fam.members.iter().map(|m| m.x.clone()).collect();
        assert_eq!(defined, members, "p={p} q={q}");
    }
}

#[test]
fn parse_errors_report_positions() {
    for (src, line, column) in [
        ("x = 1 +", 1, 8),
        ("exists x in . x = 0", 1, 13),
        ("x = 0 &\n\n  & y = 1", 3, 3),
        ("forall y in D x = y", 1, 15),
        ("x ? 1", 1, 3),
    ] {
        let e = parse(src).unwrap_err();
        assert_eq!((e.line, e.column), (line, column), "{src}: {e}");
    }
}
