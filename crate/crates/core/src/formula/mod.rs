//! A first-order language of rings with finitely bounded quantifiers.
//!
//! ```
//! use multiquad::formula::{parse, evaluate, Domains, Assignment};
//! use multiquad::field::{Element, FieldSpec};
//!
//! let f = parse("forall y in D. y*y = y").unwrap();
//! let q = FieldSpec::rationals();
//! let mut domains = Domains::new();
//! domains.insert("D".into(), vec![Element::zero(&q), Element::one(&q)]);
//! assert!(evaluate(&f, &Assignment::new(), &domains).unwrap());
//! ```

mod ast;
mod eval;
mod parser;

pub use ast::{Formula, Term};
pub use eval::{define_set, evaluate, evaluate_term, parse_element, Assignment, Domains};
pub use parser::{parse, parse_term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// `φ(x; p, q)`: `px` is neither `0` nor `q`, and both `px` and `q − px`
/// are sums of four squares of elements of `W`.
pub const FAMILY_FORMULA: &str = "~(p*x = 0) & ~(p*x = q) & \
exists x1 in W. exists x2 in W. exists x3 in W. exists x4 in W. \
exists x5 in W. exists x6 in W. exists x7 in W. exists x8 in W. \
(p*x = x1^2 + x2^2 + x3^2 + x4^2 & q - p*x = x5^2 + x6^2 + x7^2 + x8^2)";

/// The same condition with each block of quantifiers pulled in front of the
/// only conjunct that mentions it. Logically equivalent to
/// [`FAMILY_FORMULA`], but the bounded search costs `2|W|^4` instead of
/// `|W|^8`.
pub const FAMILY_FORMULA_SCOPED: &str = "~(p*x = 0) & ~(p*x = q) & \
(exists x1 in W. exists x2 in W. exists x3 in W. exists x4 in W. \
p*x = x1^2 + x2^2 + x3^2 + x4^2) & \
(exists x5 in W. exists x6 in W. exists x7 in W. exists x8 in W. \
q - p*x = x5^2 + x6^2 + x7^2 + x8^2)";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Element, FieldSpec};

    fn ints(range: std::ops::RangeInclusive<i64>) -> Vec<Element> {
        let q = FieldSpec::rationals();
        range.map(|n| Element::from_integer(&q, n)).collect()
    }

    fn int(n: i64) -> Element {
        Element::from_integer(&FieldSpec::rationals(), n)
    }

    #[test]
    fn parse_examples() {
        let f = parse("x = 0").unwrap();
        assert_eq!(f, Formula::eq(Term::var("x"), Term::Zero));
        let f = parse("exists y in D. x = y*y").unwrap();
        assert!(matches!(f, Formula::Exists { .. }));
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), ["x"]);
    }

    #[test]
    fn family_formula_free_variables_and_round_trip() {
        for src in [FAMILY_FORMULA, FAMILY_FORMULA_SCOPED] {
            let f = parse(src).unwrap();
            let vars: Vec<_> = f.free_vars().into_iter().collect();
            assert_eq!(vars, ["p", "q", "x"]);
            let printed = f.to_string();
            assert_eq!(parse(&printed).unwrap(), f);
            assert_eq!(parse(&printed).unwrap().to_string(), printed);
        }
    }

    #[test]
    fn precedence() {
        let f = parse("~a = b & c = d | e = g -> h = i -> j = k").unwrap();
        let a = || Formula::not(Formula::eq(Term::var("a"), Term::var("b")));
        let cd = Formula::eq(Term::var("c"), Term::var("d"));
        let eg = Formula::eq(Term::var("e"), Term::var("g"));
        let hi = Formula::eq(Term::var("h"), Term::var("i"));
        let jk = Formula::eq(Term::var("j"), Term::var("k"));
        let expected = Formula::implies(
            Formula::or(Formula::and(a(), cd), eg),
            Formula::implies(hi, jk),
        );
        assert_eq!(f, expected);
        let unicode = parse("¬a = b ∧ c = d ∨ e = g → h = i → j = k").unwrap();
        assert_eq!(unicode, expected);
    }

    #[test]
    fn literals_and_powers() {
        assert_eq!(parse_term("3").unwrap(), Term::numeral(3));
        assert_eq!(
            parse_term("x^3").unwrap(),
            Term::mul(Term::mul(Term::var("x"), Term::var("x")), Term::var("x"))
        );
        assert_eq!(parse_term("x^0").unwrap(), Term::One);
        assert_eq!(parse("x != y").unwrap(), parse("~(x = y)").unwrap());
    }

    #[test]
    fn parenthesized_terms_and_formulas() {
        let f = parse("(x + 1)*y = 0").unwrap();
        assert!(matches!(f, Formula::Eq(Term::Mul(..), Term::Zero)));
        let g = parse("((x = 0))").unwrap();
        assert_eq!(g, parse("x = 0").unwrap());
        let h = parse("(exists y in D. x = y) & x = x").unwrap();
        assert!(matches!(h, Formula::And(..)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("x = ").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        let e = parse("x = 0 &\n  y $ 1").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        let e = parse("exists y D. x = y").unwrap_err();
        assert_eq!((e.line, e.column), (1, 10));
        assert!(parse("(x = 0").is_err());
        assert!(parse("x = 0)").is_err());
    }

    #[test]
    fn evaluate_examples() {
        let mut a = Assignment::new();
        a.insert("x".into(), int(0));
        assert!(evaluate(&parse("x = 0").unwrap(), &a, &Domains::new()).unwrap());

        let idem = parse("forall y in D. y*y = y").unwrap();
        let mut d = Domains::new();
        d.insert("D".into(), ints(0..=1));
        assert!(evaluate(&idem, &Assignment::new(), &d).unwrap());
        d.insert("D".into(), ints(0..=2));
        assert!(!evaluate(&idem, &Assignment::new(), &d).unwrap());
    }

    #[test]
    fn family_formula_example() {
        let phi = parse(FAMILY_FORMULA).unwrap();
        let mut a = Assignment::new();
        a.insert("x".into(), int(3));
        a.insert("p".into(), int(1));
        a.insert("q".into(), int(5));
        let mut d = Domains::new();
        d.insert("W".into(), ints(0..=5));
        assert!(evaluate(&phi, &a, &d).unwrap());
    }

    #[test]
    fn define_set_examples() {
        let mut d = Domains::new();
        d.insert("W".into(), ints(0..=2));
        let mut a = Assignment::new();
        a.insert("p".into(), int(1));
        a.insert("q".into(), int(5));
        let pool = ints(0..=5);
        for src in [FAMILY_FORMULA, FAMILY_FORMULA_SCOPED] {
            let got = define_set(&parse(src).unwrap(), &a, "x", &pool, &d).unwrap();
            assert_eq!(got, ints(1..=4));
        }
        let all = define_set(&parse("x = x").unwrap(), &Assignment::new(), "x", &pool, &d).unwrap();
        assert_eq!(all, pool);
        let none = define_set(
            &parse("~(x = x)").unwrap(),
            &Assignment::new(),
            "x",
            &pool,
            &d,
        )
        .unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn unbound_names_are_errors() {
        let f = parse("exists y in D. x = y").unwrap();
        let mut d = Domains::new();
        d.insert("D".into(), ints(0..=1));
        assert_eq!(
            evaluate(&f, &Assignment::new(), &d),
            Err(crate::Error::UnboundVariable("x".into()))
        );
        let mut a = Assignment::new();
        a.insert("x".into(), int(0));
        assert_eq!(
            evaluate(&f, &a, &Domains::new()),
            Err(crate::Error::UnboundDomain("D".into()))
        );
    }

    #[test]
    fn element_syntax() {
        let x = parse_element("1 + sqrt2*i - 3*sqrt6", None).unwrap();
        assert_eq!(x.field(), &FieldSpec::new(&[2, 3], true).unwrap());
        assert_eq!(x.to_string(), "1 - 3√6 + i√2");
        let y = parse_element("sqrt8", Some(&FieldSpec::new(&[3], false).unwrap())).unwrap();
        assert_eq!(y.to_string(), "2√2");
        assert_eq!(
            parse_element("7", None).unwrap().as_integer(),
            Some(7.into())
        );
        assert!(parse_element("y + 1", None).is_err());
    }

    #[test]
    fn mixed_fields() {
        let f = parse("x*x = 1 + 1").unwrap();
        let mut a = Assignment::new();
        let k = FieldSpec::new(&[2], false).unwrap();
        a.insert("x".into(), Element::sqrt_prime(&k, 2).unwrap());
        assert!(evaluate(&f, &a, &Domains::new()).unwrap());
    }
}
