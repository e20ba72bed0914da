#![allow(dead_code)]

use std::collections::HashMap;

use multiquad::field::{Element, FieldSpec};
use multiquad::formula::{Assignment, Domains, Formula, Term};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::Rng;

/// Direct recursion over machine integers, written independently of the
/// library evaluator.
pub fn reference_term(t: &Term, env: &HashMap<String, i64>) -> i64 {
    match t {
        Term::Zero => 0,
        Term::One => 1,
        Term::Var(v) => env[v],
        Term::Add(a, b) => reference_term(a, env) + reference_term(b, env),
        Term::Sub(a, b) => reference_term(a, env) - reference_term(b, env),
        Term::Mul(a, b) => reference_term(a, env) * reference_term(b, env),
        Term::Neg(a) => -reference_term(a, env),
    }
}

pub fn reference_eval(
    f: &Formula,
    env: &mut HashMap<String, i64>,
    domains: &HashMap<String, Vec<i64>>,
) -> bool {
    match f {
        Formula::Eq(a, b) => reference_term(a, env) == reference_term(b, env),
        Formula::Not(a) => !reference_eval(a, env, domains),
        Formula::And(a, b) => reference_eval(a, env, domains) & reference_eval(b, env, domains),
        Formula::Or(a, b) => reference_eval(a, env, domains) | reference_eval(b, env, domains),
        Formula::Implies(a, b) => {
            !reference_eval(a, env, domains) | reference_eval(b, env, domains)
        }
        Formula::Exists { var, domain, body } | Formula::Forall { var, domain, body } => {
            let universal = matches!(f, Formula::Forall { .. });
            let saved = env.get(var).copied();
            let mut results = Vec::new();
            for &v in &domains[domain] {
                env.insert(var.clone(), v);
                results.push(reference_eval(body, env, domains));
            }
            match saved {
                Some(v) => env.insert(var.clone(), v),
                None => env.remove(var),
            };
            if universal {
                results.iter().all(|&r| r)
            } else {
                results.iter().any(|&r| r)
            }
        }
    }
}

pub fn int(n: i64) -> Element {
    Element::from_integer(&FieldSpec::rationals(), n)
}

pub fn to_assignment(env: &HashMap<String, i64>) -> Assignment {
    env.iter().map(|(k, &v)| (k.clone(), int(v))).collect()
}

pub fn to_domains(domains: &HashMap<String, Vec<i64>>) -> Domains {
    domains
        .iter()
        .map(|(k, vs)| (k.clone(), vs.iter().map(|&v| int(v)).collect()))
        .collect()
}

pub fn env(pairs: &[(&str, i64)]) -> HashMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

pub fn domains(pairs: &[(&str, &[i64])]) -> HashMap<String, Vec<i64>> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_vec()))
        .collect()
}

/// Least y ≥ 1 with d·y² ± 1 a perfect square, by direct search.
pub fn pell_oracle(d: u64, limit: u64) -> Option<(u64, u64, i8)> {
    for y in 1..=limit {
        let base = d * y * y;
        for (value, sign) in [(base - 1, -1i8), (base + 1, 1)] {
            let x = (value as f64).sqrt().round() as u64;
            for c in x.saturating_sub(1)..=x + 1 {
                if c > 0 && c * c == value {
                    return Some((c, y, sign));
                }
            }
        }
    }
    None
}

/// Exponent of (Z/m)^× as the lcm of element orders.
pub fn unit_group_exponent(m: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let mut exponent = 1;
    for a in 1..m.max(2) {
        if gcd(a, m) != 1 {
            continue;
        }
        let mut order = 1;
        let mut power = a % m;
        while power != 1 % m {
            power = power * a % m;
            order += 1;
        }
        exponent = exponent / gcd(exponent, order) * order;
    }
    exponent
}

/// t₀ = 2, t₁ = 2x, t_{k+1} = 2x·t_k + t_{k−1}; f(x) = t_{2N}.
pub fn f_by_recurrence(x: i64, n: u64) -> BigInt {
    let two_x = BigInt::from(2 * x);
    let (mut prev, mut cur) = (BigInt::from(2), two_x.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..2 * n {
        let next = &two_x * &cur + &prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| {
        acc * BigInt::from(n - j) / BigInt::from(j + 1)
    })
}

/// Σ_j (−1)^{d−j} C(d, j) f(x + j·k).
pub fn finite_difference(x: i64, k: i64, d: u64, n: u64) -> BigInt {
    (0..=d).fold(BigInt::zero(), |acc, j| {
        let term = binomial(d, j) * f_by_recurrence(x + j as i64 * k, n);
        if (d - j) % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Fewest k-th powers summing to each m ≤ limit.
pub fn min_powers(k: u32, limit: usize) -> Vec<u32> {
    let powers: Vec<usize> = (1usize..)
        .map(|b| b.pow(k))
        .take_while(|&p| p <= limit)
        .collect();
    let mut best = vec![0u32; limit + 1];
    for m in 1..=limit {
        best[m] = powers
            .iter()
            .filter(|&&p| p <= m)
            .map(|&p| best[m - p] + 1)
            .min()
            .unwrap();
    }
    best
}

/// Twenty formulas with their variable and domain bindings.
pub fn hand_cases() -> Vec<(
    &'static str,
    HashMap<String, i64>,
    HashMap<String, Vec<i64>>,
)> {
    let small: &[i64] = &[0, 1, 2, 3];
    let signs: &[i64] = &[-1, 0, 1];
    vec![
        ("x = 0", env(&[("x", 0)]), domains(&[])),
        ("x = 0", env(&[("x", 2)]), domains(&[])),
        ("x*x = x + x", env(&[("x", 2)]), domains(&[])),
        (
            "forall y in D. y*y = y",
            env(&[]),
            domains(&[("D", &[0, 1])]),
        ),
        (
            "forall y in D. y*y = y",
            env(&[]),
            domains(&[("D", &[0, 1, 2])]),
        ),
        (
            "exists y in D. x = y*y",
            env(&[("x", 9)]),
            domains(&[("D", small)]),
        ),
        (
            "exists y in D. x = y*y",
            env(&[("x", 4)]),
            domains(&[("D", small)]),
        ),
        (
            "exists y in D. exists z in D. x = y*y + z*z",
            env(&[("x", 13)]),
            domains(&[("D", small)]),
        ),
        (
            "exists y in D. exists z in D. x = y*y + z*z",
            env(&[("x", 7)]),
            domains(&[("D", small)]),
        ),
        (
            "forall y in D. exists z in D. y + z = 0",
            env(&[]),
            domains(&[("D", signs)]),
        ),
        (
            "exists z in D. forall y in D. y + z = 0",
            env(&[]),
            domains(&[("D", signs)]),
        ),
        ("x = 1 -> y = 2", env(&[("x", 0), ("y", 5)]), domains(&[])),
        ("x = 1 -> y = 2", env(&[("x", 1), ("y", 5)]), domains(&[])),
        (
            "~(x = y) | x - y = 0",
            env(&[("x", 3), ("y", 3)]),
            domains(&[]),
        ),
        (
            "x = 3 & y = 4 | x = 4",
            env(&[("x", 4), ("y", 0)]),
            domains(&[]),
        ),
        (
            "x = 3 & (y = 4 | x = 4)",
            env(&[("x", 4), ("y", 0)]),
            domains(&[]),
        ),
        ("-x * -x = x^2", env(&[("x", -7)]), domains(&[])),
        (
            "forall a in D. forall b in D. a*b = b*a & (a + b)*(a + b) = a*a + 2*a*b + b*b",
            env(&[]),
            domains(&[("D", small)]),
        ),
        (
            "exists y in E. x = y & forall z in D. ~(z*z = x) -> z = z",
            env(&[("x", 2)]),
            domains(&[("E", &[2]), ("D", small)]),
        ),
        (
            "forall y in D. (exists z in D. y = z + 1) -> ~(y = 0)",
            env(&[]),
            domains(&[("D", small)]),
        ),
    ]
}

fn random_term(rng: &mut StdRng, vars: &[String], depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.4) {
        return match rng.gen_range(0..4) {
            0 => Term::Zero,
            1 => Term::One,
            _ => Term::Var(vars[rng.gen_range(0..vars.len())].clone()),
        };
    }
    let a = random_term(rng, vars, depth - 1);
    let b = random_term(rng, vars, depth - 1);
    match rng.gen_range(0..4) {
        0 => Term::add(a, b),
        1 => Term::sub(a, b),
        2 => Term::mul(a, b),
        _ => Term::Neg(Box::new(a)),
    }
}

/// A formula in negation normal form whose existentials range only over
/// `E` and universals only over `A`, so it is monotone in both.
pub fn random_monotone_formula(rng: &mut StdRng, vars: &mut Vec<String>, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        let atom = Formula::eq(random_term(rng, vars, 2), random_term(rng, vars, 2));
        return if rng.gen_bool(0.4) {
            Formula::not(atom)
        } else {
            atom
        };
    }
    match rng.gen_range(0..4) {
        0 => Formula::and(
            random_monotone_formula(rng, vars, depth - 1),
            random_monotone_formula(rng, vars, depth - 1),
        ),
        1 => Formula::or(
            random_monotone_formula(rng, vars, depth - 1),
            random_monotone_formula(rng, vars, depth - 1),
        ),
        k => {
            let name = format!("v{}", vars.len());
            vars.push(name.clone());
            let body = random_monotone_formula(rng, vars, depth - 1);
            vars.pop();
            if k == 2 {
                Formula::exists(&name, "E", body)
            } else {
                Formula::forall(&name, "A", body)
            }
        }
    }
}

/// A random finite set of small integers and a strict superset of it.
pub fn nested_sets(rng: &mut StdRng) -> (Vec<i64>, Vec<i64>) {
    let mut small: Vec<i64> = (-2..=2).filter(|_| rng.gen_bool(0.5)).collect();
    if small.is_empty() {
        small.push(0);
    }
    let mut big = small.clone();
    for v in -3..=3 {
        if !big.contains(&v) && rng.gen_bool(0.5) {
            big.push(v);
        }
    }
    if big.len() == small.len() {
        big.push(4);
    }
    (small, big)
}
