use std::collections::{BTreeMap, BTreeSet};

use super::ast::{Formula, Term};
use crate::error::{Error, Result};
use crate::field::{factorize, sqrt_nat, square_split, Element, FieldSpec};

/// Values of the free variables.
pub type Assignment = BTreeMap<String, Element>;

/// Finite carriers that quantifiers range over, by name.
pub type Domains = BTreeMap<String, Vec<Element>>;

struct Env<'a> {
    assignment: &'a Assignment,
    domains: &'a Domains,
    bound: Vec<(&'a str, &'a Element)>,
}

impl<'a> Env<'a> {
    fn lookup(&self, name: &str) -> Result<&'a Element> {
        self.bound
            .iter()
            .rev()
            .find(|(v, _)| *v == name)
            .map(|(_, e)| *e)
            .or_else(|| self.assignment.get(name))
            .ok_or_else(|| Error::UnboundVariable(name.to_string()))
    }

    fn term(&self, t: &Term) -> Result<Element> {
        Ok(match t {
            Term::Zero => Element::zero(&FieldSpec::rationals()),
            Term::One => Element::one(&FieldSpec::rationals()),
            Term::Var(v) => self.lookup(v)?.clone(),
            Term::Add(a, b) => self.term(a)?.try_add(&self.term(b)?)?,
            Term::Sub(a, b) => self.term(a)?.try_sub(&self.term(b)?)?,
            Term::Mul(a, b) => self.term(a)?.try_mul(&self.term(b)?)?,
            Term::Neg(a) => -self.term(a)?,
        })
    }

    fn formula(&mut self, f: &'a Formula) -> Result<bool> {
        Ok(match f {
            Formula::Eq(a, b) => self.term(a)?.same_value(&self.term(b)?),
            Formula::Not(a) => !self.formula(a)?,
            Formula::And(a, b) => self.formula(a)? && self.formula(b)?,
            Formula::Or(a, b) => self.formula(a)? || self.formula(b)?,
            Formula::Implies(a, b) => !self.formula(a)? || self.formula(b)?,
            Formula::Exists { var, domain, body } => {
                let carrier = self.carrier(domain)?;
                let mut found = false;
                for value in carrier {
                    self.bound.push((var, value));
                    let holds = self.formula(body);
                    self.bound.pop();
                    if holds? {
                        found = true;
                        break;
                    }
                }
                found
            }
            Formula::Forall { var, domain, body } => {
                let carrier = self.carrier(domain)?;
                let mut all = true;
                for value in carrier {
                    self.bound.push((var, value));
                    let holds = self.formula(body);
                    self.bound.pop();
                    if !holds? {
                        all = false;
                        break;
                    }
                }
                all
            }
        })
    }

    fn carrier(&self, name: &str) -> Result<&'a [Element]> {
        self.domains
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnboundDomain(name.to_string()))
    }
}

fn check_bindings(
    f: &Formula,
    extra: Option<&str>,
    a: &Assignment,
    domains: &Domains,
) -> Result<()> {
    if let Some(v) = f
        .free_vars()
        .into_iter()
        .find(|v| !a.contains_key(v) && Some(v.as_str()) != extra)
    {
        return Err(Error::UnboundVariable(v));
    }
    if let Some(d) = f.domains().into_iter().find(|d| !domains.contains_key(d)) {
        return Err(Error::UnboundDomain(d));
    }
    Ok(())
}

/// Tarskian truth of `f` with quantifiers restricted to the named finite
/// carriers. Terms are computed exactly; `0` and `1` live in `Q` and are
/// coerced upward as needed.
pub fn evaluate(f: &Formula, a: &Assignment, domains: &Domains) -> Result<bool> {
    check_bindings(f, None, a, domains)?;
    Env {
        assignment: a,
        domains,
        bound: Vec::new(),
    }
    .formula(f)
}

/// The value of a term under `a`.
pub fn evaluate_term(t: &Term, a: &Assignment) -> Result<Element> {
    let domains = Domains::new();
    Env {
        assignment: a,
        domains: &domains,
        bound: Vec::new(),
    }
    .term(t)
}

/// Reads an element written as a ring term over the names `i` and
/// `sqrtM` (`√M` for a natural `M`), e.g. `1 + sqrt2*i - 3*sqrt6`.
///
/// The result lives in the smallest field that contains every name used,
/// joined with `field` when one is given.
pub fn parse_element(src: &str, field: Option<&FieldSpec>) -> Result<Element> {
    let t = super::parse_term(src)?;
    let mut names = BTreeSet::new();
    collect_names(&t, &mut names);
    let mut primes = Vec::new();
    let mut imaginary = false;
    let mut radicands = Vec::new();
    for name in &names {
        if name == "i" {
            imaginary = true;
            continue;
        }
        let m: u64 = name
            .strip_prefix("sqrt")
            .and_then(|digits| digits.parse().ok())
            .ok_or_else(|| Error::UnboundVariable(name.clone()))?;
        primes.extend(factorize(square_split(m).1));
        radicands.push((name, m));
    }
    primes.sort_unstable();
    primes.dedup();
    let mut host = FieldSpec::new(&primes, imaginary)?;
    if let Some(f) = field {
        host = host.join(f);
    }
    let mut a = Assignment::new();
    for (name, m) in radicands {
        a.insert(name.clone(), sqrt_nat(m, &host)?);
    }
    if imaginary {
        a.insert("i".into(), Element::i(&host)?);
    }
    evaluate_term(&t, &a)?.coerce(&host)
}

fn collect_names(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Zero | Term::One => {}
        Term::Var(v) => {
            out.insert(v.clone());
        }
        Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => {
            collect_names(a, out);
            collect_names(b, out);
        }
        Term::Neg(a) => collect_names(a, out),
    }
}

/// The members `v` of `pool` for which `f` holds with `var ↦ v`.
pub fn define_set(
    f: &Formula,
    a: &Assignment,
    var: &str,
    pool: &[Element],
    domains: &Domains,
) -> Result<Vec<Element>> {
    if a.contains_key(var) {
        return Err(Error::InvalidParameter(format!(
            "`{var}` is both assigned and designated"
        )));
    }
    check_bindings(f, Some(var), a, domains)?;
    let mut assignment = a.clone();
    let mut out = Vec::new();
    for v in pool {
        assignment.insert(var.to_string(), v.clone());
        let holds = Env {
            assignment: &assignment,
            domains,
            bound: Vec::new(),
        }
        .formula(f)?;
        if holds {
            out.push(v.clone());
        }
    }
    Ok(out)
}
