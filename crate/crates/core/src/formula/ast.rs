use std::collections::BTreeSet;
use std::fmt;

/// Terms of the ring language `{0, 1; +, ·}` with subtraction and negation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    One,
    Var(String),
    Add(Box<Term>, Box<Term>),
    Sub(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Neg(Box<Term>),
}

/// First-order formulas whose quantifiers name the finite domain they range
/// over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists {
        var: String,
        domain: String,
        body: Box<Formula>,
    },
    Forall {
        var: String,
        domain: String,
        body: Box<Formula>,
    },
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    /// `n` written as `1 + 1 + … + 1`.
    pub fn numeral(n: u64) -> Term {
        match n {
            0 => Term::Zero,
            _ => (1..n).fold(Term::One, |acc, _| {
                Term::Add(Box::new(acc), Box::new(Term::One))
            }),
        }
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Term, b: Term) -> Term {
        Term::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Zero | Term::One => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Neg(a) => a.collect_vars(out),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Add(..) | Term::Sub(..) => 1,
            Term::Mul(..) => 2,
            Term::Neg(..) => 3,
            _ => 4,
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let parens = self.precedence() < min;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Term::Zero => write!(f, "0")?,
            Term::One => write!(f, "1")?,
            Term::Var(v) => write!(f, "{v}")?,
            Term::Add(a, b) => {
                a.write_prec(f, 1)?;
                write!(f, " + ")?;
                b.write_prec(f, 2)?;
            }
            Term::Sub(a, b) => {
                a.write_prec(f, 1)?;
                write!(f, " - ")?;
                b.write_prec(f, 2)?;
            }
            Term::Mul(a, b) => {
                a.write_prec(f, 2)?;
                write!(f, " * ")?;
                b.write_prec(f, 3)?;
            }
            Term::Neg(a) => {
                write!(f, "-")?;
                a.write_prec(f, 3)?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn exists(var: &str, domain: &str, body: Formula) -> Formula {
        Formula::Exists {
            var: var.to_string(),
            domain: domain.to_string(),
            body: Box::new(body),
        }
    }

    pub fn forall(var: &str, domain: &str, body: Formula) -> Formula {
        Formula::Forall {
            var: var.to_string(),
            domain: domain.to_string(),
            body: Box::new(body),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) => {
                let mut vars = BTreeSet::new();
                a.collect_vars(&mut vars);
                b.collect_vars(&mut vars);
                out.extend(vars.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists { var, body, .. } | Formula::Forall { var, body, .. } => {
                bound.push(var.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Names of every domain a quantifier ranges over.
    pub fn domains(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_domains(&mut out);
        out
    }

    fn collect_domains(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(..) => {}
            Formula::Not(a) => a.collect_domains(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_domains(out);
                b.collect_domains(out);
            }
            Formula::Exists { domain, body, .. } | Formula::Forall { domain, body, .. } => {
                out.insert(domain.clone());
                body.collect_domains(out);
            }
        }
    }

    // Quantifier bodies extend as far right as possible, so quantifiers
    // share the loosest precedence with implication.
    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) | Formula::Exists { .. } | Formula::Forall { .. } => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(..) => 4,
            Formula::Eq(..) => 5,
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let parens = self.precedence() < min;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Formula::Eq(a, b) => write!(f, "{a} = {b}")?,
            Formula::Not(a) => {
                write!(f, "~")?;
                // keep `~(a = b)` readable rather than `~a = b`
                a.write_prec(f, 6)?;
            }
            Formula::And(a, b) => {
                a.write_prec(f, 3)?;
                write!(f, " & ")?;
                b.write_prec(f, 4)?;
            }
            Formula::Or(a, b) => {
                a.write_prec(f, 2)?;
                write!(f, " | ")?;
                b.write_prec(f, 3)?;
            }
            Formula::Implies(a, b) => {
                a.write_prec(f, 2)?;
                write!(f, " -> ")?;
                b.write_prec(f, 1)?;
            }
            Formula::Exists { var, domain, body } => {
                write!(f, "exists {var} in {domain}. ")?;
                body.write_prec(f, 1)?;
            }
            Formula::Forall { var, domain, body } => {
                write!(f, "forall {var} in {domain}. ")?;
                body.write_prec(f, 1)?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}
