//! Multiquadratic fields `Q(i?, √p₁, …, √pₙ)` and exact arithmetic in them.
//!
//! A field is described by its list of prime generators plus a flag for `i`.
//! Elements are stored as sparse rational combinations of the radical basis
//! `{iᵃ·√m}` where `m` runs over squarefree products of the field's primes.

mod element;
mod label;
pub(crate) mod serde_impl;

use std::fmt;

pub use element::{arith, sqrt_nat, ArithOp, Element};
pub use label::BasisLabel;

use crate::error::{Error, Result};

/// Trial-division primality test; inputs here are desk scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factors of `n`, ascending, with multiplicity.
pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        while n % d == 0 {
            out.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `n > 0` as `s²·r` with `r` squarefree. Returns `(s, r)`.
pub fn square_split(n: u64) -> (u64, u64) {
    let mut square_root = 1u64;
    let mut radicand = 1u64;
    let factors = factorize(n);
    let mut idx = 0;
    while idx < factors.len() {
        let p = factors[idx];
        let mut e = 0;
        while idx < factors.len() && factors[idx] == p {
            e += 1;
            idx += 1;
        }
        square_root *= p.pow(e / 2);
        if e % 2 == 1 {
            radicand *= p;
        }
    }
    (square_root, radicand)
}

/// A finitely generated subfield `Q(i?, √p₁, …, √pₙ)` of the compositum of
/// all quadratic fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    primes: Vec<u64>,
    imaginary: bool,
}

impl FieldSpec {
    /// Builds the field generated by `√p` for each listed prime, plus `i`
    /// when `imaginary` is set. The primes may come in any order.
    pub fn new(primes: &[u64], imaginary: bool) -> Result<Self> {
        let mut sorted = Vec::with_capacity(primes.len());
        for &p in primes {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if sorted.contains(&p) {
                return Err(Error::DuplicatePrime(p));
            }
            sorted.push(p);
        }
        sorted.sort_unstable();
        Ok(Self {
            primes: sorted,
            imaginary,
        })
    }

    pub fn rationals() -> Self {
        Self {
            primes: Vec::new(),
            imaginary: false,
        }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_imaginary(&self) -> bool {
        self.imaginary
    }

    /// Number of generators, counting `i`.
    pub fn generator_count(&self) -> usize {
        self.primes.len() + usize::from(self.imaginary)
    }

    pub fn degree(&self) -> usize {
        1 << self.generator_count()
    }

    /// True when every generator of `other` is a generator of `self`.
    pub fn contains(&self, other: &FieldSpec) -> bool {
        (self.imaginary || !other.imaginary) && other.primes.iter().all(|p| self.primes.contains(p))
    }

    /// The larger of two fields related by generator inclusion.
    pub fn common(&self, other: &FieldSpec) -> Result<FieldSpec> {
        if self.contains(other) {
            Ok(self.clone())
        } else if other.contains(self) {
            Ok(other.clone())
        } else {
            Err(Error::IncomparableFields(
                self.to_string(),
                other.to_string(),
            ))
        }
    }

    /// The compositum. Never applied implicitly; callers that mix fields
    /// build the joint field up front.
    pub fn join(&self, other: &FieldSpec) -> FieldSpec {
        let mut primes = self.primes.clone();
        for &p in &other.primes {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
        primes.sort_unstable();
        FieldSpec {
            primes,
            imaginary: self.imaginary || other.imaginary,
        }
    }

    pub fn with_imaginary(&self, imaginary: bool) -> FieldSpec {
        FieldSpec {
            primes: self.primes.clone(),
            imaginary,
        }
    }

    pub fn real_subfield(&self) -> FieldSpec {
        self.with_imaginary(false)
    }

    /// Whether the squarefree `m` is a product of this field's primes.
    pub fn admits_radicand(&self, m: u64) -> bool {
        if m == 0 {
            return false;
        }
        let mut rest = m;
        for &p in &self.primes {
            if rest % p == 0 {
                rest /= p;
                if rest % p == 0 {
                    return false;
                }
            }
        }
        rest == 1
    }

    pub fn admits(&self, label: &BasisLabel) -> bool {
        (self.imaginary || !label.with_i) && self.admits_radicand(label.radicand)
    }

    /// The canonical Q-basis, real labels first, radicands ascending.
    pub fn labels(&self) -> Vec<BasisLabel> {
        let n = self.primes.len();
        let mut radicands: Vec<u64> = (0u32..1 << n)
            .map(|mask| {
                (0..n)
                    .filter(|j| mask & (1 << j) != 0)
                    .map(|j| self.primes[j])
                    .product()
            })
            .collect();
        radicands.sort_unstable();
        let mut out: Vec<BasisLabel> = radicands.iter().map(|&m| BasisLabel::real(m)).collect();
        if self.imaginary {
            out.extend(radicands.iter().map(|&m| BasisLabel::imaginary(m)));
        }
        out
    }

    /// Every element of the Galois group, as sign vectors. The identity
    /// comes first.
    pub fn sign_vectors(&self) -> Vec<SignVector> {
        let count = self.generator_count();
        (0u32..1 << count)
            .map(|mask| SignVector {
                prime_flips: (0..self.primes.len())
                    .map(|j| mask & (1 << j) != 0)
                    .collect(),
                i_flip: self.imaginary.then(|| mask & (1 << self.primes.len()) != 0),
            })
            .collect()
    }

    /// Drops the last generator (`i` if present, else the largest prime).
    /// Returns the subfield and the square of the dropped generator.
    pub(crate) fn split_top(&self) -> Option<(FieldSpec, Generator)> {
        if self.imaginary {
            Some((self.real_subfield(), Generator::I))
        } else {
            let (&p, rest) = self.primes.split_last()?;
            Some((
                FieldSpec {
                    primes: rest.to_vec(),
                    imaginary: false,
                },
                Generator::Sqrt(p),
            ))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generator_count() == 0 {
            return write!(f, "Q");
        }
        let mut parts = Vec::new();
        if self.imaginary {
            parts.push("i".to_string());
        }
        parts.extend(self.primes.iter().map(|p| format!("√{p}")));
        write!(f, "Q({})", parts.join(", "))
    }
}

/// Shorthand for [`FieldSpec::new`].
pub fn make_field(primes: &[u64], imaginary: bool) -> Result<FieldSpec> {
    FieldSpec::new(primes, imaginary)
}

/// A generator of a multiquadratic field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Sqrt(u64),
    I,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Sqrt(p) => write!(f, "√{p}"),
            Generator::I => write!(f, "i"),
        }
    }
}

/// A Galois automorphism of a multiquadratic field: one sign per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignVector {
    prime_flips: Vec<bool>,
    i_flip: Option<bool>,
}

impl SignVector {
    pub fn identity(field: &FieldSpec) -> Self {
        Self {
            prime_flips: vec![false; field.primes.len()],
            i_flip: field.imaginary.then_some(false),
        }
    }

    /// Negates the listed generators and fixes the rest.
    pub fn flipping(field: &FieldSpec, generators: &[Generator]) -> Result<Self> {
        let mut s = Self::identity(field);
        for g in generators {
            match g {
                Generator::I => match &mut s.i_flip {
                    Some(flag) => *flag = !*flag,
                    None => return Err(Error::SignMismatch(field.to_string())),
                },
                Generator::Sqrt(p) => match field.primes.iter().position(|q| q == p) {
                    Some(j) => s.prime_flips[j] = !s.prime_flips[j],
                    None => return Err(Error::SignMismatch(field.to_string())),
                },
            }
        }
        Ok(s)
    }

    pub fn matches(&self, field: &FieldSpec) -> bool {
        self.prime_flips.len() == field.primes.len() && self.i_flip.is_some() == field.imaginary
    }

    /// The sign (`±1`) this automorphism applies to a generator.
    pub fn sign_of(&self, field: &FieldSpec, generator: Generator) -> Option<i8> {
        let flipped = match generator {
            Generator::I => self.i_flip?,
            Generator::Sqrt(p) => self.prime_flips[field.primes.iter().position(|&q| q == p)?],
        };
        Some(if flipped { -1 } else { 1 })
    }

    pub fn is_identity(&self) -> bool {
        !self.prime_flips.iter().any(|&f| f) && self.i_flip != Some(true)
    }

    /// Whether this automorphism negates the basis element with label `label`.
    pub(crate) fn negates(&self, field: &FieldSpec, label: &BasisLabel) -> bool {
        let mut odd = label.with_i && self.i_flip == Some(true);
        for (j, &p) in field.primes.iter().enumerate() {
            if self.prime_flips[j] && label.radicand % p == 0 {
                odd = !odd;
            }
        }
        odd
    }

    /// Restriction to the real subfield (drops the sign of `i`).
    pub fn restrict_real(&self) -> SignVector {
        SignVector {
            prime_flips: self.prime_flips.clone(),
            i_flip: None,
        }
    }
}
