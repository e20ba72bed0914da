use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{factorize, square_split, BasisLabel, FieldSpec, Generator, SignVector};
use crate::error::{Error, Result};
use crate::interval::{sqrt_enclosure, ComplexInterval, Interval};
use crate::poly::{from_power_sums, RatPoly};

/// An exact element of a multiquadratic field.
///
/// Coefficients are kept in canonical form: only valid labels for the field,
/// no zero entries. Two elements compare equal iff they live in the same
/// field and have identical coefficients; use [`Element::same_value`] to
/// compare across fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    field: FieldSpec,
    coeffs: BTreeMap<BasisLabel, BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies a ring operation, coercing along generator inclusion.
pub fn arith(op: ArithOp, a: &Element, b: &Element) -> Result<Element> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

/// The positive square root of `m` inside `field`.
pub fn sqrt_nat(m: u64, field: &FieldSpec) -> Result<Element> {
    if m == 0 {
        return Ok(Element::zero(field));
    }
    let (root, radicand) = square_split(m);
    if let Some(&prime) = factorize(radicand)
        .iter()
        .find(|p| !field.primes().contains(p))
    {
        return Err(Error::MissingGenerator { value: m, prime });
    }
    let mut coeffs = BTreeMap::new();
    coeffs.insert(
        BasisLabel::real(radicand),
        BigRational::from_integer(root.into()),
    );
    Ok(Element {
        field: field.clone(),
        coeffs,
    })
}

impl Element {
    pub fn zero(field: &FieldSpec) -> Self {
        Self {
            field: field.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::from_integer(field, 1)
    }

    pub fn from_integer(field: &FieldSpec, n: impl Into<BigInt>) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn from_rational(field: &FieldSpec, q: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !q.is_zero() {
            coeffs.insert(BasisLabel::ONE, q);
        }
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    /// The basis element with the given label.
    pub fn basis(field: &FieldSpec, label: BasisLabel) -> Result<Self> {
        Self::from_coeffs(field, [(label, BigRational::one())])
    }

    /// `i`, which requires an imaginary field.
    pub fn i(field: &FieldSpec) -> Result<Self> {
        Self::basis(field, BasisLabel::imaginary(1))
    }

    /// `√p` for a generator prime `p` of `field`.
    pub fn sqrt_prime(field: &FieldSpec, p: u64) -> Result<Self> {
        Self::basis(field, BasisLabel::real(p))
    }

    pub fn from_coeffs<I>(field: &FieldSpec, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisLabel, BigRational)>,
    {
        let mut map: BTreeMap<BasisLabel, BigRational> = BTreeMap::new();
        for (label, c) in coeffs {
            if !field.admits(&label) {
                return Err(Error::InvalidLabel(format!("{label} in {field}")));
            }
            *map.entry(label).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Self {
            field: field.clone(),
            coeffs: map,
        })
    }

    /// Builds from a dense coordinate vector over `field.labels()`.
    pub fn from_coordinates(field: &FieldSpec, coords: &[BigRational]) -> Self {
        let coeffs = field
            .labels()
            .into_iter()
            .zip(coords.iter().cloned())
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&BasisLabel, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, label: &BasisLabel) -> BigRational {
        self.coeffs
            .get(label)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Dense coordinates over `field.labels()`.
    pub fn coordinates(&self) -> Vec<BigRational> {
        self.field.labels().iter().map(|l| self.coeff(l)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => self.coeffs.get(&BasisLabel::ONE).cloned(),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Whether any coefficient sits on an `i·√m` label.
    pub fn has_imaginary_part(&self) -> bool {
        self.coeffs.keys().any(|l| l.with_i)
    }

    /// Value equality after coercion to a common field.
    pub fn same_value(&self, other: &Element) -> bool {
        self.coeffs == other.coeffs
    }

    /// Moves the element into a field containing its current one.
    pub fn coerce(&self, field: &FieldSpec) -> Result<Element> {
        if !field.contains(&self.field) {
            return Err(Error::IncomparableFields(
                self.field.to_string(),
                field.to_string(),
            ));
        }
        Ok(Element {
            field: field.clone(),
            coeffs: self.coeffs.clone(),
        })
    }

    /// Moves the element into any field whose labels cover its support.
    pub fn restrict(&self, field: &FieldSpec) -> Result<Element> {
        if let Some(label) = self.coeffs.keys().find(|l| !field.admits(l)) {
            return Err(Error::InvalidLabel(format!("{label} in {field}")));
        }
        Ok(Element {
            field: field.clone(),
            coeffs: self.coeffs.clone(),
        })
    }

    /// The smallest field of the form `Q(i?, √p…)` holding this value.
    pub fn minimal_field(&self) -> FieldSpec {
        let mut primes: Vec<u64> = Vec::new();
        let mut imaginary = false;
        for label in self.coeffs.keys() {
            imaginary |= label.with_i;
            for p in factorize(label.radicand) {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
        FieldSpec::new(&primes, imaginary).expect("labels carry valid primes")
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        let field = self.field.common(&other.field)?;
        let mut coeffs = self.coeffs.clone();
        for (label, c) in &other.coeffs {
            *coeffs.entry(*label).or_insert_with(BigRational::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(Element { field, coeffs })
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        let field = self.field.common(&other.field)?;
        let mut coeffs: BTreeMap<BasisLabel, BigRational> = BTreeMap::new();
        for (la, ca) in &self.coeffs {
            for (lb, cb) in &other.coeffs {
                let (scale, label) = la.mul(*lb);
                let term = ca * cb * BigInt::from(scale);
                *coeffs.entry(label).or_insert_with(BigRational::zero) += term;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(Element { field, coeffs })
    }

    pub fn try_div(&self, other: &Element) -> Result<Element> {
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, factor: &BigRational) -> Element {
        if factor.is_zero() {
            return Element::zero(&self.field);
        }
        Element {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|(l, c)| (*l, c * factor)).collect(),
        }
    }

    pub fn square(&self) -> Element {
        self.try_mul(self).expect("same field")
    }

    pub fn pow(&self, mut exponent: u64) -> Element {
        let mut acc = Element::one(&self.field);
        let mut base = self.clone();
        while exponent > 0 {
            if exponent & 1 == 1 {
                acc = &acc * &base;
            }
            exponent >>= 1;
            if exponent > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, exponent: i64) -> Result<Element> {
        if exponent >= 0 {
            Ok(self.pow(exponent as u64))
        } else {
            Ok(self.inv()?.pow(exponent.unsigned_abs()))
        }
    }

    /// Splits `x = a + b·g` over the subfield obtained by dropping the top
    /// generator `g`.
    fn split_top(&self) -> Option<(FieldSpec, Generator, Element, Element)> {
        let (sub, generator) = self.field.split_top()?;
        let mut a = BTreeMap::new();
        let mut b = BTreeMap::new();
        for (label, c) in &self.coeffs {
            match generator {
                Generator::I if label.with_i => {
                    b.insert(BasisLabel::real(label.radicand), c.clone());
                }
                Generator::Sqrt(p) if label.radicand % p == 0 => {
                    let reduced = BasisLabel {
                        with_i: label.with_i,
                        radicand: label.radicand / p,
                    };
                    b.insert(reduced, c.clone());
                }
                _ => {
                    a.insert(*label, c.clone());
                }
            }
        }
        let a = Element {
            field: sub.clone(),
            coeffs: a,
        };
        let b = Element {
            field: sub.clone(),
            coeffs: b,
        };
        Some((sub, generator, a, b))
    }

    /// Relative norm and trace over the subfield without the top generator.
    fn relative_norm_trace(&self) -> Option<(Element, Element)> {
        let (_, generator, a, b) = self.split_top()?;
        let generator_square = match generator {
            Generator::I => BigRational::from_integer((-1).into()),
            Generator::Sqrt(p) => BigRational::from_integer(p.into()),
        };
        let norm = &a.square() - &b.square().scale(&generator_square);
        let trace = a.scale(&BigRational::from_integer(2.into()));
        Some((norm, trace))
    }

    pub fn inv(&self) -> Result<Element> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let Some((sub, generator, _, _)) = self.split_top() else {
            let q = self.coeff(&BasisLabel::ONE);
            return Ok(Element::from_rational(&self.field, q.recip()));
        };
        // x⁻¹ = x̄ / N(x), with x̄ the conjugate flipping the top generator
        // and N(x) = x·x̄ in the subfield.
        let (relative_norm, _) = self
            .relative_norm_trace()
            .expect("field has a top generator");
        debug_assert_eq!(relative_norm.field, sub);
        let flip = SignVector::flipping(&self.field, &[generator])?;
        let conjugate = self.conjugate(&flip)?;
        let inverse_norm = relative_norm.inv()?.coerce(&self.field)?;
        Ok(&conjugate * &inverse_norm)
    }

    /// Image under the automorphism `s`.
    pub fn conjugate(&self, s: &SignVector) -> Result<Element> {
        if !s.matches(&self.field) {
            return Err(Error::SignMismatch(self.field.to_string()));
        }
        Ok(Element {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(l, c)| {
                    if s.negates(&self.field, l) {
                        (*l, -c)
                    } else {
                        (*l, c.clone())
                    }
                })
                .collect(),
        })
    }

    /// All Galois conjugates, in [`FieldSpec::sign_vectors`] order.
    pub fn conjugates(&self) -> Vec<Element> {
        self.field
            .sign_vectors()
            .iter()
            .map(|s| self.conjugate(s).expect("sign vector from own field"))
            .collect()
    }

    /// Rigorous complex enclosure of the conjugate `s(x)` under the
    /// principal embedding (`√m > 0`, `i` in the upper half plane).
    /// Precision is clamped to at least 16 bits.
    pub fn embed(&self, s: &SignVector, bits: u32) -> Result<ComplexInterval> {
        let image = self.conjugate(s)?;
        let bits = bits.max(16);
        let mut re = Interval::zero();
        let mut im = Interval::zero();
        for (label, c) in &image.coeffs {
            let term = sqrt_enclosure(label.radicand, bits).scale(c);
            if label.with_i {
                im = &im + &term;
            } else {
                re = &re + &term;
            }
        }
        Ok(ComplexInterval { re, im })
    }

    /// Exact comparison of the conjugate `s(x)` with a rational bound.
    ///
    /// Returns `None` when the conjugate is not real (any nonzero `i`-part
    /// makes every conjugate non-real). Equality is decided exactly first, so
    /// the interval refinement that follows always terminates.
    pub fn cmp_conjugate(&self, s: &SignVector, bound: &BigRational) -> Result<Option<Ordering>> {
        let image = self.conjugate(s)?;
        if image.has_imaginary_part() {
            return Ok(None);
        }
        if image.as_rational().is_some_and(|q| &q == bound) {
            return Ok(Some(Ordering::Equal));
        }
        let mut bits = 32;
        loop {
            let iv = image.embed(&SignVector::identity(&self.field), bits)?.re;
            if iv.hi() < bound {
                return Ok(Some(Ordering::Less));
            }
            if iv.lo() > bound {
                return Ok(Some(Ordering::Greater));
            }
            bits *= 2;
        }
    }

    /// Whether every conjugate is real and strictly positive.
    pub fn is_totally_positive(&self) -> bool {
        let zero = BigRational::zero();
        self.field.sign_vectors().iter().all(|s| {
            self.cmp_conjugate(s, &zero).expect("own sign vector") == Some(Ordering::Greater)
        })
    }

    /// Field norm to `Q`, computed down the tower of relative norms.
    pub fn norm(&self) -> BigRational {
        match self.relative_norm_trace() {
            None => self.coeff(&BasisLabel::ONE),
            Some((relative_norm, _)) => relative_norm.norm(),
        }
    }

    /// Field trace to `Q`. Every non-trivial basis element has trace zero.
    pub fn trace(&self) -> BigRational {
        self.coeff(&BasisLabel::ONE) * BigInt::from(self.field.degree())
    }

    /// Characteristic polynomial of multiplication by `self` on the
    /// canonical basis.
    ///
    /// Its roots are the conjugates, so Newton's identities recover it from
    /// the traces of the first `degree` powers.
    pub fn char_poly(&self) -> RatPoly {
        let n = self.field.degree();
        let mut power = Element::one(&self.field);
        let sums: Vec<BigRational> = (0..n)
            .map(|_| {
                power = &power * self;
                power.trace()
            })
            .collect();
        from_power_sums(&sums)
    }

    #[cfg(test)]
    fn multiplication_matrix(&self) -> Vec<Vec<BigRational>> {
        let labels = self.field.labels();
        let index: BTreeMap<BasisLabel, usize> =
            labels.iter().enumerate().map(|(k, l)| (*l, k)).collect();
        let n = labels.len();
        let mut matrix = vec![vec![BigRational::zero(); n]; n];
        for (col, label) in labels.iter().enumerate() {
            for (l, c) in &self.coeffs {
                let (scale, product) = l.mul(*label);
                matrix[index[&product]][col] += c * BigInt::from(scale);
            }
        }
        matrix
    }

    /// Whether the element is an algebraic integer.
    ///
    /// Walks down the tower: `x = a + b·g` is integral iff its relative
    /// trace `2a` and relative norm `a² − g²b²` are integral in the subfield.
    pub fn is_integral(&self) -> bool {
        match self.relative_norm_trace() {
            None => self.coeff(&BasisLabel::ONE).is_integer(),
            Some((norm, trace)) => trace.is_integral() && norm.is_integral(),
        }
    }

    /// Real and imaginary parts `(a, b)` with `x = a + i·b`, both in the
    /// real subfield.
    pub fn real_imaginary_parts(&self) -> (Element, Element) {
        let real = self.field.real_subfield();
        let mut a = BTreeMap::new();
        let mut b = BTreeMap::new();
        for (label, c) in &self.coeffs {
            if label.with_i {
                b.insert(BasisLabel::real(label.radicand), c.clone());
            } else {
                a.insert(*label, c.clone());
            }
        }
        (
            Element {
                field: real.clone(),
                coeffs: a,
            },
            Element {
                field: real,
                coeffs: b,
            },
        )
    }

    /// The same value in the real subfield, if it has no `i`-part.
    pub fn to_real_subfield(&self) -> Option<Element> {
        if self.has_imaginary_part() {
            return None;
        }
        Some(Element {
            field: self.field.real_subfield(),
            coeffs: self.coeffs.clone(),
        })
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|(l, c)| (*l, -c)).collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics when the fields are not related by generator inclusion;
        /// the `try_*` methods report that case as an error instead.
        impl $trait for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }

        impl $trait for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (label, c)) in self.coeffs.iter().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let magnitude = c.abs();
            let radical = match (label.with_i, label.radicand) {
                (false, 1) => String::new(),
                (false, m) => format!("√{m}"),
                (true, 1) => "i".to_string(),
                (true, m) => format!("i√{m}"),
            };
            if radical.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{radical}")?;
            } else if magnitude.is_integer() {
                write!(f, "{magnitude}{radical}")?;
            } else {
                write!(f, "({magnitude}){radical}")?;
            }
        }
        Ok(())
    }
}
