//! Unit-group ingredients: Pell units of real quadratic orders, the roots of
//! unity inside the compositum of quadratic fields, and the checks showing
//! that `u^{2N}` of any unit lands in the real subfield.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{factorize, make_field, sqrt_nat, square_split, BasisLabel, Element, FieldSpec};

/// Least positive solution of `x² − d·y² = ±1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PellSolution {
    pub d: u64,
    #[serde(serialize_with = "crate::field::serde_impl::decimal")]
    pub x: BigInt,
    #[serde(serialize_with = "crate::field::serde_impl::decimal")]
    pub y: BigInt,
    pub norm_sign: i8,
}

impl PellSolution {
    /// The unit `x + y·√d`, placed in `field`.
    pub fn unit(&self, field: &FieldSpec) -> Result<Element> {
        let root = sqrt_nat(self.d, field)?;
        Ok(&Element::from_integer(field, self.x.clone())
            + &root.scale(&BigRational::from_integer(self.y.clone())))
    }

    /// Re-checks the defining equation exactly.
    pub fn satisfies_equation(&self) -> bool {
        let lhs = &self.x * &self.x - BigInt::from(self.d) * &self.y * &self.y;
        lhs == BigInt::from(self.norm_sign)
    }
}

/// Fundamental solution from the continued fraction of `√d`.
///
/// With period length `r`, the convergent `p_{r-1}/q_{r-1}` gives the least
/// solution and its norm is `(−1)^r`.
pub fn pell_fundamental(d: u64) -> Result<PellSolution> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "Pell discriminant {d} < 2"
        )));
    }
    let a0 = d.sqrt();
    if a0 * a0 == d {
        return Err(Error::PerfectSquare(d));
    }
    let (mut m, mut den, mut a) = (0u64, 1u64, a0);
    let (mut p_prev, mut p) = (BigInt::one(), BigInt::from(a0));
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    let mut period = 0u32;
    loop {
        m = den * a - m;
        den = (d - m * m) / den;
        a = (a0 + m) / den;
        period += 1;
        if a == 2 * a0 {
            break;
        }
        let p_next = BigInt::from(a) * &p + &p_prev;
        let q_next = BigInt::from(a) * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    Ok(PellSolution {
        d,
        x: p,
        y: q,
        norm_sign: if period % 2 == 1 { -1 } else { 1 },
    })
}

/// Whether `Q(ζ_m)` sits inside the compositum of quadratic fields, i.e.
/// `(Z/m)^×` has exponent dividing 2.
pub fn admits_primitive_root(m: u64) -> bool {
    (1..m)
        .filter(|a| a.gcd(&m) == 1)
        .all(|a| (a * a) % m == 1 % m)
}

/// The group of roots of unity found below a search ceiling.
#[derive(Clone, Debug, Serialize)]
pub struct RootsOfUnityReport {
    /// Order of the group (lcm of admissible orders).
    pub order_n: u64,
    /// `ζ_N^k` for `k = 0..N`, in the host field.
    pub roots: Vec<Element>,
    pub host_field: FieldSpec,
    pub admissible_orders: Vec<u64>,
}

impl RootsOfUnityReport {
    /// Multiplicative order of `roots[k]`.
    pub fn order_of(&self, k: usize) -> u64 {
        self.order_n / (k as u64).gcd(&self.order_n)
    }

    /// Position of `x` among the roots, if it is one of them.
    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.roots.iter().position(|r| r.same_value(x))
    }
}

/// `ζ₂₄ = cos 15° + i·sin 15° = ((√6+√2) + i(√6−√2))/4`.
fn zeta24() -> Element {
    let field = make_field(&[2, 3], true).expect("2 and 3 are prime");
    let quarter = BigRational::new(1.into(), 4.into());
    Element::from_coeffs(
        &field,
        [
            (BasisLabel::real(6), quarter.clone()),
            (BasisLabel::real(2), quarter.clone()),
            (BasisLabel::imaginary(6), quarter.clone()),
            (BasisLabel::imaginary(2), -quarter),
        ],
    )
    .expect("labels belong to Q(i, √2, √3)")
}

/// Finds every order `m ≤ bound` with a primitive root in the compositum and
/// builds the whole cyclic group exactly.
pub fn roots_of_unity(bound: u64) -> Result<RootsOfUnityReport> {
    if bound < 24 {
        return Err(Error::InvalidParameter(format!(
            "root-of-unity search ceiling {bound} < 24"
        )));
    }
    let admissible_orders: Vec<u64> = (1..=bound).filter(|&m| admits_primitive_root(m)).collect();
    let order_n = admissible_orders.iter().fold(1u64, |acc, &m| acc.lcm(&m));
    if 24 % order_n != 0 {
        // Only divisors of 24 have closed forms here; the exponent criterion
        // never admits anything else.
        return Err(Error::InvalidParameter(format!(
            "unexpected root-of-unity order {order_n}"
        )));
    }
    let generator = zeta24().pow(24 / order_n);
    let host_field = generator.minimal_field();
    let generator = generator.restrict(&host_field)?;
    let mut roots = Vec::with_capacity(order_n as usize);
    let mut current = Element::one(&host_field);
    for _ in 0..order_n {
        roots.push(current.clone());
        current = &current * &generator;
    }
    Ok(RootsOfUnityReport {
        order_n,
        roots,
        host_field,
        admissible_orders,
    })
}

/// Position of `t = 2 + w + w⁻¹` relative to `[0, 4]` for one root `w`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryRecord {
    pub root: Element,
    pub t_value: Element,
    /// All conjugates in the closed interval `[0, 4]`.
    pub closed: bool,
    /// All conjugates in the open interval `(0, 4)`.
    pub strict: bool,
}

pub fn rou_boundary_check(report: &RootsOfUnityReport) -> Result<Vec<BoundaryRecord>> {
    let zero = BigRational::zero();
    let four = BigRational::from_integer(4.into());
    report
        .roots
        .iter()
        .map(|w| {
            let two = Element::from_integer(w.field(), 2);
            let t = &(&two + w) + &w.inv()?;
            let t = t.to_real_subfield().ok_or_else(|| {
                Error::InvalidParameter(format!("2 + w + 1/w not real for w = {w}"))
            })?;
            let (mut closed, mut strict) = (true, true);
            for s in t.field().sign_vectors() {
                let low = t.cmp_conjugate(&s, &zero)?.expect("real element");
                let high = t.cmp_conjugate(&s, &four)?.expect("real element");
                closed &= low != Ordering::Less && high != Ordering::Greater;
                strict &= low == Ordering::Greater && high == Ordering::Less;
            }
            Ok(BoundaryRecord {
                root: w.clone(),
                t_value: t,
                closed,
                strict,
            })
        })
        .collect()
}

/// Certificate that an element is a unit of its ring of integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitWitness {
    pub u: Element,
    pub inverse: Element,
    pub norm_value: i8,
}

impl UnitWitness {
    /// Re-checks `u·inverse = 1`, integrality of both, and the norm.
    pub fn verify(&self) -> bool {
        let Ok(product) = self.u.try_mul(&self.inverse) else {
            return false;
        };
        product.is_one()
            && self.u.is_integral()
            && self.inverse.is_integral()
            && self.u.norm() == BigRational::from_integer(self.norm_value.into())
    }
}

/// A unit witness iff `x` is integral of norm `±1`.
pub fn is_unit(x: &Element) -> Option<UnitWitness> {
    if x.is_zero() || !x.is_integral() {
        return None;
    }
    let norm = x.norm();
    let norm_value = if norm.is_one() {
        1
    } else if norm == -BigRational::one() {
        -1
    } else {
        return None;
    };
    let inverse = x.inv().ok()?;
    Some(UnitWitness {
        u: x.clone(),
        inverse,
        norm_value,
    })
}

/// Outcome of checking `u^{2N} ∈ O_K^×` for one unit.
#[derive(Clone, Debug, Serialize)]
pub struct UnitPowerRecord {
    pub unit: Element,
    pub n: u64,
    pub power: Element,
    /// No coefficient on an `i·√m` label.
    pub in_real_subfield: bool,
    pub is_unit: bool,
}

impl UnitPowerRecord {
    pub fn passed(&self) -> bool {
        self.in_real_subfield && self.is_unit
    }
}

pub fn unit_power_in_k(u: &UnitWitness, n: u64) -> UnitPowerRecord {
    let power = u.u.pow(2 * n);
    UnitPowerRecord {
        unit: u.u.clone(),
        n,
        in_real_subfield: !power.has_imaginary_part(),
        is_unit: is_unit(&power).is_some(),
        power,
    }
}

/// A factorization `u² = ζ·w` with `ζ` a root of unity and `w` a real unit.
#[derive(Clone, Debug, Serialize)]
pub struct HasseFactorization {
    pub zeta: Element,
    pub zeta_index: usize,
    pub w: Element,
}

/// Searches every root of unity `ζ` for `u²·ζ⁻¹` real and a unit.
///
/// Several roots may work (`w` and `−w` both qualify). A totally positive
/// `w` is preferred, otherwise the first root in group order wins.
pub fn hasse_square_decompose(
    u: &UnitWitness,
    roots: &RootsOfUnityReport,
) -> Option<HasseFactorization> {
    let field = u.u.field().join(&roots.host_field);
    let square = u.u.coerce(&field).ok()?.square();
    let mut fallback = None;
    for (zeta_index, zeta) in roots.roots.iter().enumerate() {
        let zeta = zeta.coerce(&field).ok()?;
        let w = square.try_mul(&zeta.inv().ok()?).ok()?;
        let Some(w) = w.to_real_subfield() else {
            continue;
        };
        if is_unit(&w).is_none() {
            continue;
        }
        let candidate = HasseFactorization {
            zeta,
            zeta_index,
            w,
        };
        if candidate.w.is_totally_positive() {
            return Some(candidate);
        }
        fallback.get_or_insert(candidate);
    }
    fallback
}

/// Pell discriminants whose units live in `Q(√2, √3)`.
pub const SAMPLE_DISCRIMINANTS: [u64; 3] = [2, 3, 6];

/// The fixed 50-unit sample over `Q(i, √2, √3)`:
/// `ζ₂₄^a · ε_d^b · ε_e^c` with `|b| ≤ 3`, `|c| ≤ 1`, where the `ε` are the
/// Pell units for 2, 3, 6.
pub fn standard_unit_sample() -> Vec<UnitWitness> {
    let field = make_field(&[2, 3], true).expect("2 and 3 are prime");
    let zeta = zeta24();
    let pell: Vec<Element> = SAMPLE_DISCRIMINANTS
        .iter()
        .map(|&d| {
            pell_fundamental(d)
                .and_then(|s| s.unit(&field))
                .expect("sample discriminants are valid")
        })
        .collect();
    (0..50i64)
        .map(|j| {
            let a = ((5 * j + 1) % 24) as u64;
            let b = j % 7 - 3;
            let c = (j / 7) % 3 - 1;
            let first = &pell[(j % 3) as usize];
            let second = &pell[((j + 1) % 3) as usize];
            let u =
                &(&zeta.pow(a) * &first.powi(b).expect("unit")) * &second.powi(c).expect("unit");
            is_unit(&u).expect("products of units are units")
        })
        .collect()
}

/// Units `ζ₂₄^a · ε_d^b` for each listed discriminant, each in the smallest
/// field holding `ζ₂₄` and `√d`.
pub fn pell_unit_sample(discriminants: &[u64], exponents: &[i64]) -> Result<Vec<UnitWitness>> {
    let zeta = zeta24();
    let mut out = Vec::new();
    for (k, &d) in discriminants.iter().enumerate() {
        let pell = pell_fundamental(d)?;
        let mut primes: Vec<u64> = vec![2, 3];
        for p in factorize(square_split(d).1) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
        let field = make_field(&primes, true)?;
        let epsilon = pell.unit(&field)?;
        let zeta = zeta.coerce(&field)?;
        for (j, &b) in exponents.iter().enumerate() {
            let a = ((7 * k + 5 * j) % 24) as u64;
            let u = &zeta.pow(a) * &epsilon.powi(b)?;
            out.push(is_unit(&u).ok_or_else(|| {
                Error::InvalidParameter(format!("sample element {u} is not a unit"))
            })?);
        }
    }
    Ok(out)
}
