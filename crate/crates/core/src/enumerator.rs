//! Finite sets of totally bounded algebraic integers, and the family of
//! rational integers cut out by the four-squares formula.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::definable::{four_squares, w_member_default, WitnessChain};
use crate::error::{Error, Result};
use crate::field::{Element, FieldSpec, SignVector};

/// A `Z`-basis of a full-rank subring of the integers of a real
/// multiquadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderBasis {
    field: FieldSpec,
    basis: Vec<Element>,
    /// Row `j` maps radical coordinates to the `j`-th basis coordinate.
    inverse: Vec<Vec<BigRational>>,
}

impl OrderBasis {
    /// Validates integrality, rank and the trace form.
    pub fn new(field: &FieldSpec, basis: Vec<Element>) -> Result<Self> {
        if field.is_imaginary() {
            return Err(Error::ImaginaryField(field.to_string()));
        }
        if basis.len() != field.degree() {
            return Err(Error::InvalidParameter(format!(
                "{} basis elements for a field of degree {}",
                basis.len(),
                field.degree()
            )));
        }
        let basis = basis
            .into_iter()
            .map(|b| b.coerce(field))
            .collect::<Result<Vec<_>>>()?;
        if let Some(b) = basis.iter().find(|b| !b.is_integral()) {
            return Err(Error::InvalidParameter(format!("{b} is not integral")));
        }
        let gram: Vec<Vec<BigRational>> = basis
            .iter()
            .map(|a| basis.iter().map(|b| (a * b).trace()).collect())
            .collect();
        if invert(&gram).is_none() {
            return Err(Error::InvalidParameter("trace form is singular".into()));
        }
        // columns are the radical coordinates of the basis elements
        let n = basis.len();
        let columns: Vec<Vec<BigRational>> = basis.iter().map(Element::coordinates).collect();
        let matrix: Vec<Vec<BigRational>> = (0..n)
            .map(|row| (0..n).map(|col| columns[col][row].clone()).collect())
            .collect();
        let inverse = invert(&matrix)
            .ok_or_else(|| Error::InvalidParameter("basis is linearly dependent".into()))?;
        Ok(Self {
            field: field.clone(),
            basis,
            inverse,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    /// `Σ cⱼ·bⱼ`.
    pub fn element(&self, coords: &[BigInt]) -> Element {
        coords
            .iter()
            .zip(&self.basis)
            .fold(Element::zero(&self.field), |acc, (c, b)| {
                &acc + &b.scale(&BigRational::from_integer(c.clone()))
            })
    }

    /// Coordinates over the basis, or `None` when `x` is outside the order.
    pub fn coordinates_of(&self, x: &Element) -> Option<Vec<BigInt>> {
        let radical = x.coerce(&self.field).ok()?.coordinates();
        self.inverse
            .iter()
            .map(|row| {
                let c: BigRational = row.iter().zip(&radical).map(|(a, b)| a * b).sum();
                c.is_integer().then(|| c.to_integer())
            })
            .collect()
    }
}

fn invert(matrix: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<BigRational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for v in aug[col].iter_mut() {
            *v /= &p;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for k in 0..2 * n {
                    let delta = &factor * &aug[col][k];
                    aug[r][k] -= delta;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// The radical order `Z[√p₁,…,√pₙ]`, or with `maximal` set and a single
/// prime `p ≡ 1 (mod 4)`, the full ring of integers `Z[(1+√p)/2]`.
/// `maximal` is a no-op for `Q` and for a single prime `p ≢ 1 (mod 4)`,
/// whose radical order is already maximal.
pub fn default_order(field: &FieldSpec, maximal: bool) -> Result<OrderBasis> {
    if field.is_imaginary() {
        return Err(Error::ImaginaryField(field.to_string()));
    }
    let radical: Vec<Element> = field
        .labels()
        .into_iter()
        .map(|l| Element::basis(field, l))
        .collect::<Result<_>>()?;
    if !maximal {
        return OrderBasis::new(field, radical);
    }
    match field.primes() {
        [] => OrderBasis::new(field, radical),
        [p] if p % 4 == 1 => {
            let half = BigRational::new(1.into(), 2.into());
            let omega = (&radical[0] + &radical[1]).scale(&half);
            OrderBasis::new(field, vec![radical[0].clone(), omega])
        }
        [_] => OrderBasis::new(field, radical),
        _ => Err(Error::InvalidParameter(format!(
            "no maximal order basis is known for {field}"
        ))),
    }
}

/// The set `{x ∈ O : lower ≪ x ≪ upper}` to enumerate.
#[derive(Clone, Debug)]
pub struct BoxQuery {
    order: OrderBasis,
    lower: BigRational,
    upper: BigRational,
}

impl BoxQuery {
    pub fn new(order: OrderBasis, lower: BigRational, upper: BigRational) -> Result<Self> {
        if lower >= upper {
            return Err(Error::InvalidParameter(format!(
                "empty range ({lower}, {upper})"
            )));
        }
        Ok(Self {
            order,
            lower,
            upper,
        })
    }

    /// `0 ≪ x ≪ t`.
    pub fn up_to(order: OrderBasis, t: BigRational) -> Result<Self> {
        Self::new(order, BigRational::zero(), t)
    }

    pub fn order(&self) -> &OrderBasis {
        &self.order
    }

    pub fn lower(&self) -> &BigRational {
        &self.lower
    }

    pub fn upper(&self) -> &BigRational {
        &self.upper
    }
}

/// Whether every conjugate of `x` is real and lies strictly inside
/// `(lower, upper)`.
pub fn is_totally_between(x: &Element, lower: &BigRational, upper: &BigRational) -> bool {
    x.field().sign_vectors().iter().all(|s| {
        let image = x.conjugate(s).expect("own sign vector");
        if image.has_imaginary_part() {
            return false;
        }
        if let Some(q) = image.as_rational() {
            return &q > lower && &q < upper;
        }
        // irrational, so it never meets a rational endpoint and refinement
        // terminates
        let identity = SignVector::identity(image.field());
        let mut bits = 32;
        loop {
            let iv = image.embed(&identity, bits).expect("own sign vector").re;
            if iv.lo() > lower && iv.hi() < upper {
                return true;
            }
            if iv.hi() <= lower || iv.lo() >= upper {
                return false;
            }
            bits *= 2;
        }
    })
}

// Floating conjugates of the basis: row s, column j is s(bⱼ).
fn float_conjugates(order: &OrderBasis) -> Vec<Vec<f64>> {
    order
        .field
        .sign_vectors()
        .iter()
        .map(|s| {
            order
                .basis
                .iter()
                .map(|b| b.embed(s, 64).expect("own sign vector").re.midpoint_f64())
                .collect()
        })
        .collect()
}

const PREFILTER_MARGIN: f64 = 1e-6;

struct Scanner<'a> {
    query: &'a BoxQuery,
    table: Vec<Vec<f64>>,
    lo: f64,
    hi: f64,
}

impl<'a> Scanner<'a> {
    fn new(query: &'a BoxQuery) -> Self {
        Self {
            table: float_conjugates(&query.order),
            lo: query.lower.to_f64().unwrap_or(f64::NEG_INFINITY) - PREFILTER_MARGIN,
            hi: query.upper.to_f64().unwrap_or(f64::INFINITY) + PREFILTER_MARGIN,
            query,
        }
    }

    // every coordinate vector in the product of ranges, in lexicographic
    // order, that passes the exact test
    fn scan(&self, ranges: &[(i64, i64)]) -> Vec<Element> {
        let mut out = Vec::new();
        if ranges.iter().any(|(a, b)| a > b) {
            return out;
        }
        let mut coords: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        loop {
            let plausible = self.table.iter().all(|row| {
                let v: f64 = row.iter().zip(&coords).map(|(f, &c)| f * c as f64).sum();
                v > self.lo && v < self.hi
            });
            if plausible {
                let big: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
                let x = self.query.order.element(&big);
                if is_totally_between(&x, &self.query.lower, &self.query.upper) {
                    out.push(x);
                }
            }
            let mut k = coords.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if coords[k] < ranges[k].1 {
                    coords[k] += 1;
                    break;
                }
                coords[k] = ranges[k].0;
            }
        }
    }
}

/// Every order element with all conjugates strictly in the query range.
///
/// The conjugates are `Σ_m ±r_m√m` over the radical coordinates `r_m`, so
/// averaging against characters bounds `r_1` by the range itself and every
/// other `|r_m|` by `(upper − lower)/(2√m)`. Those boxes are mapped through
/// the inverse basis matrix to integer ranges for the basis coordinates,
/// scanned, and filtered exactly.
pub fn totally_bounded_box(q: &BoxQuery) -> Vec<Element> {
    let labels = q.order.field.labels();
    let width = &q.upper - &q.lower;
    let radical_box: Vec<(BigRational, BigRational)> = labels
        .iter()
        .map(|l| {
            if l.radicand == 1 {
                (q.lower.clone(), q.upper.clone())
            } else {
                let r = &width / BigInt::from(2 * l.radicand.sqrt());
                (-r.clone(), r)
            }
        })
        .collect();
    let ranges: Vec<(i64, i64)> = q
        .order
        .inverse
        .iter()
        .map(|row| {
            let (mut lo, mut hi) = (BigRational::zero(), BigRational::zero());
            for (a, (l, u)) in row.iter().zip(&radical_box) {
                let (x, y) = (a * l, a * u);
                if x <= y {
                    lo += x;
                    hi += y;
                } else {
                    lo += y;
                    hi += x;
                }
            }
            (to_i64(lo.ceil()), to_i64(hi.floor()))
        })
        .collect();
    Scanner::new(q).scan(&ranges)
}

fn to_i64(q: BigRational) -> i64 {
    q.to_integer()
        .to_i64()
        .expect("coordinate bound fits in i64")
}

/// The same set by brute force: every basis coordinate vector with entries
/// in `[-radius, radius]`, filtered. A floating prefilter with a wide
/// margin discards hopeless vectors before the exact test.
pub fn naive_box_scan(q: &BoxQuery, radius: u64) -> Vec<Element> {
    let r = radius as i64;
    let ranges = vec![(-r, r); q.order.basis.len()];
    Scanner::new(q).scan(&ranges)
}

/// `⌈t·degree⌉` for `t = max(|lower|, |upper|)`: every element of the box
/// has basis coordinates of at most this size when the basis is radical.
pub fn naive_radius(q: &BoxQuery) -> u64 {
    let t = q.lower.abs().max(q.upper.abs());
    (t * BigInt::from(q.order.field.degree()))
        .ceil()
        .to_integer()
        .to_u64()
        .expect("radius fits in u64")
}

/// Whether every Galois conjugate of every member is again a member.
pub fn is_galois_closed(set: &[Element]) -> bool {
    let members: HashSet<&Element> = set.iter().collect();
    set.iter().all(|x| {
        x.field()
            .sign_vectors()
            .iter()
            .all(|s| members.contains(&x.conjugate(s).expect("own sign vector")))
    })
}

/// A member of the family together with its four-squares witnesses
/// `px = Σ aᵢ²` and `q − px = Σ bᵢ²`, all `aᵢ, bᵢ` in the `W` domain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyMember {
    pub x: Element,
    pub px: u64,
    pub px_squares: [u64; 4],
    pub complement_squares: [u64; 4],
}

/// The natural numbers `0..=⌊√q⌋` that carry a verified `W` certificate.
#[derive(Clone, Debug)]
pub struct WDomain {
    pub n: u64,
    pub members: Vec<u64>,
    pub certificates: Vec<WitnessChain>,
}

impl WDomain {
    /// The members as elements of `Q`, in ascending order.
    pub fn elements(&self) -> Vec<Element> {
        let q = FieldSpec::rationals();
        self.members
            .iter()
            .map(|&w| Element::from_integer(&q, w))
            .collect()
    }
}

/// Certifies `0..=⌊√q⌋` for `W`. Squares of these are all that a four-square
/// witness for a number at most `q` can use.
pub fn family_w_domain(q: u64, n: u64) -> Result<WDomain> {
    let mut members = Vec::new();
    let mut certificates = Vec::new();
    for w in 0..=q.sqrt() {
        if let Some(chain) = w_member_default(w, n)? {
            members.push(w);
            certificates.push(chain);
        }
    }
    Ok(WDomain {
        n,
        members,
        certificates,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilySet {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub w_domain: Vec<u64>,
    pub members: Vec<FamilyMember>,
}

fn squares_from(value: u64, domain: &[u64]) -> Option<[u64; 4]> {
    let quick = four_squares(value);
    if quick.iter().all(|a| domain.contains(a)) {
        return Some(quick);
    }
    let allowed: Vec<u64> = domain
        .iter()
        .rev()
        .copied()
        .filter(|a| a * a <= value)
        .collect();
    for (i, &a) in allowed.iter().enumerate() {
        for (j, &b) in allowed.iter().enumerate().skip(i) {
            for (k, &c) in allowed.iter().enumerate().skip(j) {
                let used = a * a + b * b + c * c;
                if used > value {
                    continue;
                }
                let rest = value - used;
                if let Some(&d) = allowed[k..].iter().find(|&&d| d * d == rest) {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

/// The members `x` of `pool` with `px ∉ {0, q}` such that both `px` and
/// `q − px` are sums of four squares of certified elements of `W`. Each
/// member is also checked to satisfy `0 ≪ px ≪ q`.
pub fn family_set(p: u64, q: u64, n: u64, pool: &[Element]) -> Result<FamilySet> {
    let domain = family_w_domain(q, n)?;
    family_set_with_domain(p, q, &domain, pool)
}

/// [`family_set`] over an already certified `W` domain.
pub fn family_set_with_domain(
    p: u64,
    q: u64,
    domain: &WDomain,
    pool: &[Element],
) -> Result<FamilySet> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidParameter("p and q must be positive".into()));
    }
    let rationals = FieldSpec::rationals();
    let p_elem = Element::from_integer(&rationals, p);
    let bound = BigRational::from_integer(q.into());
    let mut cache: HashMap<u64, Option<[u64; 4]>> = HashMap::new();
    let mut members = Vec::new();
    for x in pool {
        let px_elem = x.try_mul(&p_elem)?;
        let px = match px_elem.as_integer().and_then(|v| v.to_u64()) {
            Some(v) if v != 0 && v < q => v,
            _ => continue,
        };
        let mut witness = |v: u64| {
            *cache
                .entry(v)
                .or_insert_with(|| squares_from(v, &domain.members))
        };
        let (Some(px_squares), Some(complement_squares)) = (witness(px), witness(q - px)) else {
            continue;
        };
        if !is_totally_between(&px_elem, &BigRational::zero(), &bound) {
            continue;
        }
        members.push(FamilyMember {
            x: x.clone(),
            px,
            px_squares,
            complement_squares,
        });
    }
    Ok(FamilySet {
        p,
        q,
        n: domain.n,
        w_domain: domain.members.clone(),
        members,
    })
}

/// Sort key that orders elements by their coordinates.
pub fn coordinate_order(a: &Element, b: &Element) -> Ordering {
    a.coordinates().cmp(&b.coordinates())
}
