use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Dense polynomial over `Z`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntPolynomial {
    #[serde(serialize_with = "crate::field::serde_impl::decimals")]
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn from_i64s(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coefficients = vec![BigInt::zero(); k + 1];
        coefficients[k] = BigInt::one();
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.coefficients.last().cloned().unwrap_or_default()
    }

    /// The value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.coefficients.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.coefficients[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coefficients.len().max(other.coefficients.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coefficients.len().max(other.coefficients.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn scale(&self, factor: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coefficients.iter().map(|c| c * factor).collect())
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        (0..e).fold(IntPolynomial::constant(1), |acc, _| acc.mul(self))
    }

    fn coeff(&self, k: usize) -> BigInt {
        self.coefficients.get(k).cloned().unwrap_or_default()
    }

    /// `f(x + k)`, by Horner's rule in the shifted variable.
    pub fn shift(&self, k: &BigInt) -> IntPolynomial {
        let x_plus_k = IntPolynomial::new(vec![k.clone(), BigInt::one()]);
        self.coefficients
            .iter()
            .rev()
            .fold(IntPolynomial::zero(), |acc, c| {
                acc.mul(&x_plus_k).add(&IntPolynomial::constant(c.clone()))
            })
    }

    /// Forward difference `f(x + k) − f(x)`.
    pub fn delta(&self, k: &BigInt) -> IntPolynomial {
        self.shift(k).sub(self)
    }

    /// `n`-fold forward difference with step `k`.
    pub fn delta_iter(&self, k: &BigInt, n: usize) -> IntPolynomial {
        (0..n).fold(self.clone(), |acc, _| acc.delta(k))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let magnitude = c.abs();
            if k == 0 || !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// `f(x) = (x + √(x²+1))^{2N} + (x − √(x²+1))^{2N}` as an integer
/// polynomial. Odd powers of the radical cancel, leaving
/// `2·Σ_{i=0}^{N} C(2N, 2i)·x^{2N−2i}·(x²+1)^i`.
pub fn poly_f(n: u64) -> IntPolynomial {
    let radicand = IntPolynomial::from_i64s(&[1, 0, 1]);
    let two_n = 2 * n;
    let mut acc = IntPolynomial::zero();
    for i in 0..=n {
        let term = IntPolynomial::monomial((two_n - 2 * i) as usize)
            .mul(&radicand.pow(i as u32))
            .scale(&binomial(two_n, 2 * i));
        acc = acc.add(&term);
    }
    acc.scale(&BigInt::from(2))
}

/// `(2N)!·2^{2N}`: the value of `Δ_k^{2N} f` at `k = 1`, from the
/// leading-coefficient identity `Δ_k^n g = n!·a_n·k^n`.
pub fn leading_constant(n: u64) -> BigInt {
    factorial(2 * n) << (2 * n) as usize
}

/// `2·(2N)!`, an alternative normalization kept for comparison runs.
pub fn alternative_constant(n: u64) -> BigInt {
    factorial(2 * n) * BigInt::from(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_small_cases() {
        assert_eq!(poly_f(1), IntPolynomial::from_i64s(&[2, 0, 4]));
        assert_eq!(poly_f(2), IntPolynomial::from_i64s(&[2, 0, 16, 0, 16]));
        assert_eq!(poly_f(1).to_string(), "4x^2 + 2");
    }

    #[test]
    fn difference_examples() {
        let x = IntPolynomial::from_i64s(&[0, 1]);
        assert_eq!(x.delta(&3.into()), IntPolynomial::constant(3));
        assert_eq!(
            poly_f(1).delta_iter(&2.into(), 2),
            IntPolynomial::constant(32)
        );
        let cube = IntPolynomial::monomial(3);
        assert_eq!(cube.delta_iter(&1.into(), 3), IntPolynomial::constant(6));
        assert_eq!(cube.delta_iter(&1.into(), 4), IntPolynomial::zero());
    }

    #[test]
    fn constants() {
        assert_eq!(leading_constant(1), BigInt::from(8));
        assert_eq!(alternative_constant(1), BigInt::from(4));
        assert_eq!(leading_constant(2), BigInt::from(24 * 16));
    }

    #[test]
    fn shift_matches_evaluation() {
        let f = poly_f(3);
        let k = BigInt::from(5);
        let shifted = f.shift(&k);
        for x in -4i64..4 {
            let x = BigInt::from(x);
            assert_eq!(shifted.eval(&x), f.eval(&(&x + &k)));
        }
    }
}
