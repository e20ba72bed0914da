use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::Error;

/// Label `iᵃ·√m` of a radical basis element (`m` squarefree).
///
/// Field order matters for the derived `Ord`: real labels sort before
/// imaginary ones, then by radicand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    pub with_i: bool,
    pub radicand: u64,
}

impl BasisLabel {
    pub const ONE: BasisLabel = BasisLabel {
        with_i: false,
        radicand: 1,
    };

    pub fn real(radicand: u64) -> Self {
        Self {
            with_i: false,
            radicand,
        }
    }

    pub fn imaginary(radicand: u64) -> Self {
        Self {
            with_i: true,
            radicand,
        }
    }

    /// Product of two basis elements: `(scale, label)` with
    /// `self·other = scale·label`.
    pub fn mul(self, other: BasisLabel) -> (i64, BasisLabel) {
        let g = self.radicand.gcd(&other.radicand);
        let radicand = (self.radicand / g) * (other.radicand / g);
        let mut scale = g as i64;
        if self.with_i && other.with_i {
            scale = -scale;
        }
        (
            scale,
            BasisLabel {
                with_i: self.with_i ^ other.with_i,
                radicand,
            },
        )
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.with_i {
            write!(f, "i*{}", self.radicand)
        } else {
            write!(f, "{}", self.radicand)
        }
    }
}

impl FromStr for BasisLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidLabel(s.to_string());
        let (with_i, digits) = match s.strip_prefix("i*") {
            Some(rest) => (true, rest),
            None if s == "i" => (true, "1"),
            None => (false, s),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let radicand: u64 = digits.parse().map_err(|_| bad())?;
        if radicand == 0 || super::square_split(radicand).0 != 1 {
            return Err(bad());
        }
        Ok(BasisLabel { with_i, radicand })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_reduce_radicands() {
        assert_eq!(
            BasisLabel::real(2).mul(BasisLabel::real(2)),
            (2, BasisLabel::ONE)
        );
        assert_eq!(
            BasisLabel::real(2).mul(BasisLabel::real(3)),
            (1, BasisLabel::real(6))
        );
        assert_eq!(
            BasisLabel::real(6).mul(BasisLabel::real(10)),
            (2, BasisLabel::real(15))
        );
        assert_eq!(
            BasisLabel::imaginary(2).mul(BasisLabel::imaginary(3)),
            (-1, BasisLabel::real(6))
        );
    }

    #[test]
    fn parse_and_display() {
        for s in ["1", "6", "i*2", "i*1"] {
            assert_eq!(s.parse::<BasisLabel>().unwrap().to_string(), s);
        }
        assert_eq!("i".parse::<BasisLabel>().unwrap(), BasisLabel::imaginary(1));
        for bad in ["", "4", "i*", "x", "0", "-3"] {
            assert!(bad.parse::<BasisLabel>().is_err(), "{bad}");
        }
    }
}
