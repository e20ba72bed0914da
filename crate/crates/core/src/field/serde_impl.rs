//! JSON encoding of fields and elements.
//!
//! ```json
//! {"field":{"primes":[2,3],"i":true},"coeffs":{"1":"3/1","i*2":"-1/2"}}
//! ```
//!
//! Coefficients are always written as `num/den` in lowest terms, labels in
//! canonical order, so a canonical document round-trips byte for byte.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BasisLabel, Element, FieldSpec};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    primes: Vec<u64>,
    i: bool,
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FieldRepr {
            primes: self.primes().to_vec(),
            i: self.is_imaginary(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = FieldRepr::deserialize(deserializer)?;
        FieldSpec::new(&repr.primes, repr.i).map_err(D::Error::custom)
    }
}

struct Coeffs<'a>(&'a Element);

impl Serialize for Coeffs<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        for (label, c) in self.0.coeffs() {
            map.serialize_entry(&label.to_string(), &format!("{}/{}", c.numer(), c.denom()))?;
        }
        map.end()
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("field", self.field())?;
        map.serialize_entry("coeffs", &Coeffs(self))?;
        map.end()
    }
}

#[derive(Deserialize)]
struct ElementRepr {
    field: FieldSpec,
    coeffs: BTreeMap<String, String>,
}

/// Writes a `BigInt` as a decimal string.
pub(crate) fn decimal<S: Serializer>(n: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&n.to_string())
}

pub(crate) fn decimals<S: Serializer>(ns: &[BigInt], serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_seq(ns.iter().map(BigInt::to_string))
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Encoding(format!("bad rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(repr.coeffs.len());
        for (label, value) in &repr.coeffs {
            let label: BasisLabel = label.parse().map_err(D::Error::custom)?;
            coeffs.push((label, parse_rational(value).map_err(D::Error::custom)?));
        }
        Element::from_coeffs(&repr.field, coeffs).map_err(D::Error::custom)
    }
}

impl Element {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("element serializes")
    }

    pub fn from_json(s: &str) -> Result<Element> {
        serde_json::from_str(s).map_err(|e| Error::Encoding(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use proptest::prelude::*;

    #[test]
    fn canonical_document_round_trips() {
        let doc =
            r#"{"field":{"primes":[2,3],"i":true},"coeffs":{"1":"3/1","6":"1/2","i*2":"-1/2"}}"#;
        let x = Element::from_json(doc).unwrap();
        assert_eq!(x.to_json(), doc);
    }

    #[test]
    fn rejects_foreign_labels() {
        let doc = r#"{"field":{"primes":[2],"i":false},"coeffs":{"3":"1/1"}}"#;
        assert!(Element::from_json(doc).is_err());
        let doc = r#"{"field":{"primes":[2],"i":false},"coeffs":{"i*1":"1/1"}}"#;
        assert!(Element::from_json(doc).is_err());
        let doc = r#"{"field":{"primes":[4],"i":false},"coeffs":{}}"#;
        assert!(Element::from_json(doc).is_err());
    }

    proptest! {
        #[test]
        fn json_round_trip(coords in prop::collection::vec((-50i64..50, 1i64..9), 8)) {
            let field = make_field(&[2, 3], true).unwrap();
            let coords: Vec<BigRational> = coords
                .into_iter()
                .map(|(n, d)| BigRational::new(n.into(), d.into()))
                .collect();
            let x = Element::from_coordinates(&field, &coords);
            let text = x.to_json();
            let back = Element::from_json(&text).unwrap();
            prop_assert_eq!(&back, &x);
            prop_assert_eq!(back.to_json(), text);
        }
    }
}
