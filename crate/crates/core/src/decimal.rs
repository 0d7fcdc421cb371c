//! Serde adapters writing big integers as decimal strings, so JSON output
//! stays readable and loses no precision.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

fn parse<E: serde::de::Error>(s: &str) -> Result<BigInt, E> {
    BigInt::from_str(s).map_err(|_| E::custom(format!("not a decimal integer: {s:?}")))
}

pub mod big {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        parse(&String::deserialize(d)?)
    }
}

pub mod big_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|x| parse(x)).collect()
    }
}

/// `(p, m, dim)` triples with `dim` as a string.
pub mod triples {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[(u64, u64, BigInt)], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|(a, b, x)| (*a, *b, x.to_string())).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(u64, u64, BigInt)>, D::Error> {
        Vec::<(u64, u64, String)>::deserialize(d)?
            .into_iter()
            .map(|(a, b, x)| parse::<D::Error>(&x).map(|x| (a, b, x)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use crate::cayley::counts_row;
    use crate::molien::isotypic_dims;
    use crate::FiniteAbelianGroup;

    #[test]
    fn round_trips_through_json() {
        let row = counts_row(&FiniteAbelianGroup::cyclic(6).unwrap(), 8).unwrap();
        let text = serde_json::to_string(&row).unwrap();
        assert!(text.contains(r#""p":"80""#), "{text}");
        assert_eq!(serde_json::from_str::<crate::cayley::CountsRow>(&text).unwrap(), row);
        let dims = isotypic_dims(4, 1, 3).unwrap();
        let text = serde_json::to_string(&dims).unwrap();
        assert_eq!(serde_json::from_str::<crate::molien::IsotypicDims>(&text).unwrap(), dims);
        let bad = r#"{"group":"C1","p":"1x","d":"1","invariants":[],"cyclic_invariants":[]}"#;
        assert!(serde_json::from_str::<crate::cayley::CountsRow>(bad).is_err());
    }
}
