//! Serde adapters keeping JSON exact: rationals as `"p/q"` strings, integers
//! as JSON numbers when they fit in `i64` and as digit strings otherwise.

use num_traits::ToPrimitive;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, Int, Rational};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Num(i64),
    Str(String),
}

fn int_to_repr(v: &Int) -> IntRepr {
    match v.to_i64() {
        Some(x) => IntRepr::Num(x),
        None => IntRepr::Str(v.to_string()),
    }
}

fn repr_to_int<E: de::Error>(r: IntRepr) -> Result<Int, E> {
    match r {
        IntRepr::Num(x) => Ok(Int::from(x)),
        IntRepr::Str(s) => s.trim().parse().map_err(|_| E::custom(format!("malformed integer {s:?}"))),
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Num(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => parse_rational(&s).map_err(de::Error::custom),
            Raw::Num(n) => Ok(Rational::from_integer(Int::from(n))),
        }
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(format_rational).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| parse_rational(s).map_err(de::Error::custom))
            .collect()
    }
}

pub mod integer {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
        int_to_repr(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        repr_to_int(IntRepr::deserialize(d)?)
    }
}

pub mod int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<IntRepr> = v.iter().map(int_to_repr).collect();
        reprs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        Vec::<IntRepr>::deserialize(d)?.into_iter().map(repr_to_int).collect()
    }
}

pub mod int_vec_list {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Int>], s: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<Vec<IntRepr>> = v.iter().map(|r| r.iter().map(int_to_repr).collect()).collect();
        reprs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Int>>, D::Error> {
        Vec::<Vec<IntRepr>>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_iter().map(repr_to_int).collect())
            .collect()
    }
}

pub mod rational_vec_list {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(format_rational).collect()).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s).map_err(de::Error::custom)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Sample {
        #[serde(with = "rational")]
        level: Rational,
        #[serde(with = "int_vec")]
        normal: Vec<Int>,
    }

    #[test]
    fn exact_json_forms() {
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        let s = Sample { level: rat(-3, 4), normal: vec![Int::from(2), big.clone()] };
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"level":"-3/4","normal":[2,"123456789012345678901234567890"]}"#);
        let back: Sample = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let plain: Sample = serde_json::from_str(r#"{"level":"5","normal":[1,0]}"#).unwrap();
        assert_eq!(plain.level, rat(5, 1));
        assert!(serde_json::from_str::<Sample>(r#"{"level":"1/0","normal":[1]}"#).is_err());
    }
}
