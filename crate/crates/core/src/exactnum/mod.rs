//! Exact arithmetic kernel.
//!
//! Everything downstream is computed over arbitrary-precision integers and
//! rationals; there is no floating point anywhere in the crate. Rationals are
//! `num_rational::BigRational`, which keeps values reduced with a positive
//! denominator, so structural equality is canonical-form equality.

mod golden;
pub mod json;
pub mod linalg;
mod matrix;

pub use golden::Golden;
pub use matrix::{
    hermite_normal_form, smith_normal_form, solve_integer, HermiteDecomposition, LatticeMatrix,
    SmithDecomposition,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;

/// Integer vector.
pub type IntVec = Vec<Int>;
/// Rational vector.
pub type RatVec = Vec<Rational>;

#[inline]
pub fn int(v: i64) -> Int {
    Int::from(v)
}

#[inline]
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(Int::from(numer), Int::from(denom))
}

#[inline]
pub fn rat_int(v: &Int) -> Rational {
    Rational::from_integer(v.clone())
}

pub fn ivec(v: &[i64]) -> IntVec {
    v.iter().copied().map(Int::from).collect()
}

pub fn rvec(v: &[i64]) -> RatVec {
    v.iter().map(|&x| Rational::from_integer(Int::from(x))).collect()
}

pub fn to_rat_vec(v: &[Int]) -> RatVec {
    v.iter().map(rat_int).collect()
}

/// Gcd of all entries (non-negative; zero for the zero vector).
pub fn gcd_all(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |acc, x| acc.gcd(x))
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(v: &[Int]) -> Result<IntVec> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Scales a nonzero rational vector to the primitive integer vector pointing
/// the same way.
pub fn primitive_from_rational(v: &[Rational]) -> Result<IntVec> {
    let lcm = v
        .iter()
        .fold(Int::from(1), |acc, x| acc.lcm(x.denom()));
    let scaled: IntVec = v.iter().map(|x| (x * rat_int(&lcm)).to_integer()).collect();
    primitive(&scaled)
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int_rat(a: &[Int], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + y * x)
}

pub fn dot_rat(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// `p/q`, or bare `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().map_err(|_| bad())?;
            let d: Int = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Always `p/q` with `q > 0`, so the string form is unambiguous in reports.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Compact display form: `p` for integers, `p/q` otherwise.
pub fn display_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format_rational(r)
    }
}

pub fn display_int_vec(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn display_rat_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(display_rational).collect();
    format!("({})", parts.join(","))
}

/// Lexicographic sign of the first nonzero entry.
pub fn leading_sign(v: &[Int]) -> i32 {
    for x in v {
        if x.is_positive() {
            return 1;
        }
        if x.is_negative() {
            return -1;
        }
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_divides_by_gcd() {
        assert_eq!(primitive(&ivec(&[2, 4, 6])).unwrap(), ivec(&[1, 2, 3]));
        assert_eq!(primitive(&ivec(&[1, 1, -1])).unwrap(), ivec(&[1, 1, -1]));
        assert_eq!(primitive(&ivec(&[-4, 0, 6])).unwrap(), ivec(&[-2, 0, 3]));
    }

    #[test]
    fn primitive_rejects_zero() {
        assert_eq!(primitive(&ivec(&[0, 0, 0])), Err(Error::ZeroVector));
        assert_eq!(primitive(&[]), Err(Error::ZeroVector));
    }

    #[test]
    fn primitive_from_rational_clears_denominators() {
        let v = vec![rat(1, 2), rat(-1, 3), rat(0, 1)];
        assert_eq!(primitive_from_rational(&v).unwrap(), ivec(&[3, -2, 0]));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational(" -2 ").unwrap(), rat(-2, 1));
        assert_eq!(parse_rational("1/-2").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(-3, 6)), "-1/2");
        assert_eq!(format_rational(&rat(2, 1)), "2/1");
        assert_eq!(display_rational(&rat(2, 1)), "2");
    }
}
