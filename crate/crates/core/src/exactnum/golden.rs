use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{rat, Rational};

/// An element `a + b·φ` of the ring obtained by adjoining the golden ratio
/// `φ = (1 + √5)/2` (so `φ² = φ + 1`) to the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Golden {
    pub a: Rational,
    pub b: Rational,
}

impl Golden {
    pub fn new(a: Rational, b: Rational) -> Self {
        Golden { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        Golden { a, b: Rational::zero() }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Golden { a: rat(a, 1), b: rat(b, 1) }
    }

    pub fn phi() -> Self {
        Golden::from_ints(0, 1)
    }

    /// `1/φ = φ − 1`.
    pub fn phi_inv() -> Self {
        Golden::from_ints(-1, 1)
    }

    pub fn zero() -> Self {
        Golden::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Golden::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugate `a + bφ ↦ (a + b) − bφ` (sends `√5` to `−√5`).
    pub fn conj(&self) -> Self {
        Golden { a: &self.a + &self.b, b: -&self.b }
    }

    /// Field norm `(a + bφ)(a + bφ)' = a² + ab − b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Golden { a: &self.a * r, b: &self.b * r }
    }

    /// Exact sign of the real number `a + bφ`.
    ///
    /// Writing the value as `x + y√5` with `x = a + b/2`, `y = b/2`, the sign
    /// is decided by comparing `x²` with `5y²` when `x` and `y` disagree.
    pub fn signum(&self) -> i32 {
        let half = rat(1, 2);
        let x = &self.a + &self.b * &half;
        let y = &self.b * &half;
        let sx = sign_of(&x);
        let sy = sign_of(&y);
        if sy == 0 {
            return sx;
        }
        if sx == 0 || sx == sy {
            return sy;
        }
        let lhs = &x * &x;
        let rhs = &y * &y * rat(5, 1);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sx,
            Ordering::Less => sy,
            Ordering::Equal => 0,
        }
    }
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl Add for &Golden {
    type Output = Golden;
    fn add(self, rhs: &Golden) -> Golden {
        Golden { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Add for Golden {
    type Output = Golden;
    fn add(self, rhs: Golden) -> Golden {
        &self + &rhs
    }
}

impl Sub for &Golden {
    type Output = Golden;
    fn sub(self, rhs: &Golden) -> Golden {
        Golden { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Sub for Golden {
    type Output = Golden;
    fn sub(self, rhs: Golden) -> Golden {
        &self - &rhs
    }
}

impl Neg for &Golden {
    type Output = Golden;
    fn neg(self) -> Golden {
        Golden { a: -&self.a, b: -&self.b }
    }
}

impl Neg for Golden {
    type Output = Golden;
    fn neg(self) -> Golden {
        -&self
    }
}

impl Mul for &Golden {
    type Output = Golden;
    // (a + bφ)(c + dφ) = (ac + bd) + (ad + bc + bd)φ
    fn mul(self, rhs: &Golden) -> Golden {
        let bd = &self.b * &rhs.b;
        Golden {
            a: &self.a * &rhs.a + &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a + bd,
        }
    }
}

impl Mul for Golden {
    type Output = Golden;
    fn mul(self, rhs: Golden) -> Golden {
        &self * &rhs
    }
}

impl PartialOrd for Golden {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Golden {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl fmt::Display for Golden {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            if self.b.is_one() {
                write!(f, "φ")
            } else {
                write!(f, "{}φ", self.b)
            }
        } else {
            write!(f, "{} + {}φ", self.a, self.b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(a: (i64, i64), b: (i64, i64)) -> Golden {
        Golden::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn phi_squared_is_phi_plus_one() {
        let phi = Golden::phi();
        assert_eq!(&phi * &phi, &phi + &Golden::one());
        assert_eq!(&phi * &Golden::phi_inv(), Golden::one());
    }

    #[test]
    fn signs() {
        assert_eq!(Golden::phi().signum(), 1);
        assert_eq!(Golden::from_ints(2, -1).signum(), 1); // 2 - φ ≈ 0.38
        assert_eq!(Golden::from_ints(1, -1).signum(), -1); // 1 - φ ≈ -0.62
        assert_eq!(Golden::from_ints(-1, 1).signum(), 1);
        assert_eq!(Golden::zero().signum(), 0);
        // φ/2 < 1 but above 4/5
        let half_phi = Golden::phi().scale(&rat(1, 2));
        assert!(half_phi < Golden::one());
        assert!(half_phi > Golden::rational(rat(4, 5)));
    }

    proptest! {
        #[test]
        fn product_expansion_and_norm(a in -20i64..20, b in -20i64..20, c in -20i64..20, d in -20i64..20,
                                       p in 1i64..5, q in 1i64..5) {
            let x = g((a, p), (b, q));
            let y = g((c, q), (d, p));
            let prod = &x * &y;
            let (ra, rb, rc, rd) = (rat(a, p), rat(b, q), rat(c, q), rat(d, p));
            prop_assert_eq!(&prod.a, &(&ra * &rc + &rb * &rd));
            prop_assert_eq!(&prod.b, &(&ra * &rd + &rb * &rc + &rb * &rd));
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            prop_assert_eq!(x.conj().conj(), x.clone());
            let n = &x * &x.conj();
            prop_assert!(n.b.is_zero());
            prop_assert_eq!(n.a, x.norm());
            prop_assert_eq!(x.norm(), &ra * &ra + &ra * &rb - &rb * &rb);
        }

        #[test]
        fn ordering_is_consistent_with_addition(a in -30i64..30, b in -30i64..30, c in -30i64..30, d in -30i64..30) {
            let x = Golden::from_ints(a, b);
            let y = Golden::from_ints(c, d);
            let shift = Golden::from_ints(3, -7);
            prop_assert_eq!(x.cmp(&y), (&x + &shift).cmp(&(&y + &shift)));
            prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
        }
    }
}
