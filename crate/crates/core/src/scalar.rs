//! Ambient scalars: the field Q(√3), elements `a + b·√3` with rational `a, b`.
//!
//! Every classical realization lives in the rational subfield (`b = 0`); the
//! planar G2 realization needs the square root.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::Rational;

/// An element `a + b·√3` of Q(√3).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    /// Rational part.
    pub a: Rational,
    /// Coefficient of √3.
    pub b: Rational,
}

impl Scalar {
    /// The rational number `a`.
    pub fn rational(a: Rational) -> Self {
        Scalar { a, b: Rational::zero() }
    }

    /// The integer `n`.
    pub fn int(n: i64) -> Self {
        Scalar::rational(Rational::from_int(n))
    }

    /// `a + b·√3`.
    pub fn new(a: Rational, b: Rational) -> Self {
        Scalar { a, b }
    }

    /// Zero.
    pub fn zero() -> Self {
        Scalar::int(0)
    }

    /// One.
    pub fn one() -> Self {
        Scalar::int(1)
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The value as a rational if the √3 part vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Exact sign of the real number `a + b·√3`.
    pub fn signum(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² with 3b².
        let a2 = &self.a * &self.a;
        let b2 = &(&self.b * &self.b) * &Rational::from_int(3);
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        // (a + b√3)^{-1} = (a − b√3) / (a² − 3b²); the norm is nonzero since √3 ∉ Q.
        let norm = &(&self.a * &self.a) - &(&(&self.b * &self.b) * &Rational::from_int(3));
        assert!(!norm.is_zero(), "inverse of zero");
        Scalar::new(&self.a / &norm, &(-&self.b) / &norm)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        let three = Rational::from_int(3);
        Scalar::new(
            &(&self.a * &o.a) + &(&three * &(&self.b * &o.b)),
            &(&self.a * &o.b) + &(&self.b * &o.a),
        )
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.recip()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.a, -&self.b)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt3", self.b)
        } else if self.b.signum() > 0 {
            write!(f, "{}+{}*sqrt3", self.a, self.b)
        } else {
            write!(f, "{}{}*sqrt3", self.a, self.b)
        }
    }
}

/// Inner product of two ambient vectors.
pub fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter().zip(v).fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y))
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::int(0)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::int(1)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_of_mixed_values() {
        // 2 − √3 > 0, 1 − √3 < 0, −2 + √3 < 0.
        assert_eq!(Scalar::new(Rational::from_int(2), Rational::from_int(-1)).signum(), 1);
        assert_eq!(Scalar::new(Rational::from_int(1), Rational::from_int(-1)).signum(), -1);
        assert_eq!(Scalar::new(Rational::from_int(-2), Rational::from_int(1)).signum(), -1);
    }

    #[test]
    fn inverse_is_exact() {
        let x = Scalar::new(Rational::new(-3, 2), Rational::new(1, 2));
        assert_eq!(&x * &x.recip(), Scalar::one());
    }
}
