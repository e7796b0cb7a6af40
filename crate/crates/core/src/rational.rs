//! Exact rationals for toughness ratios and proof thresholds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::Error;

/// A rational number in lowest terms with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn from_int(v: i64) -> Self {
        Rational(Ratio::from_integer(v))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    /// `coeff · n`, e.g. `Rational::new(3, 16).of(n)` for `3n/16`.
    pub fn of(self, n: usize) -> Rational {
        self * Rational::from_int(n as i64)
    }

    /// Compares `a / b` against `self` without division; `b > 0`.
    pub fn cmp_ratio(self, a: usize, b: usize) -> Ordering {
        debug_assert!(b > 0);
        let lhs = a as i128 * self.denom() as i128;
        let rhs = self.numer() as i128 * b as i128;
        lhs.cmp(&rhs)
    }

    pub fn floor(self) -> i64 {
        self.0.floor().to_integer()
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

impl From<usize> for Rational {
    fn from(v: usize) -> Self {
        Rational::from_int(v as i64)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Self) -> Self {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Self) -> Self {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Self) -> Self {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Self {
        Rational(-self.0)
    }
}

/// Always `p/q`, including `q = 1`.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p/q` or a bare integer.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidArgument(format!("not a rational: `{s}`"));
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(Rational::new(p, q))
            }
            None => Ok(Rational::from_int(s.parse().map_err(|_| bad())?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lowest_terms_and_display() {
        let r = Rational::new(2, 4);
        assert_eq!((r.numer(), r.denom()), (1, 2));
        assert_eq!(Rational::new(3, -6).to_string(), "-1/2");
        assert_eq!(Rational::ONE.to_string(), "1/1");
        assert_eq!("9/8".parse::<Rational>().unwrap(), Rational::new(9, 8));
        assert_eq!("4".parse::<Rational>().unwrap(), Rational::from_int(4));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(Rational::new(9, 32).of(32), Rational::from_int(9));
        assert_eq!(Rational::new(3, 16).of(100).floor(), 18);
        assert_eq!(Rational::new(1, 2).cmp_ratio(2, 4), Ordering::Equal);
        assert_eq!(Rational::new(9, 8).cmp_ratio(2, 2), Ordering::Less);
    }

    proptest! {
        #[test]
        fn order_matches_cross_multiplication(a in -1000i64..1000, b in 1i64..1000,
                                              c in -1000i64..1000, d in 1i64..1000) {
            let x = Rational::new(a, b);
            let y = Rational::new(c, d);
            prop_assert_eq!(x.cmp(&y), (a * d).cmp(&(c * b)));
        }
    }
}
