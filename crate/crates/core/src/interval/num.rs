//! Exact numbers `a + b·√2` with rational `a`, `b`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Num {
    a: BigRational,
    b: BigRational,
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `2^-n` as an exact rational.
pub(crate) fn pow2_inv(n: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << n as usize)
}

impl Num {
    pub fn new(a: BigRational, b: BigRational) -> Num {
        Num { a, b }
    }

    pub fn rational(a: BigRational) -> Num {
        Num {
            a,
            b: BigRational::zero(),
        }
    }

    /// `p/q`; panics when `q == 0`.
    pub fn frac(p: i64, q: i64) -> Num {
        Num::rational(ratio(p, q))
    }

    pub fn int(p: i64) -> Num {
        Num::frac(p, 1)
    }

    /// `a + b·√2` with `a = ap/aq`, `b = bp/bq`.
    pub fn surd(ap: i64, aq: i64, bp: i64, bq: i64) -> Num {
        Num {
            a: ratio(ap, aq),
            b: ratio(bp, bq),
        }
    }

    pub fn zero() -> Num {
        Num::int(0)
    }

    pub fn one() -> Num {
        Num::int(1)
    }

    /// `2^-n`.
    pub fn pow2_inv(n: u32) -> Num {
        Num::rational(pow2_inv(n))
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of `a + b√2`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (x, y) if x == y => x,
            // opposite signs: compare a² with 2b²
            (sa, _) => {
                let a2 = &self.a * &self.a;
                let b2 = &self.b * &self.b * BigInt::from(2);
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => unreachable!("sqrt 2 is irrational"),
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn half(&self) -> Num {
        let h = ratio(1, 2);
        Num {
            a: &self.a * &h,
            b: &self.b * &h,
        }
    }

    pub fn midpoint(&self, other: &Num) -> Num {
        (self + other).half()
    }

    pub fn abs(&self) -> Num {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(0.0) + self.b.to_f64().unwrap_or(0.0) * std::f64::consts::SQRT_2
    }

    /// If `self == 2^-n` for some `n ≥ 0`, that `n`.
    pub fn dyadic_exponent(&self) -> Option<u32> {
        if !self.b.is_zero() || !self.a.is_positive() || !self.a.numer().is_one() {
            return None;
        }
        let d = self.a.denom();
        let tz = d.trailing_zeros().unwrap_or(0);
        (*d == BigInt::one() << tz as usize).then_some(tz as u32)
    }

    /// Smallest `n ≥ 0` with `2^-n ≤ self` (strict: `<`). `self` must be positive.
    pub(crate) fn first_pow2_below(&self, strict: bool) -> u32 {
        debug_assert!(self.is_positive());
        let below = |n: u32| {
            let o = Num::pow2_inv(n).cmp(self);
            o == Ordering::Less || (!strict && o == Ordering::Equal)
        };
        let est = -self.to_f64().log2();
        let mut n = if est.is_finite() {
            est.clamp(0.0, 4096.0) as u32
        } else {
            0
        };
        while !below(n) {
            n += 1;
        }
        while n > 0 && below(n - 1) {
            n -= 1;
        }
        n
    }
}

impl Ord for Num {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl PartialOrd for Num {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Num {
    type Output = Num;
    fn add(self, o: &Num) -> Num {
        Num {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl Sub for &Num {
    type Output = Num;
    fn sub(self, o: &Num) -> Num {
        Num {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl Mul for &Num {
    type Output = Num;
    fn mul(self, o: &Num) -> Num {
        let two = BigRational::from_integer(BigInt::from(2));
        Num {
            a: &self.a * &o.a + &self.b * &o.b * two,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &Num {
    type Output = Num;
    fn neg(self) -> Num {
        Num {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Add for Num {
    type Output = Num;
    fn add(self, o: Num) -> Num {
        &self + &o
    }
}

impl Sub for Num {
    type Output = Num;
    fn sub(self, o: Num) -> Num {
        &self - &o
    }
}

impl Mul for Num {
    type Output = Num;
    fn mul(self, o: Num) -> Num {
        &self * &o
    }
}

impl Neg for Num {
    type Output = Num;
    fn neg(self) -> Num {
        -&self
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            if self.b.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}*rt2", self.b.abs())
        } else {
            write!(f, "{}*rt2", self.b)
        }
    }
}

impl fmt::Debug for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::input(format!("bad rational `{s}`"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Accepts sums of signed terms `r` and `r*rt2` (or bare `rt2`), e.g.
/// `1/2`, `1/2 + 1/4*rt2`, `-1/3*rt2`.
impl FromStr for Num {
    type Err = Error;

    fn from_str(s: &str) -> Result<Num> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::input("empty number"));
        }
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        let mut rest = text.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'+' => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ if first => (false, rest),
                _ => return Err(Error::input(format!("bad number `{s}`"))),
            };
            first = false;
            let end = body[1.min(body.len())..]
                .find(['+', '-'])
                .map_or(body.len(), |i| i + 1);
            let term = &body[..end];
            rest = &body[end..];
            let (coef, surd) = if term == "rt2" {
                (BigRational::one(), true)
            } else if let Some(c) = term.strip_suffix("*rt2") {
                (parse_rational(c)?, true)
            } else {
                (parse_rational(term)?, false)
            };
            let coef = if neg { -coef } else { coef };
            if surd {
                b += coef;
            } else {
                a += coef;
            }
        }
        Ok(Num { a, b })
    }
}

impl serde::Serialize for Num {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Num {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn n(s: &str) -> Num {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(n("1/2").to_string(), "1/2");
        assert_eq!(n("1/2 + 1/4*rt2").to_string(), "1/2 + 1/4*rt2");
        assert_eq!(n("1/2-1/4*rt2").to_string(), "1/2 - 1/4*rt2");
        assert_eq!(n("-1/3*rt2").to_string(), "-1/3*rt2");
        assert_eq!(n("rt2"), Num::surd(0, 1, 1, 1));
        assert!("1/0".parse::<Num>().is_err());
        assert!("x".parse::<Num>().is_err());
        assert!("".parse::<Num>().is_err());
    }

    #[test]
    fn comparisons() {
        // √2/2 ≈ .707
        assert!(Num::surd(0, 1, 1, 2) > Num::frac(1, 2));
        assert!(Num::surd(0, 1, 1, 2) < Num::frac(3, 4));
        assert!(Num::surd(3, 2, -1, 1) > Num::zero());
        assert!(Num::surd(7, 5, -1, 1) < Num::zero());
        assert_eq!(Num::surd(1, 1, 1, 1) * Num::surd(-1, 1, 1, 1), Num::int(1));
    }

    #[test]
    fn dyadic() {
        assert_eq!(Num::frac(1, 8).dyadic_exponent(), Some(3));
        assert_eq!(Num::int(1).dyadic_exponent(), Some(0));
        assert_eq!(Num::frac(3, 8).dyadic_exponent(), None);
        assert_eq!(Num::frac(-1, 8).dyadic_exponent(), None);
        assert_eq!(Num::surd(0, 1, 1, 8).dyadic_exponent(), None);
    }

    #[test]
    fn pow2_search() {
        assert_eq!(Num::frac(1, 8).first_pow2_below(false), 3);
        assert_eq!(Num::frac(1, 8).first_pow2_below(true), 4);
        assert_eq!(Num::frac(3, 16).first_pow2_below(false), 3);
        assert_eq!(Num::int(5).first_pow2_below(false), 0);
        let tiny = Num::rational(pow2_inv(300));
        assert_eq!(tiny.first_pow2_below(true), 301);
    }

    /// Sign of `a + b√2` from a 200-digit decimal expansion of √2.
    fn decimal_sign(a: &BigRational, b: &BigRational) -> Ordering {
        let scale = BigInt::from(10).pow(200u32);
        let sqrt2 = (BigInt::from(2) * &scale * &scale).sqrt();
        // multiplied through by both (positive) denominators and by `scale`
        let lhs = a.numer() * b.denom() * &scale + b.numer() * a.denom() * &sqrt2;
        lhs.cmp(&BigInt::zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn sign_matches_decimal_oracle(
            ap in -10_000i64..10_000, aq in 1i64..500,
            bp in -10_000i64..10_000, bq in 1i64..500,
            cp in -10_000i64..10_000, cq in 1i64..500,
            dp in -10_000i64..10_000, dq in 1i64..500,
        ) {
            let x = Num::surd(ap, aq, bp, bq);
            let y = Num::surd(cp, cq, dp, dq);
            let diff = &x - &y;
            prop_assert_eq!(x.cmp(&y), decimal_sign(diff.rational_part(), diff.surd_part()));
        }

        #[test]
        fn display_round_trips(ap in -50i64..50, aq in 1i64..20, bp in -50i64..50, bq in 1i64..20) {
            let x = Num::surd(ap, aq, bp, bq);
            prop_assert_eq!(x.to_string().parse::<Num>().unwrap(), x);
        }
    }
}
