//! Exact, nonnegative rational time.
//!
//! Every duration in the crate (edge lengths, holds, latency constraints,
//! offsets, periods) is a [`Time`]. Arithmetic never rounds: sums, differences
//! and lcm/gcd of periods are computed on reduced fractions, and overflow is a
//! panic rather than a silent wrap.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Signed rational used for dimensionless quantities (weights, ratios).
pub type Rational = Ratio<i128>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Time(Rational);

impl Time {
    pub const ZERO: Time = Time(Ratio::new_raw(0, 1));

    pub fn from_int(v: u64) -> Time {
        Time(Ratio::from_integer(v as i128))
    }

    pub fn new(numer: i128, denom: i128) -> Result<Time, Error> {
        if denom == 0 {
            return Err(Error::Parse(format!("zero denominator in {numer}/{denom}")));
        }
        Self::from_ratio(Ratio::new(numer, denom))
    }

    pub fn from_ratio(r: Rational) -> Result<Time, Error> {
        if r < Rational::zero() {
            return Err(Error::NegativeTime(r.to_string()));
        }
        Ok(Time(r))
    }

    pub fn ratio(self) -> Rational {
        self.0
    }

    pub fn numer(self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(self) -> bool {
        self.0.is_integer()
    }

    pub fn to_f64(self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn checked_sub(self, rhs: Time) -> Option<Time> {
        let d = self.0.checked_sub(&rhs.0).expect("time arithmetic overflow");
        (d >= Rational::zero()).then_some(Time(d))
    }

    /// `self - rhs` clamped at zero.
    pub fn saturating_sub(self, rhs: Time) -> Time {
        self.checked_sub(rhs).unwrap_or(Time::ZERO)
    }

    pub fn mul_int(self, k: u64) -> Time {
        Time(self.0.checked_mul(&Ratio::from_integer(k as i128)).expect("time arithmetic overflow"))
    }

    pub fn div_int(self, k: u64) -> Time {
        assert!(k > 0, "division of time by zero");
        Time(self.0 / Ratio::from_integer(k as i128))
    }

    /// Multiply by a nonnegative rational factor.
    pub fn scale(self, c: Rational) -> Time {
        assert!(c >= Rational::zero(), "negative time scale");
        Time(self.0.checked_mul(&c).expect("time arithmetic overflow"))
    }

    /// `self / rhs` as a rational ratio. `rhs` must be positive.
    pub fn ratio_to(self, rhs: Time) -> Rational {
        assert!(!rhs.is_zero(), "ratio to zero time");
        self.0 / rhs.0
    }

    /// `⌈self / rhs⌉` for positive `rhs`.
    pub fn ceil_div(self, rhs: Time) -> u64 {
        let q = self.ratio_to(rhs).ceil();
        q.to_integer() as u64
    }

    /// Remainder of `self` modulo a positive period, in `[0, period)`.
    pub fn rem_euclid(self, period: Time) -> Time {
        assert!(!period.is_zero(), "remainder modulo zero period");
        let q = (self.0 / period.0).floor();
        Time(self.0 - q * period.0)
    }

    /// Greatest common divisor of two rationals: the largest `g` such that
    /// both are integer multiples of `g`. `gcd(0, x) = x`.
    pub fn gcd(self, rhs: Time) -> Time {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let n = self.numer().gcd(&rhs.numer());
        let d = self.denom().lcm(&rhs.denom());
        Time(Ratio::new(n, d))
    }

    /// Least common multiple of two positive rationals.
    pub fn lcm(self, rhs: Time) -> Time {
        assert!(!self.is_zero() && !rhs.is_zero(), "lcm of zero time");
        let n = self.numer().lcm(&rhs.numer());
        let d = self.denom().gcd(&rhs.denom());
        Time(Ratio::new(n, d))
    }

    /// Exact number of `step`s in `self`, if `self` is a multiple of `step`.
    pub fn ticks(self, step: Time) -> Option<i64> {
        let q = self.ratio_to(step);
        if q.is_integer() {
            q.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Number of whole `step`s that fit in `self`.
    pub fn floor_ticks(self, step: Time) -> i64 {
        self.ratio_to(step).floor().to_integer().to_i64().expect("tick count overflow")
    }

    pub fn from_ticks(ticks: i64, step: Time) -> Time {
        assert!(ticks >= 0, "negative tick count {ticks}");
        step.mul_int(ticks as u64)
    }
}

impl Add for Time {
    type Output = Time;
    fn add(self, rhs: Time) -> Time {
        Time(self.0.checked_add(&rhs.0).expect("time arithmetic overflow"))
    }
}

impl AddAssign for Time {
    fn add_assign(&mut self, rhs: Time) {
        *self = *self + rhs;
    }
}

/// Panics if the result would be negative; use [`Time::checked_sub`] when
/// that can happen.
impl Sub for Time {
    type Output = Time;
    fn sub(self, rhs: Time) -> Time {
        self.checked_sub(rhs)
            .unwrap_or_else(|| panic!("negative time: {self} - {rhs}"))
    }
}

impl Zero for Time {
    fn zero() -> Self {
        Time::ZERO
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Sum for Time {
    fn sum<I: Iterator<Item = Time>>(iter: I) -> Time {
        iter.fold(Time::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Time({self})")
    }
}

impl FromStr for Time {
    type Err = Error;

    /// Accepts `"7"`, `"3/2"` and plain decimals such as `"0.125"`.
    fn from_str(s: &str) -> Result<Time, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a nonnegative rational: {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            return Time::new(n, d);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 30 {
                return Err(bad());
            }
            let int: i128 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            if int < 0 || s.starts_with('-') {
                return Err(Error::NegativeTime(s.to_string()));
            }
            let den = 10i128.pow(frac.len() as u32);
            let frac: i128 = frac.parse().map_err(|_| bad())?;
            return Time::new(int * den + frac, den);
        }
        let n: i128 = s.parse().map_err(|_| bad())?;
        Time::new(n, 1)
    }
}

impl PartialEq<u64> for Time {
    fn eq(&self, other: &u64) -> bool {
        self.0 == Ratio::from_integer(*other as i128)
    }
}

impl PartialOrd<u64> for Time {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        self.0.partial_cmp(&Ratio::from_integer(*other as i128))
    }
}

/// Integers serialize as JSON numbers, everything else as `"p/q"` strings, so
/// that a parse/print cycle reproduces the same bytes.
impl Serialize for Time {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match (self.is_integer(), i64::try_from(self.numer())) {
            (true, Ok(v)) => s.serialize_i64(v),
            _ => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Time {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Time, D::Error> {
        struct TimeVisitor;

        impl Visitor<'_> for TimeVisitor {
            type Value = Time;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative number or a rational string like \"3/2\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Time, E> {
                Ok(Time::from_int(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Time, E> {
                Time::new(v as i128, 1).map_err(E::custom)
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Time, E> {
                if !v.is_finite() {
                    return Err(E::custom("non-finite time"));
                }
                // Shortest round-trip decimal, read back exactly.
                v.to_string().parse().map_err(E::custom)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Time, E> {
                v.parse().map_err(E::custom)
            }
        }

        d.deserialize_any(TimeVisitor)
    }
}

/// True if `q` is `2^k` for some integer `k ≥ 0`.
pub fn is_power_of_two(q: Rational) -> bool {
    q.is_integer() && q.to_integer() > 0 && (q.to_integer() as u128).is_power_of_two()
}

/// Largest `m` with `2^m ≤ q`, for `q ≥ 1`.
pub fn floor_log2(q: Rational) -> u32 {
    assert!(q >= Rational::from_integer(1), "floor_log2 of {q} < 1");
    let mut m = 0;
    let mut p = Rational::from_integer(2);
    while p <= q {
        m += 1;
        p *= Rational::from_integer(2);
    }
    m
}

/// Smallest `m` with `2^m ≥ q`, for `q ≥ 1`.
pub fn ceil_log2(q: Rational) -> u32 {
    let f = floor_log2(q);
    if is_power_of_two(q) {
        f
    } else {
        f + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Time {
        s.parse().unwrap()
    }

    #[test]
    fn parses_all_forms() {
        assert_eq!(t("3"), Time::from_int(3));
        assert_eq!(t("6/4"), Time::new(3, 2).unwrap());
        assert_eq!(t("0.125"), Time::new(1, 8).unwrap());
        assert_eq!(t(".5"), Time::new(1, 2).unwrap());
        assert!("-1".parse::<Time>().is_err());
        assert!("-0.5".parse::<Time>().is_err());
        assert!("1/0".parse::<Time>().is_err());
        assert!("abc".parse::<Time>().is_err());
    }

    #[test]
    fn gcd_and_lcm_of_fractions() {
        assert_eq!(t("1/2").gcd(t("1/3")), t("1/6"));
        assert_eq!(t("4/3").gcd(t("2")), t("2/3"));
        assert_eq!(t("1/2").lcm(t("1/3")), t("1"));
        assert_eq!(t("3/2").lcm(t("2")), t("6"));
        assert_eq!(Time::ZERO.gcd(t("5/7")), t("5/7"));
    }

    #[test]
    fn ticks_and_remainders() {
        assert_eq!(t("3/2").ticks(t("1/4")), Some(6));
        assert_eq!(t("3/2").ticks(t("1/3")), None);
        assert_eq!(t("7/2").floor_ticks(t("1")), 3);
        assert_eq!(t("7/2").rem_euclid(t("2")), t("3/2"));
        assert_eq!(t("5").ceil_div(t("2")), 3);
        assert_eq!(t("4").ceil_div(t("2")), 2);
    }

    #[test]
    fn integer_logs() {
        let q = |n, d| Rational::new(n, d);
        assert!(is_power_of_two(q(1, 1)));
        assert!(is_power_of_two(q(8, 2)));
        assert!(!is_power_of_two(q(3, 1)));
        assert!(!is_power_of_two(q(1, 2)));
        assert_eq!(floor_log2(q(1, 1)), 0);
        assert_eq!(floor_log2(q(7, 2)), 1);
        assert_eq!(ceil_log2(q(7, 2)), 2);
        assert_eq!(ceil_log2(q(4, 1)), 2);
        assert_eq!(ceil_log2(q(5, 1)), 3);
    }

    #[test]
    fn json_is_byte_stable() {
        let v = vec![t("3"), t("3/2"), Time::ZERO];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[3,"3/2",0]"#);
        let back: Vec<Time> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let floats: Vec<Time> = serde_json::from_str("[0.25, 1.5]").unwrap();
        assert_eq!(floats, vec![t("1/4"), t("3/2")]);
    }

    #[test]
    #[should_panic(expected = "negative time")]
    fn subtraction_below_zero_panics() {
        let _ = t("1") - t("2");
    }
}
