use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{ArithError, ExactRational};

/// Binary floating-point number with an explicit precision in bits.
///
/// The value is `(-1)^negative * mantissa * 2^exponent`. A nonzero mantissa
/// always has exactly `precision` significant bits; zero is stored with a
/// zero mantissa and exponent. Every operation rounds to nearest (ties to
/// even) at the smaller of the operand precisions.
#[derive(Clone)]
pub struct BigFloat {
    negative: bool,
    mantissa: BigUint,
    exponent: i64,
    precision: u32,
}

fn check_precision(precision: u32) {
    assert!(precision >= 2, "BigFloat precision must be at least 2 bits");
}

impl BigFloat {
    pub fn zero(precision: u32) -> Self {
        check_precision(precision);
        BigFloat {
            negative: false,
            mantissa: BigUint::zero(),
            exponent: 0,
            precision,
        }
    }

    pub fn one(precision: u32) -> Self {
        Self::from_int(1, precision)
    }

    /// Rounds `(-1)^negative * mag * 2^exp` to `precision` bits. `sticky` marks
    /// nonzero bits below `mag` that were already discarded.
    fn round(negative: bool, mag: BigUint, exp: i64, precision: u32, sticky: bool) -> Self {
        check_precision(precision);
        let (mut mag, mut exp) = if sticky {
            ((mag << 1u32) | BigUint::one(), exp - 1)
        } else {
            (mag, exp)
        };
        if mag.is_zero() {
            return Self::zero(precision);
        }
        let bits = mag.bits();
        let p = u64::from(precision);
        if bits > p {
            let shift = bits - p;
            let half = mag.bit(shift - 1);
            let below_half = mag.trailing_zeros().is_some_and(|tz| tz < shift - 1);
            let mut q = &mag >> shift;
            exp += shift as i64;
            if half && (below_half || q.bit(0)) {
                q += 1u32;
                if q.bits() > p {
                    q >>= 1u32;
                    exp += 1;
                }
            }
            mag = q;
        } else if bits < p {
            let shift = p - bits;
            mag <<= shift;
            exp -= shift as i64;
        }
        BigFloat {
            negative,
            mantissa: mag,
            exponent: exp,
            precision,
        }
    }

    pub fn from_int(n: impl Into<BigInt>, precision: u32) -> Self {
        let n: BigInt = n.into();
        let negative = n.sign() == Sign::Minus;
        Self::round(negative, n.magnitude().clone(), 0, precision, false)
    }

    pub fn from_bigint_exp(n: &BigInt, exp: i64, precision: u32) -> Self {
        Self::round(
            n.sign() == Sign::Minus,
            n.magnitude().clone(),
            exp,
            precision,
            false,
        )
    }

    /// Correctly rounded conversion; relative error at most `2^-precision`.
    pub fn from_rational(q: &ExactRational, precision: u32) -> Self {
        if q.denom().is_one() {
            return Self::from_int(q.numer().clone(), precision);
        }
        let negative = q.is_negative();
        let num = q.numer().magnitude();
        let den = q.denom().magnitude();
        Self::div_magnitudes(negative, num, 0, den, 0, precision)
    }

    fn div_magnitudes(
        negative: bool,
        num: &BigUint,
        num_exp: i64,
        den: &BigUint,
        den_exp: i64,
        precision: u32,
    ) -> Self {
        if num.is_zero() {
            return Self::zero(precision);
        }
        let shift = i64::from(precision) + 3 + den.bits() as i64 - num.bits() as i64;
        let (q, r) = if shift >= 0 {
            (num << (shift as u64)).div_rem(den)
        } else {
            num.div_rem(&(den << ((-shift) as u64)))
        };
        Self::round(
            negative,
            q,
            num_exp - den_exp - shift,
            precision,
            !r.is_zero(),
        )
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Re-rounds to a new precision (widening is exact).
    pub fn with_precision(&self, precision: u32) -> Self {
        Self::round(
            self.negative,
            self.mantissa.clone(),
            self.exponent,
            precision,
            false,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.negative && !self.is_zero()
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        r.negative = false;
        r
    }

    /// Exponent of the leading bit plus one; `|x|` lies in `[2^(t-1), 2^t)`.
    fn top(&self) -> i64 {
        self.exponent + self.mantissa.bits() as i64
    }

    pub fn to_rational(&self) -> ExactRational {
        let mut n = BigInt::from_biguint(
            if self.negative {
                Sign::Minus
            } else {
                Sign::Plus
            },
            self.mantissa.clone(),
        );
        if self.exponent >= 0 {
            n <<= self.exponent as u64;
            ExactRational::from_int(n)
        } else {
            let d = BigInt::one() << ((-self.exponent) as u64);
            ExactRational::from_big_rational(BigRational::new(n, d))
        }
    }

    /// Approximate `log2 |x|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mantissa.bits();
        let take = bits.min(60);
        let top = (&self.mantissa >> (bits - take))
            .to_u64()
            .unwrap_or(u64::MAX) as f64;
        top.log2() + (self.exponent + (bits - take) as i64) as f64
    }

    pub fn log10_abs(&self) -> f64 {
        self.log2_abs() * std::f64::consts::LOG10_2
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits();
        let take = bits.min(60);
        let top = (&self.mantissa >> (bits - take))
            .to_u64()
            .unwrap_or(u64::MAX) as f64;
        let scale = self.exponent + (bits - take) as i64;
        let v = top * 2f64.powi(scale.clamp(-2000, 2000) as i32);
        if self.negative {
            -v
        } else {
            v
        }
    }

    pub fn checked_div(&self, rhs: &BigFloat) -> Result<BigFloat, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let precision = self.precision.min(rhs.precision);
        Ok(Self::div_magnitudes(
            self.negative != rhs.negative,
            &self.mantissa,
            self.exponent,
            &rhs.mantissa,
            rhs.exponent,
            precision,
        ))
    }

    pub fn recip(&self) -> Result<BigFloat, ArithError> {
        BigFloat::one(self.precision).checked_div(self)
    }

    pub fn mul_int(&self, n: i64) -> BigFloat {
        self * &BigFloat::from_int(n, self.precision)
    }

    pub fn div_int(&self, n: i64) -> Result<BigFloat, ArithError> {
        self.checked_div(&BigFloat::from_int(n, self.precision))
    }

    pub fn powi(&self, exp: u64) -> BigFloat {
        let mut base = self.clone();
        let mut acc = BigFloat::one(self.precision);
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `x^(1/n)` for `x >= 0`, correctly rounded from the integer root.
    pub fn nth_root(&self, n: u32) -> Result<BigFloat, ArithError> {
        if n == 0 {
            return Err(ArithError::Domain("zeroth root".into()));
        }
        if self.is_negative() {
            return Err(ArithError::NegativeRoot);
        }
        if self.is_zero() || n == 1 {
            return Ok(self.clone());
        }
        let p = u64::from(self.precision);
        let n64 = i64::from(n);
        let want_bits = u64::from(n) * (p + 3);
        let mut shift = want_bits.saturating_sub(self.mantissa.bits()) as i64;
        shift += (self.exponent - shift).rem_euclid(n64);
        let scaled = &self.mantissa << (shift as u64);
        let root = if n == 2 {
            scaled.sqrt()
        } else {
            scaled.nth_root(n)
        };
        let exact = num_traits::Pow::pow(&root, n) == scaled;
        Ok(Self::round(
            false,
            root,
            (self.exponent - shift) / n64,
            self.precision,
            !exact,
        ))
    }

    pub fn sqrt(&self) -> Result<BigFloat, ArithError> {
        self.nth_root(2)
    }

    fn cmp_abs(&self, other: &BigFloat) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        match self.top().cmp(&other.top()) {
            Ordering::Equal => {}
            o => return o,
        }
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << ((self.exponent - e) as u64);
        let b = &other.mantissa << ((other.exponent - e) as u64);
        a.cmp(&b)
    }

    /// `(-1)^negative * |x|` rendered in scientific notation with `sig` significant digits,
    /// e.g. `-1.2345e-7`. Zero renders as `0e0`.
    pub fn to_sci_string(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return "0e0".to_string();
        }
        let value = self.abs().to_rational().into_big_rational();
        let ten = BigInt::from(10);
        let scaled = |e10: i64| -> BigInt {
            let k = sig as i64 - 1 - e10;
            let factor = num_traits::Pow::pow(&ten, k.unsigned_abs());
            let v = if k >= 0 {
                &value * BigRational::from_integer(factor)
            } else {
                &value / BigRational::from_integer(factor)
            };
            v.round().to_integer()
        };
        let lower = num_traits::Pow::pow(&ten, (sig - 1) as u32);
        let upper = &lower * &ten;
        let mut e10 = self.log10_abs().floor() as i64;
        let mut digits = scaled(e10);
        for _ in 0..4 {
            if digits >= upper {
                e10 += 1;
            } else if digits < lower {
                e10 -= 1;
            } else {
                break;
            }
            digits = scaled(e10);
        }
        let s = digits.to_string();
        let sign = if self.negative { "-" } else { "" };
        if s.len() == 1 {
            format!("{sign}{s}e{e10}")
        } else {
            format!("{sign}{}.{}e{e10}", &s[..1], &s[1..])
        }
    }
}

impl<'a> Add<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;

    fn add(self, rhs: &'a BigFloat) -> BigFloat {
        let precision = self.precision.min(rhs.precision);
        if rhs.is_zero() {
            return self.with_precision(precision);
        }
        if self.is_zero() {
            return rhs.with_precision(precision);
        }
        let (big, small) = if self.top() >= rhs.top() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let gap = big.top() - small.top();
        if gap > i64::from(precision) + 4 {
            // The smaller operand only influences the rounding direction.
            let s = u64::from(precision) + 4;
            let shifted = &big.mantissa << s;
            let mag = if big.negative == small.negative {
                shifted + 1u32
            } else {
                shifted - 1u32
            };
            return BigFloat::round(big.negative, mag, big.exponent - s as i64, precision, false);
        }
        let e = self.exponent.min(rhs.exponent);
        let signed = |x: &BigFloat| {
            BigInt::from_biguint(
                if x.negative { Sign::Minus } else { Sign::Plus },
                &x.mantissa << ((x.exponent - e) as u64),
            )
        };
        let sum = signed(self) + signed(rhs);
        BigFloat::round(
            sum.sign() == Sign::Minus,
            sum.magnitude().clone(),
            e,
            precision,
            false,
        )
    }
}

impl<'a> Sub<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;

    fn sub(self, rhs: &'a BigFloat) -> BigFloat {
        self + &(-rhs.clone())
    }
}

impl<'a> Mul<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;

    fn mul(self, rhs: &'a BigFloat) -> BigFloat {
        let precision = self.precision.min(rhs.precision);
        BigFloat::round(
            self.negative != rhs.negative,
            &self.mantissa * &rhs.mantissa,
            self.exponent + rhs.exponent,
            precision,
            false,
        )
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                $tr::$m(&self, &rhs)
            }
        }
    };
}

by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl Neg for BigFloat {
    type Output = BigFloat;

    fn neg(mut self) -> BigFloat {
        if !self.is_zero() {
            self.negative = !self.negative;
        }
        self
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.signum(), other.signum()) {
            (a, b) if a != b => a.cmp(&b),
            (0, _) => Ordering::Equal,
            (1, _) => self.cmp_abs(other),
            _ => other.cmp_abs(self),
        }
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (f64::from(self.precision) * std::f64::consts::LOG10_2) as usize + 1;
        write!(
            f,
            "{} [{} bits]",
            self.to_sci_string(digits),
            self.precision
        )
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .unwrap_or((f64::from(self.precision) * std::f64::consts::LOG10_2) as usize);
        f.write_str(&self.to_sci_string(digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> ExactRational {
        ExactRational::frac(n, d)
    }

    #[test]
    fn conversion_error_is_within_half_ulp() {
        for (n, d) in [
            (1, 3),
            (-22, 7),
            (355, 113),
            (1, 1 << 40),
            (123_456_789, 1000),
        ] {
            let q = rat(n, d);
            for p in [16u32, 53, 100, 300] {
                let f = BigFloat::from_rational(&q, p);
                let err = (&f.to_rational() - &q).abs();
                let bound = (&q.abs()
                    * &ExactRational::new(1, BigInt::one() << u64::from(p)).unwrap())
                    .clone();
                assert!(err <= bound, "{q} at {p} bits");
            }
        }
    }

    #[test]
    fn arithmetic_matches_exact() {
        let a = BigFloat::from_rational(&rat(1, 3), 128);
        let b = BigFloat::from_rational(&rat(-2, 7), 128);
        let s = (&a + &b).to_rational();
        let expect = rat(1, 21);
        let rel = ((&s - &expect).checked_div(&expect).unwrap()).abs();
        assert!(rel.to_f64() < 1e-36);
        let q = a.checked_div(&b).unwrap().to_f64();
        assert!((q + 7.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn precision_of_result_is_minimum() {
        let a = BigFloat::from_int(3, 64);
        let b = BigFloat::from_int(5, 200);
        assert_eq!((&a * &b).precision(), 64);
        assert_eq!((&a + &b).precision(), 64);
        assert_eq!(a.checked_div(&b).unwrap().precision(), 64);
    }

    #[test]
    fn far_apart_addition_rounds_toward_the_small_operand_sign() {
        let big = BigFloat::from_int(1, 20);
        let tiny = BigFloat::from_bigint_exp(&BigInt::from(1), -200, 20);
        assert_eq!(&big + &tiny, big);
        assert_eq!((&big - &tiny).precision(), 20);
        assert!(&big - &tiny <= big);
    }

    #[test]
    fn cancellation_is_exact() {
        let a = BigFloat::from_rational(&rat(1, 3), 100);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn roots() {
        let four = BigFloat::from_int(4, 64);
        assert_eq!(four.sqrt().unwrap(), BigFloat::from_int(2, 64));
        let eight = BigFloat::from_int(8, 64);
        assert_eq!(eight.nth_root(3).unwrap(), BigFloat::from_int(2, 64));
        assert!(BigFloat::from_int(-1, 64).sqrt().is_err());
        let r = BigFloat::from_int(2, 80).sqrt().unwrap();
        assert!((r.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        let small = BigFloat::from_rational(&rat(1, 1 << 20), 64)
            .sqrt()
            .unwrap();
        assert_eq!(small, BigFloat::from_rational(&rat(1, 1 << 10), 64));
    }

    #[test]
    fn scientific_rendering() {
        let x = BigFloat::from_rational(&rat(-1, 3), 100);
        assert_eq!(x.to_sci_string(5), "-3.3333e-1");
        assert_eq!(BigFloat::from_int(1000, 30).to_sci_string(3), "1.00e3");
        assert_eq!(BigFloat::from_int(999_999, 30).to_sci_string(3), "1.00e6");
        assert_eq!(BigFloat::from_int(7, 30).to_sci_string(1), "7e0");
        assert_eq!(BigFloat::zero(30).to_sci_string(4), "0e0");
    }

    #[test]
    fn ordering() {
        let a = BigFloat::from_rational(&rat(1, 3), 64);
        let b = BigFloat::from_rational(&rat(1, 2), 64);
        assert!(a < b);
        assert!(-b.clone() < -a.clone());
        assert!(BigFloat::zero(64) > -a);
    }
}
