use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ArithError, BigFloat, ExactRational};

/// Extra bits carried by every constant evaluation above the requested precision.
pub const GUARD_BITS: u32 = 32;

/// `sum_k (-1)^k / ((2k+1) n^(2k+1))` as a fixed-point integer scaled by `2^bits`.
fn arctan_inv_fixed(n: u32, bits: u64) -> BigInt {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut power = (BigInt::one() << bits) / &n;
    let mut sum = power.clone();
    let mut k: u64 = 1;
    while !power.is_zero() {
        power /= &n2;
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// π by Machin's formula `16 atan(1/5) - 4 atan(1/239)` in fixed point.
///
/// Each series term is truncated once, so the accumulated error is below
/// `terms * 2^-(p+32)`; the result is within `2^(1-p)` relative.
pub fn const_pi(precision_bits: u32) -> BigFloat {
    let working = u64::from(precision_bits.max(16) + GUARD_BITS);
    let pi = BigInt::from(16) * arctan_inv_fixed(5, working)
        - BigInt::from(4) * arctan_inv_fixed(239, working);
    BigFloat::from_bigint_exp(&pi, -(working as i64), precision_bits)
}

/// Euler's number from `sum 1/k!` in fixed point.
fn const_e(precision_bits: u32) -> BigFloat {
    let working = u64::from(precision_bits + GUARD_BITS);
    let mut term = BigInt::one() << working;
    let mut sum = term.clone();
    let mut k = 1u32;
    while !term.is_zero() {
        term /= BigInt::from(k);
        sum += &term;
        k += 1;
    }
    BigFloat::from_bigint_exp(&sum, -(working as i64), precision_bits)
}

pub fn sqrt_rational(x: &ExactRational, precision_bits: u32) -> Result<BigFloat, ArithError> {
    if x.is_negative() {
        return Err(ArithError::NegativeRoot);
    }
    BigFloat::from_rational(x, precision_bits + 8)
        .sqrt()
        .map(|r| r.with_precision(precision_bits))
}

/// `sqrt(x)` for a big float; `|r^2 - x| <= 2^(4-p) x`.
pub fn sqrt_big(x: &BigFloat, precision_bits: u32) -> Result<BigFloat, ArithError> {
    x.with_precision(precision_bits).sqrt()
}

/// `x^q` for `x > 0` and rational `q`, through an integer power and an integer root.
pub fn pow_rational(x: &BigFloat, q: &ExactRational) -> Result<BigFloat, ArithError> {
    if x.signum() <= 0 {
        return Err(ArithError::Domain(
            "pow_rational needs a positive base".into(),
        ));
    }
    let p = x.precision();
    let den = q
        .denom()
        .to_u32()
        .ok_or_else(|| ArithError::Domain("exponent denominator too large".into()))?;
    let num = q
        .numer()
        .abs()
        .to_u64()
        .ok_or_else(|| ArithError::Domain("exponent numerator too large".into()))?;
    let guard = 16 + 64 - num.max(1).leading_zeros();
    let wide = x.with_precision(p + guard);
    let mut r = wide.powi(num).nth_root(den)?;
    if q.is_negative() {
        r = r.recip()?;
    }
    Ok(r.with_precision(p))
}

/// Γ(x) for rational `x` that is not a pole.
///
/// The fractional part `r` in (0, 1] is handled with the lower incomplete
/// gamma series `γ(r,T) = T^r e^-T sum_k T^k / (r)_(k+1)` (all terms positive).
/// With `T >= (p+32) ln 2 + 2` the discarded upper part is below
/// `T^(r-1) e^-T < 2^-(p+32)`, and Γ(r) >= 1 on (0, 1], so the relative
/// error before the final rounding is below `2^-(p+24)`. The integer shift
/// back to `x` is an exact rational Pochhammer factor. Overall relative error
/// is at most `2^(4-p)`.
pub fn gamma_big(x: &ExactRational, precision_bits: u32) -> Result<BigFloat, ArithError> {
    if x.is_integer() && (x.is_zero() || x.is_negative()) {
        return Err(ArithError::GammaPole(x.to_string()));
    }
    let working = precision_bits + GUARD_BITS;
    let mut r = x - &ExactRational::from_int(x.floor());
    if r.is_zero() {
        r = ExactRational::one();
    }
    let shift = (x - &r)
        .numer()
        .to_i64()
        .ok_or_else(|| ArithError::Domain("gamma argument too large".into()))?;

    let gamma_r = if r == 1 {
        BigFloat::one(working)
    } else {
        gamma_unit_interval(&r, working)?
    };

    // Γ(r + m) = (r)_m Γ(r);  Γ(r - m) = Γ(r) / (r - m)_m.
    let mut factor = ExactRational::one();
    if shift > 0 {
        for i in 0..shift {
            factor = &factor * &(&r + &ExactRational::from_int(i));
        }
        Ok((&gamma_r * &BigFloat::from_rational(&factor, working)).with_precision(precision_bits))
    } else {
        for i in 0..(-shift) {
            factor = &factor * &(x + &ExactRational::from_int(i));
        }
        Ok(gamma_r
            .checked_div(&BigFloat::from_rational(&factor, working))?
            .with_precision(precision_bits))
    }
}

fn gamma_unit_interval(r: &ExactRational, working: u32) -> Result<BigFloat, ArithError> {
    let t = (f64::from(working) * std::f64::consts::LN_2).ceil() as i64 + 2;
    let wide = working + 16;
    let t_big = BigFloat::from_int(t, wide);
    let r_big = BigFloat::from_rational(r, wide);
    let mut term = BigFloat::one(wide).checked_div(&r_big)?;
    let mut sum = term.clone();
    let mut k: i64 = 1;
    loop {
        let denom = &r_big + &BigFloat::from_int(k, wide);
        term = (&term * &t_big).checked_div(&denom)?;
        sum = &sum + &term;
        if k >= 2 * t && term.log2_abs() < sum.log2_abs() - f64::from(wide) - 2.0 {
            break;
        }
        k += 1;
    }
    let e_t = const_e(wide).powi(t as u64);
    let t_pow_r = pow_rational(&t_big, r)?;
    Ok((&t_pow_r * &sum).checked_div(&e_t)?.with_precision(working))
}

/// Weighted sum estimating `sum_k (-1)^k a_k` from `a_0..a_(n-1)`, with
/// `n = magnitudes.len()` (Cohen, Rodriguez Villegas and Zagier, algorithm 1).
///
/// When `a_k` are moments of a positive measure on [0, 1] the error is at
/// most `2 |S| / (3 + sqrt 8)^n`.
pub fn alternating_accelerate(magnitudes: &[BigFloat], precision_bits: u32) -> BigFloat {
    let n = magnitudes.len() as i64;
    let p = precision_bits;
    let sqrt8 = BigFloat::from_int(8, p).sqrt().expect("positive");
    let mut d = (&BigFloat::from_int(3, p) + &sqrt8).powi(n as u64);
    d = (&d + &d.recip().expect("nonzero"))
        .checked_div(&BigFloat::from_int(2, p))
        .expect("nonzero");
    let mut b = BigFloat::from_int(-1, p);
    let mut c = -d.clone();
    let mut s = BigFloat::zero(p);
    for (k, a) in magnitudes.iter().enumerate() {
        let k = k as i64;
        c = &b - &c;
        s = &s + &(&c * &a.with_precision(p));
        let num = BigFloat::from_int(2 * (k + n) * (k - n), p);
        let den = BigFloat::from_int((2 * k + 1) * (k + 1), p);
        b = (&b * &num).checked_div(&den).expect("nonzero");
    }
    s.checked_div(&d).expect("nonzero")
}

/// Number of accelerated terms needed for `bits` bits under the moment bound.
pub fn alternating_terms_for_bits(bits: u32) -> usize {
    let rate = (3.0 + 8f64.sqrt()).log2();
    ((f64::from(bits) + 2.0) / rate).ceil() as usize + 1
}

/// β(s) = sum_k (-1)^k / (2k+1)^s.
///
/// `1/(2k+1)^s` are moments of a positive measure, so the alternating
/// acceleration carries a rigorous bound of `2^-(p+30)` absolute here.
pub fn dirichlet_beta(s: u32, precision_bits: u32) -> Result<BigFloat, ArithError> {
    if s == 0 {
        return Err(ArithError::Domain("beta needs s >= 1".into()));
    }
    let working = precision_bits + GUARD_BITS;
    let n = alternating_terms_for_bits(working);
    let terms: Vec<BigFloat> = (0..n as i64)
        .map(|k| {
            let denom = BigInt::from(2 * k + 1).pow(s);
            BigFloat::from_rational(&ExactRational::new(1, denom).expect("nonzero"), working)
        })
        .collect();
    Ok(alternating_accelerate(&terms, working).with_precision(precision_bits))
}

/// Closed forms appearing on the right sides of the verified identities.
#[derive(Clone, Debug, PartialEq)]
pub enum ConstantExpr {
    Rational(ExactRational),
    Pi,
    InvPi,
    /// `sqrt(q)`
    Sqrt(ExactRational),
    /// Catalan's constant, β(2).
    Catalan,
    Beta(u32),
    Gamma(ExactRational),
    /// `base^exponent` for a positive rational base.
    Power(ExactRational, ExactRational),
    Add(Box<ConstantExpr>, Box<ConstantExpr>),
    Sub(Box<ConstantExpr>, Box<ConstantExpr>),
    Mul(Box<ConstantExpr>, Box<ConstantExpr>),
    Div(Box<ConstantExpr>, Box<ConstantExpr>),
    Neg(Box<ConstantExpr>),
}

impl ConstantExpr {
    pub fn int(n: i64) -> Self {
        ConstantExpr::Rational(ExactRational::from_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        ConstantExpr::Rational(ExactRational::frac(n, d))
    }

    pub fn sqrt(n: i64) -> Self {
        ConstantExpr::Sqrt(ExactRational::from_int(n))
    }

    pub fn beta(s: u32) -> Self {
        ConstantExpr::Beta(s)
    }

    fn precedence(&self) -> u8 {
        match self {
            ConstantExpr::Add(..) | ConstantExpr::Sub(..) => 1,
            ConstantExpr::Mul(..) | ConstantExpr::Div(..) | ConstantExpr::Neg(..) => 2,
            ConstantExpr::Rational(q) if !q.is_integer() || q.is_negative() => 2,
            _ => 3,
        }
    }
}

impl Add for ConstantExpr {
    type Output = ConstantExpr;
    fn add(self, rhs: ConstantExpr) -> ConstantExpr {
        ConstantExpr::Add(Box::new(self), Box::new(rhs))
    }
}

impl Sub for ConstantExpr {
    type Output = ConstantExpr;
    fn sub(self, rhs: ConstantExpr) -> ConstantExpr {
        ConstantExpr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl Mul for ConstantExpr {
    type Output = ConstantExpr;
    fn mul(self, rhs: ConstantExpr) -> ConstantExpr {
        ConstantExpr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl Div for ConstantExpr {
    type Output = ConstantExpr;
    fn div(self, rhs: ConstantExpr) -> ConstantExpr {
        ConstantExpr::Div(Box::new(self), Box::new(rhs))
    }
}

impl Neg for ConstantExpr {
    type Output = ConstantExpr;
    fn neg(self) -> ConstantExpr {
        ConstantExpr::Neg(Box::new(self))
    }
}

impl fmt::Display for ConstantExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &ConstantExpr, min: u8| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            ConstantExpr::Rational(q) => write!(f, "{q}"),
            ConstantExpr::Pi => f.write_str("pi"),
            ConstantExpr::InvPi => f.write_str("1/pi"),
            ConstantExpr::Sqrt(q) => write!(f, "sqrt({q})"),
            ConstantExpr::Catalan => f.write_str("G"),
            ConstantExpr::Beta(s) => write!(f, "beta({s})"),
            ConstantExpr::Gamma(q) => write!(f, "gamma({q})"),
            ConstantExpr::Power(b, e) => write!(f, "{b}^({e})"),
            ConstantExpr::Add(a, b) => {
                write!(f, "{a} + ")?;
                wrap(f, b, 2)
            }
            ConstantExpr::Sub(a, b) => {
                write!(f, "{a} - ")?;
                wrap(f, b, 2)
            }
            ConstantExpr::Mul(a, b) => {
                wrap(f, a, 2)?;
                f.write_str("*")?;
                wrap(f, b, 3)
            }
            ConstantExpr::Div(a, b) => {
                wrap(f, a, 2)?;
                f.write_str("/")?;
                wrap(f, b, 3)
            }
            ConstantExpr::Neg(a) => {
                f.write_str("-")?;
                wrap(f, a, 3)
            }
        }
    }
}

/// Deterministic evaluation with `GUARD_BITS` extra bits, rounded to `precision_bits`.
pub fn eval_constant(c: &ConstantExpr, precision_bits: u32) -> Result<BigFloat, ArithError> {
    Ok(eval_inner(c, precision_bits + GUARD_BITS)?.with_precision(precision_bits))
}

fn eval_inner(c: &ConstantExpr, p: u32) -> Result<BigFloat, ArithError> {
    Ok(match c {
        ConstantExpr::Rational(q) => BigFloat::from_rational(q, p),
        ConstantExpr::Pi => const_pi(p),
        ConstantExpr::InvPi => const_pi(p).recip()?,
        ConstantExpr::Sqrt(q) => sqrt_rational(q, p)?,
        ConstantExpr::Catalan => dirichlet_beta(2, p)?,
        ConstantExpr::Beta(s) => dirichlet_beta(*s, p)?,
        ConstantExpr::Gamma(q) => gamma_big(q, p)?,
        ConstantExpr::Power(b, e) => pow_rational(&BigFloat::from_rational(b, p), e)?,
        ConstantExpr::Add(a, b) => &eval_inner(a, p)? + &eval_inner(b, p)?,
        ConstantExpr::Sub(a, b) => &eval_inner(a, p)? - &eval_inner(b, p)?,
        ConstantExpr::Mul(a, b) => &eval_inner(a, p)? * &eval_inner(b, p)?,
        ConstantExpr::Div(a, b) => eval_inner(a, p)?.checked_div(&eval_inner(b, p)?)?,
        ConstantExpr::Neg(a) => -eval_inner(a, p)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &BigFloat, b: &BigFloat, rel_bits: i32) -> bool {
        let diff = (a - b).abs();
        diff.is_zero() || diff.log2_abs() <= b.log2_abs() - f64::from(rel_bits)
    }

    #[test]
    fn pi_low_precision_floor() {
        let pi = const_pi(16);
        assert_eq!(pi.precision(), 16);
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-4);
    }

    #[test]
    fn pi_consistency_across_precisions() {
        let a = const_pi(128);
        let b = const_pi(256).with_precision(128);
        assert!(close(&a, &b, 126));
        assert_eq!(a.to_sci_string(36), b.to_sci_string(36));
    }

    #[test]
    fn sqrt_examples() {
        let two = sqrt_rational(&ExactRational::from_int(4), 64).unwrap();
        assert_eq!(two, BigFloat::from_int(2, 64));
        assert!(sqrt_rational(&ExactRational::from_int(-1), 64).is_err());
        let r2 = sqrt_rational(&ExactRational::from_int(2), 100).unwrap();
        assert_eq!(r2.to_sci_string(15), "1.41421356237310e0");
    }

    #[test]
    fn gamma_poles() {
        for x in [0, -1, -7] {
            assert!(matches!(
                gamma_big(&ExactRational::from_int(x), 64),
                Err(ArithError::GammaPole(_))
            ));
        }
    }

    #[test]
    fn gamma_integers_are_factorials() {
        assert_eq!(
            gamma_big(&ExactRational::one(), 64).unwrap(),
            BigFloat::one(64)
        );
        let g6 = gamma_big(&ExactRational::from_int(6), 80).unwrap();
        assert!(close(&g6, &BigFloat::from_int(120, 80), 76));
    }

    #[test]
    fn gamma_negative_half() {
        // Γ(-1/2) = -2 sqrt(pi)
        let g = gamma_big(&ExactRational::frac(-1, 2), 120).unwrap();
        let expect = -(&BigFloat::from_int(2, 120) * &const_pi(120).sqrt().unwrap());
        assert!(close(&g, &expect, 110));
    }

    #[test]
    fn beta_one_is_quarter_pi() {
        let b1 = dirichlet_beta(1, 150).unwrap();
        let q = const_pi(150)
            .checked_div(&BigFloat::from_int(4, 150))
            .unwrap();
        assert!(close(&b1, &q, 146));
    }

    #[test]
    fn constant_display() {
        let c = ConstantExpr::frac(-1, 48) * ConstantExpr::sqrt(2) * ConstantExpr::Pi;
        assert_eq!(c.to_string(), "-1/48*sqrt(2)*pi");
        let d = ConstantExpr::int(24) * ConstantExpr::Catalan
            - ConstantExpr::int(24) * ConstantExpr::beta(4);
        assert_eq!(d.to_string(), "24*G - 24*beta(4)");
    }

    #[test]
    fn constant_trivial() {
        let c = ConstantExpr::int(0) * ConstantExpr::Pi + ConstantExpr::int(1);
        assert_eq!(eval_constant(&c, 64).unwrap(), BigFloat::one(64));
    }

    #[test]
    fn pow_rational_roots() {
        let two = BigFloat::from_int(2, 100);
        let r = pow_rational(&two, &ExactRational::frac(1, 2)).unwrap();
        assert!(close(&r, &two.sqrt().unwrap(), 96));
        let r = pow_rational(&BigFloat::from_int(27, 100), &ExactRational::frac(-2, 3)).unwrap();
        assert!(close(
            &r,
            &BigFloat::from_rational(&ExactRational::frac(1, 9), 100),
            96
        ));
    }
}
