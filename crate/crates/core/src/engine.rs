//! Summation strategies: exact finite sums, geometric series with a tail
//! bound, alternating acceleration and the Levin u transform.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use thiserror::Error;

use crate::arith::{alternating_accelerate, ArithError, BigFloat, ExactRational};
use crate::catalog::{
    self, CatalogError, ConvergenceClass, ExactOutcome, Generator, IdentitySpec, Params,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Rigorous,
    Heuristic,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Rigorous => "rigorous",
            BoundKind::Heuristic => "heuristic",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumResult {
    pub value: BigFloat,
    pub error_bound: BigFloat,
    pub bound_kind: BoundKind,
    pub terms_used: u32,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("ratio test failed at k={k}: |t_k/t_(k-1)| = {observed:.4} exceeds {limit:.4}")]
    RatioTest { k: u32, observed: f64, limit: f64 },
    #[error("terms do not alternate in sign at k={0}")]
    SignPattern(u32),
    #[error("no convergence detected: terms decay like k^-{0:.3}")]
    NoConvergence(f64),
    #[error("{0} terms exhausted before reaching the error target")]
    MaxTerms(u32),
    #[error("{id} is not a {wanted} series")]
    WrongClass { id: String, wanted: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumOptions {
    pub digits: u32,
    pub max_terms: u32,
    /// Overrides the working precision derived from `digits`.
    pub precision_bits: Option<u32>,
}

impl SumOptions {
    pub fn new(digits: u32, max_terms: u32) -> Self {
        SumOptions {
            digits,
            max_terms,
            precision_bits: None,
        }
    }

    /// `ceil(3.33 digits) + 64` unless overridden.
    pub fn working_bits(&self) -> u32 {
        self.precision_bits
            .unwrap_or_else(|| (f64::from(self.digits) * 3.33).ceil() as u32 + 64)
    }

    /// Stopping threshold, two decimal digits below the request.
    fn target(&self, p: u32) -> BigFloat {
        ten_pow_neg(self.digits + 2, p)
    }
}

/// Term `k` evaluated at the given precision.
pub type TermFn<'a> = dyn Fn(u32, u32) -> Result<BigFloat, EngineError> + 'a;

pub const RATIO_WARMUP: u32 = 8;

fn ten_pow_neg(d: u32, p: u32) -> BigFloat {
    let q = ExactRational::new(1, BigInt::from(10).pow(d)).expect("nonzero");
    BigFloat::from_rational(&q, p)
}

/// Allowance for rounding in term evaluation and accumulation:
/// each term carries a few thousand roundings of relative size `2^-p`.
fn rounding_allowance(abs_sum: &BigFloat, p: u32) -> BigFloat {
    let scale = BigFloat::from_bigint_exp(&BigInt::from(1), 20 - i64::from(p), p);
    &abs_sum.abs() * &scale
}

/// Geometric summation with tail bound `|t_K| rho_hat / (1 - rho_hat)`,
/// `rho_hat = (1 + rho) / 2`, after a warm-up of [`RATIO_WARMUP`] terms.
pub fn geometric_series(
    term: &TermFn<'_>,
    rho: &ExactRational,
    opts: &SumOptions,
) -> Result<SumResult, EngineError> {
    let p = opts.working_bits();
    let one = ExactRational::one();
    let rho_hat = (one.clone() + rho.clone()) * ExactRational::frac(1, 2);
    let tail_factor = BigFloat::from_rational(&rho_hat.checked_div(&(one - rho_hat.clone()))?, p);
    let rho_hat_big = BigFloat::from_rational(&rho_hat, p);
    let target = opts.target(p);
    let mut sum = BigFloat::zero(p);
    let mut abs_sum = BigFloat::zero(p);
    let mut prev: Option<BigFloat> = None;
    for k in 0..opts.max_terms {
        let t = term(k, p)?;
        sum = &sum + &t;
        abs_sum = &abs_sum + &t.abs();
        if k >= RATIO_WARMUP {
            if let Some(prev) = prev.as_ref().filter(|v| !v.is_zero()) {
                if t.abs() > &prev.abs() * &rho_hat_big {
                    return Err(EngineError::RatioTest {
                        k,
                        observed: t.abs().checked_div(&prev.abs())?.to_f64(),
                        limit: rho_hat.to_f64(),
                    });
                }
            }
            let tail = &t.abs() * &tail_factor;
            let both_zero = t.is_zero() && prev.as_ref().is_some_and(BigFloat::is_zero);
            if (!t.is_zero() && tail < target) || both_zero {
                let bound = &tail + &rounding_allowance(&abs_sum, p);
                return Ok(SumResult {
                    value: sum,
                    error_bound: bound,
                    bound_kind: BoundKind::Rigorous,
                    terms_used: k + 1,
                });
            }
        }
        prev = Some(t);
    }
    Err(EngineError::MaxTerms(opts.max_terms))
}

/// Alternating acceleration (Cohen, Rodriguez Villegas and Zagier) over
/// `n = 8, 16, 24, ...` terms, stopping when two successive orders agree to
/// the target. The reported bound is that difference, labelled heuristic.
pub fn alternating_series(term: &TermFn<'_>, opts: &SumOptions) -> Result<SumResult, EngineError> {
    const STEP: u32 = 8;
    let p = opts.working_bits();
    let target = opts.target(p);
    let mut magnitudes: Vec<BigFloat> = Vec::new();
    let mut lead_sign = 0;
    let mut last: Option<BigFloat> = None;
    let mut n = STEP;
    while n <= opts.max_terms {
        while (magnitudes.len() as u32) < n {
            let k = magnitudes.len() as u32;
            let t = term(k, p)?;
            let s = t.signum();
            if k == 0 {
                if s == 0 {
                    return Err(EngineError::SignPattern(0));
                }
                lead_sign = s;
            }
            let expected = if k.is_multiple_of(2) {
                lead_sign
            } else {
                -lead_sign
            };
            if s != expected {
                return Err(EngineError::SignPattern(k));
            }
            magnitudes.push(t.abs());
        }
        let mut estimate = alternating_accelerate(&magnitudes, p);
        if lead_sign < 0 {
            estimate = -estimate;
        }
        if let Some(prev) = &last {
            let diff = (&estimate - prev).abs();
            if diff < target {
                let bound = &diff + &rounding_allowance(&magnitudes[0], p);
                return Ok(SumResult {
                    value: estimate,
                    error_bound: bound,
                    bound_kind: BoundKind::Heuristic,
                    terms_used: n,
                });
            }
        }
        last = Some(estimate);
        n += STEP;
    }
    Err(EngineError::MaxTerms(opts.max_terms))
}

/// Exact weights `(-1)^j C(k,j) (1+j)^(k-1)` of the Levin u transform with `beta = 1`.
fn levin_weights(k: u32) -> Vec<BigInt> {
    (0..=k)
        .map(|j| {
            let w = binomial(BigInt::from(k), BigInt::from(j))
                * BigInt::from(1 + j).pow(k.saturating_sub(1));
            if j % 2 == 1 {
                -w
            } else {
                w
            }
        })
        .collect()
}

struct LevinOrder {
    value: BigFloat,
    loss_bits: f64,
}

/// `L_k` from partial sums `S_0..S_k` and remainder estimates `omega_j = (j+1) a_j`;
/// `None` when the weights annihilate the remainder estimates.
fn levin_order(
    partial: &[BigFloat],
    terms: &[BigFloat],
    k: u32,
    p: u32,
) -> Result<Option<LevinOrder>, EngineError> {
    let weights = levin_weights(k);
    let mut num = BigFloat::zero(p);
    let mut den = BigFloat::zero(p);
    let mut num_abs = BigFloat::zero(p);
    let mut den_abs = BigFloat::zero(p);
    for (j, w) in weights.iter().enumerate() {
        let omega = terms[j].mul_int(j as i64 + 1);
        let c = BigFloat::from_bigint_exp(w, 0, p).checked_div(&omega)?;
        let cs = &c * &partial[j];
        num = &num + &cs;
        den = &den + &c;
        num_abs = &num_abs + &cs.abs();
        den_abs = &den_abs + &c.abs();
    }
    let loss = |total: &BigFloat, abs: &BigFloat| {
        if total.is_zero() {
            f64::from(p)
        } else {
            (abs.log2_abs() - total.log2_abs()).max(0.0)
        }
    };
    if den.is_zero() {
        return Ok(None);
    }
    let loss_bits = loss(&num, &num_abs).max(loss(&den, &den_abs));
    Ok(Some(LevinOrder {
        value: num.checked_div(&den)?,
        loss_bits,
    }))
}

/// Levin u transform of the partial sums, orders `k = 2, 3, ...`, stopping when
/// `|L_k - L_(k-1)|` falls below the target (reported as a heuristic bound).
///
/// Terms are evaluated with extra precision that grows whenever the
/// cancellation inside the transform eats into the guard. A decay exponent
/// estimated from `a_m / a_(2m)` at or below 1.05 is treated as divergence,
/// and no estimate is accepted before that check has run.
pub fn levin_series(term: &TermFn<'_>, opts: &SumOptions) -> Result<SumResult, EngineError> {
    const GUARD: u32 = 32;
    const DIVERGENCE_CHECK_FROM: usize = 16;
    let p = opts.working_bits();
    let target = opts.target(p);
    let mut extra: u32 = 64;
    'restart: loop {
        let wp = p + extra;
        let mut terms: Vec<BigFloat> = Vec::new();
        let mut partial: Vec<BigFloat> = Vec::new();
        let mut last: Option<BigFloat> = None;
        for k in 0..opts.max_terms {
            let t = term(k, wp)?;
            if t.is_zero() {
                return Err(EngineError::Arith(ArithError::Domain(format!(
                    "zero term at k={k} leaves no remainder estimate"
                ))));
            }
            let s = partial.last().map_or_else(|| t.clone(), |s| s + &t);
            terms.push(t);
            partial.push(s);
            let len = terms.len();
            if len >= DIVERGENCE_CHECK_FROM {
                let m = (len - 1) / 2;
                let (a, b) = (&terms[m], &terms[2 * m]);
                if a.signum() == b.signum() {
                    let decay = (a.log2_abs() - b.log2_abs())
                        / ((2 * m + 1) as f64 / (m + 1) as f64).log2();
                    if decay <= 1.05 {
                        return Err(EngineError::NoConvergence(decay));
                    }
                }
            }
            if k < 1 {
                continue;
            }
            let Some(order) = levin_order(&partial, &terms, k, wp)? else {
                continue;
            };
            if order.loss_bits + f64::from(GUARD) > f64::from(extra) {
                extra = (order.loss_bits.ceil() as u32 + 2 * GUARD).max(2 * extra);
                continue 'restart;
            }
            let value = order.value.with_precision(p);
            if let Some(prev) = &last {
                let diff = (&value - prev).abs();
                if diff < target && len >= DIVERGENCE_CHECK_FROM {
                    let bound = &diff + &rounding_allowance(&value, p);
                    return Ok(SumResult {
                        value,
                        error_bound: bound,
                        bound_kind: BoundKind::Heuristic,
                        terms_used: k + 1,
                    });
                }
            }
            last = Some(value);
        }
        return Err(EngineError::MaxTerms(opts.max_terms));
    }
}

fn catalog_term<'a>(
    spec: &'a IdentitySpec,
    params: &'a Params,
) -> impl Fn(u32, u32) -> Result<BigFloat, EngineError> + 'a {
    move |k, p| Ok(spec.term(k, params, &BigFloat::zero(p))?)
}

fn resolve_params(spec: &IdentitySpec, params: &Params) -> Params {
    match params {
        Params::None => spec.default_params(),
        p => p.clone(),
    }
}

/// Both sides of a terminating identity in exact rationals.
pub fn sum_finite_exact(id: &str, params: &Params) -> Result<ExactOutcome, EngineError> {
    Ok(catalog::lookup(id)?.evaluate_exact(params)?)
}

pub fn sum_geometric(
    id: &str,
    params: &Params,
    opts: &SumOptions,
) -> Result<SumResult, EngineError> {
    let spec = catalog::lookup(id)?;
    let ConvergenceClass::Geometric(rho) = &spec.class else {
        return Err(EngineError::WrongClass {
            id: id.to_string(),
            wanted: "geometric",
        });
    };
    let params = resolve_params(spec, params);
    let f = catalog_term(spec, &params);
    geometric_series(&f, rho, opts)
}

pub fn sum_alternating_accel(
    id: &str,
    params: &Params,
    opts: &SumOptions,
) -> Result<SumResult, EngineError> {
    let spec = catalog::lookup(id)?;
    let params = resolve_params(spec, params);
    let f = catalog_term(spec, &params);
    alternating_series(&f, opts)
}

pub fn sum_levin(id: &str, params: &Params, opts: &SumOptions) -> Result<SumResult, EngineError> {
    let spec = catalog::lookup(id)?;
    if spec.class != ConvergenceClass::PositiveSlow {
        return Err(EngineError::WrongClass {
            id: id.to_string(),
            wanted: "slowly convergent positive",
        });
    }
    let params = resolve_params(spec, params);
    let f = catalog_term(spec, &params);
    levin_series(&f, opts)
}

/// Sums an infinite series with the strategy its convergence class calls for.
/// Linear combinations sum each part and add the bounds.
pub fn sum_numeric(
    spec: &IdentitySpec,
    params: &Params,
    opts: &SumOptions,
) -> Result<SumResult, EngineError> {
    if let Generator::Combination(parts) = &spec.generator {
        let p = opts.working_bits();
        let mut value = BigFloat::zero(p);
        let mut bound = BigFloat::zero(p);
        let mut kind = BoundKind::Rigorous;
        let mut terms = 0;
        for (c, id) in parts {
            let part = sum_numeric(catalog::lookup(id)?, &Params::None, opts)?;
            let c = BigFloat::from_rational(c, p);
            value = &value + &(&c * &part.value);
            bound = &bound + &(&c.abs() * &part.error_bound);
            if part.bound_kind == BoundKind::Heuristic {
                kind = BoundKind::Heuristic;
            }
            terms += part.terms_used;
        }
        return Ok(SumResult {
            value,
            error_bound: bound,
            bound_kind: kind,
            terms_used: terms,
        });
    }
    match &spec.class {
        ConvergenceClass::Geometric(_) => sum_geometric(spec.id, params, opts),
        ConvergenceClass::AlternatingSlow => sum_alternating_accel(spec.id, params, opts),
        ConvergenceClass::PositiveSlow => sum_levin(spec.id, params, opts),
        ConvergenceClass::Terminating => Err(EngineError::WrongClass {
            id: spec.id.to_string(),
            wanted: "infinite",
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::const_pi;

    fn close(a: &BigFloat, b: &BigFloat, digits: u32) -> bool {
        let p = a.precision().min(b.precision());
        (a - b).abs() < ten_pow_neg(digits, p)
    }

    #[test]
    fn geometric_half() {
        let opts = SumOptions::new(30, 1000);
        let f = |k: u32, p: u32| {
            Ok(BigFloat::from_rational(
                &ExactRational::frac(1, 2).pow(k as i32)?,
                p,
            ))
        };
        let r = geometric_series(&f, &ExactRational::frac(1, 2), &opts).unwrap();
        assert_eq!(r.bound_kind, BoundKind::Rigorous);
        assert!(close(&r.value, &BigFloat::from_int(2, 200), 30));
        assert!(r.error_bound < ten_pow_neg(30, 200));
    }

    #[test]
    fn ratio_test_catches_misclassification() {
        let opts = SumOptions::new(20, 1000);
        let f = |k: u32, p: u32| {
            Ok(BigFloat::from_rational(
                &ExactRational::frac(9, 10).pow(k as i32)?,
                p,
            ))
        };
        let r = geometric_series(&f, &ExactRational::frac(1, 2), &opts);
        assert!(matches!(r, Err(EngineError::RatioTest { .. })));
    }

    #[test]
    fn leibniz_within_forty_terms() {
        let opts = SumOptions::new(20, 40);
        let f = |k: u32, p: u32| {
            let sign = if k.is_multiple_of(2) { 1 } else { -1 };
            Ok(BigFloat::from_rational(
                &ExactRational::frac(sign, 2 * i64::from(k) + 1),
                p,
            ))
        };
        let r = alternating_series(&f, &opts).unwrap();
        let quarter_pi = const_pi(200).div_int(4).unwrap();
        assert!(close(&r.value, &quarter_pi, 20));
        assert_eq!(r.bound_kind, BoundKind::Heuristic);
        assert!(r.terms_used <= 40);
    }

    #[test]
    fn sign_violation_is_reported() {
        let opts = SumOptions::new(20, 40);
        let f = |k: u32, p: u32| {
            Ok(BigFloat::from_rational(
                &ExactRational::frac(1, i64::from(k) + 1),
                p,
            ))
        };
        assert!(matches!(
            alternating_series(&f, &opts),
            Err(EngineError::SignPattern(1))
        ));
    }

    #[test]
    fn basel_within_sixty_terms() {
        let opts = SumOptions::new(10, 60);
        let f = |k: u32, p: u32| {
            let k = i64::from(k) + 1;
            Ok(BigFloat::from_rational(&ExactRational::frac(1, k * k), p))
        };
        let r = levin_series(&f, &opts).unwrap();
        let pi = const_pi(200);
        let zeta2 = (&pi * &pi).div_int(6).unwrap();
        assert!(close(&r.value, &zeta2, 10));
        assert!(r.terms_used <= 60);
    }

    #[test]
    fn harmonic_series_is_rejected() {
        let opts = SumOptions::new(10, 200);
        let f = |k: u32, p: u32| {
            Ok(BigFloat::from_rational(
                &ExactRational::frac(1, i64::from(k) + 1),
                p,
            ))
        };
        let r = levin_series(&f, &opts);
        assert!(matches!(r, Err(EngineError::NoConvergence(_))), "{r:?}");
    }

    #[test]
    fn finite_examples() {
        let x = ExactRational::frac(1, 3);
        let out = sum_finite_exact("wei-aa", &Params::Xn { x, n: 2 }).unwrap();
        assert_eq!(out.lhs, ExactRational::frac(267, 280));
        assert_eq!(out.rhs, ExactRational::frac(267, 280));
    }
}
