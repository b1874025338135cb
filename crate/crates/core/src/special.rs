//! Shifted factorials and generalized harmonic numbers over any `Scalar`.

use crate::arith::{ArithError, ExactRational, Scalar};

/// `(x)_n = x (x+1) ... (x+n-1)`, with `(x)_0 = 1`.
pub fn pochhammer<S: Scalar>(x: &S, n: u32) -> S {
    let mut acc = x.int(1);
    for i in 0..n {
        acc = acc * (x.clone() + x.int(i64::from(i)));
    }
    acc
}

/// `H_n^(order)(x) = sum_{k=1..n} 1/(x+k)^order`.
pub fn harmonic<S: Scalar>(n: u32, order: u32, x: &S) -> Result<S, ArithError> {
    let mut acc = x.int(0);
    for k in 1..=n {
        let base = x.clone() + x.int(i64::from(k));
        if base.is_zero() {
            return Err(ArithError::Pole(format!(
                "harmonic sum of order {order} meets x+{k} = 0"
            )));
        }
        acc = acc + x.int(1).checked_div(&base.powu(order))?;
    }
    Ok(acc)
}

/// Ordinary harmonic number `H_n^(order)` (shift zero) in the given context.
pub fn harmonic_number<S: Scalar>(n: u32, order: u32, like: &S) -> S {
    harmonic(n, order, &like.int(0)).expect("no pole at shift zero")
}

/// `num / den`, reporting a vanishing denominator as a pole named `what`.
pub fn ratio<S: Scalar>(num: S, den: &S, what: &str) -> Result<S, ArithError> {
    if den.is_zero() {
        return Err(ArithError::Pole(format!("{what} vanishes")));
    }
    num.checked_div(den)
}

/// Two forms of the same inner sum: `sum_{j=1..k} {1/(2j-1)^2 - 1/(16 j^2)}`
/// and `H_{2k}^(2) - (5/16) H_k^(2)`.
pub fn harmonic_reindex_check(k: u32) -> (ExactRational, ExactRational) {
    let mut direct = ExactRational::zero();
    for j in 1..=i64::from(k) {
        let odd = ExactRational::frac(1, (2 * j - 1) * (2 * j - 1));
        let even = ExactRational::frac(1, 16 * j * j);
        direct = direct + odd - even;
    }
    let one = ExactRational::one();
    let rewritten =
        harmonic_number(2 * k, 2, &one) - ExactRational::frac(5, 16) * harmonic_number(k, 2, &one);
    (direct, rewritten)
}
