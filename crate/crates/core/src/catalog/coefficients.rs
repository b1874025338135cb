//! Coefficient rational functions of the five transformations and their
//! specializations in `(x, n)`.

use std::fmt;
use std::str::FromStr;

use crate::arith::{ArithError, Scalar};

use super::forms::Forms;

fn five<S: Scalar>(args: &[S; 5], k: u32) -> Forms<S> {
    let [a, b, c, d, e] = args.clone();
    Forms::new(&a)
        .with('a', a)
        .with('b', b)
        .with('c', c)
        .with('d', d)
        .with('e', e)
        .with_int('k', i64::from(k))
}

fn xn<S: Scalar>(x: &S, n: &S, k: u32) -> Forms<S> {
    Forms::new(x)
        .with('x', x.clone())
        .with('n', n.clone())
        .with_int('k', i64::from(k))
}

/// Coefficient paired with the cubic-shift transformation (`(e)_{3k}` terms).
pub fn mu<S: Scalar>(args: &[S; 5], k: u32) -> Result<S, ArithError> {
    let f = five(args, k);
    Ok(f.frac(&["a-c+2k", "a-e"], &["a-c-e-k"])?
        - f.frac(
            &["c+k", "e+3k", "a-e", "1+a-b-d+k"],
            &["1+a-d+2k", "a-b-e-k", "a-c-e-k"],
        )?
        + f.frac(
            &[
                "b+k",
                "c+k",
                "e+3k",
                "1+e+3k",
                "a-e",
                "1+a-b-d+k",
                "1+a-c-d+k",
            ],
            &[
                "1+a-b+2k", "1+a-c+2k", "1+a-d+2k", "a-b-e-k", "a-c-e-k", "a-d-e-k",
            ],
        )?)
}

/// Coefficient of the alternating transformation with `(1+a-b)_{2k}` below.
pub fn nu<S: Scalar>(args: &[S; 5], k: u32) -> Result<S, ArithError> {
    let f = five(args, k);
    Ok(f.frac(&["1+2a-b-c-d+2k", "a-e+k"], &["1+2a-b-c-d-e+k"])?
        + f.frac(
            &["1+a-b-c+k", "1+a-b-d+k", "e+k"],
            &["1+a-b+2k", "1+2a-b-c-d-e+k"],
        )?)
}

/// Coefficient of the transformation with `(1+a-b-d)_{2k}` above.
pub fn omega<S: Scalar>(args: &[S; 5], k: u32) -> Result<S, ArithError> {
    let f = five(args, k);
    Ok(f.frac(&["1+2a-b-c-d+3k", "a-e+k"], &["1+2a-b-c-d-e+2k"])?
        + f.frac(
            &[
                "e+k",
                "1+a-b-c+k",
                "1+a-c-d+k",
                "1+a-b-d+2k",
                "2+2a-b-d-e+3k",
            ],
            &["1+a-b+2k", "1+a-d+2k", "1+2a-b-c-d-e+2k", "2+2a-b-c-d-e+2k"],
        )?)
}

/// Coefficient of the transformation with `(1+a-b)_{3k}` and `(d)_{2k}(e)_{2k}`.
pub fn gamma<S: Scalar>(args: &[S; 5], k: u32) -> Result<S, ArithError> {
    let f = five(args, k);
    Ok(f.frac(&["1+2a-b-c-d+3k", "a-e+k"], &["1+2a-b-c-d-e+k"])?
        + f.frac(
            &["e+2k", "1+a-b-c+2k", "1+a-b-d+k"],
            &["1+a-b+3k", "1+2a-b-c-d-e+k"],
        )?
        + f.frac(
            &[
                "c+k",
                "d+2k",
                "e+2k",
                "1+a-b-c+2k",
                "1+a-b-d+k",
                "1+a-b-e+k",
            ],
            &[
                "d+e-a+k",
                "1+a-c+2k",
                "1+2a-b-c-d-e+k",
                "1+a-b+3k",
                "2+a-b+3k",
            ],
        )?)
}

/// Coefficient of the transformation with `(1+a-b)_{3k}` and `(e)_{2k}` above.
pub fn theta<S: Scalar>(args: &[S; 5], k: u32) -> Result<S, ArithError> {
    let f = five(args, k);
    Ok(f.frac(&["1+2a-b-c-d+4k", "a-e+k"], &["1+2a-b-c-d-e+2k"])?
        + f.frac(
            &[
                "e+2k",
                "1+a-b-c+2k",
                "1+a-b-d+2k",
                "1+a-c-d+k",
                "2+2a-b-d-e+3k",
            ],
            &["1+a-b+3k", "1+a-d+2k", "1+2a-b-c-d-e+2k", "2+2a-b-c-d-e+2k"],
        )?
        + f.frac(
            &[
                "c+k",
                "e+2k",
                "1+a-b-c+2k",
                "1+a-b-e+k",
                "1+a-c-d+k",
                "1+a-b-d+2k",
                "2+a-b-d+2k",
            ],
            &[
                "1+a-c+2k",
                "1+a-d+2k",
                "1+a-b+3k",
                "2+a-b+3k",
                "1+2a-b-c-d-e+2k",
                "2+2a-b-c-d-e+2k",
            ],
        )?)
}

pub fn coeff_a<S: Scalar>(x: &S, n: &S, k: u32) -> Result<S, ArithError> {
    let f = xn(x, n, k);
    Ok(f.frac(&["x+2k", "1+n"], &["x-k+n"])?
        - f.frac(
            &["1-x+k", "3-2x+2k", "3k-n", "1+n"],
            &["3+4k", "x-k+n", "1-x-k+n"],
        )?
        + f.frac(
            &[
                "x+k", "1-x+k", "1+2x+2k", "3-2x+2k", "3k-n", "1+3k-n", "1+n",
            ],
            &["1+x+2k", "2-x+2k", "3+4k", "1-2k+2n", "x-k+n", "1-x-k+n"],
        )?)
}

pub fn coeff_b<S: Scalar>(x: &S, n: &S, k: u32) -> Result<S, ArithError> {
    let f = xn(x, n, k);
    Ok(f.frac(&["3+4k", "1+k+n"], &["3+2k+2n"])?
        + f.frac(&["1+2x+2k", "3-2x+2k", "k-n"], &["3+4k", "3+2k+2n"])?)
}

pub fn coeff_e<S: Scalar>(x: &S, n: &S, k: u32) -> Result<S, ArithError> {
    let f = xn(x, n, k);
    Ok(f.frac(&["3", "1+2k", "1+k+n"], &["3+4k+2n"])?
        + f.frac(
            &["1+2x+2k", "3-2x+2k", "1+2k", "3+3k+n", "k-n"],
            &["1+x+2k", "2-x+2k", "3+4k+2n", "5+4k+2n"],
        )?)
}

/// The coefficient making the cubic-denominator terminating identity hold.
///
/// Its third term carries the factor `x+2k`; without it the identity fails
/// for every `n >= 1` (see [`coeff_f_without_x_factor`]).
pub fn coeff_f<S: Scalar>(x: &S, n: &S, k: u32) -> Result<S, ArithError> {
    let f = xn(x, n, k);
    Ok(f.frac(&["2x-1+2k", "3-x+3k+n"], &["1+k+n"])?
        + f.frac(&["2-x+2k", "3-2x+2k", "3+4k+2n"], &["3", "1+2k", "1+k+n"])?
        + f.frac(
            &[
                "4", "x+2k", "2-x+2k", "3-2x+2k", "2x-1+2k", "k-n", "3+4k+2n",
            ],
            &["3", "1+2k", "1+2k", "5+6k", "1+k+n", "5+4k+2n"],
        )?)
}

/// The same coefficient with the `x+2k` factor of the third term omitted.
pub fn coeff_f_without_x_factor<S: Scalar>(x: &S, n: &S, k: u32) -> Result<S, ArithError> {
    let f = xn(x, n, k);
    Ok(f.frac(&["2x-1+2k", "3-x+3k+n"], &["1+k+n"])?
        + f.frac(&["2-x+2k", "3-2x+2k", "3+4k+2n"], &["3", "1+2k", "1+k+n"])?
        + f.frac(
            &["4", "2-x+2k", "3-2x+2k", "2x-1+2k", "k-n", "3+4k+2n"],
            &["3", "1+2k", "1+2k", "5+6k", "1+k+n", "5+4k+2n"],
        )?)
}

pub fn coeff_g<S: Scalar>(x: &S, n: &S, k: u32) -> Result<S, ArithError> {
    let f = xn(x, n, k);
    Ok(f.frac(&["1+4k", "3+2k+2n"], &["1+2k+n"])?
        + f.frac(
            &["2x-1+4k", "3-2x+4k", "2k-n", "2+x+3k+n"],
            &["3", "1+2x+4k", "1+2k+n", "2+2k+n"],
        )?
        + f.frac(
            &["x+k", "2x-1+4k", "3-2x+4k", "2k-n", "3+2k+2n"],
            &["3", "5-2x+4k", "5+6k", "1+2k+n", "2+2k+n"],
        )?)
}

/// Names accepted by [`coefficient`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientName {
    Mu,
    Nu,
    Omega,
    Gamma,
    Theta,
    A,
    B,
    E,
    F,
    G,
}

impl CoefficientName {
    pub const ALL: [CoefficientName; 10] = [
        CoefficientName::Mu,
        CoefficientName::Nu,
        CoefficientName::Omega,
        CoefficientName::Gamma,
        CoefficientName::Theta,
        CoefficientName::A,
        CoefficientName::B,
        CoefficientName::E,
        CoefficientName::F,
        CoefficientName::G,
    ];

    /// Five arguments `(a,b,c,d,e)` or two `(x,n)`.
    pub fn arity(self) -> usize {
        match self {
            CoefficientName::Mu
            | CoefficientName::Nu
            | CoefficientName::Omega
            | CoefficientName::Gamma
            | CoefficientName::Theta => 5,
            _ => 2,
        }
    }
}

impl fmt::Display for CoefficientName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientName::Mu => "mu",
            CoefficientName::Nu => "nu",
            CoefficientName::Omega => "omega",
            CoefficientName::Gamma => "gamma",
            CoefficientName::Theta => "theta",
            CoefficientName::A => "A",
            CoefficientName::B => "B",
            CoefficientName::E => "E",
            CoefficientName::F => "F",
            CoefficientName::G => "G",
        })
    }
}

impl FromStr for CoefficientName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CoefficientName::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| format!("unknown coefficient {s}"))
    }
}

/// Evaluates a named coefficient; `args` holds `(a,b,c,d,e)` or `(x,n)`.
pub fn coefficient<S: Scalar>(name: CoefficientName, k: u32, args: &[S]) -> Result<S, ArithError> {
    if args.len() != name.arity() {
        return Err(ArithError::Domain(format!(
            "{name} takes {} arguments, got {}",
            name.arity(),
            args.len()
        )));
    }
    let as_five = || -> [S; 5] { [0, 1, 2, 3, 4].map(|i| args[i].clone()) };
    match name {
        CoefficientName::Mu => mu(&as_five(), k),
        CoefficientName::Nu => nu(&as_five(), k),
        CoefficientName::Omega => omega(&as_five(), k),
        CoefficientName::Gamma => gamma(&as_five(), k),
        CoefficientName::Theta => theta(&as_five(), k),
        CoefficientName::A => coeff_a(&args[0], &args[1], k),
        CoefficientName::B => coeff_b(&args[0], &args[1], k),
        CoefficientName::E => coeff_e(&args[0], &args[1], k),
        CoefficientName::F => coeff_f(&args[0], &args[1], k),
        CoefficientName::G => coeff_g(&args[0], &args[1], k),
    }
}
