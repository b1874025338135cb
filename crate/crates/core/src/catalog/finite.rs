//! Terminating identities: both sides as finite sums over any `Scalar`.

use crate::arith::{ArithError, ExactRational, Scalar};

use super::coefficients::{
    coeff_a, coeff_b, coeff_e, coeff_f, coeff_g, gamma, mu, nu, omega, theta,
};
use super::forms::Forms;

/// Parameters of a terminating check, in the scalar the sums are taken in.
#[derive(Clone, Debug)]
pub enum FiniteArgs<S: Scalar> {
    /// Identities in `(x, n)`.
    Xn { x: S, n: u32 },
    /// The well-poised `7F6` and its derivatives, `(a,b,c,d,e)` with `-n` as the terminating parameter.
    Whipple { args: [S; 5], n: u32 },
    /// Identities in `n` alone; `like` supplies the scalar context.
    N { like: S, n: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiniteIdentity {
    Whipple,
    WeiAa,
    WeiAt,
    WeiDt,
    WeiGt,
    WeiJt,
    WeiIi,
    WeiJj,
}

fn xn_forms<S: Scalar>(x: &S, n: u32, k: u32) -> Forms<S> {
    Forms::new(x)
        .with('x', x.clone())
        .with_int('n', i64::from(n))
        .with_int('k', i64::from(k))
}

fn whipple_forms<S: Scalar>(args: &[S; 5], n: u32) -> Forms<S> {
    let [a, b, c, d, e] = args.clone();
    Forms::new(&a)
        .with('a', a)
        .with('b', b)
        .with('c', c)
        .with('d', d)
        .with('e', e)
        .with_int('n', i64::from(n))
}

/// Summand `k` of the `7F6` side.
pub fn whipple_lhs_term<S: Scalar>(args: &[S; 5], n: u32, k: u32) -> Result<S, ArithError> {
    let f = whipple_forms(args, n);
    f.hyper(
        &[
            ("a", k),
            ("1+a/2", k),
            ("b", k),
            ("c", k),
            ("d", k),
            ("e", k),
            ("-n", k),
        ],
        &[
            ("1", k),
            ("a/2", k),
            ("1+a-b", k),
            ("1+a-c", k),
            ("1+a-d", k),
            ("1+a-e", k),
            ("1+a+n", k),
        ],
    )
}

/// The product in front of the balanced `4F3` side.
pub fn whipple_prefactor<S: Scalar>(args: &[S; 5], n: u32) -> Result<S, ArithError> {
    whipple_forms(args, n).hyper(&[("1+a", n), ("1+a-d-e", n)], &[("1+a-d", n), ("1+a-e", n)])
}

/// Summand `k` of the balanced `4F3`, without the prefactor.
pub fn whipple_rhs_term<S: Scalar>(args: &[S; 5], n: u32, k: u32) -> Result<S, ArithError> {
    whipple_forms(args, n).hyper(
        &[("1+a-b-c", k), ("d", k), ("e", k), ("-n", k)],
        &[("1", k), ("1+a-b", k), ("1+a-c", k), ("d+e-a-n", k)],
    )
}

/// `sum_k (x)_k (1-x)_k (-n)_k / ((2-x)_k (1+x)_k (2+n)_k)`, the common right side in `(x, n)`.
pub fn basic_rhs_term<S: Scalar>(x: &S, n: u32, k: u32) -> Result<S, ArithError> {
    xn_forms(x, n, k).hyper(
        &[("x", k), ("1-x", k), ("-n", k)],
        &[("2-x", k), ("1+x", k), ("2+n", k)],
    )
}

/// `(3+4k) (x)_k (2-x)_k (1)_k (-n)_k / ((5/2-x)_k (1/2+x)_k (3/2)_k (5/2+n)_k)`.
pub fn poised_rhs_term<S: Scalar>(x: &S, n: u32, k: u32) -> Result<S, ArithError> {
    let f = xn_forms(x, n, k);
    Ok(f.lin("3+4k")
        * f.hyper(
            &[("x", k), ("2-x", k), ("1", k), ("-n", k)],
            &[("5/2-x", k), ("1/2+x", k), ("3/2", k), ("5/2+n", k)],
        )?)
}

/// Hypergeometric weight multiplying `A_k(x;n)`; zero once `3k > n`.
pub fn aa_weight<S: Scalar>(x: &S, n: u32, k: u32) -> Result<S, ArithError> {
    if 3 * k > n {
        return Ok(x.int(0));
    }
    xn_forms(x, n, k).hyper(
        &[
            ("x", k),
            ("1-x", k),
            ("1/2+x", k),
            ("3/2-x", k),
            ("1/2", k),
            ("1", k),
            ("-n", 3 * k),
        ],
        &[
            ("1+x", 2 * k),
            ("2-x", 2 * k),
            ("3/2", 2 * k),
            ("x-1-n", k),
            ("-x-n", k),
            ("-1/2-n", k),
        ],
    )
}

pub fn at_weight<S: Scalar>(x: &S, n: u32, k: u32) -> Result<S, ArithError> {
    if k > n {
        return Ok(x.int(0));
    }
    let f = xn_forms(x, n, k);
    Ok(f.power(-1, 4, k)
        * f.hyper(
            &[("x", k), ("1-x", k), ("1/2+x", k), ("3/2-x", k), ("-n", k)],
            &[("1+x", k), ("2-x", k), ("3/4", k), ("5/4", k), ("2+n", k)],
        )?)
}

pub fn dt_weight<S: Scalar>(x: &S, n: u32, k: u32) -> Result<S, ArithError> {
    if k > n {
        return Ok(x.int(0));
    }
    xn_forms(x, n, k).hyper(
        &[
            ("1/2+x", k),
            ("3/2-x", k),
            ("1/2", k),
            ("1", 2 * k),
            ("1+x+n", k),
            ("2-x+n", k),
            ("-n", k),
        ],
        &[
            ("2-x", 2 * k),
            ("1+x", 2 * k),
            ("3/2", k),
            ("2+n", k),
            ("3/2+n", 2 * k),
        ],
    )
}

pub fn gt_weight<S: Scalar>(x: &S, n: u32, k: u32) -> Result<S, ArithError> {
    if k > n {
        return Ok(x.int(0));
    }
    let f = xn_forms(x, n, k);
    Ok(f.power(-1, 27, k)
        * f.hyper(
            &[
                ("-1/2+x", k),
                ("3/2-x", k),
                ("x", 2 * k),
                ("2-x", 2 * k),
                ("-n", k),
                ("3/2+n", 2 * k),
            ],
            &[
                ("5/2-x", k),
                ("1/2+x", k),
                ("1/2", k),
                ("1/2", k),
                ("5/6", k),
                ("7/6", k),
                ("1+n", k),
                ("5/2+n", 2 * k),
            ],
        )?)
}

pub fn jt_weight<S: Scalar>(x: &S, n: u32, k: u32) -> Result<S, ArithError> {
    if 2 * k > n {
        return Ok(x.int(0));
    }
    let f = xn_forms(x, n, k);
    Ok(f.power(-1, 27, k)
        * f.hyper(
            &[
                ("x", k),
                ("2-x", k),
                ("-1/2+x", 2 * k),
                ("3/2-x", 2 * k),
                ("3/2+n", k),
                ("-n", 2 * k),
            ],
            &[
                ("5/2-x", 2 * k),
                ("1/2+x", 2 * k),
                ("5/6", k),
                ("7/6", k),
                ("5/2+n", k),
                ("1+n", 2 * k),
            ],
        )?)
}

fn ii_parts<S: Scalar>(like: &S, n: u32, k: u32, shift: i64) -> Result<(S, S), ArithError> {
    let f = Forms::new(like)
        .with_int('n', i64::from(n))
        .with_int('k', i64::from(k));
    if k > n {
        return Ok((f.int(0), f.int(0)));
    }
    let h_odd = f.harmonic(1 + 2 * k, 2, "0")?;
    let h_k = f.harmonic(k, 2, "0")?;
    let c = f.int(shift);
    let four = f.int(4);
    let lhs = f.lin("3+4k")
        * f.hyper(
            &[("1", k), ("1", k), ("1", k), ("-n", k)],
            &[("3/2", k), ("3/2", k), ("3/2", k), ("5/2+n", k)],
        )?
        * (four.clone() * h_odd.clone() - f.int(2) * h_k.clone() - c.clone());
    let rhs = f.hyper(
        &[("1/2", k), ("1", k), ("-n", k)],
        &[("3/2", k), ("3/2", k), ("1/2-n", k)],
    )? * (four * h_odd - h_k - c);
    Ok((lhs, rhs))
}

impl FiniteIdentity {
    /// Last index with a possibly nonzero left summand.
    pub fn last_index(self, n: u32) -> u32 {
        match self {
            FiniteIdentity::WeiAa => n / 3,
            FiniteIdentity::WeiJt => n / 2,
            _ => n,
        }
    }

    fn mismatch(self) -> ArithError {
        ArithError::Domain(format!("wrong parameter shape for {self:?}"))
    }

    /// Left summand `k`; zero past the termination index.
    pub fn lhs_term<S: Scalar>(self, args: &FiniteArgs<S>, k: u32) -> Result<S, ArithError> {
        match (self, args) {
            (FiniteIdentity::Whipple, FiniteArgs::Whipple { args, n }) => {
                whipple_lhs_term(args, *n, k)
            }
            (FiniteIdentity::WeiIi | FiniteIdentity::WeiJj, FiniteArgs::N { like, n }) => {
                let shift = if self == FiniteIdentity::WeiIi { 4 } else { 0 };
                Ok(ii_parts(like, *n, k, shift)?.0)
            }
            (_, FiniteArgs::Xn { x, n }) => {
                if k > self.last_index(*n) {
                    return Ok(x.int(0));
                }
                let nn = x.int(i64::from(*n));
                match self {
                    FiniteIdentity::WeiAa => Ok(aa_weight(x, *n, k)? * coeff_a(x, &nn, k)?),
                    FiniteIdentity::WeiAt => Ok(at_weight(x, *n, k)? * coeff_b(x, &nn, k)?),
                    FiniteIdentity::WeiDt => Ok(dt_weight(x, *n, k)? * coeff_e(x, &nn, k)?),
                    FiniteIdentity::WeiGt => Ok(gt_weight(x, *n, k)? * coeff_f(x, &nn, k)?),
                    FiniteIdentity::WeiJt => Ok(jt_weight(x, *n, k)? * coeff_g(x, &nn, k)?),
                    _ => Err(self.mismatch()),
                }
            }
            _ => Err(self.mismatch()),
        }
    }

    /// Right summand `k`, without any prefactor.
    pub fn rhs_term<S: Scalar>(self, args: &FiniteArgs<S>, k: u32) -> Result<S, ArithError> {
        match (self, args) {
            (FiniteIdentity::Whipple, FiniteArgs::Whipple { args, n }) => {
                whipple_rhs_term(args, *n, k)
            }
            (FiniteIdentity::WeiIi | FiniteIdentity::WeiJj, FiniteArgs::N { like, n }) => {
                let shift = if self == FiniteIdentity::WeiIi { 4 } else { 0 };
                Ok(ii_parts(like, *n, k, shift)?.1)
            }
            (
                FiniteIdentity::WeiAa | FiniteIdentity::WeiAt | FiniteIdentity::WeiDt,
                FiniteArgs::Xn { x, n },
            ) => basic_rhs_term(x, *n, k),
            (FiniteIdentity::WeiGt | FiniteIdentity::WeiJt, FiniteArgs::Xn { x, n }) => {
                poised_rhs_term(x, *n, k)
            }
            _ => Err(self.mismatch()),
        }
    }

    /// Factor multiplying the right-hand sum.
    pub fn rhs_prefactor<S: Scalar>(self, args: &FiniteArgs<S>) -> Result<S, ArithError> {
        match args {
            FiniteArgs::Whipple { args, n } => whipple_prefactor(args, *n),
            FiniteArgs::N { like, n } => {
                let f = Forms::new(like).with_int('n', i64::from(*n));
                f.frac(&["3+2n"], &["1+2n"])
            }
            FiniteArgs::Xn { x, .. } => Ok(x.int(1)),
        }
    }

    /// Both sides summed in the scalar of `args`.
    pub fn sides<S: Scalar>(self, args: &FiniteArgs<S>) -> Result<(S, S), ArithError> {
        let n = args.n();
        let like = args.like();
        let mut lhs = like.int(0);
        let mut rhs = like.int(0);
        for k in 0..=n {
            lhs = lhs + self.lhs_term(args, k)?;
            rhs = rhs + self.rhs_term(args, k)?;
        }
        Ok((lhs, self.rhs_prefactor(args)? * rhs))
    }
}

impl<S: Scalar> FiniteArgs<S> {
    pub fn n(&self) -> u32 {
        match self {
            FiniteArgs::Xn { n, .. } | FiniteArgs::Whipple { n, .. } | FiniteArgs::N { n, .. } => {
                *n
            }
        }
    }

    pub fn like(&self) -> S {
        match self {
            FiniteArgs::Xn { x, .. } => x.int(0),
            FiniteArgs::Whipple { args, .. } => args[0].int(0),
            FiniteArgs::N { like, .. } => like.int(0),
        }
    }
}

/// The very-well-poised side shared by all five transformations:
/// `sum_k (a+2k) (b)_k (c)_k (d)_k (e)_k / ((1+a-b)_k (1+a-c)_k (1+a-d)_k (1+a-e)_k)`.
pub fn well_poised_sum<S: Scalar>(args: &[S; 5], terms: u32) -> Result<S, ArithError> {
    let f = whipple_forms(args, 0);
    let mut acc = f.int(0);
    for k in 0..terms {
        let fk = f.clone().with_int('k', i64::from(k));
        acc = acc
            + fk.lin("a+2k")
                * fk.hyper(
                    &[("b", k), ("c", k), ("d", k), ("e", k)],
                    &[("1+a-b", k), ("1+a-c", k), ("1+a-d", k), ("1+a-e", k)],
                )?;
    }
    Ok(acc)
}

/// The transformations whose coefficient functions are `mu`, `nu`, `omega`, `gamma`, `theta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transformation {
    Mu,
    Nu,
    Omega,
    Gamma,
    Theta,
}

impl Transformation {
    /// Summand `k` of the side carrying the coefficient function.
    pub fn term<S: Scalar>(self, args: &[S; 5], k: u32) -> Result<S, ArithError> {
        let f = whipple_forms(args, 0);
        let sign = f.power(-1, 1, k);
        Ok(match self {
            Transformation::Mu => {
                f.hyper(
                    &[
                        ("b", k),
                        ("c", k),
                        ("d", k),
                        ("1+a-b-c", k),
                        ("1+a-b-d", k),
                        ("1+a-c-d", k),
                        ("e", 3 * k),
                    ],
                    &[
                        ("b+e-a", k),
                        ("c+e-a", k),
                        ("d+e-a", k),
                        ("1+a-b", 2 * k),
                        ("1+a-c", 2 * k),
                        ("1+a-d", 2 * k),
                    ],
                )? * mu(args, k)?
            }
            Transformation::Nu => {
                sign * f.hyper(
                    &[
                        ("c", k),
                        ("d", k),
                        ("e", k),
                        ("1+a-b-c", k),
                        ("1+a-b-d", k),
                        ("1+a-b-e", k),
                    ],
                    &[
                        ("1+a-c", k),
                        ("1+a-d", k),
                        ("1+a-e", k),
                        ("1+2a-b-c-d-e", k),
                        ("1+a-b", 2 * k),
                    ],
                )? * nu(args, k)?
            }
            Transformation::Omega => {
                f.hyper(
                    &[
                        ("c", k),
                        ("e", k),
                        ("1+a-b-c", k),
                        ("1+a-b-e", k),
                        ("1+a-c-d", k),
                        ("1+a-d-e", k),
                        ("1+a-b-d", 2 * k),
                    ],
                    &[
                        ("1+a-c", k),
                        ("1+a-e", k),
                        ("1+a-b", 2 * k),
                        ("1+a-d", 2 * k),
                        ("1+2a-b-c-d-e", 2 * k),
                    ],
                )? * omega(args, k)?
            }
            Transformation::Gamma => {
                sign * f.hyper(
                    &[
                        ("c", k),
                        ("1+a-b-d", k),
                        ("1+a-b-e", k),
                        ("d", 2 * k),
                        ("e", 2 * k),
                        ("1+a-b-c", 2 * k),
                    ],
                    &[
                        ("d+e-a", k),
                        ("1+a-d", k),
                        ("1+a-e", k),
                        ("1+2a-b-c-d-e", k),
                        ("1+a-c", 2 * k),
                        ("1+a-b", 3 * k),
                    ],
                )? * gamma(args, k)?
            }
            Transformation::Theta => {
                sign * f.hyper(
                    &[
                        ("c", k),
                        ("d", k),
                        ("1+a-b-e", k),
                        ("1+a-c-d", k),
                        ("e", 2 * k),
                        ("1+a-b-c", 2 * k),
                        ("1+a-b-d", 2 * k),
                    ],
                    &[
                        ("1+a-e", k),
                        ("1+a-c", 2 * k),
                        ("1+a-d", 2 * k),
                        ("1+2a-b-c-d-e", 2 * k),
                        ("1+a-b", 3 * k),
                    ],
                )? * theta(args, k)?
            }
        })
    }

    /// Sums `terms` summands of the coefficient side.
    pub fn sum<S: Scalar>(self, args: &[S; 5], terms: u32) -> Result<S, ArithError> {
        let mut acc = args[0].int(0);
        for k in 0..terms {
            acc = acc + self.term(args, k)?;
        }
        Ok(acc)
    }
}

/// Maps a grid value `x` to Whipple parameters; `tie_c` sets `c = b` for the second-derivative checks.
pub fn whipple_point(x: &ExactRational, tie_c: bool) -> [ExactRational; 5] {
    let q = ExactRational::frac;
    let a = q(2, 1) * x.clone() + q(1, 2);
    let b = x.clone() + q(1, 3);
    let c = if tie_c {
        b.clone()
    } else {
        q(3, 4) - x.clone()
    };
    let d = q(1, 5) + q(1, 2) * x.clone();
    let e = q(2, 3) - x.clone();
    [a, b, c, d, e]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::frac(n, d)
    }

    fn xn(x: ExactRational, n: u32) -> FiniteArgs<ExactRational> {
        FiniteArgs::Xn { x, n }
    }

    #[test]
    fn aa_example() {
        let (l, r) = FiniteIdentity::WeiAa.sides(&xn(q(1, 3), 2)).unwrap();
        assert_eq!(l, q(267, 280));
        assert_eq!(r, q(267, 280));
    }

    #[test]
    fn whipple_at_zero_is_one() {
        let args = FiniteArgs::Whipple {
            args: whipple_point(&q(2, 7), false),
            n: 0,
        };
        assert_eq!(
            FiniteIdentity::Whipple.sides(&args).unwrap(),
            (q(1, 1), q(1, 1))
        );
    }

    #[test]
    fn ii_at_one() {
        let args = FiniteArgs::N {
            like: q(0, 1),
            n: 1,
        };
        let (l, r) = FiniteIdentity::WeiIi.sides(&args).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn termination() {
        for id in [FiniteIdentity::WeiAa, FiniteIdentity::WeiJt] {
            let args = xn(q(3, 7), 7);
            for k in id.last_index(7) + 1..=7 {
                assert_eq!(id.lhs_term(&args, k).unwrap(), q(0, 1));
            }
        }
    }

    #[test]
    fn wrong_shape_is_an_error() {
        let args = FiniteArgs::N {
            like: q(0, 1),
            n: 1,
        };
        assert!(FiniteIdentity::WeiAa.lhs_term(&args, 0).is_err());
    }
}
