//! Summands of the infinite series, generic over the scalar.

use crate::arith::{ArithError, ExactRational, Scalar};

use super::forms::Forms;

#[derive(Debug, Clone, PartialEq)]
pub enum Series {
    Ramanujan,
    GosperPi,
    /// The `4F3(-1/8)` series at rational `(a, b)`.
    Gosper4F3 {
        a: ExactRational,
        b: ExactRational,
    },
    GuilleraA,
    GuilleraB,
    /// Inner sum written as `sum_j {1/(2j-1)^2 - 1/(16 j^2)}`.
    GuoA,
    GuoB,
    /// Inner sum written as `H_{2k}^(2) - (5/16) H_k^(2)`.
    GuoAH,
    GuoBH,
    SunA,
    SunB,
    /// Alternating series with bracket `H_{1+2k}^(2) - H_k^(2)/2 - 1`.
    SunBShifted,
    WeiB,
    WeiC,
    WeiD,
    WeiE,
    /// Second brace term `(5+6k)(10+39k+48k^2+16k^3)/((1+4k)^3 (3+4k)^3)`.
    WeiF,
    /// Same with `(5+6k)` dividing instead of multiplying.
    WeiFDivided,
    /// Last term over `(3+4k)^5`.
    WeiCC,
    WeiDD,
    WeiEE,
    /// `WeiCC` / `WeiEE` with the last term over `(3+4k)^3`.
    WeiCCCubed,
    WeiEECubed,
    WeiBT,
    WeiCT,
    /// `+4` both inside the bracket and outside.
    WeiET,
    WeiFT,
    WeiHT,
    WeiIT,
    WeiLT,
    WeiMT,
    /// Even-index part of the parity split of `WeiEE`.
    ParityEven,
    /// Odd-index part of the parity split of `WeiEE`.
    ParityOdd,
}

fn forms<S: Scalar>(like: &S, k: u32) -> Forms<S> {
    Forms::new(like).with_int('k', i64::from(k))
}

/// `(1)_k^3 / (3/2)_k^3`
fn p3<S: Scalar>(f: &Forms<S>, k: u32) -> Result<S, ArithError> {
    f.hyper(
        &[("1", k), ("1", k), ("1", k)],
        &[("3/2", k), ("3/2", k), ("3/2", k)],
    )
}

/// `(1/2)_k^3 / (1)_k^3`
fn q3<S: Scalar>(f: &Forms<S>, k: u32) -> Result<S, ArithError> {
    f.hyper(
        &[("1/2", k), ("1/2", k), ("1/2", k)],
        &[("1", k), ("1", k), ("1", k)],
    )
}

fn h2<S: Scalar>(f: &Forms<S>, n: u32) -> Result<S, ArithError> {
    f.harmonic(n, 2, "0")
}

/// `(1)_k^2 / ((5/4)_k (7/4)_k) / 4^k`
fn quarter<S: Scalar>(f: &Forms<S>, k: u32) -> Result<S, ArithError> {
    Ok(f.power(1, 4, k) * f.hyper(&[("1", k), ("1", k)], &[("5/4", k), ("7/4", k)])?)
}

/// `(-1/4)^k (1)_k^3 (1/2)_k / ((5/4)_k^2 (7/4)_k^2)`
fn quarter_alt<S: Scalar>(f: &Forms<S>, k: u32) -> Result<S, ArithError> {
    Ok(f.power(-1, 4, k)
        * f.hyper(
            &[("1", k), ("1", k), ("1", k), ("1/2", k)],
            &[("5/4", k), ("5/4", k), ("7/4", k), ("7/4", k)],
        )?)
}

/// `r^k (1)_k^2 / ((7/6)_k (11/6)_k)`
fn sixths<S: Scalar>(f: &Forms<S>, k: u32, num: i64, den: i64) -> Result<S, ArithError> {
    Ok(f.power(num, den, k) * f.hyper(&[("1", k), ("1", k)], &[("7/6", k), ("11/6", k)])?)
}

/// `(1)_{2k}^3 / ((3/2)_{2k}^3 64^k)`
fn doubled<S: Scalar>(f: &Forms<S>, k: u32) -> Result<S, ArithError> {
    Ok(f.power(1, 64, k) * p3(f, 2 * k)?)
}

/// `49+342k+840k^2+880k^3+336k^4`
fn quartic<S: Scalar>(f: &Forms<S>) -> S {
    let k = f.lin("k");
    let mut acc = f.int(0);
    for c in [336, 880, 840, 342, 49] {
        acc = acc * k.clone() + f.int(c);
    }
    acc
}

/// Shared pieces of the order-64 series: the weighted bracket factor and the
/// polynomial tail over `(3+4k)^power`.
fn order64<S: Scalar>(
    f: &Forms<S>,
    k: u32,
    bracket_shift: i64,
    tail_power: u32,
) -> Result<S, ArithError> {
    let weight = doubled(f, k)?;
    let bracket = h2(f, 1 + 4 * k)? - f.rat(5, 4) * h2(f, 2 * k)? - f.int(bracket_shift);
    let main = quartic(f).checked_div(&f.den("3+4k")?.powu(3))? * bracket;
    let tail = f.lin("4+4k") * f.lin("1+2k") * f.lin("2+3k") * f.lin("5+6k");
    let tail = tail.checked_div(&f.den("3+4k")?.powu(tail_power))?;
    Ok(weight * (main + tail))
}

fn wei_c_like<S: Scalar>(f: &Forms<S>, k: u32, shift: i64) -> Result<S, ArithError> {
    let first = f.frac(&["5+6k"], &["1+2k"])? * (h2(f, k)? + f.int(shift));
    let second = f.frac(&["24+32k"], &["1+2k", "1+2k", "1+2k"])?;
    Ok(quarter(f, k)? * (first - second))
}

fn wei_d_like<S: Scalar>(f: &Forms<S>, k: u32, inner: i64) -> Result<S, ArithError> {
    let poly = f.lin("19+56k") + f.int(40) * f.lin("k").square();
    let bracket = h2(f, k)? + h2(f, 1 + 2 * k)? - f.int(4) * h2(f, 3 + 4 * k)? + f.int(inner);
    Ok(quarter_alt(f, k)? * (poly * bracket + f.int(4)))
}

fn wei_e_like<S: Scalar>(f: &Forms<S>, k: u32, shift: i64) -> Result<S, ArithError> {
    let first = f.frac(&["21+22k"], &["1+2k"])? * (h2(f, 1 + 2 * k)? + f.int(shift));
    let second = f.frac(&["145+174k"], &["1+2k", "1+2k", "1+2k"])?;
    Ok(sixths(f, k, 16, 27)? * (first - second))
}

/// `83+192k+112k^2`
fn wei_f_poly<S: Scalar>(f: &Forms<S>) -> S {
    f.lin("83+192k") + f.int(112) * f.lin("k").square()
}

/// `10+39k+48k^2+16k^3`
fn wei_f_cubic<S: Scalar>(f: &Forms<S>) -> S {
    let k = f.lin("k");
    ((f.int(16) * k.clone() + f.int(48)) * k.clone() + f.int(39)) * k + f.int(10)
}

fn wei_f_like<S: Scalar>(f: &Forms<S>, k: u32, shift: i64, divided: bool) -> Result<S, ArithError> {
    let first = wei_f_poly(f).checked_div(&(f.int(64) * f.den("1+4k")? * f.den("3+4k")?))?
        * (h2(f, k)? + f.int(shift));
    let cubes = f.den("1+4k")?.powu(3) * f.den("3+4k")?.powu(3);
    let second = if divided {
        wei_f_cubic(f).checked_div(&(cubes * f.den("5+6k")?))?
    } else {
        (f.lin("5+6k") * wei_f_cubic(f)).checked_div(&cubes)?
    };
    Ok(sixths(f, k, -1, 27)? * (first - second))
}

fn inner_guo<S: Scalar>(f: &Forms<S>, k: u32) -> Result<S, ArithError> {
    let mut acc = f.int(0);
    for j in 1..=i64::from(k) {
        let odd = f.int(2 * j - 1).square();
        let even = f.int(16 * j * j);
        acc = acc + f.int(1).checked_div(&odd)? - f.int(1).checked_div(&even)?;
    }
    Ok(acc)
}

fn inner_guo_h<S: Scalar>(f: &Forms<S>, k: u32) -> Result<S, ArithError> {
    Ok(h2(f, 2 * k)? - f.rat(5, 16) * h2(f, k)?)
}

impl Series {
    /// Summand `k` in the scalar of `like`.
    pub fn term<S: Scalar>(&self, k: u32, like: &S) -> Result<S, ArithError> {
        let f = forms(like, k);
        match self {
            Series::Ramanujan => Ok(f.lin("1+6k") * f.power(1, 4, k) * q3(&f, k)?),
            Series::GosperPi => Ok(f.lin("1+6k") * f.power(-1, 8, k) * q3(&f, k)?),
            Series::Gosper4F3 { a, b } => {
                let g = f
                    .clone()
                    .with('a', like.constant(a))
                    .with('b', like.constant(b));
                Ok(g.power(-1, 8, k)
                    * g.hyper(
                        &[("a", k), ("1+a/3", k), ("b", k), ("1-b", k)],
                        &[("1", k), ("a/3", k), ("1/2+a/2+b/2", k), ("1+a/2-b/2", k)],
                    )?)
            }
            Series::GuilleraA => Ok(f.lin("2+3k") * f.power(-1, 8, k) * p3(&f, k)?),
            Series::GuilleraB => Ok(f.lin("3+4k") * f.power(-1, 1, k) * p3(&f, k)?),
            Series::GuoA => Ok(Series::Ramanujan.term(k, like)? * inner_guo(&f, k)?),
            Series::GuoB => Ok(Series::GosperPi.term(k, like)? * inner_guo(&f, k)?),
            Series::GuoAH => Ok(Series::Ramanujan.term(k, like)? * inner_guo_h(&f, k)?),
            Series::GuoBH => Ok(Series::GosperPi.term(k, like)? * inner_guo_h(&f, k)?),
            Series::SunA => {
                let bracket = h2(&f, 1 + 2 * k)? - f.rat(5, 4) * h2(&f, k)?;
                Ok(Series::GuilleraA.term(k, like)? * bracket)
            }
            Series::SunB | Series::SunBShifted => {
                let shift = if *self == Series::SunB { 0 } else { 1 };
                let bracket = h2(&f, 1 + 2 * k)? - f.rat(1, 2) * h2(&f, k)? - f.int(shift);
                Ok(Series::GuilleraB.term(k, like)? * bracket)
            }
            Series::WeiB => {
                let weight = f
                    .hyper(&[("1", k)], &[("3/2", k)])?
                    .checked_div(&f.den("1+2k")?)?;
                Ok(weight * (h2(&f, 1 + 2 * k)? - f.rat(1, 4) * h2(&f, k)?))
            }
            Series::WeiC => wei_c_like(&f, k, 0),
            Series::WeiBT => wei_c_like(&f, k, 4),
            Series::WeiCT => Ok(quarter(&f, k)? * f.frac(&["5+6k"], &["1+2k"])?),
            Series::WeiD => wei_d_like(&f, k, 0),
            Series::WeiET => wei_d_like(&f, k, 4),
            Series::WeiFT => {
                let poly = f.lin("19+56k") + f.int(40) * f.lin("k").square();
                Ok(quarter_alt(&f, k)? * poly)
            }
            Series::WeiE => wei_e_like(&f, k, 0),
            Series::WeiHT => wei_e_like(&f, k, 4),
            Series::WeiIT => Ok(sixths(&f, k, 16, 27)? * f.frac(&["21+22k"], &["1+2k"])?),
            Series::WeiF => wei_f_like(&f, k, 0, false),
            Series::WeiFDivided => wei_f_like(&f, k, 0, true),
            Series::WeiLT => wei_f_like(&f, k, 4, false),
            Series::WeiMT => {
                let ratio = wei_f_poly(&f).checked_div(&(f.den("1+4k")? * f.den("3+4k")?))?;
                Ok(sixths(&f, k, -1, 27)? * ratio)
            }
            Series::WeiCC => order64(&f, k, 1, 5),
            Series::WeiEE => order64(&f, k, 0, 5),
            Series::WeiCCCubed => order64(&f, k, 1, 3),
            Series::WeiEECubed => order64(&f, k, 0, 3),
            Series::WeiDD => {
                Ok(doubled(&f, k)? * quartic(&f).checked_div(&f.den("3+4k")?.powu(3))?)
            }
            Series::ParityEven => {
                let bracket = h2(&f, 1 + 4 * k)? - f.rat(5, 4) * h2(&f, 2 * k)?;
                Ok(f.lin("2+6k") * f.power(1, 64, k) * p3(&f, 2 * k)? * bracket)
            }
            Series::ParityOdd => {
                let bracket = h2(&f, 3 + 4 * k)? - f.rat(5, 4) * h2(&f, 1 + 2 * k)?;
                Ok(-(f.lin("5+6k") * f.power(1, 8, 1 + 2 * k) * p3(&f, 1 + 2 * k)? * bracket))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::frac(n, d)
    }

    fn t(s: Series, k: u32) -> ExactRational {
        s.term(k, &ExactRational::zero()).unwrap()
    }

    #[test]
    fn sun_a_first_terms() {
        assert_eq!(t(Series::SunA, 0), q(2, 1));
        assert_eq!(t(Series::SunA, 1), q(-5, 243));
    }

    #[test]
    fn wei_b_second_term() {
        assert_eq!(t(Series::WeiB, 1), q(20, 81));
    }

    #[test]
    fn quartic_matches_display() {
        let f = forms(&ExactRational::zero(), 2);
        assert_eq!(
            quartic(&f),
            q(49 + 342 * 2 + 840 * 4 + 880 * 8 + 336 * 16, 1)
        );
        assert_eq!(wei_f_cubic(&f), q(10 + 78 + 192 + 128, 1));
    }

    #[test]
    fn gosper_4f3_first_term_is_one() {
        let s = Series::Gosper4F3 {
            a: q(1, 2),
            b: q(1, 3),
        };
        assert_eq!(t(s, 0), q(1, 1));
    }
}
