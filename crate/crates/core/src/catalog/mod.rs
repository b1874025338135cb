//! Registry of every verified identity: term generators, claimed right sides
//! and the parameter domains they are checked on.

pub mod coefficients;
pub mod derived;
pub mod finite;
mod forms;
pub mod series;

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::arith::{ArithError, ConstantExpr, ExactRational, Scalar};
use crate::jets::{JetShape, TaylorJet};

pub use coefficients::{coefficient, CoefficientName};
pub use derived::{DerivedCheck, DerivedOutcome};
pub use finite::{whipple_point, FiniteArgs, FiniteIdentity, Transformation};
pub use series::Series;

type Q = ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown id: {0}")]
    UnknownId(String),
    #[error("parameters {params} do not fit {id}")]
    Params { id: String, params: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    FiniteExact,
    FiniteJet,
    InfiniteNumeric,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::FiniteExact => "FiniteExact",
            Kind::FiniteJet => "FiniteJet",
            Kind::InfiniteNumeric => "InfiniteNumeric",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConvergenceClass {
    /// Term ratio tends to `rho` in absolute value.
    Geometric(Q),
    AlternatingSlow,
    PositiveSlow,
    Terminating,
}

/// How a grid record `(x, n)` becomes concrete parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamDomain {
    /// `(x, n)` directly.
    XN,
    /// `(a,b,c,d,e)` derived from `x` by [`whipple_point`], terminating at `n`.
    WhippleFromX { tie_c: bool },
    /// Only `n` (or a truncation index) matters.
    NOnly,
    /// Fixed parameters of a convergent series.
    Fixed(Params),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Params {
    None,
    Xn { x: Q, n: u32 },
    Whipple { args: [Q; 5], n: u32 },
    N(u32),
    Ab { a: Q, b: Q },
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::None => Ok(()),
            Params::Xn { x, n } => write!(f, "x={x}, n={n}"),
            Params::Whipple { args, n } => write!(
                f,
                "a={}, b={}, c={}, d={}, e={}, n={n}",
                args[0], args[1], args[2], args[3], args[4]
            ),
            Params::N(n) => write!(f, "n={n}"),
            Params::Ab { a, b } => write!(f, "a={a}, b={b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    Finite(FiniteIdentity),
    Derived(DerivedCheck),
    /// Truncations of the order-64 series against the even/odd regrouping of the order-8 one.
    ParitySplit,
    Series(Series),
    /// `sum c_i * value(id_i)` over already registered series.
    Combination(Vec<(Q, &'static str)>),
}

/// A competing reading of a displayed formula, kept so it can be measured.
#[derive(Debug, Clone, PartialEq)]
pub struct Alternate {
    pub label: &'static str,
    /// `None` means the primary series with a different claimed value.
    pub series: Option<Series>,
    pub claim: ConstantExpr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentitySpec {
    pub id: &'static str,
    pub kind: Kind,
    pub generator: Generator,
    pub claim: Option<ConstantExpr>,
    pub domain: ParamDomain,
    pub class: ConvergenceClass,
    pub anchor: &'static str,
    pub alternates: Vec<Alternate>,
}

/// What the right side of an identity is.
#[derive(Debug, Clone, PartialEq)]
pub enum Claimed {
    Constant(ConstantExpr),
    /// A second generator summed over the same parameters.
    RightSide,
}

/// Exactly summed sides plus any auxiliary relation that failed.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactOutcome {
    pub lhs: Q,
    pub rhs: Q,
    pub failures: Vec<String>,
}

impl IdentitySpec {
    /// Expands one grid record into parameters; `None` when the record does not apply.
    pub fn grid_params(&self, x: &Q, n: u32) -> Option<Params> {
        match &self.domain {
            ParamDomain::XN => Some(Params::Xn { x: x.clone(), n }),
            ParamDomain::WhippleFromX { tie_c } => Some(Params::Whipple {
                args: whipple_point(x, *tie_c),
                n,
            }),
            ParamDomain::NOnly => Some(Params::N(n)),
            ParamDomain::Fixed(_) => None,
        }
    }

    pub fn default_params(&self) -> Params {
        match &self.domain {
            ParamDomain::Fixed(p) => p.clone(),
            _ => Params::None,
        }
    }

    pub fn claimed(&self) -> Claimed {
        match &self.claim {
            Some(c) => Claimed::Constant(c.clone()),
            None => Claimed::RightSide,
        }
    }

    fn bad_params(&self, params: &Params) -> CatalogError {
        CatalogError::Params {
            id: self.id.to_string(),
            params: params.to_string(),
        }
    }

    /// Summand `k` of the left (or designated) side.
    pub fn term<S: Scalar>(&self, k: u32, params: &Params, like: &S) -> Result<S, CatalogError> {
        let lift = |q: &Q| like.constant(q);
        match (&self.generator, params) {
            (Generator::Series(s), Params::None) if !matches!(s, Series::Gosper4F3 { .. }) => {
                Ok(s.term(k, like)?)
            }
            (Generator::Series(Series::Gosper4F3 { .. }), Params::Ab { a, b }) => {
                let s = Series::Gosper4F3 {
                    a: a.clone(),
                    b: b.clone(),
                };
                Ok(s.term(k, like)?)
            }
            (Generator::Series(_), Params::None) => self.term(k, &self.default_params(), like),
            (Generator::Combination(parts), Params::None) => {
                let mut acc = like.int(0);
                for (c, id) in parts {
                    acc = acc + lift(c) * lookup(id)?.term(k, params, like)?;
                }
                Ok(acc)
            }
            (Generator::ParitySplit, _) => Ok(Series::WeiEE.term(k, like)?),
            (Generator::Finite(fi), _) => {
                let args = finite_args(self, params, like)?;
                Ok(fi.lhs_term(&args, k)?)
            }
            (Generator::Derived(check), _) => derived_term(self, *check, k, params, like),
            _ => Err(self.bad_params(params)),
        }
    }

    /// Both sides of a terminating identity, summed exactly.
    pub fn evaluate_exact(&self, params: &Params) -> Result<ExactOutcome, CatalogError> {
        let plain = |(lhs, rhs): (Q, Q)| ExactOutcome {
            lhs,
            rhs,
            failures: Vec::new(),
        };
        match (&self.generator, params) {
            (Generator::Finite(fi), _) => {
                let args = finite_args(self, params, &Q::zero())?;
                Ok(plain(fi.sides(&args)?))
            }
            (Generator::Derived(check), Params::Xn { x, n }) => {
                Ok(derived_outcome(check.evaluate(Some(x), None, *n)?))
            }
            (Generator::Derived(check), Params::Whipple { args, n }) => {
                Ok(derived_outcome(check.evaluate(None, Some(args), *n)?))
            }
            (Generator::ParitySplit, Params::N(n)) => parity_split(*n),
            _ => Err(self.bad_params(params)),
        }
    }
}

fn derived_outcome(d: DerivedOutcome) -> ExactOutcome {
    ExactOutcome {
        lhs: d.lhs,
        rhs: d.rhs,
        failures: d.failures,
    }
}

fn finite_args<S: Scalar>(
    spec: &IdentitySpec,
    params: &Params,
    like: &S,
) -> Result<FiniteArgs<S>, CatalogError> {
    let lift = |q: &Q| like.constant(q);
    match params {
        Params::Xn { x, n } => Ok(FiniteArgs::Xn { x: lift(x), n: *n }),
        Params::Whipple { args, n } => Ok(FiniteArgs::Whipple {
            args: args.clone().map(|a| lift(&a)),
            n: *n,
        }),
        Params::N(n) => Ok(FiniteArgs::N {
            like: like.int(0),
            n: *n,
        }),
        _ => Err(spec.bad_params(params)),
    }
}

/// The derivative coefficient of the differentiated identity's left summand.
fn derived_term<S: Scalar>(
    spec: &IdentitySpec,
    check: DerivedCheck,
    k: u32,
    params: &Params,
    like: &S,
) -> Result<S, CatalogError> {
    let lift = |q: &Q| like.constant(q);
    let jet_err = |e: crate::jets::JetError| ArithError::Domain(e.to_string());
    let (args, index) = match (check, params) {
        (DerivedCheck::WeiBb, Params::Xn { x, n }) => {
            let sh = JetShape::new(1, 1).map_err(jet_err)?;
            let xj = TaylorJet::variable(lift(x), 1, sh).map_err(jet_err)?;
            (FiniteArgs::Xn { x: xj, n: *n }, (1, 0))
        }
        (_, Params::Whipple { args, n }) => {
            let (vars, order, index) = match check {
                DerivedCheck::WeiFf => (1, 1, (1, 0)),
                DerivedCheck::WeiGg => (1, 2, (2, 0)),
                _ => (2, 2, (1, 1)),
            };
            let sh = JetShape::new(vars, order).map_err(jet_err)?;
            let mut base = args.clone();
            if check != DerivedCheck::WeiFf {
                base[2] = base[1].clone();
            }
            let mut jets = base.clone().map(|a| TaylorJet::constant(lift(&a), sh));
            jets[1] = TaylorJet::variable(lift(&base[1]), 1, sh).map_err(jet_err)?;
            if check == DerivedCheck::WeiHh {
                jets[2] = TaylorJet::variable(lift(&base[2]), 2, sh).map_err(jet_err)?;
            }
            (FiniteArgs::Whipple { args: jets, n: *n }, index)
        }
        _ => return Err(spec.bad_params(params)),
    };
    let base = if check == DerivedCheck::WeiBb {
        FiniteIdentity::WeiAa
    } else {
        FiniteIdentity::Whipple
    };
    let t = base.lhs_term(&args, k)?;
    Ok(t.derivative(index.0, index.1).map_err(jet_err)?)
}

/// `sum_{k<=n} ee_k` against `sum_{k<=n} (even_k + odd_k)`, and both against
/// the order-8 series truncated at index `2n+1`.
fn parity_split(n: u32) -> Result<ExactOutcome, CatalogError> {
    let z = Q::zero();
    let mut lhs = Q::zero();
    let mut rhs = Q::zero();
    let mut order8 = Q::zero();
    for k in 0..=n {
        lhs = lhs + Series::WeiEE.term(k, &z)?;
        rhs = rhs + Series::ParityEven.term(k, &z)? + Series::ParityOdd.term(k, &z)?;
        order8 = order8 + Series::SunA.term(2 * k, &z)? + Series::SunA.term(2 * k + 1, &z)?;
    }
    let mut failures = Vec::new();
    if rhs != order8 {
        failures.push(format!(
            "even/odd regrouping {rhs} != order-8 partial sum {order8}"
        ));
    }
    Ok(ExactOutcome { lhs, rhs, failures })
}

fn q(n: i64, d: i64) -> Q {
    Q::frac(n, d)
}

fn geo(n: i64, d: i64) -> ConvergenceClass {
    ConvergenceClass::Geometric(q(n, d))
}

fn beta4(c: ConstantExpr) -> ConstantExpr {
    c * ConstantExpr::beta(4)
}

fn catalan(c: ConstantExpr) -> ConstantExpr {
    c * ConstantExpr::Catalan
}

fn int(n: i64) -> ConstantExpr {
    ConstantExpr::int(n)
}

/// `2^a Γ((1+a+b)/2) Γ(1+(a-b)/2) / (Γ(1/2) Γ(1+a))`.
pub fn gosper_closed_form(a: &Q, b: &Q) -> ConstantExpr {
    let half = q(1, 2);
    let g = |x: Q| ConstantExpr::Gamma(x);
    let top = ConstantExpr::Power(Q::from_int(2), a.clone())
        * g((Q::one() + a.clone() + b.clone()) * half.clone())
        * g(Q::one() + (a.clone() - b.clone()) * half.clone());
    top / (g(half) * g(Q::one() + a.clone()))
}

fn series(
    id: &'static str,
    s: Series,
    claim: ConstantExpr,
    class: ConvergenceClass,
    anchor: &'static str,
) -> IdentitySpec {
    IdentitySpec {
        id,
        kind: Kind::InfiniteNumeric,
        generator: Generator::Series(s),
        claim: Some(claim),
        domain: ParamDomain::Fixed(Params::None),
        class,
        anchor,
        alternates: Vec::new(),
    }
}

fn exact(
    id: &'static str,
    kind: Kind,
    generator: Generator,
    domain: ParamDomain,
    anchor: &'static str,
) -> IdentitySpec {
    IdentitySpec {
        id,
        kind,
        generator,
        claim: None,
        domain,
        class: ConvergenceClass::Terminating,
        anchor,
        alternates: Vec::new(),
    }
}

fn combo(
    id: &'static str,
    parts: Vec<(Q, &'static str)>,
    claim: ConstantExpr,
    rho: ConvergenceClass,
    anchor: &'static str,
) -> IdentitySpec {
    IdentitySpec {
        id,
        kind: Kind::InfiniteNumeric,
        generator: Generator::Combination(parts),
        claim: Some(claim),
        domain: ParamDomain::Fixed(Params::None),
        class: rho,
        anchor,
        alternates: Vec::new(),
    }
}

fn with_alternate(mut spec: IdentitySpec, alt: Alternate) -> IdentitySpec {
    spec.alternates.push(alt);
    spec
}

fn build() -> Vec<IdentitySpec> {
    let pi = || ConstantExpr::Pi;
    let two_beta4 = || beta4(int(2));
    let g_minus_b = |c: i64| catalan(int(c)) - beta4(int(c));
    let gosper_ab = (q(1, 2), q(1, 3));
    let mut v = vec![
        exact(
            "whipple",
            Kind::FiniteExact,
            Generator::Finite(FiniteIdentity::Whipple),
            ParamDomain::WhippleFromX { tie_c: false },
            "terminating very-well-poised 7F6 equals a balanced 4F3",
        ),
        series(
            "ramanujan-pi",
            Series::Ramanujan,
            int(4) / pi(),
            geo(1, 4),
            "Ramanujan's series for 4/pi, ratio 1/4",
        ),
        with_alternate(
            series(
                "gosper-pi",
                Series::GosperPi,
                int(2) * ConstantExpr::sqrt(3) / pi(),
                geo(1, 8),
                "alternating (1/2)_k^3 series at -1/8, claimed value 2*sqrt(3)/pi",
            ),
            Alternate {
                label: "value 2*sqrt(2)/pi, the 4F3 closed form at a=b=1/2",
                series: None,
                claim: int(2) * ConstantExpr::sqrt(2) / pi(),
            },
        ),
        IdentitySpec {
            domain: ParamDomain::Fixed(Params::Ab {
                a: gosper_ab.0.clone(),
                b: gosper_ab.1.clone(),
            }),
            ..series(
                "gosper-4f3",
                Series::Gosper4F3 {
                    a: gosper_ab.0.clone(),
                    b: gosper_ab.1.clone(),
                },
                gosper_closed_form(&gosper_ab.0, &gosper_ab.1),
                geo(1, 8),
                "4F3 at -1/8 with parameters (a, 1+a/3, b, 1-b) against a Gamma quotient",
            )
        },
        series(
            "guillera-a",
            Series::GuilleraA,
            catalan(int(2)),
            geo(1, 8),
            "Guillera's (1)_k^3/(3/2)_k^3 series at -1/8 for 2G",
        ),
        series(
            "guillera-b",
            Series::GuilleraB,
            catalan(int(2)),
            ConvergenceClass::AlternatingSlow,
            "Guillera's alternating (1)_k^3/(3/2)_k^3 series for 2G",
        ),
        with_alternate(
            series(
                "guo-a",
                Series::GuoA,
                pi() * ConstantExpr::frac(1, 12),
                geo(1, 4),
                "double series over the Ramanujan weight for pi/12",
            ),
            Alternate {
                label: "inner sum as H_2k^(2) - 5/16 H_k^(2)",
                series: Some(Series::GuoAH),
                claim: pi() * ConstantExpr::frac(1, 12),
            },
        ),
        with_alternate(
            series(
                "guo-b",
                Series::GuoB,
                ConstantExpr::frac(-1, 48) * ConstantExpr::sqrt(2) * pi(),
                geo(1, 8),
                "double series over the -1/8 weight for -sqrt(2)*pi/48",
            ),
            Alternate {
                label: "inner sum as H_2k^(2) - 5/16 H_k^(2)",
                series: Some(Series::GuoBH),
                claim: ConstantExpr::frac(-1, 48) * ConstantExpr::sqrt(2) * pi(),
            },
        ),
        series(
            "sun-a",
            Series::SunA,
            two_beta4(),
            geo(1, 8),
            "harmonic-weighted Guillera series at -1/8 for 2*beta(4)",
        ),
        series(
            "sun-b",
            Series::SunB,
            two_beta4(),
            ConvergenceClass::AlternatingSlow,
            "harmonic-weighted alternating Guillera series for 2*beta(4)",
        ),
        series(
            "wei-b",
            Series::WeiB,
            two_beta4(),
            ConvergenceClass::PositiveSlow,
            "positive series with terms of size k^(-3/2) for 2*beta(4)",
        ),
        series(
            "wei-c",
            Series::WeiC,
            beta4(int(-24)),
            geo(1, 4),
            "ratio-1/4 series for -24*beta(4)",
        ),
        series(
            "wei-d",
            Series::WeiD,
            beta4(int(-72)),
            geo(1, 4),
            "alternating ratio-1/4 series for -72*beta(4)",
        ),
        series(
            "wei-e",
            Series::WeiE,
            beta4(int(-120)),
            geo(16, 27),
            "ratio-16/27 series for -120*beta(4)",
        ),
        with_alternate(
            series(
                "wei-f",
                Series::WeiF,
                beta4(ConstantExpr::frac(-15, 8)),
                geo(1, 27),
                "ratio -1/27 series for -15/8*beta(4)",
            ),
            Alternate {
                label: "(5+6k) dividing the second brace term",
                series: Some(Series::WeiFDivided),
                claim: beta4(ConstantExpr::frac(-15, 8)),
            },
        ),
        exact(
            "wei-aa",
            Kind::FiniteExact,
            Generator::Finite(FiniteIdentity::WeiAa),
            ParamDomain::XN,
            "terminating (-n)_3k sum weighted by the first specialized coefficient",
        ),
        exact(
            "wei-at",
            Kind::FiniteExact,
            Generator::Finite(FiniteIdentity::WeiAt),
            ParamDomain::XN,
            "terminating sum weighted by the second specialized coefficient",
        ),
        exact(
            "wei-dt",
            Kind::FiniteExact,
            Generator::Finite(FiniteIdentity::WeiDt),
            ParamDomain::XN,
            "terminating sum weighted by the third specialized coefficient",
        ),
        exact(
            "wei-gt",
            Kind::FiniteExact,
            Generator::Finite(FiniteIdentity::WeiGt),
            ParamDomain::XN,
            "terminating sum weighted by the fourth specialized coefficient",
        ),
        exact(
            "wei-jt",
            Kind::FiniteExact,
            Generator::Finite(FiniteIdentity::WeiJt),
            ParamDomain::XN,
            "terminating (-n)_2k sum weighted by the fifth specialized coefficient",
        ),
        exact(
            "wei-bb",
            Kind::FiniteJet,
            Generator::Derived(DerivedCheck::WeiBb),
            ParamDomain::XN,
            "x-derivative of the first specialized terminating sum",
        ),
        exact(
            "wei-ff",
            Kind::FiniteJet,
            Generator::Derived(DerivedCheck::WeiFf),
            ParamDomain::WhippleFromX { tie_c: false },
            "b-derivative of the 7F6-to-4F3 transformation",
        ),
        exact(
            "wei-gg",
            Kind::FiniteJet,
            Generator::Derived(DerivedCheck::WeiGg),
            ParamDomain::WhippleFromX { tie_c: true },
            "second b-derivative of the transformation with c tied to b",
        ),
        exact(
            "wei-hh",
            Kind::FiniteJet,
            Generator::Derived(DerivedCheck::WeiHh),
            ParamDomain::WhippleFromX { tie_c: true },
            "mixed b,c-derivative of the transformation, then c = b",
        ),
        exact(
            "wei-ii",
            Kind::FiniteExact,
            Generator::Finite(FiniteIdentity::WeiIi),
            ParamDomain::NOnly,
            "harmonic sums at (a,b,d,e) = (3/2,1,1,1), terminating in n",
        ),
        exact(
            "wei-jj",
            Kind::FiniteExact,
            Generator::Finite(FiniteIdentity::WeiJj),
            ParamDomain::NOnly,
            "companion of the previous entry without the constant shift",
        ),
        with_alternate(
            series(
                "wei-cc",
                Series::WeiCC,
                two_beta4() - catalan(int(2)),
                geo(1, 64),
                "ratio-1/64 limit of the first specialized sum, 2*beta(4) - 2G",
            ),
            Alternate {
                label: "last term over (3+4k)^3",
                series: Some(Series::WeiCCCubed),
                claim: two_beta4() - catalan(int(2)),
            },
        ),
        series(
            "wei-dd",
            Series::WeiDD,
            catalan(int(2)),
            geo(1, 64),
            "ratio-1/64 series for 2G",
        ),
        with_alternate(
            series(
                "wei-ee",
                Series::WeiEE,
                two_beta4(),
                geo(1, 64),
                "ratio-1/64 series for 2*beta(4), sum of the two previous",
            ),
            Alternate {
                label: "last term over (3+4k)^3",
                series: Some(Series::WeiEECubed),
                claim: two_beta4(),
            },
        ),
        exact(
            "parity-split",
            Kind::FiniteExact,
            Generator::ParitySplit,
            ParamDomain::NOnly,
            "partial sums of the ratio-1/64 series equal the even/odd regrouping of the -1/8 series",
        ),
        series(
            "wei-bt",
            Series::WeiBT,
            g_minus_b(24),
            geo(1, 4),
            "second specialized sum divided by 1-2x, limit x -> 1/2",
        ),
        series(
            "wei-ct",
            Series::WeiCT,
            catalan(int(6)),
            geo(1, 4),
            "limit x -> 1/2, n -> infinity of the second specialized sum",
        ),
        with_alternate(
            series(
                "wei-et",
                Series::WeiET,
                g_minus_b(72),
                geo(1, 4),
                "limit of the third specialized sum, +4 inside and outside the bracket",
            ),
            Alternate {
                label: "outer +4 only",
                series: Some(Series::WeiD),
                claim: g_minus_b(72),
            },
        ),
        series(
            "wei-ft",
            Series::WeiFT,
            catalan(int(18)),
            geo(1, 4),
            "companion limit of the third specialized sum for 18G",
        ),
        series(
            "wei-ht",
            Series::WeiHT,
            g_minus_b(120),
            geo(16, 27),
            "limit of the fourth specialized sum, 120G - 120*beta(4)",
        ),
        series(
            "wei-it",
            Series::WeiIT,
            catalan(int(30)),
            geo(16, 27),
            "limit x -> 1, n -> infinity of the fourth specialized sum",
        ),
        series(
            "wei-lt",
            Series::WeiLT,
            catalan(ConstantExpr::frac(15, 8)) - beta4(ConstantExpr::frac(15, 8)),
            geo(1, 27),
            "fifth specialized sum divided by 2-2x, limit",
        ),
        series(
            "wei-mt",
            Series::WeiMT,
            catalan(int(30)),
            geo(1, 27),
            "limit x -> 1, n -> infinity of the fifth specialized sum",
        ),
        combo(
            "combo-bt-ct",
            vec![(q(1, 1), "wei-bt"), (q(-4, 1), "wei-ct")],
            beta4(int(-24)),
            geo(1, 4),
            "wei-bt - 4*wei-ct",
        ),
        combo(
            "combo-et-ft",
            vec![(q(1, 1), "wei-et"), (q(-4, 1), "wei-ft")],
            beta4(int(-72)),
            geo(1, 4),
            "wei-et - 4*wei-ft",
        ),
        combo(
            "combo-ht-it",
            vec![(q(1, 1), "wei-ht"), (q(-4, 1), "wei-it")],
            beta4(int(-120)),
            geo(16, 27),
            "wei-ht - 4*wei-it",
        ),
        combo(
            "combo-lt-mt",
            vec![(q(1, 1), "wei-lt"), (q(-1, 16), "wei-mt")],
            beta4(ConstantExpr::frac(-15, 8)),
            geo(1, 27),
            "wei-lt - wei-mt/16",
        ),
        combo(
            "combo-cc-dd",
            vec![(q(1, 1), "wei-cc"), (q(1, 1), "wei-dd")],
            two_beta4(),
            geo(1, 64),
            "wei-cc + wei-dd",
        ),
    ];
    v.sort_by(|a, b| a.id.cmp(b.id));
    v
}

/// All registered identities, sorted by id.
pub fn registry() -> &'static [IdentitySpec] {
    static REGISTRY: OnceLock<Vec<IdentitySpec>> = OnceLock::new();
    REGISTRY.get_or_init(build)
}

pub fn lookup(id: &str) -> Result<&'static IdentitySpec, CatalogError> {
    registry()
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| CatalogError::UnknownId(id.to_string()))
}

/// Summand `k` of the identity's left side.
pub fn term<S: Scalar>(id: &str, k: u32, params: &Params, like: &S) -> Result<S, CatalogError> {
    lookup(id)?.term(k, params, like)
}

pub fn claimed_value(id: &str) -> Result<Claimed, CatalogError> {
    Ok(lookup(id)?.claimed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_sorted() {
        let ids: Vec<_> = registry().iter().map(|s| s.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
        assert_eq!(ids.len(), 43);
    }

    #[test]
    fn combinations_reference_registered_series() {
        for spec in registry() {
            if let Generator::Combination(parts) = &spec.generator {
                for (_, id) in parts {
                    assert_eq!(lookup(id).unwrap().kind, Kind::InfiniteNumeric);
                }
            }
        }
    }

    #[test]
    fn claimed_values() {
        let show = |id| match claimed_value(id).unwrap() {
            Claimed::Constant(c) => c.to_string(),
            Claimed::RightSide => "rhs".into(),
        };
        assert_eq!(show("sun-a"), "2*beta(4)");
        assert_eq!(show("wei-it"), "30*G");
        assert_eq!(show("ramanujan-pi"), "4/pi");
        assert_eq!(show("whipple"), "rhs");
        assert!(matches!(
            claimed_value("nope"),
            Err(CatalogError::UnknownId(_))
        ));
    }

    #[test]
    fn terms_from_the_registry() {
        let z = Q::zero();
        assert_eq!(term("sun-a", 0, &Params::None, &z).unwrap(), q(2, 1));
        assert_eq!(term("sun-a", 1, &Params::None, &z).unwrap(), q(-5, 243));
        assert_eq!(term("wei-b", 1, &Params::None, &z).unwrap(), q(20, 81));
    }

    #[test]
    fn combination_terms_are_linear() {
        let z = Q::zero();
        for k in 0..6 {
            let c = term("combo-et-ft", k, &Params::None, &z).unwrap();
            let d = term("wei-d", k, &Params::None, &z).unwrap();
            assert_eq!(c, d, "k={k}");
        }
    }

    #[test]
    fn parity_split_holds_exactly() {
        let spec = lookup("parity-split").unwrap();
        for n in 0..6 {
            let out = spec.evaluate_exact(&Params::N(n)).unwrap();
            assert_eq!(out.lhs, out.rhs);
            assert!(out.failures.is_empty());
        }
    }

    #[test]
    fn derived_terms_sum_to_the_jet_side() {
        let spec = lookup("wei-hh").unwrap();
        let p = spec.grid_params(&q(1, 5), 4).unwrap();
        let z = Q::zero();
        let mut acc = Q::zero();
        for k in 0..=4 {
            acc = acc + spec.term(k, &p, &z).unwrap();
        }
        assert_eq!(acc, spec.evaluate_exact(&p).unwrap().lhs);
    }
}
