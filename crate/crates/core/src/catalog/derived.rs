//! Identities obtained by differentiating terminating identities in a parameter.
//!
//! Each check differentiates both sides with rational jets, evaluates the
//! displayed harmonic-number form of the derivative independently, and
//! requires all of them to agree exactly.

use crate::arith::{ArithError, ExactRational, Scalar};
use crate::jets::{JetShape, TaylorJet};

use super::coefficients::coeff_a;
use super::finite::{
    aa_weight, basic_rhs_term, whipple_lhs_term, whipple_prefactor, whipple_rhs_term, FiniteArgs,
    FiniteIdentity,
};
use super::forms::Forms;

type Q = ExactRational;
type Jet = TaylorJet<Q>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivedCheck {
    /// First derivative in `x` of the cubic-shift identity in `(x, n)`.
    WeiBb,
    /// First derivative of Whipple's transformation in `b`.
    WeiFf,
    /// Second derivative in `b` with `c` held at `b`.
    WeiGg,
    /// Mixed derivative in `b` and `c`, then `c = b`.
    WeiHh,
}

/// Displayed sides plus every relation that failed to hold exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedOutcome {
    pub lhs: Q,
    pub rhs: Q,
    pub failures: Vec<String>,
}

impl DerivedOutcome {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn shape(num_vars: u8, order: u8) -> JetShape {
    JetShape::new(num_vars, order).expect("supported jet shape")
}

fn jet_err(e: crate::jets::JetError) -> ArithError {
    ArithError::Domain(e.to_string())
}

struct Relations(Vec<String>);

impl Relations {
    fn require(&mut self, what: &str, a: &Q, b: &Q) {
        if a != b {
            self.0.push(format!("{what}: {a} != {b}"));
        }
    }
}

impl DerivedCheck {
    /// `x` is used by `WeiBb`; Whipple checks take `(a,b,c,d,e)` in `whipple`.
    pub fn evaluate(
        self,
        x: Option<&Q>,
        whipple: Option<&[Q; 5]>,
        n: u32,
    ) -> Result<DerivedOutcome, ArithError> {
        let missing = || ArithError::Domain("missing parameters".into());
        match self {
            DerivedCheck::WeiBb => bb(x.ok_or_else(missing)?, n),
            DerivedCheck::WeiFf => ff(whipple.ok_or_else(missing)?, n),
            DerivedCheck::WeiGg => gg(whipple.ok_or_else(missing)?, n),
            DerivedCheck::WeiHh => hh(whipple.ok_or_else(missing)?, n),
        }
    }
}

fn bb(x: &Q, n: u32) -> Result<DerivedOutcome, ArithError> {
    let sh = shape(1, 1);
    let xj = Jet::variable(x.clone(), 1, sh).map_err(jet_err)?;
    let (lj, rj) = FiniteIdentity::WeiAa.sides(&FiniteArgs::Xn { x: xj.clone(), n })?;
    let jet_lhs = lj.derivative(1, 0).map_err(jet_err)?;
    let jet_rhs = rj.derivative(1, 0).map_err(jet_err)?;

    let nq = Q::from_int(i64::from(n));
    let nj = xj.int(i64::from(n));
    let mut lhs = Q::zero();
    let mut lhs_div = Q::zero();
    let f = Forms::new(x)
        .with('x', x.clone())
        .with_int('n', i64::from(n));
    let halving = f.lin("1-2x");
    let divided = !halving.is_zero();
    for k in 0..=n / 3 {
        let weight = aa_weight(x, n, k)?;
        let a = coeff_a(x, &nq, k)?;
        let da = coeff_a(&xj, &nj, k)?.derivative(1, 0).map_err(jet_err)?;
        let bracket = f.harmonic(k, 1, "x-1")? - f.harmonic(k, 1, "-x")?
            + f.harmonic(k, 1, "x-1/2")?
            - f.harmonic(k, 1, "1/2-x")?
            + f.harmonic(2 * k, 1, "1-x")?
            - f.harmonic(2 * k, 1, "x")?
            + f.harmonic(k, 1, "-1-x-n")?
            - f.harmonic(k, 1, "x-2-n")?;
        lhs = lhs + weight.clone() * bracket * a.clone() + weight.clone() * da.clone();
        if divided {
            let paired = f.pair_sum(k, "x-1", "-x")? + f.pair_sum(k, "x-1/2", "1/2-x")?
                - f.pair_sum(2 * k, "x", "1-x")?
                - f.pair_sum(k, "x-2-n", "-1-x-n")?;
            lhs_div = lhs_div + weight.clone() * paired * a + weight * da.checked_div(&halving)?;
        }
    }
    let mut rhs = Q::zero();
    let mut rhs_div = Q::zero();
    for k in 0..=n {
        let r = basic_rhs_term(x, n, k)?;
        let bracket = f.harmonic(k, 1, "x-1")? - f.harmonic(k, 1, "-x")?
            + f.harmonic(k, 1, "1-x")?
            - f.harmonic(k, 1, "x")?;
        rhs = rhs + r.clone() * bracket;
        if divided {
            rhs_div = rhs_div + r * (f.pair_sum(k, "x-1", "-x")? - f.pair_sum(k, "x", "1-x")?);
        }
    }

    let mut rel = Relations(Vec::new());
    rel.require("jet derivatives of both sides", &jet_lhs, &jet_rhs);
    rel.require("displayed left side vs jet", &lhs, &jet_lhs);
    rel.require("displayed right side vs jet", &rhs, &jet_rhs);
    rel.require("displayed sides", &lhs, &rhs);
    if divided {
        rel.require("divided sides", &lhs_div, &rhs_div);
        rel.require("divided left side times 1-2x", &(lhs_div * halving), &lhs);
    }
    Ok(DerivedOutcome {
        lhs,
        rhs,
        failures: rel.0,
    })
}

fn whipple_forms(args: &[Q; 5]) -> Forms<Q> {
    let [a, b, c, d, e] = args.clone();
    Forms::new(&a)
        .with('a', a)
        .with('b', b)
        .with('c', c)
        .with('d', d)
        .with('e', e)
}

/// Jet sides of Whipple's transformation with `b` (and optionally `c`) seeded.
fn whipple_jets(
    args: &[Q; 5],
    n: u32,
    sh: JetShape,
    seed_c: bool,
) -> Result<(Jet, Jet), ArithError> {
    let mut jets: [Jet; 5] = args.clone().map(|v| Jet::constant(v, sh));
    jets[1] = Jet::variable(args[1].clone(), 1, sh).map_err(jet_err)?;
    if seed_c {
        jets[2] = Jet::variable(args[2].clone(), 2, sh).map_err(jet_err)?;
    }
    FiniteIdentity::Whipple.sides(&FiniteArgs::Whipple { args: jets, n })
}

fn ff(args: &[Q; 5], n: u32) -> Result<DerivedOutcome, ArithError> {
    let (lj, rj) = whipple_jets(args, n, shape(1, 1), false)?;
    let f = whipple_forms(args);
    let mut lhs = Q::zero();
    let mut rhs = Q::zero();
    for k in 0..=n {
        let bracket = f.harmonic(k, 1, "b-1")? + f.harmonic(k, 1, "a-b")?;
        lhs = lhs + whipple_lhs_term(args, n, k)? * bracket;
        let bracket = f.harmonic(k, 1, "a-b")? - f.harmonic(k, 1, "a-b-c")?;
        rhs = rhs + whipple_rhs_term(args, n, k)? * bracket;
    }
    let rhs = whipple_prefactor(args, n)? * rhs;
    let mut rel = Relations(Vec::new());
    let (jl, jr) = (
        lj.derivative(1, 0).map_err(jet_err)?,
        rj.derivative(1, 0).map_err(jet_err)?,
    );
    rel.require("jet derivatives of both sides", &jl, &jr);
    rel.require("displayed left side vs jet", &lhs, &jl);
    rel.require("displayed right side vs jet", &rhs, &jr);
    rel.require("displayed sides", &lhs, &rhs);
    Ok(DerivedOutcome {
        lhs,
        rhs,
        failures: rel.0,
    })
}

fn tied(args: &[Q; 5]) -> [Q; 5] {
    let mut t = args.clone();
    t[2] = t[1].clone();
    t
}

fn gg(args: &[Q; 5], n: u32) -> Result<DerivedOutcome, ArithError> {
    let args = tied(args);
    let (lj, rj) = whipple_jets(&args, n, shape(1, 2), false)?;
    let f = whipple_forms(&args);
    let mut lhs = Q::zero();
    let mut rhs = Q::zero();
    for k in 0..=n {
        let first = f.harmonic(k, 1, "b-1")? + f.harmonic(k, 1, "a-b")?;
        let second = f.harmonic(k, 2, "b-1")? - f.harmonic(k, 2, "a-b")?;
        lhs = lhs + whipple_lhs_term(&args, n, k)? * (first.square() - second);
        let first = f.harmonic(k, 1, "a-b")? - f.harmonic(k, 1, "a-2b")?;
        let second = f.harmonic(k, 2, "a-b")? - f.harmonic(k, 2, "a-2b")?;
        rhs = rhs + whipple_rhs_term(&args, n, k)? * (first.square() + second);
    }
    let rhs = whipple_prefactor(&args, n)? * rhs;
    let mut rel = Relations(Vec::new());
    let (jl, jr) = (
        lj.derivative(2, 0).map_err(jet_err)?,
        rj.derivative(2, 0).map_err(jet_err)?,
    );
    rel.require("jet second derivatives of both sides", &jl, &jr);
    rel.require("displayed left side vs jet", &lhs, &jl);
    rel.require("displayed right side vs jet", &rhs, &jr);
    rel.require("displayed sides", &lhs, &rhs);
    Ok(DerivedOutcome {
        lhs,
        rhs,
        failures: rel.0,
    })
}

fn hh(args: &[Q; 5], n: u32) -> Result<DerivedOutcome, ArithError> {
    let args = tied(args);
    let (lj, rj) = whipple_jets(&args, n, shape(2, 2), true)?;
    let f = whipple_forms(&args);
    let mut lhs = Q::zero();
    let mut rhs = Q::zero();
    let mut diff_lhs = Q::zero();
    let mut diff_rhs = Q::zero();
    for k in 0..=n {
        let t = whipple_lhs_term(&args, n, k)?;
        let u = whipple_rhs_term(&args, n, k)?;
        let first = f.harmonic(k, 1, "b-1")? + f.harmonic(k, 1, "a-b")?;
        lhs = lhs + t.clone() * first.square();
        let first = f.harmonic(k, 1, "a-b")? - f.harmonic(k, 1, "a-2b")?;
        rhs = rhs + u.clone() * (first.square() - f.harmonic(k, 2, "a-2b")?);
        diff_lhs = diff_lhs + t * (f.harmonic(k, 2, "a-b")? - f.harmonic(k, 2, "b-1")?);
        diff_rhs = diff_rhs + u * f.harmonic(k, 2, "a-b")?;
    }
    let pre = whipple_prefactor(&args, n)?;
    let rhs = pre.clone() * rhs;
    let diff_rhs = pre * diff_rhs;
    let mut rel = Relations(Vec::new());
    let (jl, jr) = (
        lj.derivative(1, 1).map_err(jet_err)?,
        rj.derivative(1, 1).map_err(jet_err)?,
    );
    rel.require("jet mixed derivatives of both sides", &jl, &jr);
    rel.require("displayed left side vs jet", &lhs, &jl);
    rel.require("displayed right side vs jet", &rhs, &jr);
    rel.require("displayed sides", &lhs, &rhs);
    rel.require(
        "difference of the two second-order forms",
        &diff_lhs,
        &diff_rhs,
    );
    Ok(DerivedOutcome {
        lhs,
        rhs,
        failures: rel.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::finite::whipple_point;

    #[test]
    fn all_forms_hold_at_a_sample_point() {
        let x = Q::frac(2, 7);
        let p = whipple_point(&x, false);
        for n in [0, 3, 5] {
            assert!(bb(&x, n).unwrap().holds(), "bb n={n}");
            assert!(ff(&p, n).unwrap().holds(), "ff n={n}");
            assert!(gg(&p, n).unwrap().holds(), "gg n={n}");
            assert!(hh(&p, n).unwrap().holds(), "hh n={n}");
        }
    }
}
