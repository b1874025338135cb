//! Truncated Taylor arithmetic in up to two variables and total order two.
//!
//! A jet stores the coefficients of `h^i k^j` for `i + j <= 2`, i.e. partial
//! derivatives divided by `i! j!`, so multiplication is a truncated convolution.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{ArithError, ExactRational, Scalar};

/// Slot order of the stored coefficients.
const INDEX: [(u8, u8); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];

fn slot(i: u8, j: u8) -> Option<usize> {
    INDEX.iter().position(|&ij| ij == (i, j))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JetError {
    #[error(
        "jets support 1 or 2 variables and order 1 or 2, got {num_vars} variables at order {order}"
    )]
    Shape { num_vars: u8, order: u8 },
    #[error("variable index {index} outside 1..={num_vars}")]
    Variable { index: u8, num_vars: u8 },
    #[error("multi-index ({0}, {1}) outside the jet")]
    Index(u8, u8),
}

/// Number of variables and truncation order of a jet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JetShape {
    pub num_vars: u8,
    pub order: u8,
}

impl JetShape {
    pub fn new(num_vars: u8, order: u8) -> Result<Self, JetError> {
        if !(1..=2).contains(&num_vars) || !(1..=2).contains(&order) {
            return Err(JetError::Shape { num_vars, order });
        }
        Ok(JetShape { num_vars, order })
    }

    fn contains(&self, i: u8, j: u8) -> bool {
        i + j <= self.order && (j == 0 || self.num_vars == 2)
    }

    fn join(self, other: JetShape) -> JetShape {
        JetShape {
            num_vars: self.num_vars.max(other.num_vars),
            order: self.order.min(other.order),
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct TaylorJet<S> {
    coeffs: [S; 6],
    shape: JetShape,
}

impl<S: Scalar> TaylorJet<S> {
    pub fn constant(value: S, shape: JetShape) -> Self {
        let zero = value.int(0);
        TaylorJet {
            coeffs: [
                value,
                zero.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone(),
                zero,
            ],
            shape,
        }
    }

    /// The jet of the coordinate function `var_index` (1 or 2) at `x0`.
    pub fn variable(x0: S, var_index: u8, shape: JetShape) -> Result<Self, JetError> {
        if var_index == 0 || var_index > shape.num_vars {
            return Err(JetError::Variable {
                index: var_index,
                num_vars: shape.num_vars,
            });
        }
        let one = x0.int(1);
        let mut jet = Self::constant(x0, shape);
        jet.coeffs[var_index as usize] = one;
        Ok(jet)
    }

    pub fn shape(&self) -> JetShape {
        self.shape
    }

    pub fn value(&self) -> &S {
        &self.coeffs[0]
    }

    /// Stored coefficient of `h^i k^j`.
    pub fn coefficient(&self, i: u8, j: u8) -> Result<&S, JetError> {
        if !self.shape.contains(i, j) {
            return Err(JetError::Index(i, j));
        }
        Ok(&self.coeffs[slot(i, j).expect("checked by shape")])
    }

    /// The partial derivative `d^(i+j) / dx^i dy^j`, i.e. `i! j!` times the coefficient.
    pub fn derivative(&self, i: u8, j: u8) -> Result<S, JetError> {
        let c = self.coefficient(i, j)?;
        let factorial = |m: u8| if m == 2 { 2 } else { 1 };
        Ok(c.clone() * c.int(factorial(i) * factorial(j)))
    }

    fn zip(self, rhs: Self, f: impl Fn(S, S) -> S) -> Self {
        let shape = self.shape.join(rhs.shape);
        let mut out = self.coeffs.clone();
        for (idx, (a, b)) in self.coeffs.into_iter().zip(rhs.coeffs).enumerate() {
            out[idx] = f(a, b);
        }
        TaylorJet { coeffs: out, shape }.truncated()
    }

    fn truncated(mut self) -> Self {
        for (idx, &(i, j)) in INDEX.iter().enumerate() {
            if !self.shape.contains(i, j) {
                self.coeffs[idx] = self.coeffs[idx].int(0);
            }
        }
        self
    }

    fn reciprocal(&self) -> Result<Self, ArithError> {
        let b0 = self.value();
        if b0.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let r = b0.int(1).checked_div(b0)?;
        // 1/b = r / (1 + u) with nilpotent u, so 1/b = r (1 - u + u^2) after truncation.
        let mut u = self.clone() * TaylorJet::constant(r.clone(), self.shape);
        u.coeffs[0] = r.int(0);
        let one = TaylorJet::constant(r.int(1), self.shape);
        let series = one - u.clone() + u.clone() * u;
        Ok(series * TaylorJet::constant(r, self.shape))
    }
}

impl<S: Scalar> Add for TaylorJet<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.zip(rhs, |a, b| a + b)
    }
}

impl<S: Scalar> Sub for TaylorJet<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.zip(rhs, |a, b| a - b)
    }
}

impl<S: Scalar> Neg for TaylorJet<S> {
    type Output = Self;
    fn neg(self) -> Self {
        let shape = self.shape;
        TaylorJet {
            coeffs: self.coeffs.map(|c| -c),
            shape,
        }
    }
}

impl<S: Scalar> Mul for TaylorJet<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let shape = self.shape.join(rhs.shape);
        let mut out = TaylorJet::constant(self.coeffs[0].int(0), shape);
        for (ia, &(i1, j1)) in INDEX.iter().enumerate() {
            for (ib, &(i2, j2)) in INDEX.iter().enumerate() {
                let (i, j) = (i1 + i2, j1 + j2);
                if !shape.contains(i, j) {
                    continue;
                }
                let idx = slot(i, j).expect("within order two");
                let term = self.coeffs[ia].clone() * rhs.coeffs[ib].clone();
                out.coeffs[idx] = out.coeffs[idx].clone() + term;
            }
        }
        out
    }
}

impl<S: Scalar> Scalar for TaylorJet<S> {
    type Ctx = (S::Ctx, JetShape);

    fn lift(q: &ExactRational, ctx: &Self::Ctx) -> Self {
        TaylorJet::constant(S::lift(q, &ctx.0), ctx.1)
    }

    fn context(&self) -> Self::Ctx {
        (self.coeffs[0].context(), self.shape)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self.clone() * rhs.reciprocal()?)
    }

    fn is_zero(&self) -> bool {
        self.coeffs[0].is_zero()
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for TaylorJet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (idx, &(i, j)) in INDEX.iter().enumerate() {
            if self.shape.contains(i, j) {
                if !first {
                    f.write_str(", ")?;
                }
                first = false;
                write!(f, "({i},{j}): {}", self.coeffs[idx])?;
            }
        }
        f.write_str("}")
    }
}

impl<S: Scalar> fmt::Debug for TaylorJet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TaylorJet")
            .field("coeffs", &self.coeffs)
            .field("shape", &self.shape)
            .finish()
    }
}
