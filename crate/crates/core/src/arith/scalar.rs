use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ArithError, BigFloat, ExactRational};

/// Field-like arithmetic shared by exact rationals, big floats and Taylor jets.
///
/// Constants are lifted through a context taken from an existing value, so a
/// formula written once evaluates at whatever precision (or jet shape) its
/// inputs carry.
pub trait Scalar:
    Clone
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Ctx: Clone + fmt::Debug;

    fn lift(q: &ExactRational, ctx: &Self::Ctx) -> Self;

    fn context(&self) -> Self::Ctx;

    /// Fails when the point value of `rhs` is zero.
    fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError>;

    /// Whether the point value is zero.
    fn is_zero(&self) -> bool;

    fn int(&self, n: i64) -> Self {
        Self::lift(&ExactRational::from_int(n), &self.context())
    }

    fn rat(&self, numer: i64, denom: i64) -> Self {
        Self::lift(&ExactRational::frac(numer, denom), &self.context())
    }

    fn constant(&self, q: &ExactRational) -> Self {
        Self::lift(q, &self.context())
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn powu(&self, exp: u32) -> Self {
        let mut acc = self.int(1);
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for ExactRational {
    type Ctx = ();

    fn lift(q: &ExactRational, _: &()) -> Self {
        q.clone()
    }

    fn context(&self) {}

    fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        ExactRational::checked_div(self, rhs)
    }

    fn is_zero(&self) -> bool {
        ExactRational::is_zero(self)
    }

    fn powu(&self, exp: u32) -> Self {
        self.pow(exp as i32).expect("nonnegative power")
    }
}

impl Scalar for BigFloat {
    /// Working precision in bits.
    type Ctx = u32;

    fn lift(q: &ExactRational, precision: &u32) -> Self {
        BigFloat::from_rational(q, *precision)
    }

    fn context(&self) -> u32 {
        self.precision()
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        BigFloat::checked_div(self, rhs)
    }

    fn is_zero(&self) -> bool {
        BigFloat::is_zero(self)
    }

    fn powu(&self, exp: u32) -> Self {
        self.powi(u64::from(exp))
    }
}
