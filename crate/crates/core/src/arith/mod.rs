//! Exact rationals, binary big floats and the constants the checks compare against.

mod bigfloat;
mod constants;
mod rational;
mod scalar;

pub use bigfloat::BigFloat;
pub use constants::{
    alternating_accelerate, alternating_terms_for_bits, const_pi, dirichlet_beta, eval_constant,
    gamma_big, pow_rational, sqrt_big, sqrt_rational, ConstantExpr, GUARD_BITS,
};
pub use rational::ExactRational;
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeRoot,
    #[error("gamma pole at {0}")]
    GammaPole(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}
